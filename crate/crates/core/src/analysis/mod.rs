//! End-to-end pipeline behind the command-line tool: load a matrix, compute
//! its traces, count cycles with the selected formulas, certify the girth and
//! optionally run the oracle legs.

mod report;
mod run;
mod spectrum;

pub use report::{render_human, render_json, JsonReport};
pub use run::{run_analyze, AnalysisOutcome};
pub use spectrum::{run_girth, run_spectrum, GirthSummary, SpectrumGroup, SpectrumReport};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fixtures::{monomial_family, tanner_155, FixtureError};
use crate::formats::{parse_alist, parse_expmat, parse_polyjson, FormatError};
use crate::formulas::FormulaError;
use crate::matrix::{expand_qc, MatrixError, PolynomialParityMatrix, ScalarParityMatrix};
use crate::oracle::{OracleError, VerifyLegs};
use crate::spectral::SpectralError;

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error("invalid request: {0}")]
    Request(String),
}

impl AnalysisError {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            AnalysisError::Format(e) => match e {
                FormatError::Parse { .. } => "parse_error",
                FormatError::InconsistentSupports(_) => "inconsistent_supports",
                FormatError::ExponentOutOfRange { .. } => "exponent_out_of_range",
                FormatError::Json(_) => "parse_error",
                FormatError::Matrix(m) => matrix_code(m),
            },
            AnalysisError::Matrix(m) => matrix_code(m),
            AnalysisError::Spectral(e) => match e {
                SpectralError::SnapFailure { .. } => "snap_failure",
                SpectralError::AggregateSnapFailure { .. } => "aggregate_snap_failure",
                SpectralError::NoConvergence { .. } => "no_convergence",
                SpectralError::NotHermitian => "not_hermitian",
                SpectralError::NotMonic => "not_monic",
                SpectralError::TooShallow { .. } => "missing_moments",
            },
            AnalysisError::Formula(e) => match e {
                FormulaError::NonIntegerCount { .. } => "non_integer_count",
                FormulaError::MissingMoments { .. } => "missing_moments",
                FormulaError::KTooLarge(_) => "k_too_large",
                FormulaError::GirthPreconditionUnmet { .. } => "girth_precondition_unmet",
            },
            AnalysisError::Oracle(e) => match e {
                OracleError::BudgetExceeded { .. } => "budget_exceeded",
                OracleError::MultiplicityMismatch { .. } => "multiplicity_mismatch",
                OracleError::Disagreement { .. } => "disagreement",
                OracleError::IndivisibleTrace { .. } => "indivisible_trace",
                OracleError::Matrix(m) => matrix_code(m),
                OracleError::Spectral(_) => "spectral_error",
                OracleError::Formula(_) => "formula_error",
            },
            AnalysisError::Fixture(_) => "bad_fixture",
            AnalysisError::Request(_) => "invalid_request",
        }
    }

    /// Process exit status: 2 for a method disagreement, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            AnalysisError::Oracle(OracleError::Disagreement { .. }) => 2,
            _ => 1,
        }
    }
}

fn matrix_code(e: &MatrixError) -> &'static str {
    match e {
        MatrixError::ColumnOutOfRange { .. } | MatrixError::DuplicateEntry { .. } | MatrixError::RowCountMismatch { .. } => {
            "invalid_matrix"
        }
        MatrixError::ExponentOutOfRange { .. } => "exponent_out_of_range",
        MatrixError::DuplicateExponent { .. } => "duplicate_exponent",
        MatrixError::ZeroLifting => "zero_lifting",
        MatrixError::Empty => "empty_matrix",
        MatrixError::NotBiregular(_) => "not_biregular",
        MatrixError::DegreeTooSmall { .. } => "degree_too_small",
        MatrixError::Disconnected { .. } => "disconnected",
    }
}

macro_rules! closed_enum {
    ($name:ident, $what:literal, { $($variant:ident => $tag:literal),+ $(,)? }) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const TAGS: &'static [&'static str] = &[$($tag),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $tag),+
                }
            }
        }

        impl FromStr for $name {
            type Err = AnalysisError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($tag => Ok($name::$variant),)+
                    _ => Err(AnalysisError::Request(format!(
                        concat!("unknown ", $what, " {:?}, expected one of {}"),
                        s,
                        Self::TAGS.join(", ")
                    ))),
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

closed_enum!(InputFormat, "format", {
    Alist => "alist",
    Expmat => "expmat",
    Polyjson => "polyjson",
});

closed_enum!(MethodSelector, "method", {
    Auto => "auto",
    Recursive => "recursive",
    Ek => "ek",
    Lambda => "lambda",
    All => "all",
});

impl InputFormat {
    /// Guesses the format from a file name: `.alist`, `.json`, otherwise expmat.
    pub fn from_path(path: &str) -> Self {
        let lower = path.to_ascii_lowercase();
        if lower.ends_with(".alist") {
            InputFormat::Alist
        } else if lower.ends_with(".json") {
            InputFormat::Polyjson
        } else {
            InputFormat::Expmat
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub text: String,
    pub format: InputFormat,
    pub method: MethodSelector,
    pub max_k: u32,
    pub verify: VerifyLegs,
    pub json: bool,
    pub allow_disconnected: bool,
    /// Recompute QC traces on the expanded matrix and compare.
    pub paranoid: bool,
    /// Reject out-of-range exponents instead of reducing them.
    pub strict: bool,
}

impl AnalysisRequest {
    pub fn new(text: impl Into<String>, format: InputFormat) -> Self {
        Self {
            text: text.into(),
            format,
            method: MethodSelector::Auto,
            max_k: 7,
            verify: VerifyLegs::default(),
            json: false,
            allow_disconnected: false,
            paranoid: false,
            strict: false,
        }
    }
}

/// Parses `dfs,edge,predict` (any subset, comma separated); `thm2` is
/// accepted for `predict`.
pub fn parse_verify_legs(list: &str) -> Result<VerifyLegs, AnalysisError> {
    let mut legs = VerifyLegs::default();
    for tok in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match tok {
            "dfs" => legs.dfs = true,
            "edge" => legs.edge = true,
            "predict" | "thm2" => legs.predict = true,
            "all" => legs = VerifyLegs::all(),
            _ => {
                return Err(AnalysisError::Request(format!(
                    "unknown verification leg {tok:?}, expected dfs, edge, predict (thm2) or all"
                )))
            }
        }
    }
    Ok(legs)
}

/// A parsed input in scalar form, with its polynomial form when it has one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedInput {
    pub scalar: ScalarParityMatrix,
    pub poly: Option<PolynomialParityMatrix>,
    pub warnings: Vec<String>,
}

pub fn load_input(text: &str, format: InputFormat, strict: bool) -> Result<LoadedInput, AnalysisError> {
    let (poly, warnings) = match format {
        InputFormat::Alist => {
            return Ok(LoadedInput {
                scalar: parse_alist(text)?,
                poly: None,
                warnings: Vec::new(),
            })
        }
        InputFormat::Expmat => {
            let p = parse_expmat(text, strict)?;
            (p.matrix, p.warnings)
        }
        InputFormat::Polyjson => (parse_polyjson(text)?, Vec::new()),
    };
    Ok(LoadedInput {
        scalar: expand_qc(&poly),
        poly: Some(poly),
        warnings,
    })
}

/// Built-in matrices: `tanner` or `monomial:n=<odd>`.
pub fn fixture_by_name(name: &str) -> Result<PolynomialParityMatrix, AnalysisError> {
    if name == "tanner" {
        return Ok(tanner_155());
    }
    if let Some(n) = name.strip_prefix("monomial:n=") {
        let n: usize = n
            .parse()
            .map_err(|_| AnalysisError::Request(format!("bad monomial order {n:?}")))?;
        return Ok(monomial_family(n)?.matrix);
    }
    Err(AnalysisError::Request(format!(
        "unknown fixture {name:?}, expected tanner or monomial:n=<odd>"
    )))
}
