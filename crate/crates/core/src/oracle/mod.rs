//! Independent cycle counts used to check the spectral formulas: brute-force
//! enumeration, traces of the non-backtracking edge matrix, and the edge
//! spectrum predicted from the spectrum of `H H^T`.

mod dfs;
mod edge;
mod edge_spectrum;
mod verify;

pub use dfs::{dfs_budget, dfs_cycle_count, DFS_BUDGET_ENV, DEFAULT_DFS_BUDGET};
pub use edge::{build_edge_matrix, count_from_edge_spectrum, edge_traces, DirectedEdgeMatrix, EdgeTraceCount, EDGE_DIMENSION_LIMIT};
pub use edge_spectrum::{
    cluster_eigenvalues, gram_eigenvalues, predict_edge_spectrum, EdgeSpectrumPrediction, PredictedEigenvalue,
    SpectrumStep, CLUSTER_TOLERANCE,
};
pub use verify::{verify_methods, LegStatus, LengthRecord, VerificationReport, VerifyLegs, PREDICTION_TOLERANCE};

use thiserror::Error;

use crate::formulas::FormulaError;
use crate::matrix::MatrixError;
use crate::spectral::SpectralError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{what} exceeds its budget of {limit}")]
    BudgetExceeded { what: String, limit: u64 },
    #[error("predicted edge spectrum has total multiplicity {total}, expected 2|E| = {expected}")]
    MultiplicityMismatch { total: u64, expected: u64 },
    #[error("methods disagree at 2k = {two_k}: {values}")]
    Disagreement {
        two_k: u32,
        values: String,
        report: Box<VerificationReport>,
    },
    #[error("Tr(A_e^{length}) = {trace} is not divisible by {length}")]
    IndivisibleTrace { length: u32, trace: String },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}
