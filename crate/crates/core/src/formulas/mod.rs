//! Closed and recursive formulas for the number of `2k`-cycles of a
//! bi-regular Tanner graph in terms of the spectrum of `H H^T`.

mod certificate;
mod constants;
mod counts;
mod sseq;

pub use certificate::{girth_certificate, CertificateCondition, GirthCertificate};
pub use constants::{a_coefficients, a_constants, AConstantSet, CoefficientTable, MAX_CLOSED_FORM_K};
pub use counts::{
    count_recursive, count_via_ek, count_via_lambda, lambda_gate_limit, CycleCount, CycleCountReport,
    Method,
};
pub use sseq::{s_polynomials, s_sequence};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("numerator for N_{two_k} is {numerator}, not divisible by {two_k}")]
    NonIntegerCount { two_k: u32, numerator: String },
    #[error("moment table has depth {available}, need {requested}")]
    MissingMoments { requested: usize, available: usize },
    #[error("closed-form coefficients stop at k = 7 (requested k = {0}); use the recursive method")]
    KTooLarge(u32),
    #[error("N_{two_k} via lambda powers needs girth >= {needed}, graph has girth {girth}")]
    GirthPreconditionUnmet { two_k: u32, needed: u32, girth: String },
}
