//! Exact spectral kernels for `H H^T`: power-sum traces, rational rank,
//! Newton's identities, and the block-circulant fast path that evaluates
//! `H(x) H(x)^T` at the roots of unity.

mod jacobi;
mod newton;
mod qc;
mod rank;
mod traces;

pub use jacobi::{hermitian_eigenvalues, ComplexMatrix, JACOBI_MAX_SWEEPS, JACOBI_TOLERANCE};
pub use newton::{newton_power_sums, power_sums_from_monic, shift_moments, shifted_moments, ShiftedMomentTable};
pub use qc::{
    block_gram_matrix, qc_power_traces, roots_of_unity_charpolys, CharPolyBlock, CharPolySet,
    SNAP_TOLERANCE,
};
pub use rank::exact_rank;
pub use traces::{gram_matrix, gram_power_traces, PowerSumTable};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("block j={block}: coefficient of t^{degree} = {value} is not within snap tolerance of an integer")]
    SnapFailure {
        block: usize,
        degree: usize,
        value: String,
    },
    #[error("aggregate power sum T_{k} = {value} is not within snap tolerance of an integer")]
    AggregateSnapFailure { k: usize, value: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("matrix is not Hermitian within tolerance")]
    NotHermitian,
    #[error("polynomial must be monic with degree >= 1")]
    NotMonic,
    #[error("requested power {requested} exceeds table depth {available}")]
    TooShallow { requested: usize, available: usize },
}
