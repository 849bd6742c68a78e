use num_complex::Complex64;

use super::OracleError;
use crate::matrix::{BiregularProfile, ScalarParityMatrix};
use crate::spectral::{gram_matrix, hermitian_eigenvalues, ComplexMatrix, SpectralError};

/// Eigenvalues within this fraction of the largest are merged.
pub const CLUSTER_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectrumStep {
    /// `+-sqrt(xi)` for the roots `xi != 1` of `xi^2 + (q1 + q2 - lambda^2) xi + q1 q2`.
    Quadratic,
    /// `+-sqrt(-q1)` and `+-sqrt(-q2)` from the null spaces of `H` and `H^T`.
    Nullspace,
    /// `+-1`, one pair per independent cycle.
    Unit,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredictedEigenvalue {
    pub value: Complex64,
    pub multiplicity: u64,
    pub step: SpectrumStep,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSpectrumPrediction {
    pub entries: Vec<PredictedEigenvalue>,
    pub dimension: u64,
}

impl EdgeSpectrumPrediction {
    pub fn step_total(&self, step: SpectrumStep) -> u64 {
        self.entries.iter().filter(|e| e.step == step).map(|e| e.multiplicity).sum()
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// `sum eta^L` over the predicted multiset.
    pub fn power_sum(&self, len: u32) -> Complex64 {
        self.entries
            .iter()
            .map(|e| e.value.powu(len) * e.multiplicity as f64)
            .sum()
    }
}

/// Eigenvalues of the dense `H H^T`, descending.
pub fn gram_eigenvalues(h: &ScalarParityMatrix) -> Result<Vec<f64>, SpectralError> {
    let mut dense = vec![vec![0.0; h.m()]; h.m()];
    for (r, row) in gram_matrix(h).into_iter().enumerate() {
        for (c, v) in row {
            dense[r][c] = v as f64;
        }
    }
    hermitian_eigenvalues(&ComplexMatrix::from_real_rows(&dense))
}

/// Groups nearly equal eigenvalues as `(mean, multiplicity)`, descending.
pub fn cluster_eigenvalues(values: &[f64]) -> Vec<(f64, u64)> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let scale = sorted.first().map_or(1.0, |v| v.abs().max(1.0));
    let tol = CLUSTER_TOLERANCE * scale;
    let mut out: Vec<(f64, f64, u64)> = Vec::new(); // (first, sum, count)
    for v in sorted {
        match out.last_mut() {
            Some((first, sum, count)) if (*first - v).abs() <= tol => {
                *sum += v;
                *count += 1;
            }
            _ => out.push((v, v, 1)),
        }
    }
    out.into_iter().map(|(_, s, c)| (s / c as f64, c)).collect()
}

/// Edge-matrix spectrum implied by the `H H^T` spectrum of a connected
/// bi-regular graph. `clusters` lists `(eigenvalue, multiplicity)` of `H H^T`;
/// zero eigenvalues may be included and are ignored.
pub fn predict_edge_spectrum(
    profile: &BiregularProfile,
    clusters: &[(f64, u64)],
) -> Result<EdgeSpectrumPrediction, OracleError> {
    let scale = clusters.iter().map(|c| c.0.abs()).fold(1.0, f64::max);
    let zero_tol = CLUSTER_TOLERANCE * scale;
    let s = profile.q_sum() as f64;
    let q = profile.q_product() as f64;
    let one = Complex64::new(1.0, 0.0);
    let mut entries = Vec::new();
    let mut push_pair = |xi: Complex64, multiplicity: u64, step: SpectrumStep| {
        if multiplicity == 0 {
            return;
        }
        let r = xi.sqrt();
        entries.push(PredictedEigenvalue { value: r, multiplicity, step });
        entries.push(PredictedEigenvalue { value: -r, multiplicity, step });
    };
    for &(nu, mult) in clusters {
        if nu.abs() <= zero_tol {
            continue;
        }
        let b = Complex64::new(s - nu, 0.0);
        let disc = (b * b - 4.0 * q).sqrt();
        for xi in [(-b + disc) / 2.0, (-b - disc) / 2.0] {
            if (xi - one).norm() <= 1e-6 * xi.norm().max(1.0) {
                continue;
            }
            push_pair(xi, mult, SpectrumStep::Quadratic);
        }
    }
    let p = profile;
    push_pair(Complex64::new(-(p.q1 as f64), 0.0), p.n - p.rank, SpectrumStep::Nullspace);
    push_pair(Complex64::new(-(p.q2 as f64), 0.0), p.m - p.rank, SpectrumStep::Nullspace);
    let cycles = (p.edge_count + 1).saturating_sub(p.m + p.n);
    push_pair(one, cycles, SpectrumStep::Unit);
    let prediction = EdgeSpectrumPrediction {
        entries,
        dimension: 2 * p.edge_count,
    };
    if prediction.total() != prediction.dimension {
        return Err(OracleError::MultiplicityMismatch {
            total: prediction.total(),
            expected: prediction.dimension,
        });
    }
    Ok(prediction)
}
