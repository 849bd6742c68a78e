use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::{newton::power_sums_from_monic, ComplexMatrix, PowerSumTable, SpectralError};
use crate::matrix::PolynomialParityMatrix;

/// Relative distance to the nearest integer below which a coefficient snaps.
pub const SNAP_TOLERANCE: f64 = 1e-6;

// Aggregate power sums additionally need an absolute error well below 1/2
// for the rounding to identify a unique integer.
const AGGREGATE_ABS_LIMIT: f64 = 0.25;

/// Characteristic polynomial of `H(rho^j) H(rho^j)^*` for one root of unity.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPolyBlock {
    pub index: usize,
    /// `(N - index) mod N`; its block is the complex conjugate of this one.
    pub conjugate: usize,
    pub gram: ComplexMatrix,
    /// Descending coefficients, leading 1 first.
    pub coefficients: Vec<Complex64>,
    /// Integer snap of each coefficient, where within tolerance.
    pub snapped: Vec<Option<BigInt>>,
}

impl CharPolyBlock {
    /// Integer coefficients when every coefficient snapped.
    pub fn exact(&self) -> Option<Vec<BigInt>> {
        self.snapped.iter().cloned().collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharPolySet {
    pub lifting: usize,
    pub n_c: usize,
    pub blocks: Vec<CharPolyBlock>,
}

fn snap(z: Complex64) -> Option<BigInt> {
    let r = z.re.round();
    let tol = SNAP_TOLERANCE * z.norm().max(1.0);
    ((z - Complex64::new(r, 0.0)).norm() < tol).then(|| BigInt::from(r as i128))
}

/// `H(rho^j) H(rho^j)^*` with `rho = exp(2 pi i / N)`.
pub fn block_gram_matrix(pm: &PolynomialParityMatrix, j: usize) -> ComplexMatrix {
    let big_n = pm.lifting();
    let root = |t: usize| Complex64::from_polar(1.0, TAU * (t % big_n) as f64 / big_n as f64);
    let eval: Vec<Vec<Complex64>> = (0..pm.n_c())
        .map(|i| {
            (0..pm.n_v())
                .map(|l| pm.entry(i, l).iter().map(|&e| root(j * e as usize)).sum())
                .collect()
        })
        .collect();
    let n_c = pm.n_c();
    let mut g = ComplexMatrix::zeros(n_c);
    for a in 0..n_c {
        for b in 0..n_c {
            let v: Complex64 = (0..pm.n_v()).map(|l| eval[a][l] * eval[b][l].conj()).sum();
            g.set(a, b, v);
        }
    }
    g
}

// Faddeev-LeVerrier: det(tI - A) coefficients, descending.
fn charpoly(a: &ComplexMatrix) -> Vec<Complex64> {
    let n = a.dim();
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    let mut mk = ComplexMatrix::zeros(n);
    for k in 1..=n {
        let mut next = a.mul(&mk);
        let c_prev = coeffs[k - 1];
        for i in 0..n {
            next.set(i, i, next.get(i, i) + c_prev);
        }
        let c = -a.mul(&next).trace() / k as f64;
        coeffs.push(c);
        mk = next;
    }
    coeffs
}

/// Characteristic polynomials of the `n_c x n_c` Gram blocks at every `N`-th
/// root of unity. Blocks at `rho = 1` (and `rho = -1` for even `N`) are real
/// integer matrices, so their coefficients must snap.
pub fn roots_of_unity_charpolys(pm: &PolynomialParityMatrix) -> Result<CharPolySet, SpectralError> {
    let big_n = pm.lifting();
    let blocks: Vec<CharPolyBlock> = (0..big_n)
        .into_par_iter()
        .map(|j| {
            let gram = block_gram_matrix(pm, j);
            let coefficients = charpoly(&gram);
            let snapped = coefficients.iter().map(|&z| snap(z)).collect();
            CharPolyBlock {
                index: j,
                conjugate: (big_n - j) % big_n,
                gram,
                coefficients,
                snapped,
            }
        })
        .collect();
    for b in &blocks {
        if b.index == 0 || 2 * b.index == big_n {
            if let Some(pos) = b.snapped.iter().position(Option::is_none) {
                return Err(SpectralError::SnapFailure {
                    block: b.index,
                    degree: pm.n_c() - pos,
                    value: format!("{}", b.coefficients[pos]),
                });
            }
        }
    }
    Ok(CharPolySet {
        lifting: big_n,
        n_c: pm.n_c(),
        blocks,
    })
}

/// `T_k = sum_j p_k(block j)` for `k <= max_power`. Blocks with integer
/// characteristic polynomials contribute exactly; the rest are summed in
/// floating point and the total must round to an integer.
pub fn qc_power_traces(cps: &CharPolySet, max_power: usize) -> Result<PowerSumTable, SpectralError> {
    let mut exact = vec![BigInt::zero(); max_power];
    let mut numeric = vec![Complex64::new(0.0, 0.0); max_power];
    let per_block: Vec<Result<Vec<BigInt>, Vec<Complex64>>> = cps
        .blocks
        .par_iter()
        .map(|b| match b.exact() {
            Some(c) => Ok(power_sums_from_monic(&c, max_power).expect("monic")),
            None => Err(power_sums_from_monic(&b.coefficients, max_power).expect("monic")),
        })
        .collect();
    for sums in per_block {
        match sums {
            Ok(v) => exact.iter_mut().zip(v).for_each(|(acc, x)| *acc += x),
            Err(v) => numeric.iter_mut().zip(v).for_each(|(acc, x)| *acc += x),
        }
    }
    let mut values = vec![BigInt::from(cps.n_c * cps.lifting)];
    for (k, (e, z)) in exact.into_iter().zip(numeric).enumerate() {
        let total = e.to_f64().unwrap_or(f64::INFINITY) + z.re;
        let tol = (SNAP_TOLERANCE * total.abs().max(1.0)).min(AGGREGATE_ABS_LIMIT);
        let r = z.re.round();
        if !r.is_finite() || (z.re - r).abs() >= tol || z.im.abs() >= tol {
            return Err(SpectralError::AggregateSnapFailure { k: k + 1, value: total });
        }
        values.push(e + BigInt::from(r as i128));
    }
    Ok(PowerSumTable::from_values(values))
}
