use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedMul, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::matrix::ScalarParityMatrix;

/// Exact power sums `T_k = Tr((H H^T)^k)` for `k = 0..=K`, with `T_0` the
/// dimension of `H H^T` (zero eigenvalues included).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSumTable {
    values: Vec<BigInt>,
}

impl PowerSumTable {
    /// `values[0]` must be the matrix dimension.
    pub fn from_values(values: Vec<BigInt>) -> Self {
        assert!(!values.is_empty(), "power-sum table needs T_0");
        Self { values }
    }

    pub fn max_power(&self) -> usize {
        self.values.len() - 1
    }

    pub fn dimension(&self) -> &BigInt {
        &self.values[0]
    }

    /// `T_k`; panics past the table depth.
    pub fn get(&self, k: usize) -> &BigInt {
        &self.values[k]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Truncates to depth `k` (no-op when already shallower).
    pub fn truncated(&self, k: usize) -> Self {
        Self {
            values: self.values[..=k.min(self.max_power())].to_vec(),
        }
    }
}

/// Sparse rows of `H H^T` as `(column, value)` pairs, sorted by column.
pub fn gram_matrix(h: &ScalarParityMatrix) -> Vec<Vec<(usize, i64)>> {
    let cols = h.columns();
    (0..h.m())
        .into_par_iter()
        .map(|r| {
            let mut acc = vec![0i64; h.m()];
            let mut touched = Vec::new();
            for &c in h.row(r) {
                for &r2 in &cols[c] {
                    if acc[r2] == 0 {
                        touched.push(r2);
                    }
                    acc[r2] += 1;
                }
            }
            touched.sort_unstable();
            touched.into_iter().map(|r2| (r2, acc[r2])).collect()
        })
        .collect()
}

trait Exact: Clone + Zero + CheckedAdd + CheckedMul + Send + Sync {
    fn from_i64(v: i64) -> Self;
}

impl Exact for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
}

impl Exact for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

// Contribution of row `r` to T_1..T_K: <row_r(G^a), row_r(G^b)> with a = ceil(k/2), b = floor(k/2).
fn row_contributions<T: Exact>(gram: &[Vec<(usize, i64)>], r: usize, max_power: usize) -> Option<Vec<T>> {
    let dim = gram.len();
    let half = max_power.div_ceil(2);
    let mut powers: Vec<Vec<T>> = Vec::with_capacity(half + 1);
    let mut e = vec![T::zero(); dim];
    e[r] = T::from_i64(1);
    powers.push(e);
    for p in 1..=half {
        let prev = &powers[p - 1];
        let mut next = vec![T::zero(); dim];
        for (c, x) in prev.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &(c2, g) in &gram[c] {
                let term = x.checked_mul(&T::from_i64(g))?;
                next[c2] = next[c2].checked_add(&term)?;
            }
        }
        powers.push(next);
    }
    let mut out = Vec::with_capacity(max_power);
    for k in 1..=max_power {
        let (a, b) = (k.div_ceil(2), k / 2);
        let mut s = T::zero();
        for (x, y) in powers[a].iter().zip(&powers[b]) {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            s = s.checked_add(&x.checked_mul(y)?)?;
        }
        out.push(s);
    }
    Some(out)
}

/// Exact `Tr((H H^T)^k)` for `k = 1..=max_power`.
///
/// Each row of `H H^T` is pushed through `ceil(K/2)` sparse products and the
/// traces are read off as inner products of split powers. Rows are processed
/// in parallel with `i128` arithmetic, falling back to big integers on overflow.
pub fn gram_power_traces(h: &ScalarParityMatrix, max_power: usize) -> PowerSumTable {
    assert!(max_power >= 1, "need at least T_1");
    let gram = gram_matrix(h);
    let per_row: Vec<Vec<BigInt>> = (0..h.m())
        .into_par_iter()
        .map(|r| match row_contributions::<i128>(&gram, r, max_power) {
            Some(v) => v.into_iter().map(BigInt::from).collect(),
            None => row_contributions::<BigInt>(&gram, r, max_power).expect("big integers do not overflow"),
        })
        .collect();
    let mut values = vec![BigInt::from(h.m())];
    for k in 0..max_power {
        values.push(per_row.iter().map(|row| &row[k]).sum());
    }
    PowerSumTable { values }
}
