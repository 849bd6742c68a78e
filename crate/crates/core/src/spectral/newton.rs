use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{FromPrimitive, Num, Zero};
use serde::{Deserialize, Serialize};

use super::{PowerSumTable, SpectralError};
use crate::matrix::BiregularProfile;

/// Power sums `p_1..p_K` of the roots of a monic polynomial given by its
/// coefficients in descending order, `[1, c_{d-1}, .., c_0]`.
pub fn power_sums_from_monic<T>(coeffs: &[T], max_power: usize) -> Result<Vec<T>, SpectralError>
where
    T: Clone + Num + Neg<Output = T> + FromPrimitive,
{
    if coeffs.len() < 2 || !coeffs[0].is_one() {
        return Err(SpectralError::NotMonic);
    }
    let d = coeffs.len() - 1;
    // a(i) = coefficient of t^{d-i}
    let a = |i: usize| &coeffs[i];
    let mut p: Vec<T> = Vec::with_capacity(max_power);
    for k in 1..=max_power {
        let mut s = T::zero();
        for i in 1..k.min(d + 1) {
            s = s + a(i).clone() * p[k - i - 1].clone();
        }
        if k <= d {
            s = s + a(k).clone() * T::from_usize(k).expect("small integer");
        }
        p.push(-s);
    }
    Ok(p)
}

/// Exact power sums of the roots of an integer monic polynomial.
pub fn newton_power_sums(monic_coeffs: &[BigInt], max_power: usize) -> Result<Vec<BigInt>, SpectralError> {
    power_sums_from_monic(monic_coeffs, max_power)
}

/// Moments `E_0..E_K` of the shifted nonzero eigenvalues `alpha = lambda - shift`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedMomentTable {
    pub shift: i64,
    /// `values[k] = E_k`; `E_0` is the number of nonzero eigenvalues.
    values: Vec<BigInt>,
}

impl ShiftedMomentTable {
    pub fn max_power(&self) -> usize {
        self.values.len() - 1
    }

    /// `E_k`, with `E_k = 0` for negative `k`.
    pub fn get(&self, k: i64) -> BigInt {
        if k < 0 {
            BigInt::zero()
        } else {
            self.values[k as usize].clone()
        }
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
}

/// Shifts raw power sums `T_0..T_K` of a matrix with `zero_count` zero
/// eigenvalues to moments of `lambda - shift` over the nonzero eigenvalues:
/// `E_k = sum_i C(k,i) (-shift)^{k-i} T_i - zero_count (-shift)^k`.
pub fn shift_moments(power_sums: &[BigInt], shift: i64, zero_count: &BigInt) -> ShiftedMomentTable {
    let neg = BigInt::from(-shift);
    let values = (0..power_sums.len())
        .map(|k| {
            let mut e: BigInt = (0..=k)
                .map(|i| BigInt::from(binomial(k as u64, i as u64)) * num_traits::pow(neg.clone(), k - i) * &power_sums[i])
                .sum();
            e -= zero_count * num_traits::pow(neg.clone(), k);
            e
        })
        .collect();
    ShiftedMomentTable { shift, values }
}

/// `E_k` for `alpha = lambda - (q1 + q2)` over the `rank` nonzero eigenvalues of `H H^T`.
pub fn shifted_moments(
    ps: &PowerSumTable,
    profile: &BiregularProfile,
    max_power: usize,
) -> Result<ShiftedMomentTable, SpectralError> {
    if ps.max_power() < max_power {
        return Err(SpectralError::TooShallow {
            requested: max_power,
            available: ps.max_power(),
        });
    }
    let zeros = BigInt::from(profile.m - profile.rank);
    Ok(shift_moments(
        &ps.values()[..=max_power],
        profile.q_sum() as i64,
        &zeros,
    ))
}
