use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{pow, Zero};
use serde::{Deserialize, Serialize};

use super::constants::{a_constants, MAX_CLOSED_FORM_K};
use super::sseq::s_polynomials;
use super::FormulaError;
use crate::matrix::{BiregularProfile, Girth};
use crate::spectral::{PowerSumTable, ShiftedMomentTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Recursive,
    Ek,
    Lambda,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Recursive, Method::Ek, Method::Lambda];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Recursive => "recursive",
            Method::Ek => "ek",
            Method::Lambda => "lambda",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `N_{2k}` for one `k`. `value` is `None` when the count lies outside the
/// certified range and the formula did not produce an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCount {
    pub k: u32,
    pub value: Option<BigInt>,
    /// `2k < 2g`, where walk counts are cycle counts.
    pub certified: bool,
}

impl CycleCount {
    pub fn two_k(&self) -> u32 {
        2 * self.k
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycleCountReport {
    pub method: Method,
    pub girth: Girth,
    /// Entries for `k = 2..=K` in order.
    pub counts: Vec<CycleCount>,
    pub warnings: Vec<String>,
    pub elapsed: Duration,
}

impl CycleCountReport {
    pub fn get(&self, k: u32) -> Option<&CycleCount> {
        self.counts.iter().find(|c| c.k == k)
    }

    pub fn value(&self, k: u32) -> Option<&BigInt> {
        self.get(k).and_then(|c| c.value.as_ref())
    }

    pub fn max_k(&self) -> u32 {
        self.counts.last().map_or(1, |c| c.k)
    }
}

fn divide(numerator: BigInt, k: u32, girth: Girth, warnings: &mut Vec<String>) -> Result<CycleCount, FormulaError> {
    let certified = girth.certifies(k);
    let (quot, rem) = numerator.div_rem(&BigInt::from(2 * k));
    let value = if rem.is_zero() {
        Some(quot)
    } else if certified {
        return Err(FormulaError::NonIntegerCount {
            two_k: 2 * k,
            numerator: numerator.to_string(),
        });
    } else {
        warnings.push(format!(
            "N_{} is outside the certified range and its numerator {numerator} is not divisible by {}",
            2 * k,
            2 * k
        ));
        None
    };
    Ok(CycleCount { k, value, certified })
}

fn need_moments(e: &ShiftedMomentTable, max_k: u32) -> Result<(), FormulaError> {
    if e.max_power() < max_k as usize {
        return Err(FormulaError::MissingMoments {
            requested: max_k as usize,
            available: e.max_power(),
        });
    }
    Ok(())
}

fn neg_pow(q: u64, k: u32) -> BigInt {
    pow(-BigInt::from(q), k as usize)
}

/// Counts from the recursion over `S_{alpha,k}`, lifted to the moment table
/// so that no individual eigenvalue is needed. Any `K` is accepted.
pub fn count_recursive(
    profile: &BiregularProfile,
    moments: &ShiftedMomentTable,
    max_k: u32,
    girth: Girth,
) -> Result<CycleCountReport, FormulaError> {
    let start = Instant::now();
    need_moments(moments, max_k)?;
    let p = profile;
    let polys = s_polynomials(&BigInt::from(p.q_product()), max_k as usize);
    let base = BigInt::from(p.edge_count) - BigInt::from(p.m + p.n);
    let (n_null, m_null) = (BigInt::from(p.n - p.rank), BigInt::from(p.m - p.rank));
    let mut warnings = Vec::new();
    let mut counts = Vec::new();
    for k in 2..=max_k {
        let s_sum: BigInt = polys[k as usize]
            .iter()
            .enumerate()
            .map(|(j, c)| c * moments.get(j as i64))
            .sum();
        let num = &base + neg_pow(p.q1, k) * &n_null + neg_pow(p.q2, k) * &m_null + s_sum;
        counts.push(divide(num, k, girth, &mut warnings)?);
    }
    Ok(CycleCountReport {
        method: Method::Recursive,
        girth,
        counts,
        warnings,
        elapsed: start.elapsed(),
    })
}

/// Counts from the truncated `E_k` expansion, available for `K <= 7`.
pub fn count_via_ek(
    profile: &BiregularProfile,
    moments: &ShiftedMomentTable,
    max_k: u32,
    girth: Girth,
) -> Result<CycleCountReport, FormulaError> {
    let start = Instant::now();
    if max_k > MAX_CLOSED_FORM_K {
        return Err(FormulaError::KTooLarge(max_k));
    }
    need_moments(moments, max_k)?;
    let p = profile;
    let q = BigInt::from(p.q_product());
    let edges = BigInt::from(p.edge_count);
    let rank = BigInt::from(p.rank);
    let mut warnings = Vec::new();
    let mut counts = Vec::new();
    for k in 2..=max_k {
        let ki = k as i64;
        let e = |d: i64| moments.get(ki - d);
        let s_sum = e(0) - BigInt::from(ki) * &q * e(2) + BigInt::from(ki * (ki - 3) / 2) * pow(q.clone(), 2) * e(4)
            - BigInt::from(ki * ki - 8 * ki + 14) * pow(q.clone(), 3) * e(6);
        let (t1, t2) = (neg_pow(p.q1, k), neg_pow(p.q2, k));
        let edge_factor =
            BigInt::from(1) + (&t1 - 1) / BigInt::from(p.q1 + 1) + (&t2 - 1) / BigInt::from(p.q2 + 1);
        let num = &edges * edge_factor - &rank * (t1 + t2) + s_sum;
        counts.push(divide(num, k, girth, &mut warnings)?);
    }
    Ok(CycleCountReport {
        method: Method::Ek,
        girth,
        counts,
        warnings,
        elapsed: start.elapsed(),
    })
}

/// Smallest girth under which the power-sum formula for `N_{2k}` holds.
pub fn lambda_gate_limit(k: u32) -> u32 {
    match k {
        0..=3 => 4,
        4 | 5 => 6,
        _ => 8,
    }
}

/// Counts straight from `T_k = Tr((H H^T)^k)`, each `N_{2k}` reusing the
/// lower ones. Each `k` must pass its girth gate.
pub fn count_via_lambda(
    profile: &BiregularProfile,
    traces: &PowerSumTable,
    max_k: u32,
    girth: Girth,
) -> Result<CycleCountReport, FormulaError> {
    let start = Instant::now();
    if max_k > MAX_CLOSED_FORM_K {
        return Err(FormulaError::KTooLarge(max_k));
    }
    if traces.max_power() < max_k as usize {
        return Err(FormulaError::MissingMoments {
            requested: max_k as usize,
            available: traces.max_power(),
        });
    }
    for k in 2..=max_k {
        let needed = lambda_gate_limit(k);
        if !girth.at_least(needed) {
            return Err(FormulaError::GirthPreconditionUnmet {
                two_k: 2 * k,
                needed,
                girth: girth.to_string(),
            });
        }
    }
    let a = a_constants(profile.q1, profile.q2);
    let s = BigInt::from(profile.q_sum());
    let q = BigInt::from(profile.q_product());
    let edges = BigInt::from(profile.edge_count);
    let b = |x: i64| BigInt::from(x);
    // N[k] for k = 0..=K; N_0 and N_2 are zero.
    let mut n = vec![BigInt::zero(); max_k as usize + 1];
    let mut counts = Vec::new();
    for k in 2..=max_k {
        let direct = traces.get(k as usize) - &edges * a.get(k);
        let (quot, rem) = direct.div_rem(&BigInt::from(2 * k));
        if !rem.is_zero() {
            return Err(FormulaError::NonIntegerCount {
                two_k: 2 * k,
                numerator: direct.to_string(),
            });
        }
        let s2 = &s * &s;
        let lower: BigInt = match k {
            2 => BigInt::zero(),
            3 => -b(2) * &s * &n[2],
            4 => -b(3) * &s * &n[3],
            5 => -b(4) * &s * &n[4] - b(3) * (b(2) * &s2 + &q) * &n[3],
            6 => -b(5) * &s * &n[5] - b(2) * (b(5) * &s2 + b(2) * &q) * &n[4],
            7 => {
                -b(6) * &s * &n[6] - b(5) * (b(3) * &s2 + &q) * &n[5] - b(4) * &s * (b(5) * &s2 + b(6) * &q) * &n[4]
            }
            _ => unreachable!(),
        };
        n[k as usize] = lower + quot;
        counts.push(CycleCount {
            k,
            value: Some(n[k as usize].clone()),
            certified: girth.certifies(k),
        });
    }
    Ok(CycleCountReport {
        method: Method::Lambda,
        girth,
        counts,
        warnings: Vec::new(),
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{monomial_family, tanner_155};
    use crate::matrix::{bfs_girth, build_tanner_graph, expand_qc, validate_biregular, ScalarParityMatrix};
    use crate::spectral::{gram_power_traces, shifted_moments};

    struct Case {
        profile: BiregularProfile,
        traces: PowerSumTable,
        moments: ShiftedMomentTable,
        girth: Girth,
    }

    fn case(h: &ScalarParityMatrix, k: usize) -> Case {
        let profile = validate_biregular(h).unwrap();
        let traces = gram_power_traces(h, k);
        let moments = shifted_moments(&traces, &profile, k).unwrap();
        let girth = bfs_girth(&build_tanner_graph(h));
        Case { profile, traces, moments, girth }
    }

    fn values(r: &CycleCountReport) -> Vec<i64> {
        r.counts.iter().map(|c| i64::try_from(c.value.clone().unwrap()).unwrap()).collect()
    }

    fn all_three(c: &Case, k: u32) -> [Vec<i64>; 3] {
        [
            values(&count_recursive(&c.profile, &c.moments, k, c.girth).unwrap()),
            values(&count_via_ek(&c.profile, &c.moments, k, c.girth).unwrap()),
            values(&count_via_lambda(&c.profile, &c.traces, k, c.girth).unwrap()),
        ]
    }

    #[test]
    fn k33() {
        let h = ScalarParityMatrix::from_dense(&vec![vec![1u8; 3]; 3]).unwrap();
        let c = case(&h, 3);
        for v in all_three(&c, 3) {
            assert_eq!(v, vec![9, 6]);
        }
    }

    #[test]
    fn tanner_code() {
        let c = case(&expand_qc(&tanner_155()), 7);
        assert_eq!(c.girth, Girth::Finite(8));
        for v in all_three(&c, 7) {
            assert_eq!(v, vec![0, 0, 465, 3720, 22630, 156240]);
        }
    }

    #[test]
    fn monomial_family_counts() {
        for n in [5i64, 7] {
            let c = case(&expand_qc(&monomial_family(n as usize).unwrap().matrix), 5);
            assert_eq!(c.girth, Girth::Finite(6));
            let want = vec![
                0,
                n * n * (n - 1),
                3 * n * n * (n - 1) * (3 * n - 5) / 4,
                3 * n * n * (n - 1) * (n - 2) * (n - 2),
            ];
            for v in all_three(&c, 5) {
                assert_eq!(v, want, "n = {n}");
            }
        }
    }

    #[test]
    fn recursion_past_closed_forms_is_advisory() {
        let c = case(&expand_qc(&tanner_155()), 9);
        let r = count_recursive(&c.profile, &c.moments, 9, c.girth).unwrap();
        assert!(r.counts.iter().take(6).all(|x| x.certified));
        assert!(!r.get(8).unwrap().certified && !r.get(9).unwrap().certified);
        assert_eq!(count_via_ek(&c.profile, &c.moments, 8, c.girth), Err(FormulaError::KTooLarge(8)));
    }

    #[test]
    fn lambda_gates() {
        let h = ScalarParityMatrix::from_dense(&vec![vec![1u8; 3]; 3]).unwrap();
        let c = case(&h, 4);
        assert_eq!(
            count_via_lambda(&c.profile, &c.traces, 4, c.girth),
            Err(FormulaError::GirthPreconditionUnmet {
                two_k: 8,
                needed: 6,
                girth: "4".into()
            })
        );
    }

    #[test]
    fn missing_moments() {
        let h = ScalarParityMatrix::from_dense(&vec![vec![1u8; 3]; 3]).unwrap();
        let c = case(&h, 2);
        assert!(matches!(
            count_recursive(&c.profile, &c.moments, 3, c.girth),
            Err(FormulaError::MissingMoments { requested: 3, available: 2 })
        ));
    }

    #[test]
    fn inexact_division_is_an_error_when_certified() {
        let h = ScalarParityMatrix::from_dense(&vec![vec![1u8; 3]; 3]).unwrap();
        let mut c = case(&h, 3);
        // Corrupt T_2 so that (T_2 - |E| A_4) / 4 has a remainder.
        let mut v = c.traces.values().to_vec();
        v[2] += 1;
        c.traces = PowerSumTable::from_values(v);
        c.moments = shifted_moments(&c.traces, &c.profile, 3).unwrap();
        assert!(matches!(
            count_recursive(&c.profile, &c.moments, 3, c.girth),
            Err(FormulaError::NonIntegerCount { two_k: 4, .. })
        ));
        assert!(matches!(
            count_via_lambda(&c.profile, &c.traces, 3, c.girth),
            Err(FormulaError::NonIntegerCount { two_k: 4, .. })
        ));
    }
}
