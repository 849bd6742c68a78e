use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{pow, Zero};

/// Largest `k` covered by the closed coefficient patterns.
pub const MAX_CLOSED_FORM_K: u32 = 7;

fn binom(n: i64, r: i64) -> BigInt {
    if n < 0 || r < 0 || r > n {
        BigInt::zero()
    } else {
        BigInt::from(binomial(n as u64, r as u64))
    }
}

/// `a_{k,k-i}` for `2 <= k <= 7`, `2 <= i <= k`; the coefficient of
/// `N_{2(k-i)}`-type terms when `(T_k - |E| A_{2k}) / 2k` is unfolded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    q1: u64,
    q2: u64,
    // rows[k - 2][i - 2]
    rows: Vec<Vec<BigInt>>,
}

impl CoefficientTable {
    /// `a_{k,j}` with `j = k - i`, zero outside the tabulated range.
    pub fn get(&self, k: u32, j: u32) -> BigInt {
        if !(2..=MAX_CLOSED_FORM_K).contains(&k) || j + 2 > k {
            return BigInt::zero();
        }
        self.rows[(k - 2) as usize][(k - j - 2) as usize].clone()
    }

    pub fn q1(&self) -> u64 {
        self.q1
    }

    pub fn q2(&self) -> u64 {
        self.q2
    }
}

pub fn a_coefficients(q1: u64, q2: u64) -> CoefficientTable {
    let s = BigInt::from(q1 + q2);
    let q = BigInt::from(q1 * q2);
    let sp = |e: i64| if e < 0 { BigInt::zero() } else { pow(s.clone(), e as usize) };
    let rows = (2..=MAX_CLOSED_FORM_K as i64)
        .map(|k| {
            (2..=k)
                .map(|i| {
                    let c1 = BigInt::from(k * (k - 3) / 2);
                    let c2 = BigInt::from(k * k - 8 * k + 14);
                    binom(k, i) * sp(i) - BigInt::from(k) * binom(k - 2, i - 2) * &q * sp(i - 2)
                        + c1 * binom(k - 4, i - 4) * &q * &q * sp(i - 4)
                        - c2 * binom(k - 6, i - 6) * pow(q.clone(), 3) * sp(i - 6)
                })
                .collect()
        })
        .collect();
    CoefficientTable { q1, q2, rows }
}

/// Per-edge tree walk constants `A_4 .. A_14`: `|E| A_{2k}` is `Tr((H H^T)^k)`
/// for any bi-regular graph with these degrees and girth above `2k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AConstantSet {
    pub q1: u64,
    pub q2: u64,
    // values[k - 2] = A_{2k}
    values: Vec<BigInt>,
}

impl AConstantSet {
    /// `A_{2k}` for `2 <= k <= 7`.
    pub fn get(&self, k: u32) -> &BigInt {
        assert!((2..=MAX_CLOSED_FORM_K).contains(&k), "A_{{2k}} tabulated for 2 <= k <= 7");
        &self.values[(k - 2) as usize]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
}

// sum_{i<d+1} q1^i q2^{d-i}, the divided difference (q1^{d+1} - q2^{d+1}) / (q1 - q2).
fn homogeneous(q1: &BigInt, q2: &BigInt, d: usize) -> BigInt {
    (0..=d).map(|i| pow(q1.clone(), i) * pow(q2.clone(), d - i)).sum()
}

// sum_{i<k} (-q)^i = (1 - (-q)^k) / (1 + q)
fn alternating(q: &BigInt, k: usize) -> BigInt {
    (0..k).map(|i| pow(-q.clone(), i)).sum()
}

pub fn a_constants(q1: u64, q2: u64) -> AConstantSet {
    let a = a_coefficients(q1, q2);
    let (b1, b2) = (BigInt::from(q1), BigInt::from(q2));
    let s = BigInt::from(q1 + q2);
    let q = BigInt::from(q1 * q2);
    let one = BigInt::from(1);
    let s1 = &s + &one;

    let a4 = s1.clone();
    let a6 = &s1 * &s1 + &q;
    let a8 = pow(s1.clone(), 3) + &q * (BigInt::from(3) * &s + 2);
    let a10 = -&one + alternating(&b1, 5) + alternating(&b2, 5) - BigInt::from(5) * homogeneous(&b1, &b2, 4)
        + BigInt::from(5) * &s * &a8
        - a.get(5, 3) * &a6
        + a.get(5, 2) * &a4;
    let a12 = -&one + alternating(&b1, 6) + alternating(&b2, 6) + BigInt::from(6) * homogeneous(&b1, &b2, 5)
        + BigInt::from(6) * &s * &a10
        - a.get(6, 4) * &a8
        + a.get(6, 3) * &a6
        - a.get(6, 2) * &a4;
    let a14 = -&one + alternating(&b1, 7) + alternating(&b2, 7) - BigInt::from(7) * homogeneous(&b1, &b2, 6)
        + BigInt::from(7) * &s * &a12
        - a.get(7, 5) * &a10
        + a.get(7, 4) * &a8
        - a.get(7, 3) * &a6
        + a.get(7, 2) * &a4;
    AConstantSet {
        q1,
        q2,
        values: vec![a4, a6, a8, a10, a12, a14],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Closed walks of length 2k from a check node of the infinite bi-regular
    // tree, divided by the check degree.
    fn tree_walk_constant(q1: u64, q2: u64, k: usize) -> BigInt {
        // State: (depth, node kind at depth). Variables sit at odd depth.
        // At depth d > 0 a node has one parent and q children (q2 for
        // checks, q1 for variables); the root check has q2 + 1 children.
        let len = 2 * k;
        let mut ways = vec![BigInt::zero(); len + 1];
        ways[0] = BigInt::from(1);
        for _ in 0..len {
            let mut next = vec![BigInt::zero(); len + 1];
            for d in 0..len {
                if ways[d].is_zero() {
                    continue;
                }
                let children = if d == 0 {
                    q2 + 1
                } else if d % 2 == 1 {
                    q1
                } else {
                    q2
                };
                next[d + 1] += &ways[d] * BigInt::from(children);
                if d > 0 {
                    next[d - 1] += &ways[d];
                }
            }
            ways = next;
        }
        let total = ways[0].clone();
        assert!((&total % BigInt::from(q2 + 1)).is_zero());
        total / BigInt::from(q2 + 1)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn three_five_profile() {
        let a = a_constants(2, 4);
        assert_eq!(a.values(), big(&[7, 57, 503, 4665, 44759, 440217]).as_slice());
    }

    #[test]
    fn small_profiles() {
        let a = a_constants(2, 2);
        assert_eq!((a.get(2), a.get(3)), (&BigInt::from(5), &BigInt::from(29)));
        assert_eq!(a_constants(1, 2).get(2), &BigInt::from(4));
    }

    #[test]
    fn coefficients_three_five() {
        let a = a_coefficients(2, 4);
        assert_eq!(a.get(5, 3), BigInt::from(320));
        assert_eq!(a.get(5, 2), BigInt::from(1440));
        assert_eq!(a.get(6, 4), BigInt::from(492));
        assert_eq!(a.get(4, 3), BigInt::zero());
        assert_eq!(a.get(8, 2), BigInt::zero());
    }

    #[test]
    fn walk_oracle_on_three_five() {
        for k in 2..=7 {
            assert_eq!(a_constants(2, 4).get(k as u32), &tree_walk_constant(2, 4, k), "k = {k}");
        }
    }

    proptest! {
        #[test]
        fn constants_count_tree_walks(q1 in 1u64..9, q2 in 2u64..9) {
            let a = a_constants(q1, q2);
            for k in 2..=7usize {
                prop_assert_eq!(a.get(k as u32), &tree_walk_constant(q1, q2, k), "k = {}", k);
            }
        }
    }
}
