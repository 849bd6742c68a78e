use num_bigint::BigInt;
use num_traits::Zero;

/// `S_{alpha,1..K}` for a single shifted eigenvalue: `S_1 = alpha`,
/// `S_2 = alpha^2 - 2 q1 q2`, `S_k = alpha S_{k-1} - q1 q2 S_{k-2}`.
pub fn s_sequence(alpha: &BigInt, q1q2: &BigInt, max_k: usize) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = Vec::with_capacity(max_k);
    // S_0 = 2 (two roots of xi^2 - alpha xi + q1 q2).
    let mut prev2 = BigInt::from(2);
    let mut prev1 = alpha.clone();
    for k in 1..=max_k {
        if k == 1 {
            out.push(prev1.clone());
            continue;
        }
        let next = alpha * &prev1 - q1q2 * &prev2;
        prev2 = std::mem::replace(&mut prev1, next.clone());
        out.push(next);
    }
    out
}

/// Coefficients of `S_{alpha,k}` as a polynomial in `alpha`, for `k = 0..=K`:
/// `result[k][j]` multiplies `alpha^j`. Summing `result[k][j] E_j` over `j`
/// gives `sum_alpha S_{alpha,k}` from moment tables alone.
pub fn s_polynomials(q1q2: &BigInt, max_k: usize) -> Vec<Vec<BigInt>> {
    let mut polys: Vec<Vec<BigInt>> = vec![vec![BigInt::from(2)]];
    if max_k >= 1 {
        polys.push(vec![BigInt::zero(), BigInt::from(1)]);
    }
    for k in 2..=max_k {
        let mut next = vec![BigInt::zero(); k + 1];
        for (j, c) in polys[k - 1].iter().enumerate() {
            next[j + 1] += c;
        }
        for (j, c) in polys[k - 2].iter().enumerate() {
            next[j] -= q1q2 * c;
        }
        polys.push(next);
    }
    polys
}
