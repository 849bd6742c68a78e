//! Reference quasi-cyclic matrices: the (3,5)-regular Tanner [155,91,20]
//! code and the 3 x n monomial family of girth 6.

use std::collections::BTreeSet;

use crate::matrix::{MatrixError, PolynomialParityMatrix};

/// Exponents of the Tanner [155,91,20] code, lifting factor 31.
pub const TANNER_155_EXPONENTS: [[u32; 5]; 3] = [
    [1, 2, 4, 8, 16],
    [5, 10, 20, 9, 18],
    [25, 19, 7, 14, 28],
];

pub fn tanner_155() -> PolynomialParityMatrix {
    let rows: Vec<Vec<u32>> = TANNER_155_EXPONENTS.iter().map(|r| r.to_vec()).collect();
    PolynomialParityMatrix::monomial(31, &rows).expect("fixed fixture is valid")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialFixture {
    pub matrix: PolynomialParityMatrix,
    /// Whether `{i_1..i_{n-1}} = {1 - i_1, .., n-1 - i_{n-1}} = {1..n-1}` mod n.
    pub condition_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FixtureError {
    #[error("n must be odd and at least 3, got {0}")]
    BadOrder(usize),
    #[error("expected {expected} exponents, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// The 3 x n matrix `[[1 .. 1], [1, x, .., x^{n-1}], [1, x^{i_1}, .., x^{i_{n-1}}]]`
/// modulo `x^n - 1`. Exponents are reduced mod n.
pub fn generate_monomial_fixture(
    n: usize,
    exponents: &[u32],
) -> Result<MonomialFixture, FixtureError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(FixtureError::BadOrder(n));
    }
    if exponents.len() != n - 1 {
        return Err(FixtureError::WrongLength {
            expected: n - 1,
            got: exponents.len(),
        });
    }
    let reduced: Vec<u32> = exponents.iter().map(|&e| e % n as u32).collect();
    let first = vec![0u32; n];
    let second: Vec<u32> = (0..n as u32).collect();
    let third: Vec<u32> = std::iter::once(0).chain(reduced.iter().copied()).collect();
    let matrix = PolynomialParityMatrix::monomial(n, &[first, second, third])?;

    let want: BTreeSet<u32> = (1..n as u32).collect();
    let exps: BTreeSet<u32> = reduced.iter().copied().collect();
    let diffs: BTreeSet<u32> = reduced
        .iter()
        .enumerate()
        .map(|(t, &e)| ((t as i64 + 1 - e as i64).rem_euclid(n as i64)) as u32)
        .collect();
    Ok(MonomialFixture {
        matrix,
        condition_holds: exps == want && diffs == want,
    })
}

/// The family member with `i_t = n - t`, i.e. third row `1, x^{n-1}, .., x`.
pub fn monomial_family(n: usize) -> Result<MonomialFixture, FixtureError> {
    let exps: Vec<u32> = (1..n).map(|t| (n - t) as u32).collect();
    generate_monomial_fixture(n, &exps)
}
