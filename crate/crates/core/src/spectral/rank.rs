use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::matrix::ScalarParityMatrix;

/// Rank over the rationals by fraction-free (Bareiss) elimination with
/// partial pivoting on magnitude. Eliminates over the shorter dimension.
pub fn exact_rank(h: &ScalarParityMatrix) -> usize {
    let dense = if h.m() <= h.n() {
        h.to_dense()
    } else {
        h.transpose().to_dense()
    };
    let mut a: Vec<Vec<BigInt>> = dense
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect();
    bareiss_rank(&mut a)
}

/// Reduces `a` in place to fraction-free row echelon form and returns its rank.
pub(crate) fn bareiss_rank(a: &mut [Vec<BigInt>]) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows)
            .filter(|&r| !a[r][c].is_zero())
            .max_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()).then(y.cmp(&x)));
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let piv = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                let v = &piv * &row[j] - &factor * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = piv;
        rank += 1;
    }
    rank
}
