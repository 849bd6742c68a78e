#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tanner_cycles::matrix::{bfs_girth, build_tanner_graph, connected_components, PolynomialParityMatrix, ScalarParityMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `(variable degree, check degree, m, n)` with `m <= max_m`, `n <= max_n`
/// and room for a simple graph.
pub fn shapes(max_m: usize, max_n: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for dv in 2..=5 {
        for dc in 3..=5 {
            for m in 1..=max_m {
                if (m * dc) % dv != 0 {
                    continue;
                }
                let n = m * dc / dv;
                if n <= max_n && m >= dv && n >= dc {
                    out.push((dv, dc, m, n));
                }
            }
        }
    }
    out
}

// Configuration-model pairing; `None` when it produced a repeated edge.
fn try_pairing(rng: &mut ChaCha8Rng, dv: usize, dc: usize, m: usize, n: usize) -> Option<ScalarParityMatrix> {
    let mut check_stubs: Vec<usize> = (0..m).flat_map(|r| std::iter::repeat_n(r, dc)).collect();
    check_stubs.shuffle(rng);
    let mut rows = vec![Vec::new(); m];
    for (i, &r) in check_stubs.iter().enumerate() {
        let c = i / dv;
        if rows[r].contains(&c) {
            return None;
        }
        rows[r].push(c);
    }
    for row in &mut rows {
        row.sort_unstable();
    }
    ScalarParityMatrix::new(m, n, rows).ok()
}

/// Random connected bi-regular matrix with `m <= max_m`, `n <= max_n`.
pub fn random_biregular(rng: &mut ChaCha8Rng, max_m: usize, max_n: usize) -> ScalarParityMatrix {
    let all = shapes(max_m, max_n);
    loop {
        let &(dv, dc, m, n) = all.choose(rng).expect("some shape fits");
        for _ in 0..200 {
            if let Some(h) = try_pairing(rng, dv, dc, m, n) {
                if connected_components(&h).len() == 1 {
                    return h;
                }
            }
        }
    }
}

/// Random `3 x n_v` matrix of monomials with lifting `N`; each exponent
/// uniform in `[0, N)`.
pub fn random_monomial_qc(rng: &mut ChaCha8Rng, n_v: usize, lifting: usize) -> PolynomialParityMatrix {
    let rows: Vec<Vec<u32>> = (0..3)
        .map(|_| (0..n_v).map(|_| rng.gen_range(0..lifting as u32)).collect())
        .collect();
    PolynomialParityMatrix::monomial(lifting, &rows).unwrap()
}

/// Random `n_c x n_v` matrix whose entries are zero, one or two distinct
/// monomials; not necessarily bi-regular.
pub fn random_sparse_qc(rng: &mut ChaCha8Rng, n_c: usize, n_v: usize, lifting: usize) -> PolynomialParityMatrix {
    let entries = (0..n_c)
        .map(|_| {
            (0..n_v)
                .map(|_| {
                    let terms = rng.gen_range(0..=2usize.min(lifting));
                    let mut e: Vec<u32> = (0..lifting as u32).collect();
                    e.shuffle(rng);
                    e.truncate(terms);
                    e
                })
                .collect()
        })
        .collect();
    PolynomialParityMatrix::new(n_c, n_v, lifting, entries).unwrap()
}

/// Like [`random_biregular`], resampling until the girth is at least
/// `min_girth`. Shapes that never reached it after a few hundred tries are
/// dropped from the pool.
pub fn random_biregular_with_girth(
    rng: &mut ChaCha8Rng,
    max_m: usize,
    max_n: usize,
    min_girth: u32,
) -> ScalarParityMatrix {
    let mut pool = shapes(max_m, max_n);
    while !pool.is_empty() {
        let idx = rng.gen_range(0..pool.len());
        let (dv, dc, m, n) = pool[idx];
        for _ in 0..400 {
            let Some(h) = try_pairing(rng, dv, dc, m, n) else { continue };
            if connected_components(&h).len() != 1 {
                continue;
            }
            if bfs_girth(&build_tanner_graph(&h)).at_least(min_girth) {
                return h;
            }
        }
        pool.swap_remove(idx);
    }
    panic!("no shape reaches girth {min_girth}");
}
