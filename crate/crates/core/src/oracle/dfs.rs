use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::OracleError;
use crate::matrix::TannerGraph;

pub const DEFAULT_DFS_BUDGET: u64 = 500_000_000;
pub const DFS_BUDGET_ENV: &str = "TANNER_CYCLES_DFS_BUDGET";

/// Node-expansion cap, from the environment when set.
pub fn dfs_budget() -> u64 {
    std::env::var(DFS_BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DFS_BUDGET)
}

const FLUSH: u64 = 4096;

struct Search<'a> {
    g: &'a TannerGraph,
    anchor: usize,
    max_len: usize,
    on_path: Vec<bool>,
    path: Vec<usize>,
    counts: Vec<u64>,
    pending: u64,
    spent: &'a AtomicU64,
    budget: u64,
}

impl Search<'_> {
    fn charge(&mut self) -> bool {
        self.pending += 1;
        if self.pending == FLUSH {
            let total = self.spent.fetch_add(FLUSH, Ordering::Relaxed) + FLUSH;
            self.pending = 0;
            return total <= self.budget;
        }
        true
    }

    fn extend(&mut self, u: usize) -> bool {
        let len = self.path.len(); // edges used after stepping on: len
        for &w in self.g.neighbors(u) {
            if w == self.anchor {
                // Count each cycle once: second node below the last one.
                if len >= 4 && len.is_multiple_of(2) && self.path[1] < u {
                    self.counts[len] += 1;
                }
                continue;
            }
            if w < self.anchor || self.on_path[w] || len >= self.max_len {
                continue;
            }
            if !self.charge() {
                return false;
            }
            self.on_path[w] = true;
            self.path.push(w);
            let ok = self.extend(w);
            self.path.pop();
            self.on_path[w] = false;
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Simple cycles of every even length `4..=max_len`, each counted once: a
/// cycle is enumerated from its smallest node, in the direction whose second
/// node is the smaller of the anchor's two cycle neighbours.
pub fn dfs_cycle_count(g: &TannerGraph, max_len: u32, budget: u64) -> Result<BTreeMap<u32, u64>, OracleError> {
    let max_len = max_len as usize;
    let spent = AtomicU64::new(0);
    let per_anchor: Vec<Option<Vec<u64>>> = (0..g.node_count())
        .into_par_iter()
        .map(|anchor| {
            let mut s = Search {
                g,
                anchor,
                max_len,
                on_path: vec![false; g.node_count()],
                path: vec![anchor],
                counts: vec![0; max_len + 1],
                pending: 0,
                spent: &spent,
                budget,
            };
            s.on_path[anchor] = true;
            let ok = s.extend(anchor);
            spent.fetch_add(s.pending, Ordering::Relaxed);
            ok.then_some(s.counts)
        })
        .collect();
    if per_anchor.iter().any(Option::is_none) || spent.load(Ordering::Relaxed) > budget {
        return Err(OracleError::BudgetExceeded {
            what: "cycle enumeration".into(),
            limit: budget,
        });
    }
    let mut out: BTreeMap<u32, u64> = (4..=max_len).step_by(2).map(|l| (l as u32, 0)).collect();
    for counts in per_anchor.into_iter().flatten() {
        for (len, c) in counts.into_iter().enumerate() {
            if c > 0 {
                *out.entry(len as u32).or_default() += c;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{build_tanner_graph, ScalarParityMatrix};

    #[test]
    fn k33() {
        let g = build_tanner_graph(&ScalarParityMatrix::from_dense(&vec![vec![1u8; 3]; 3]).unwrap());
        let c = dfs_cycle_count(&g, 6, DEFAULT_DFS_BUDGET).unwrap();
        assert_eq!(c, BTreeMap::from([(4, 9), (6, 6)]));
    }

    #[test]
    fn single_cycle_and_tree() {
        let square = build_tanner_graph(&ScalarParityMatrix::from_dense(&[[1u8, 1], [1, 1]]).unwrap());
        assert_eq!(dfs_cycle_count(&square, 8, 100).unwrap(), BTreeMap::from([(4, 1), (6, 0), (8, 0)]));
        let path = build_tanner_graph(&ScalarParityMatrix::from_dense(&[[1u8, 1, 0], [0, 1, 1]]).unwrap());
        assert!(dfs_cycle_count(&path, 10, 100).unwrap().values().all(|&c| c == 0));
    }

    #[test]
    fn complete_bipartite_k44() {
        // Cycles of length 2l in K_{a,b}: C(a,l) C(b,l) l! (l-1)! / 2.
        let g = build_tanner_graph(&ScalarParityMatrix::from_dense(&vec![vec![1u8; 4]; 4]).unwrap());
        let c = dfs_cycle_count(&g, 8, DEFAULT_DFS_BUDGET).unwrap();
        assert_eq!(c, BTreeMap::from([(4, 36), (6, 96), (8, 72)]));
    }

    #[test]
    fn budget_is_enforced() {
        let g = build_tanner_graph(&ScalarParityMatrix::from_dense(&vec![vec![1u8; 5]; 5]).unwrap());
        assert!(matches!(
            dfs_cycle_count(&g, 10, 10),
            Err(OracleError::BudgetExceeded { limit: 10, .. })
        ));
    }
}
