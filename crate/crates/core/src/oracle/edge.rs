use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, Zero};
use rayon::prelude::*;

use super::OracleError;
use crate::matrix::{Girth, TannerGraph};

/// Largest `2|E|` accepted by the edge-matrix legs.
pub const EDGE_DIMENSION_LIMIT: usize = 2000;

/// Non-backtracking matrix on directed edges. Undirected edge `e` becomes
/// `2e` (check to variable) and `2e + 1` (variable to check); `u -> v` is
/// followed by every `v -> w` with `w != u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedEdgeMatrix {
    successors: Vec<Vec<usize>>,
}

impl DirectedEdgeMatrix {
    pub fn dimension(&self) -> usize {
        self.successors.len()
    }

    pub fn successors(&self, e: usize) -> &[usize] {
        &self.successors[e]
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.successors.iter().map(Vec::len).collect()
    }
}

pub fn build_edge_matrix(g: &TannerGraph) -> DirectedEdgeMatrix {
    // Directed edge leaving `node` along undirected edge `e`.
    let leaving = |e: usize, node: usize| if g.edge(e).0 == node { 2 * e } else { 2 * e + 1 };
    let successors = (0..2 * g.edge_count())
        .map(|d| {
            let e = d / 2;
            let (c, v) = g.edge(e);
            let head = if d % 2 == 0 { v } else { c };
            g.incident_edges(head)
                .iter()
                .filter(|&&f| f != e)
                .map(|&f| leaving(f, head))
                .collect()
        })
        .collect();
    DirectedEdgeMatrix { successors }
}

fn closed_walks<T: Clone + Zero + CheckedAdd + From<u8>>(ae: &DirectedEdgeMatrix, start: usize, max_len: usize) -> Option<Vec<T>> {
    let dim = ae.dimension();
    let mut cur = vec![T::zero(); dim];
    cur[start] = T::from(1u8);
    let mut out = Vec::with_capacity(max_len);
    for _ in 0..max_len {
        let mut next = vec![T::zero(); dim];
        for (e, x) in cur.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &f in ae.successors(e) {
                next[f] = next[f].checked_add(x)?;
            }
        }
        out.push(next[start].clone());
        cur = next;
    }
    Some(out)
}

/// Exact `Tr(A_e^L)` for `L = 0..=max_len`.
pub fn edge_traces(ae: &DirectedEdgeMatrix, max_len: u32) -> Result<Vec<BigInt>, OracleError> {
    if ae.dimension() > EDGE_DIMENSION_LIMIT {
        return Err(OracleError::BudgetExceeded {
            what: format!("edge matrix of dimension {}", ae.dimension()),
            limit: EDGE_DIMENSION_LIMIT as u64,
        });
    }
    let len = max_len as usize;
    let per_start: Vec<Vec<BigInt>> = (0..ae.dimension())
        .into_par_iter()
        .map(|s| match closed_walks::<u128>(ae, s, len) {
            Some(v) => v.into_iter().map(BigInt::from).collect(),
            None => closed_walks::<BigInt>(ae, s, len).expect("big integers do not overflow"),
        })
        .collect();
    let mut traces = vec![BigInt::from(ae.dimension())];
    for l in 0..len {
        traces.push(per_start.iter().map(|v| &v[l]).sum());
    }
    Ok(traces)
}

/// Cycle counts read off non-backtracking closed walks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeTraceCount {
    /// `traces[L] = Tr(A_e^L)`.
    pub traces: Vec<BigInt>,
    /// Shortest length with a nonzero trace, which is the girth.
    pub girth: Girth,
    /// Whether the girth lies within the computed lengths.
    pub girth_resolved: bool,
    /// `N_{2k} = Tr(A_e^{2k}) / 4k` for `2k < 2g`, keyed by `2k`.
    pub counts: BTreeMap<u32, BigInt>,
    pub odd_traces_vanish: bool,
}

/// Counts `N_{2k}` for `2 <= k <= max_k` from traces of `A_e` powers.
pub fn count_from_edge_spectrum(ae: &DirectedEdgeMatrix, max_k: u32) -> Result<EdgeTraceCount, OracleError> {
    let traces = edge_traces(ae, 2 * max_k)?;
    let first = (1..traces.len()).find(|&l| !traces[l].is_zero());
    let girth = first.map_or(Girth::Infinite, |l| Girth::Finite(l as u32));
    let odd_traces_vanish = traces.iter().skip(1).step_by(2).all(Zero::is_zero);
    let mut counts = BTreeMap::new();
    for k in 2..=max_k {
        let len = 2 * k;
        if !girth.certifies(k) {
            break;
        }
        let (q, r) = traces[len as usize].div_rem(&BigInt::from(2 * len));
        if !r.is_zero() {
            return Err(OracleError::IndivisibleTrace {
                length: len,
                trace: traces[len as usize].to_string(),
            });
        }
        counts.insert(len, q);
    }
    Ok(EdgeTraceCount {
        traces,
        girth,
        girth_resolved: first.is_some(),
        counts,
        odd_traces_vanish,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{build_tanner_graph, ScalarParityMatrix};

    fn graph(rows: &[Vec<u8>]) -> TannerGraph {
        build_tanner_graph(&ScalarParityMatrix::from_dense(rows).unwrap())
    }

    #[test]
    fn square() {
        let ae = build_edge_matrix(&graph(&[vec![1, 1], vec![1, 1]]));
        assert_eq!(ae.dimension(), 8);
        assert!(ae.row_sums().iter().all(|&r| r == 1));
        let c = count_from_edge_spectrum(&ae, 3).unwrap();
        assert_eq!(c.traces[4], BigInt::from(8));
        assert_eq!(c.counts[&4], BigInt::from(1));
        // A 4-cycle has girth 4, so only 2k = 4, 6 are below 2g.
        assert_eq!(c.counts.len(), 2);
    }

    #[test]
    fn k33() {
        let ae = build_edge_matrix(&graph(&vec![vec![1; 3]; 3]));
        assert_eq!(ae.dimension(), 18);
        assert!(ae.row_sums().iter().all(|&r| r == 2));
        let c = count_from_edge_spectrum(&ae, 3).unwrap();
        assert_eq!(c.girth, Girth::Finite(4));
        assert!(c.odd_traces_vanish);
        assert_eq!(c.counts, BTreeMap::from([(4, BigInt::from(9)), (6, BigInt::from(6))]));
    }

    #[test]
    fn successors_never_backtrack() {
        let g = graph(&[vec![1, 1, 1, 0], vec![0, 1, 1, 1], vec![1, 0, 1, 1]]);
        let ae = build_edge_matrix(&g);
        for d in 0..ae.dimension() {
            for &f in ae.successors(d) {
                assert_ne!(f / 2, d / 2);
                let (c, v) = g.edge(d / 2);
                let head = if d % 2 == 0 { v } else { c };
                let (c2, v2) = g.edge(f / 2);
                let tail = if f % 2 == 0 { c2 } else { v2 };
                assert_eq!(head, tail);
            }
        }
    }

    #[test]
    fn forest_has_no_closed_walks() {
        let ae = build_edge_matrix(&graph(&[vec![1, 1, 0], vec![0, 1, 1]]));
        let c = count_from_edge_spectrum(&ae, 4).unwrap();
        assert_eq!(c.girth, Girth::Infinite);
        assert!(!c.girth_resolved);
        assert!(c.counts.values().all(Zero::is_zero));
    }
}
