//! Parity-check matrices in scalar and polynomial (quasi-cyclic) form, the
//! Tanner graph they define, and the bi-regularity / connectivity checks the
//! spectral cycle formulas rely on.
//!
//! Circulant convention: exponent `e` in a polynomial entry stands for the
//! `N x N` identity with its rows shifted cyclically to the left by `e`, so
//! row `r` of the block has its single 1 in column `(r + e) mod N`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::spectral::exact_rank;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("column index {col} out of range for a matrix with {n} columns (row {row})")]
    ColumnOutOfRange { row: usize, col: usize, n: usize },
    #[error("row {row} lists column {col} more than once")]
    DuplicateEntry { row: usize, col: usize },
    #[error("expected {expected} rows, got {got}")]
    RowCountMismatch { expected: usize, got: usize },
    #[error("exponent {exponent} in entry ({row}, {col}) is outside [0, {lifting})")]
    ExponentOutOfRange {
        row: usize,
        col: usize,
        exponent: u64,
        lifting: usize,
    },
    #[error("entry ({row}, {col}) repeats exponent {exponent}")]
    DuplicateExponent { row: usize, col: usize, exponent: u32 },
    #[error("lifting factor must be at least 1")]
    ZeroLifting,
    #[error("matrix has no rows or no columns")]
    Empty,
    #[error("matrix is not bi-regular: {0}")]
    NotBiregular(String),
    #[error("degrees too small: variable degree {variable_degree}, check degree {check_degree} (need >= 2 and >= 3)")]
    DegreeTooSmall {
        variable_degree: usize,
        check_degree: usize,
    },
    #[error("Tanner graph is disconnected ({components} components)")]
    Disconnected { components: usize },
}

/// Sparse binary `m x n` parity-check matrix; row `i` lists the columns of its 1-entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScalarParityMatrix {
    m: usize,
    n: usize,
    rows: Vec<Vec<usize>>,
}

impl ScalarParityMatrix {
    /// Builds a matrix from row supports. Supports are sorted; duplicates and
    /// out-of-range columns are rejected.
    pub fn new(m: usize, n: usize, rows: Vec<Vec<usize>>) -> Result<Self, MatrixError> {
        if rows.len() != m {
            return Err(MatrixError::RowCountMismatch {
                expected: m,
                got: rows.len(),
            });
        }
        let mut rows = rows;
        for (r, row) in rows.iter_mut().enumerate() {
            row.sort_unstable();
            for w in row.windows(2) {
                if w[0] == w[1] {
                    return Err(MatrixError::DuplicateEntry { row: r, col: w[0] });
                }
            }
            if let Some(&c) = row.last() {
                if c >= n {
                    return Err(MatrixError::ColumnOutOfRange { row: r, col: c, n });
                }
            }
        }
        Ok(Self { m, n, rows })
    }

    /// Builds a matrix from a dense 0/1 array. Any nonzero entry counts as a 1.
    pub fn from_dense<R: AsRef<[u8]>>(dense: &[R]) -> Result<Self, MatrixError> {
        let m = dense.len();
        let n = dense.first().map_or(0, |r| r.as_ref().len());
        let mut rows = Vec::with_capacity(m);
        for (r, row) in dense.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(MatrixError::ColumnOutOfRange {
                    row: r,
                    col: row.len().saturating_sub(1),
                    n,
                });
            }
            rows.push(
                row.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(c, _)| c)
                    .collect(),
            );
        }
        Self::new(m, n, rows)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> &[usize] {
        &self.rows[r]
    }

    /// Column supports, each sorted ascending.
    pub fn columns(&self) -> Vec<Vec<usize>> {
        let mut cols = vec![Vec::new(); self.n];
        for (r, row) in self.rows.iter().enumerate() {
            for &c in row {
                cols[c].push(r);
            }
        }
        cols
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn column_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.n];
        for row in &self.rows {
            for &c in row {
                w[c] += 1;
            }
        }
        w
    }

    /// Number of 1-entries, i.e. Tanner graph edges.
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].binary_search(&c).is_ok()
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut out = vec![vec![0u8; self.n]; self.m];
        for (r, row) in self.rows.iter().enumerate() {
            for &c in row {
                out[r][c] = 1;
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self {
            m: self.n,
            n: self.m,
            rows: self.columns(),
        }
    }

    /// Keeps the listed rows and columns (in the given order), renumbering both.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut col_map = vec![usize::MAX; self.n];
        for (new, &old) in cols.iter().enumerate() {
            col_map[old] = new;
        }
        let new_rows = rows
            .iter()
            .map(|&r| {
                let mut row: Vec<usize> = self.rows[r]
                    .iter()
                    .filter_map(|&c| (col_map[c] != usize::MAX).then_some(col_map[c]))
                    .collect();
                row.sort_unstable();
                row
            })
            .collect();
        Self {
            m: rows.len(),
            n: cols.len(),
            rows: new_rows,
        }
    }

    /// Applies `row_perm[old] = new` and `col_perm[old] = new`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let mut rows = vec![Vec::new(); self.m];
        for (r, row) in self.rows.iter().enumerate() {
            let mut mapped: Vec<usize> = row.iter().map(|&c| col_perm[c]).collect();
            mapped.sort_unstable();
            rows[row_perm[r]] = mapped;
        }
        Self {
            m: self.m,
            n: self.n,
            rows,
        }
    }
}

impl fmt::Display for ScalarParityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let line: String = row.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// `n_c x n_v` matrix of binary polynomials modulo `x^N - 1`, each entry
/// stored as its sorted exponent set (empty = zero polynomial).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolynomialParityMatrix {
    n_c: usize,
    n_v: usize,
    lifting: usize,
    entries: Vec<Vec<Vec<u32>>>,
}

impl PolynomialParityMatrix {
    pub fn new(
        n_c: usize,
        n_v: usize,
        lifting: usize,
        entries: Vec<Vec<Vec<u32>>>,
    ) -> Result<Self, MatrixError> {
        if lifting == 0 {
            return Err(MatrixError::ZeroLifting);
        }
        if entries.len() != n_c {
            return Err(MatrixError::RowCountMismatch {
                expected: n_c,
                got: entries.len(),
            });
        }
        let mut entries = entries;
        for (i, row) in entries.iter_mut().enumerate() {
            if row.len() != n_v {
                return Err(MatrixError::ColumnOutOfRange {
                    row: i,
                    col: row.len().saturating_sub(1),
                    n: n_v,
                });
            }
            for (j, exps) in row.iter_mut().enumerate() {
                exps.sort_unstable();
                for w in exps.windows(2) {
                    if w[0] == w[1] {
                        return Err(MatrixError::DuplicateExponent {
                            row: i,
                            col: j,
                            exponent: w[0],
                        });
                    }
                }
                if let Some(&e) = exps.last() {
                    if e as usize >= lifting {
                        return Err(MatrixError::ExponentOutOfRange {
                            row: i,
                            col: j,
                            exponent: e as u64,
                            lifting,
                        });
                    }
                }
            }
        }
        Ok(Self {
            n_c,
            n_v,
            lifting,
            entries,
        })
    }

    /// Matrix whose every entry is the single monomial `x^exponents[i][j]`.
    pub fn monomial(lifting: usize, exponents: &[Vec<u32>]) -> Result<Self, MatrixError> {
        let n_c = exponents.len();
        let n_v = exponents.first().map_or(0, Vec::len);
        let entries = exponents
            .iter()
            .map(|row| row.iter().map(|&e| vec![e]).collect())
            .collect();
        Self::new(n_c, n_v, lifting, entries)
    }

    pub fn n_c(&self) -> usize {
        self.n_c
    }

    pub fn n_v(&self) -> usize {
        self.n_v
    }

    pub fn lifting(&self) -> usize {
        self.lifting
    }

    pub fn entry(&self, i: usize, j: usize) -> &[u32] {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Vec<u32>>] {
        &self.entries
    }

    /// True when every entry is a single monomial.
    pub fn is_monomial(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.len() == 1)
    }

    /// Coefficient block `H_s` (an `n_c x n_v` 0/1 matrix) of `x^s`.
    pub fn coefficient_block(&self, s: usize) -> Vec<Vec<u8>> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|exps| u8::from(exps.binary_search(&(s as u32)).is_ok()))
                    .collect()
            })
            .collect()
    }
}

/// Expands `H(x)` into its `n_c N x n_v N` array of circulants.
pub fn expand_qc(pm: &PolynomialParityMatrix) -> ScalarParityMatrix {
    let big_n = pm.lifting;
    let mut rows = Vec::with_capacity(pm.n_c * big_n);
    for i in 0..pm.n_c {
        for r in 0..big_n {
            let mut row = Vec::new();
            for j in 0..pm.n_v {
                for &e in &pm.entries[i][j] {
                    row.push(j * big_n + (r + e as usize) % big_n);
                }
            }
            row.sort_unstable();
            rows.push(row);
        }
    }
    ScalarParityMatrix {
        m: pm.n_c * big_n,
        n: pm.n_v * big_n,
        rows,
    }
}

/// Builds the block-circulant form whose `(a, b)` block is `H_{(a - b) mod N}`,
/// with `H_0 + H_1 x + ... + H_{N-1} x^{N-1} = H(x)`.
///
/// Relative to [`expand_qc`], scalar row `i N + r` lands on `((N - r) mod N) n_c + i`
/// and column `j N + c` on `((N - c) mod N) n_v + j`; see [`block_circulant_permutation`].
pub fn reorder_to_block_circulant(pm: &PolynomialParityMatrix) -> ScalarParityMatrix {
    let (n_c, n_v, big_n) = (pm.n_c, pm.n_v, pm.lifting);
    let mut rows = Vec::with_capacity(n_c * big_n);
    for a in 0..big_n {
        for i in 0..n_c {
            let mut row = Vec::new();
            for j in 0..n_v {
                for &e in &pm.entries[i][j] {
                    let b = (a + big_n - e as usize) % big_n;
                    row.push(b * n_v + j);
                }
            }
            row.sort_unstable();
            rows.push(row);
        }
    }
    ScalarParityMatrix {
        m: n_c * big_n,
        n: n_v * big_n,
        rows,
    }
}

/// Row and column permutations (`perm[old] = new`) taking the output of
/// [`expand_qc`] to the output of [`reorder_to_block_circulant`].
pub fn block_circulant_permutation(pm: &PolynomialParityMatrix) -> (Vec<usize>, Vec<usize>) {
    let (n_c, n_v, big_n) = (pm.n_c, pm.n_v, pm.lifting);
    let mut row_perm = vec![0; n_c * big_n];
    for i in 0..n_c {
        for r in 0..big_n {
            row_perm[i * big_n + r] = ((big_n - r) % big_n) * n_c + i;
        }
    }
    let mut col_perm = vec![0; n_v * big_n];
    for j in 0..n_v {
        for c in 0..big_n {
            col_perm[j * big_n + c] = ((big_n - c) % big_n) * n_v + j;
        }
    }
    (row_perm, col_perm)
}

/// Degree profile of a connected bi-regular Tanner graph together with the
/// rank of its parity-check matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiregularProfile {
    /// Variable-node degree minus one.
    pub q1: u64,
    /// Check-node degree minus one.
    pub q2: u64,
    /// Check nodes.
    pub m: u64,
    /// Variable nodes.
    pub n: u64,
    pub edge_count: u64,
    /// Rank of `H` over the rationals.
    pub rank: u64,
    pub connected: bool,
}

impl BiregularProfile {
    pub fn q_sum(&self) -> u64 {
        self.q1 + self.q2
    }

    pub fn q_product(&self) -> u64 {
        self.q1 * self.q2
    }

    /// Largest eigenvalue of `H H^T` for a connected bi-regular graph.
    pub fn perron_value(&self) -> u64 {
        (self.q1 + 1) * (self.q2 + 1)
    }
}

fn degree_profile(h: &ScalarParityMatrix) -> Result<(u64, u64), MatrixError> {
    if h.m == 0 || h.n == 0 {
        return Err(MatrixError::Empty);
    }
    let rw = h.row_weights();
    let cw = h.column_weights();
    let dc = rw[0];
    let dv = cw[0];
    if let Some((r, &w)) = rw.iter().enumerate().find(|(_, &w)| w != dc) {
        return Err(MatrixError::NotBiregular(format!(
            "row {r} has weight {w}, row 0 has weight {dc}"
        )));
    }
    if let Some((c, &w)) = cw.iter().enumerate().find(|(_, &w)| w != dv) {
        return Err(MatrixError::NotBiregular(format!(
            "column {c} has weight {w}, column 0 has weight {dv}"
        )));
    }
    if dv < 2 || dc < 3 {
        return Err(MatrixError::DegreeTooSmall {
            variable_degree: dv,
            check_degree: dc,
        });
    }
    Ok((dv as u64 - 1, dc as u64 - 1))
}

/// Checks uniform row/column weights, minimum degrees and connectivity, and
/// computes the exact rank. Disconnected graphs are rejected.
pub fn validate_biregular(h: &ScalarParityMatrix) -> Result<BiregularProfile, MatrixError> {
    let profile = validate_biregular_allow_disconnected(h)?;
    if !profile.connected {
        return Err(MatrixError::Disconnected {
            components: connected_components(h).len(),
        });
    }
    Ok(profile)
}

/// Same as [`validate_biregular`] but reports disconnection through the
/// `connected` flag instead of failing.
pub fn validate_biregular_allow_disconnected(
    h: &ScalarParityMatrix,
) -> Result<BiregularProfile, MatrixError> {
    let (q1, q2) = degree_profile(h)?;
    let edge_count = h.nnz() as u64;
    debug_assert_eq!(edge_count, h.n as u64 * (q1 + 1));
    debug_assert_eq!(edge_count, h.m as u64 * (q2 + 1));
    let connected = connected_components(h).len() == 1;
    Ok(BiregularProfile {
        q1,
        q2,
        m: h.m as u64,
        n: h.n as u64,
        edge_count,
        rank: exact_rank(h) as u64,
        connected,
    })
}

/// Connected components as (check rows, variable columns), both ascending,
/// ordered by their smallest node (checks first, then variables).
pub fn connected_components(h: &ScalarParityMatrix) -> Vec<(Vec<usize>, Vec<usize>)> {
    let g = build_tanner_graph(h);
    let mut comp = vec![usize::MAX; g.node_count()];
    let mut out = Vec::new();
    for start in 0..g.node_count() {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut checks = Vec::new();
        let mut vars = Vec::new();
        let mut queue = VecDeque::from([start]);
        comp[start] = id;
        while let Some(u) = queue.pop_front() {
            if u < g.m {
                checks.push(u);
            } else {
                vars.push(u - g.m);
            }
            for &w in g.neighbors(u) {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    queue.push_back(w);
                }
            }
        }
        checks.sort_unstable();
        vars.sort_unstable();
        out.push((checks, vars));
    }
    out
}

/// Undirected Tanner graph: nodes `0..m` are checks, `m..m+n` variables.
/// Edge ids follow the row-major order of the 1-entries of `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerGraph {
    m: usize,
    n: usize,
    adjacency: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl TannerGraph {
    pub fn node_count(&self) -> usize {
        self.m + self.n
    }

    pub fn check_count(&self) -> usize {
        self.m
    }

    pub fn variable_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted neighbours of `node`.
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    /// Ids of the edges at `node`, aligned with [`Self::neighbors`].
    pub fn incident_edges(&self, node: usize) -> &[usize] {
        &self.incident[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    /// Edge `(check node, variable node)` with graph node numbering.
    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

pub fn build_tanner_graph(h: &ScalarParityMatrix) -> TannerGraph {
    let (m, n) = (h.m, h.n);
    let mut edges = Vec::with_capacity(h.nnz());
    for (r, row) in h.rows.iter().enumerate() {
        for &c in row {
            edges.push((r, m + c));
        }
    }
    let mut pairs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m + n];
    for (id, &(u, v)) in edges.iter().enumerate() {
        pairs[u].push((v, id));
        pairs[v].push((u, id));
    }
    let mut adjacency = Vec::with_capacity(m + n);
    let mut incident = Vec::with_capacity(m + n);
    for mut p in pairs {
        p.sort_unstable();
        adjacency.push(p.iter().map(|&(w, _)| w).collect());
        incident.push(p.iter().map(|&(_, e)| e).collect());
    }
    TannerGraph {
        m,
        n,
        adjacency,
        incident,
        edges,
    }
}

/// Length of the shortest cycle, or infinite for a forest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(u32),
    Infinite,
}

impl Girth {
    pub fn value(self) -> Option<u32> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }

    /// Whether a length-`2k` count lies strictly below twice the girth, the
    /// range in which non-backtracking walk counts are exactly cycle counts.
    pub fn certifies(self, k: u32) -> bool {
        match self {
            Girth::Finite(g) => k < g,
            Girth::Infinite => true,
        }
    }

    pub fn at_least(self, len: u32) -> bool {
        match self {
            Girth::Finite(g) => g >= len,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

/// Girth by a breadth-first search from every node.
pub fn bfs_girth(g: &TannerGraph) -> Girth {
    let nodes = g.node_count();
    let mut best = u32::MAX;
    let mut dist = vec![u32::MAX; nodes];
    let mut parent = vec![usize::MAX; nodes];
    let mut queue = VecDeque::new();
    for root in 0..nodes {
        dist.fill(u32::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        'bfs: while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in &g.adjacency[u] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if w != parent[u] {
                    best = best.min(dist[u] + dist[w] + 1);
                    if best == 4 {
                        break 'bfs;
                    }
                }
            }
        }
        if best == 4 {
            break;
        }
    }
    if best == u32::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_ones(m: usize, n: usize) -> ScalarParityMatrix {
        ScalarParityMatrix::from_dense(&vec![vec![1u8; n]; m]).unwrap()
    }

    #[test]
    fn identity_shift_and_single_shift() {
        let id = expand_qc(&PolynomialParityMatrix::monomial(3, &[vec![0]]).unwrap());
        assert_eq!(id.rows(), &[vec![0], vec![1], vec![2]]);
        let p1 = expand_qc(&PolynomialParityMatrix::monomial(3, &[vec![1]]).unwrap());
        assert_eq!(p1.rows(), &[vec![1], vec![2], vec![0]]);
    }

    #[test]
    fn block_circulant_small_cases() {
        let pm = PolynomialParityMatrix::monomial(2, &[vec![0]]).unwrap();
        assert_eq!(pm.coefficient_block(0), vec![vec![1]]);
        assert_eq!(pm.coefficient_block(1), vec![vec![0]]);
        assert_eq!(reorder_to_block_circulant(&pm).to_dense(), vec![vec![1, 0], vec![0, 1]]);

        let pm = PolynomialParityMatrix::monomial(2, &[vec![1, 0]]).unwrap();
        assert_eq!(pm.coefficient_block(0), vec![vec![0, 1]]);
        assert_eq!(pm.coefficient_block(1), vec![vec![1, 0]]);
        // [[H0, H1], [H1, H0]]
        assert_eq!(
            reorder_to_block_circulant(&pm).to_dense(),
            vec![vec![0, 1, 1, 0], vec![1, 0, 0, 1]]
        );
    }

    #[test]
    fn block_circulant_is_a_permutation_of_expansion() {
        let pm = PolynomialParityMatrix::new(
            2,
            3,
            5,
            vec![
                vec![vec![0, 2], vec![1], vec![]],
                vec![vec![3], vec![4, 0], vec![2]],
            ],
        )
        .unwrap();
        let (rp, cp) = block_circulant_permutation(&pm);
        assert_eq!(expand_qc(&pm).permuted(&rp, &cp), reorder_to_block_circulant(&pm));
    }

    #[test]
    fn polynomial_matrix_rejects_bad_exponents() {
        assert!(matches!(
            PolynomialParityMatrix::monomial(3, &[vec![3]]),
            Err(MatrixError::ExponentOutOfRange { .. })
        ));
        assert!(matches!(
            PolynomialParityMatrix::new(1, 1, 3, vec![vec![vec![1, 1]]]),
            Err(MatrixError::DuplicateExponent { .. })
        ));
        assert_eq!(
            PolynomialParityMatrix::monomial(0, &[vec![0]]),
            Err(MatrixError::ZeroLifting)
        );
    }

    #[test]
    fn scalar_matrix_rejects_bad_rows() {
        assert!(matches!(
            ScalarParityMatrix::new(1, 2, vec![vec![2]]),
            Err(MatrixError::ColumnOutOfRange { .. })
        ));
        assert!(matches!(
            ScalarParityMatrix::new(1, 2, vec![vec![1, 1]]),
            Err(MatrixError::DuplicateEntry { .. })
        ));
    }

    #[test]
    fn k33_profile() {
        let p = validate_biregular(&all_ones(3, 3)).unwrap();
        assert_eq!((p.q1, p.q2, p.edge_count, p.rank), (2, 2, 9, 1));
        assert!(p.connected);
    }

    #[test]
    fn identity_is_degree_too_small() {
        let h = ScalarParityMatrix::from_dense(&[[1u8, 0], [0, 1]]).unwrap();
        assert!(matches!(
            validate_biregular(&h),
            Err(MatrixError::DegreeTooSmall { .. })
        ));
    }

    #[test]
    fn irregular_rejected() {
        let h = ScalarParityMatrix::from_dense(&[[1u8, 1, 1, 0], [1, 1, 1, 1]]).unwrap();
        assert!(matches!(validate_biregular(&h), Err(MatrixError::NotBiregular(_))));
    }

    #[test]
    fn two_copies_of_k33_are_disconnected() {
        let mut dense = vec![vec![0u8; 6]; 6];
        for r in 0..3 {
            for c in 0..3 {
                dense[r][c] = 1;
                dense[r + 3][c + 3] = 1;
            }
        }
        let h = ScalarParityMatrix::from_dense(&dense).unwrap();
        assert_eq!(
            validate_biregular(&h),
            Err(MatrixError::Disconnected { components: 2 })
        );
        let p = validate_biregular_allow_disconnected(&h).unwrap();
        assert!(!p.connected);
        assert_eq!(p.rank, 2);
        let comps = connected_components(&h);
        assert_eq!(comps, vec![(vec![0, 1, 2], vec![0, 1, 2]), (vec![3, 4, 5], vec![3, 4, 5])]);
        assert_eq!(h.submatrix(&comps[1].0, &comps[1].1), all_ones(3, 3));
    }

    #[test]
    fn tanner_graph_shapes() {
        let path = build_tanner_graph(&all_ones(1, 2));
        assert_eq!((path.node_count(), path.edge_count()), (3, 2));
        assert_eq!(bfs_girth(&path), Girth::Infinite);

        let k33 = build_tanner_graph(&all_ones(3, 3));
        assert_eq!((k33.node_count(), k33.edge_count()), (6, 9));
        assert!((0..6).all(|v| k33.degree(v) == 3));
        assert_eq!(bfs_girth(&k33), Girth::Finite(4));
        assert_eq!(k33.edge(0), (0, 3));
        assert_eq!(k33.edge(8), (2, 5));
    }

    #[test]
    fn hexagon_girth() {
        // 3x3 circulant I + P1 is a single 6-cycle.
        let pm = PolynomialParityMatrix::new(1, 1, 3, vec![vec![vec![0, 1]]]).unwrap();
        let g = build_tanner_graph(&expand_qc(&pm));
        assert_eq!(bfs_girth(&g), Girth::Finite(6));
    }

    #[test]
    fn girth_validity_range() {
        assert!(Girth::Finite(8).certifies(7));
        assert!(!Girth::Finite(8).certifies(8));
        assert!(Girth::Infinite.certifies(100));
    }
}
