use std::fmt::Write;

use super::{content_lines, parse_error, FormatError};
use crate::matrix::ScalarParityMatrix;

fn numbers(line: usize, text: &str) -> Result<Vec<usize>, FormatError> {
    text.split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_error(line, format!("expected a non-negative integer, found {t:?}"))))
        .collect()
}

/// Parses the alist format: `n m`, the two maximum weights, the column and
/// row weight lists, then one 1-based index list per column and per row.
/// Zero entries pad short lists and are ignored.
pub fn parse_alist(text: &str) -> Result<ScalarParityMatrix, FormatError> {
    let mut lines = content_lines(text);
    let mut last_line = 0;
    let mut next = |what: &str| -> Result<(usize, Vec<usize>), FormatError> {
        match lines.next() {
            Some((no, l)) => {
                last_line = no;
                Ok((no, numbers(no, l)?))
            }
            None => Err(parse_error(last_line + 1, format!("unexpected end of input, expected {what}"))),
        }
    };
    let (no, dims) = next("the dimensions line")?;
    let [n, m] = dims[..] else {
        return Err(parse_error(no, "expected two numbers `n m`"));
    };
    let (no, maxw) = next("the maximum weights line")?;
    if maxw.len() != 2 {
        return Err(parse_error(no, "expected two maximum weights"));
    }
    let (no, col_w) = next("column weights")?;
    if col_w.len() != n {
        return Err(parse_error(no, format!("expected {n} column weights, found {}", col_w.len())));
    }
    let (no, row_w) = next("row weights")?;
    if row_w.len() != m {
        return Err(parse_error(no, format!("expected {m} row weights, found {}", row_w.len())));
    }
    let mut read_lists = |count: usize, weights: &[usize], bound: usize, what: &str| -> Result<Vec<Vec<usize>>, FormatError> {
        (0..count)
            .map(|i| {
                let (no, raw) = next(what)?;
                let list: Vec<usize> = raw.into_iter().filter(|&x| x != 0).collect();
                if list.len() != weights[i] {
                    return Err(parse_error(
                        no,
                        format!("{what} {} has {} entries, weight says {}", i + 1, list.len(), weights[i]),
                    ));
                }
                if let Some(&bad) = list.iter().find(|&&x| x > bound) {
                    return Err(parse_error(no, format!("index {bad} exceeds {bound}")));
                }
                Ok(list.into_iter().map(|x| x - 1).collect())
            })
            .collect()
    };
    let cols = read_lists(n, &col_w, m, "column")?;
    let rows = read_lists(m, &row_w, n, "row")?;
    let h = ScalarParityMatrix::new(m, n, rows)?;
    let mut from_cols = vec![Vec::new(); m];
    for (c, list) in cols.iter().enumerate() {
        for &r in list {
            from_cols[r].push(c);
        }
    }
    for (r, list) in from_cols.iter_mut().enumerate() {
        list.sort_unstable();
        if list.as_slice() != h.row(r) {
            return Err(FormatError::InconsistentSupports(format!(
                "row {} lists columns {:?}, column lists give {:?}",
                r + 1,
                h.row(r).iter().map(|c| c + 1).collect::<Vec<_>>(),
                list.iter().map(|c| c + 1).collect::<Vec<_>>()
            )));
        }
    }
    Ok(h)
}

fn join(v: impl Iterator<Item = usize>) -> String {
    v.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Writes the alist format, padding short lists with zeros (an empty list
/// is written as a single zero).
pub fn write_alist(h: &ScalarParityMatrix) -> String {
    let cols = h.columns();
    let cw = h.column_weights();
    let rw = h.row_weights();
    let max_c = cw.iter().copied().max().unwrap_or(0);
    let max_r = rw.iter().copied().max().unwrap_or(0);
    let mut out = String::new();
    writeln!(out, "{} {}", h.n(), h.m()).unwrap();
    writeln!(out, "{max_c} {max_r}").unwrap();
    writeln!(out, "{}", join(cw.iter().copied())).unwrap();
    writeln!(out, "{}", join(rw.iter().copied())).unwrap();
    for col in &cols {
        let pad = max_c.max(1) - col.len();
        writeln!(out, "{}", join(col.iter().map(|r| r + 1).chain(std::iter::repeat_n(0, pad)))).unwrap();
    }
    for row in h.rows() {
        let pad = max_r.max(1) - row.len();
        writeln!(out, "{}", join(row.iter().map(|c| c + 1).chain(std::iter::repeat_n(0, pad)))).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::tanner_155;
    use crate::matrix::expand_qc;
    use proptest::prelude::*;

    #[test]
    fn identity() {
        let h = parse_alist("2 2\n1 1\n1 1\n1 1\n1\n2\n1\n2\n").unwrap();
        assert_eq!(h, ScalarParityMatrix::new(2, 2, vec![vec![0], vec![1]]).unwrap());
    }

    #[test]
    fn zero_padding_is_ignored() {
        let text = "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n";
        let h = parse_alist(text).unwrap();
        assert_eq!(h.rows(), &[vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn tanner_round_trip() {
        let h = expand_qc(&tanner_155());
        assert_eq!(parse_alist(&write_alist(&h)).unwrap(), h);
    }

    #[test]
    fn truncated() {
        let err = parse_alist("2 2\n1 1\n1 1\n1 1\n1\n2\n1\n").unwrap_err();
        assert!(matches!(err, FormatError::Parse { line: 8, .. }), "{err:?}");
    }

    #[test]
    fn garbage_token() {
        let err = parse_alist("2 x\n").unwrap_err();
        assert!(matches!(err, FormatError::Parse { line: 1, .. }));
    }

    #[test]
    fn inconsistent() {
        let err = parse_alist("2 2\n1 1\n1 1\n1 1\n1\n2\n2\n1\n").unwrap_err();
        assert!(matches!(err, FormatError::InconsistentSupports(_)), "{err:?}");
    }

    proptest! {
        #[test]
        fn round_trip(bits in proptest::collection::vec(proptest::bool::ANY, 1..60), m in 1usize..8) {
            let n = bits.len().div_ceil(m);
            let dense: Vec<Vec<u8>> = (0..m)
                .map(|r| (0..n).map(|c| bits.get(r * n + c).copied().unwrap_or(false) as u8).collect())
                .collect();
            let h = ScalarParityMatrix::from_dense(&dense).unwrap();
            prop_assert_eq!(parse_alist(&write_alist(&h)).unwrap(), h);
        }
    }
}
