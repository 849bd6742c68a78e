use std::collections::BTreeSet;
use std::fmt::Write;

use super::{content_lines, parse_error, FormatError};
use crate::matrix::PolynomialParityMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedExpmat {
    pub matrix: PolynomialParityMatrix,
    pub warnings: Vec<String>,
}

/// Parses an exponent matrix: a header `n_c n_v N`, then `n_c` lines of
/// `n_v` cells. A cell is `-1` for the zero polynomial or a comma-separated
/// exponent list. Repeated exponents are kept once with a warning. Exponents
/// outside `[0, N)` are reduced mod `N` with a warning, or rejected when
/// `strict` is set.
pub fn parse_expmat(text: &str, strict: bool) -> Result<ParsedExpmat, FormatError> {
    let mut lines = content_lines(text);
    let Some((hline, header)) = lines.next() else {
        return Err(parse_error(1, "empty input, expected header `n_c n_v N`"));
    };
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_error(hline, format!("bad header field {t:?}"))))
        .collect::<Result<_, _>>()?;
    let [n_c, n_v, lifting] = dims[..] else {
        return Err(parse_error(hline, "header must be `n_c n_v N`"));
    };
    if lifting == 0 {
        return Err(parse_error(hline, "lifting factor must be at least 1"));
    }
    let mut warnings = Vec::new();
    let mut entries = Vec::with_capacity(n_c);
    let mut last = hline;
    for i in 0..n_c {
        let Some((no, line)) = lines.next() else {
            return Err(parse_error(last + 1, format!("expected {n_c} matrix rows, found {i}")));
        };
        last = no;
        let cells: Vec<&str> = line.split_whitespace().collect();
        if cells.len() != n_v {
            return Err(parse_error(no, format!("expected {n_v} cells, found {}", cells.len())));
        }
        let mut row = Vec::with_capacity(n_v);
        for (j, cell) in cells.iter().enumerate() {
            if *cell == "-1" {
                row.push(Vec::new());
                continue;
            }
            let mut set = BTreeSet::new();
            for tok in cell.split(',') {
                let e: i64 = tok
                    .parse()
                    .map_err(|_| parse_error(no, format!("bad exponent {tok:?} in cell {}", j + 1)))?;
                let r = e.rem_euclid(lifting as i64);
                if r != e {
                    if strict {
                        return Err(FormatError::ExponentOutOfRange {
                            line: no,
                            exponent: e,
                            lifting,
                        });
                    }
                    warnings.push(format!("line {no}: exponent {e} reduced to {r} mod {lifting}"));
                }
                if !set.insert(r as u32) {
                    warnings.push(format!(
                        "line {no}: cell {} repeats exponent {r}; binary coefficients keep one copy",
                        j + 1
                    ));
                }
            }
            row.push(set.into_iter().collect());
        }
        entries.push(row);
    }
    if let Some((no, _)) = lines.next() {
        return Err(parse_error(no, format!("unexpected content after {n_c} matrix rows")));
    }
    Ok(ParsedExpmat {
        matrix: PolynomialParityMatrix::new(n_c, n_v, lifting, entries)?,
        warnings,
    })
}

pub fn write_expmat(pm: &PolynomialParityMatrix) -> String {
    let mut out = format!("{} {} {}\n", pm.n_c(), pm.n_v(), pm.lifting());
    for row in pm.entries() {
        let cells: Vec<String> = row
            .iter()
            .map(|e| {
                if e.is_empty() {
                    "-1".to_string()
                } else {
                    e.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
                }
            })
            .collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::tanner_155;
    use proptest::prelude::*;

    #[test]
    fn tanner_code() {
        let text = "3 5 31\n1 2 4 8 16\n5 10 20 9 18\n25 19 7 14 28\n";
        let p = parse_expmat(text, true).unwrap();
        assert_eq!(p.matrix, tanner_155());
        assert!(p.warnings.is_empty());
        assert_eq!(write_expmat(&p.matrix), text);
    }

    #[test]
    fn single_entry() {
        let p = parse_expmat("1 1 1\n0\n", false).unwrap();
        assert_eq!(p.matrix.entry(0, 0), &[0]);
    }

    #[test]
    fn duplicates_warn() {
        let p = parse_expmat("1 1 3\n0,0\n", true).unwrap();
        assert_eq!(p.matrix.entry(0, 0), &[0]);
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn zero_polynomial_and_multi_term_cells() {
        let p = parse_expmat("# comment\n2 2 5\n-1 0,3\n1 -1\n", true).unwrap();
        assert!(p.matrix.entry(0, 0).is_empty());
        assert_eq!(p.matrix.entry(0, 1), &[0, 3]);
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(
            parse_expmat("1 1 5\n7\n", true),
            Err(FormatError::ExponentOutOfRange { line: 2, exponent: 7, lifting: 5 })
        ));
        let p = parse_expmat("1 1 5\n7\n", false).unwrap();
        assert_eq!(p.matrix.entry(0, 0), &[2]);
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn malformed() {
        assert!(matches!(parse_expmat("", false), Err(FormatError::Parse { line: 1, .. })));
        assert!(matches!(parse_expmat("2 2 3\n0 1\n", false), Err(FormatError::Parse { line: 3, .. })));
        assert!(matches!(parse_expmat("1 2 3\n0\n", false), Err(FormatError::Parse { line: 2, .. })));
        assert!(matches!(parse_expmat("1 1 3\nx\n", false), Err(FormatError::Parse { line: 2, .. })));
    }

    proptest! {
        #[test]
        fn round_trip(
            lifting in 1usize..40,
            n_c in 1usize..4,
            n_v in 1usize..6,
            seeds in proptest::collection::vec(proptest::collection::btree_set(0u32..40, 0..4), 24),
        ) {
            let entries: Vec<Vec<Vec<u32>>> = (0..n_c)
                .map(|i| (0..n_v).map(|j| {
                    let set: BTreeSet<u32> = seeds[i * 6 + j].iter().map(|e| e % lifting as u32).collect();
                    set.into_iter().collect()
                }).collect())
                .collect();
            let pm = PolynomialParityMatrix::new(n_c, n_v, lifting, entries).unwrap();
            let p = parse_expmat(&write_expmat(&pm), true).unwrap();
            prop_assert_eq!(p.matrix, pm);
            prop_assert!(p.warnings.is_empty());
        }
    }
}
