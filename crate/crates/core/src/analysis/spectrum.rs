use std::fmt::Write;

use num_bigint::BigInt;
use num_complex::Complex64;

use super::{load_input, AnalysisError, InputFormat};
use crate::formulas::{girth_certificate, GirthCertificate, MAX_CLOSED_FORM_K};
use crate::matrix::{bfs_girth, build_tanner_graph, validate_biregular_allow_disconnected, Girth};
use crate::spectral::{gram_power_traces, hermitian_eigenvalues, roots_of_unity_charpolys};

/// Root-of-unity indices whose blocks share a characteristic polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumGroup {
    pub indices: Vec<usize>,
    /// Integer coefficients when every one snapped.
    pub exact: Option<Vec<BigInt>>,
    pub coefficients: Vec<Complex64>,
    pub eigenvalues: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub lifting: usize,
    pub n_c: usize,
    pub groups: Vec<SpectrumGroup>,
}

fn same_spectrum(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-6 * x.abs().max(1.0))
}

/// Characteristic polynomials and eigenvalues of every root-of-unity block
/// of a quasi-cyclic input. Blocks with equal integer polynomials, or with
/// equal eigenvalues (conjugate pairs included), are reported once.
pub fn run_spectrum(text: &str, format: InputFormat, strict: bool) -> Result<SpectrumReport, AnalysisError> {
    let input = load_input(text, format, strict)?;
    let Some(pm) = input.poly else {
        return Err(AnalysisError::Request(
            "spectrum needs a quasi-cyclic input (expmat or polyjson)".into(),
        ));
    };
    let cps = roots_of_unity_charpolys(&pm)?;
    let mut groups: Vec<SpectrumGroup> = Vec::new();
    for b in &cps.blocks {
        let eigenvalues = hermitian_eigenvalues(&b.gram)?;
        let exact = b.exact();
        let found = groups.iter_mut().find(|g| match (&g.exact, &exact) {
            (Some(x), Some(y)) => x == y,
            (None, None) => same_spectrum(&g.eigenvalues, &eigenvalues),
            _ => false,
        });
        match found {
            Some(g) => g.indices.push(b.index),
            None => groups.push(SpectrumGroup {
                indices: vec![b.index],
                exact,
                coefficients: b.coefficients.clone(),
                eigenvalues,
            }),
        }
    }
    Ok(SpectrumReport {
        lifting: cps.lifting,
        n_c: cps.n_c,
        groups,
    })
}

fn ranges(indices: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < indices.len() {
        let mut j = i;
        while j + 1 < indices.len() && indices[j + 1] == indices[j] + 1 {
            j += 1;
        }
        parts.push(if j == i {
            indices[i].to_string()
        } else {
            format!("{}-{}", indices[i], indices[j])
        });
        i = j + 1;
    }
    parts.join(",")
}

fn monomial(d: usize) -> String {
    match d {
        0 => String::new(),
        1 => "t".into(),
        _ => format!("t^{d}"),
    }
}

fn integer_poly(c: &[BigInt]) -> String {
    let deg = c.len() - 1;
    let mut s = monomial(deg);
    for (i, a) in c.iter().enumerate().skip(1) {
        let d = deg - i;
        if a == &BigInt::from(0) {
            continue;
        }
        let sign = if a < &BigInt::from(0) { '-' } else { '+' };
        let mag = if a < &BigInt::from(0) { -a.clone() } else { a.clone() };
        let m = monomial(d);
        if mag == BigInt::from(1) && d > 0 {
            write!(s, " {sign} {m}").unwrap();
        } else if d > 0 {
            write!(s, " {sign} {mag} {m}").unwrap();
        } else {
            write!(s, " {sign} {mag}").unwrap();
        }
    }
    s
}

fn complex_poly(c: &[Complex64]) -> String {
    let deg = c.len() - 1;
    let mut s = monomial(deg);
    for (i, z) in c.iter().enumerate().skip(1) {
        write!(s, " + ({:.6}{:+.6}i) {}", z.re, z.im, monomial(deg - i)).unwrap();
    }
    s.trim_end().to_string()
}

impl SpectrumReport {
    pub fn render(&self) -> String {
        let mut out = format!(
            "{} root-of-unity blocks of size {} x {}, {} distinct\n",
            self.lifting,
            self.n_c,
            self.n_c,
            self.groups.len()
        );
        for g in &self.groups {
            let poly = match &g.exact {
                Some(c) => integer_poly(c),
                None => complex_poly(&g.coefficients),
            };
            let scale = g.eigenvalues.iter().fold(1.0f64, |a, v| a.max(v.abs()));
            let ev: Vec<String> = g
                .eigenvalues
                .iter()
                .map(|&v| if v.abs() < 1e-9 * scale { 0.0 } else { v })
                .map(|v| format!("{v:.4}"))
                .collect();
            let count = g.indices.len();
            writeln!(out, "j = {} ({count} block{})", ranges(&g.indices), if count == 1 { "" } else { "s" }).unwrap();
            writeln!(out, "  charpoly: {poly}{}", if g.exact.is_some() { "" } else { "  (not integral)" }).unwrap();
            writeln!(out, "  eigenvalues: {}", ev.join(", ")).unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GirthSummary {
    pub bfs: Girth,
    /// Present for bi-regular inputs.
    pub certificate: Option<GirthCertificate>,
    pub note: Option<String>,
}

impl GirthSummary {
    pub fn render(&self) -> String {
        let mut out = format!("girth: {}\n", self.bfs);
        if let Some(c) = &self.certificate {
            for cond in &c.conditions {
                writeln!(
                    out,
                    "  j = {}: Tr((HH^T)^{}) = {} {} |E| A_{} = {}",
                    cond.j,
                    cond.j,
                    cond.trace,
                    if cond.holds { "==" } else { "!=" },
                    2 * cond.j,
                    cond.tree_value
                )
                .unwrap();
            }
            match c.girth {
                Some(g) => writeln!(out, "certificate: girth {g}").unwrap(),
                None => writeln!(out, "certificate: girth >= {}", c.lower_bound).unwrap(),
            }
        }
        if let Some(n) = &self.note {
            writeln!(out, "note: {n}").unwrap();
        }
        out
    }
}

/// Breadth-first girth, plus the trace certificate when the input is bi-regular.
pub fn run_girth(text: &str, format: InputFormat, strict: bool) -> Result<GirthSummary, AnalysisError> {
    let input = load_input(text, format, strict)?;
    let h = &input.scalar;
    let bfs = bfs_girth(&build_tanner_graph(h));
    Ok(match validate_biregular_allow_disconnected(h) {
        Ok(profile) => GirthSummary {
            bfs,
            certificate: Some(girth_certificate(
                &profile,
                &gram_power_traces(h, MAX_CLOSED_FORM_K as usize),
            )),
            note: None,
        },
        Err(e) => GirthSummary {
            bfs,
            certificate: None,
            note: Some(format!("no trace certificate: {e}")),
        },
    })
}
