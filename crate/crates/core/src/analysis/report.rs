use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::BigInt;
use serde::Serialize;

use crate::oracle::{LegStatus, VerificationReport};

/// Machine-readable analysis result. Field order is the JSON key order and
/// integers that can grow without bound are decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JsonReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub input: InputSummary,
    pub request: RequestSummary,
    /// `roots_of_unity` or `expanded`.
    pub trace_path: String,
    pub girth: GirthSection,
    pub counts: Vec<CountEntry>,
    pub verification: Option<VerificationSection>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentSummary>,
    pub disagreements: Vec<String>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputSummary {
    pub format: String,
    pub m: u64,
    pub n: u64,
    pub q1: u64,
    pub q2: u64,
    pub variable_degree: u64,
    pub check_degree: u64,
    pub edge_count: u64,
    pub rank: u64,
    pub components: usize,
    pub qc: Option<QcSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QcSummary {
    pub n_c: usize,
    pub n_v: usize,
    pub lifting: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RequestSummary {
    pub method: String,
    pub kmax: u32,
    pub verify: Vec<String>,
    pub allow_disconnected: bool,
    pub paranoid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GirthSection {
    pub bfs: String,
    pub certificate: CertificateSection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateSection {
    pub girth: Option<String>,
    pub lower_bound: u32,
    pub conditions: Vec<ConditionEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionEntry {
    pub j: u32,
    pub trace: String,
    pub tree_value: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountEntry {
    pub two_k: u32,
    pub value: Option<String>,
    pub methods: BTreeMap<String, String>,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub m: u64,
    pub n: u64,
    pub rank: u64,
    pub girth: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationSection {
    pub agreed: bool,
    pub legs: BTreeMap<String, String>,
    pub lengths: Vec<VerificationLength>,
    pub edge_girth: Option<String>,
    pub odd_traces_vanish: Option<bool>,
    pub predicted_step_totals: Option<[u64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationLength {
    pub two_k: u32,
    pub certified: bool,
    pub values: BTreeMap<String, String>,
    /// Scientific notation with three decimals.
    pub prediction_relative_error: Option<String>,
    pub agree: bool,
}

impl VerificationSection {
    /// Merges per-component reports; values are summed across components.
    pub(crate) fn from_reports(reports: &[&VerificationReport]) -> Self {
        let first = reports[0];
        let mut legs = BTreeMap::new();
        for r in reports {
            for (name, status) in &r.legs {
                let slot = legs.entry(name.clone()).or_insert(LegStatus::Ran);
                if *slot == LegStatus::Ran {
                    *slot = status.clone();
                }
            }
        }
        let lengths = (0..first.lengths.len())
            .map(|i| {
                let recs: Vec<_> = reports.iter().map(|r| &r.lengths[i]).collect();
                let mut values = BTreeMap::new();
                for name in recs[0].values.keys() {
                    let total: Option<BigInt> = recs.iter().map(|l| l.values.get(name).cloned()).sum();
                    if let Some(t) = total {
                        values.insert(name.clone(), t.to_string());
                    }
                }
                let err = recs
                    .iter()
                    .filter_map(|l| l.prediction_relative_error)
                    .fold(None, |acc: Option<f64>, e| Some(acc.map_or(e, |a| a.max(e))));
                VerificationLength {
                    two_k: recs[0].two_k,
                    certified: recs.iter().all(|l| l.certified),
                    values,
                    prediction_relative_error: err.map(|e| format!("{e:.3e}")),
                    agree: recs.iter().all(|l| l.agree),
                }
            })
            .collect();
        let step_totals = reports.iter().map(|r| r.predicted_step_totals).try_fold([0u64; 3], |acc, t| {
            t.map(|t| [acc[0] + t[0], acc[1] + t[1], acc[2] + t[2]])
        });
        Self {
            agreed: reports.iter().all(|r| r.agreed),
            legs: legs.into_iter().map(|(k, v)| (k, v.to_string())).collect(),
            lengths,
            edge_girth: reports
                .iter()
                .map(|r| r.edge_girth)
                .collect::<Option<Vec<_>>>()
                .and_then(|v| v.into_iter().min())
                .map(|g| g.to_string()),
            odd_traces_vanish: reports
                .iter()
                .map(|r| r.odd_traces_vanish)
                .collect::<Option<Vec<_>>>()
                .map(|v| v.into_iter().all(|b| b)),
            predicted_step_totals: step_totals,
        }
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn render_json(report: &JsonReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes") + "\n"
}

pub fn render_human(r: &JsonReport) -> String {
    let mut out = String::new();
    let i = &r.input;
    writeln!(
        out,
        "input: {} x {} ({}), variable degree {}, check degree {}, |E| = {}, rank {}",
        i.m, i.n, i.format, i.variable_degree, i.check_degree, i.edge_count, i.rank
    )
    .unwrap();
    if let Some(qc) = &i.qc {
        writeln!(out, "quasi-cyclic: {} x {} blocks, lifting {}", qc.n_c, qc.n_v, qc.lifting).unwrap();
    }
    if i.components > 1 {
        writeln!(out, "components: {}", i.components).unwrap();
    }
    let cert = match &r.girth.certificate.girth {
        Some(g) => g.clone(),
        None => format!(">= {}", r.girth.certificate.lower_bound),
    };
    writeln!(out, "girth: {} (breadth-first), {} (trace certificate)", r.girth.bfs, cert).unwrap();
    writeln!(out, "traces: {}", r.trace_path.replace('_', " ")).unwrap();
    writeln!(out).unwrap();
    let width = r
        .counts
        .iter()
        .map(|c| c.value.as_deref().map_or(1, str::len))
        .max()
        .unwrap_or(1)
        .max(4);
    writeln!(out, "{:>4}  {:<width$}  methods", "2k", "N_2k").unwrap();
    let mut advisory = false;
    for c in &r.counts {
        let value = c.value.as_deref().unwrap_or("-");
        let methods: Vec<&str> = c.methods.keys().map(String::as_str).collect();
        let mark = if c.certified {
            ""
        } else {
            advisory = true;
            "  (advisory)"
        };
        writeln!(out, "{:>4}  {value:<width$}  {}{mark}", c.two_k, methods.join(",")).unwrap();
    }
    if advisory {
        writeln!(
            out,
            "note: advisory counts lie at or beyond 2k = 2g and may include closed walks that are not cycles"
        )
        .unwrap();
    }
    if let Some(v) = &r.verification {
        let legs: Vec<String> = v.legs.iter().map(|(k, s)| format!("{k} {s}")).collect();
        writeln!(
            out,
            "\nverification: {} ({})",
            if v.agreed { "all legs agree" } else { "DISAGREEMENT" },
            legs.join("; ")
        )
        .unwrap();
        for l in v.lengths.iter().filter(|l| l.certified) {
            let vals: Vec<String> = l.values.iter().map(|(k, x)| format!("{k}={x}")).collect();
            writeln!(out, "{:>4}  {}", l.two_k, vals.join(" ")).unwrap();
        }
    }
    for d in &r.disagreements {
        writeln!(out, "disagreement: {d}").unwrap();
    }
    for w in &r.warnings {
        writeln!(out, "warning: {w}").unwrap();
    }
    out
}
