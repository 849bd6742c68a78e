use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::report::{
    CertificateSection, ComponentSummary, ConditionEntry, CountEntry, GirthSection, InputSummary, JsonReport, QcSummary,
    RequestSummary, VerificationSection,
};
use super::{load_input, AnalysisError, AnalysisRequest, MethodSelector, SCHEMA_VERSION, TOOL_VERSION};
use crate::formulas::{
    count_recursive, count_via_ek, count_via_lambda, girth_certificate, lambda_gate_limit, CycleCountReport,
    MAX_CLOSED_FORM_K,
};
use crate::matrix::{
    bfs_girth, build_tanner_graph, connected_components, validate_biregular, validate_biregular_allow_disconnected,
    BiregularProfile, Girth, PolynomialParityMatrix, ScalarParityMatrix,
};
use crate::oracle::{verify_methods, OracleError, VerificationReport};
use crate::spectral::{
    gram_power_traces, qc_power_traces, roots_of_unity_charpolys, shifted_moments, CharPolySet, PowerSumTable,
};

/// Result of an analysis that ran to completion. Disagreements between
/// methods do not abort the run; they are listed and set the exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisOutcome {
    pub report: JsonReport,
}

impl AnalysisOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.report.disagreements.is_empty() {
            0
        } else {
            2
        }
    }
}

struct CountRow {
    k: u32,
    value: Option<BigInt>,
    methods: BTreeMap<String, BigInt>,
    certified: bool,
}

struct ComponentResult {
    profile: BiregularProfile,
    girth: Girth,
    traces: PowerSumTable,
    qc_path: bool,
    rows: Vec<CountRow>,
    verification: Option<VerificationReport>,
}

#[derive(Default)]
struct Notes {
    warnings: Vec<String>,
    disagreements: Vec<String>,
}

fn traces_for(
    h: &ScalarParityMatrix,
    poly: Option<&PolynomialParityMatrix>,
    k: usize,
    paranoid: bool,
    notes: &mut Notes,
) -> (PowerSumTable, Option<CharPolySet>) {
    let Some(pm) = poly else {
        return (gram_power_traces(h, k), None);
    };
    let fast = roots_of_unity_charpolys(pm).and_then(|cps| qc_power_traces(&cps, k).map(|t| (t, cps)));
    match fast {
        Ok((t, cps)) => {
            if paranoid {
                let slow = gram_power_traces(h, k);
                if slow != t {
                    notes.disagreements.push(format!(
                        "root-of-unity traces {:?} differ from expanded-matrix traces {:?}",
                        t.values().iter().map(ToString::to_string).collect::<Vec<_>>(),
                        slow.values().iter().map(ToString::to_string).collect::<Vec<_>>()
                    ));
                    return (slow, None);
                }
            }
            (t, Some(cps))
        }
        Err(e) => {
            notes
                .warnings
                .push(format!("root-of-unity path failed ({e}); traces computed on the expanded matrix"));
            (gram_power_traces(h, k), None)
        }
    }
}

fn lambda_reach(girth: Girth, max_k: u32) -> Option<u32> {
    (2..=max_k.min(MAX_CLOSED_FORM_K))
        .take_while(|&k| girth.at_least(lambda_gate_limit(k)))
        .last()
}

fn run_methods(
    selector: MethodSelector,
    profile: &BiregularProfile,
    traces: &PowerSumTable,
    max_k: u32,
    girth: Girth,
    notes: &mut Notes,
) -> Result<Vec<CycleCountReport>, AnalysisError> {
    let moments = shifted_moments(traces, profile, max_k as usize)?;
    let mut out = Vec::new();
    match selector {
        MethodSelector::Recursive => out.push(count_recursive(profile, &moments, max_k, girth)?),
        MethodSelector::Ek => out.push(count_via_ek(profile, &moments, max_k, girth)?),
        MethodSelector::Lambda => out.push(count_via_lambda(profile, traces, max_k, girth)?),
        MethodSelector::Auto | MethodSelector::All => {
            if let Some(k) = lambda_reach(girth, max_k) {
                out.push(count_via_lambda(profile, traces, k, girth)?);
                if selector == MethodSelector::All && k < max_k.min(MAX_CLOSED_FORM_K) {
                    notes
                        .warnings
                        .push(format!("lambda method limited to 2k <= {} by its girth gate", 2 * k));
                }
            } else if selector == MethodSelector::All {
                notes.warnings.push("lambda method skipped: girth gate not met".into());
            }
            if selector == MethodSelector::All {
                if max_k <= MAX_CLOSED_FORM_K {
                    out.push(count_via_ek(profile, &moments, max_k, girth)?);
                } else {
                    notes
                        .warnings
                        .push(format!("ek method skipped: closed form stops at 2k = {}", 2 * MAX_CLOSED_FORM_K));
                }
            }
            out.push(count_recursive(profile, &moments, max_k, girth)?);
        }
    }
    for r in &out {
        notes.warnings.extend(r.warnings.iter().cloned());
    }
    Ok(out)
}

fn combine(reports: &[CycleCountReport], max_k: u32, girth: Girth, notes: &mut Notes) -> Vec<CountRow> {
    (2..=max_k)
        .map(|k| {
            let mut methods = BTreeMap::new();
            let mut value = None;
            let mut certified = girth.certifies(k);
            // Reports are ordered by preference: lambda, ek, recursive.
            for r in reports {
                if let Some(c) = r.get(k) {
                    certified = c.certified;
                    if let Some(v) = &c.value {
                        methods.insert(r.method.to_string(), v.clone());
                        value.get_or_insert_with(|| v.clone());
                    }
                }
            }
            let distinct: std::collections::BTreeSet<&BigInt> = methods.values().collect();
            if certified && distinct.len() > 1 {
                notes.disagreements.push(format!(
                    "2k = {}: {}",
                    2 * k,
                    methods.iter().map(|(m, v)| format!("{m}={v}")).collect::<Vec<_>>().join(", ")
                ));
            }
            CountRow {
                k,
                value,
                methods,
                certified,
            }
        })
        .collect()
}

fn analyze_component(
    h: &ScalarParityMatrix,
    poly: Option<&PolynomialParityMatrix>,
    req: &AnalysisRequest,
    notes: &mut Notes,
) -> Result<ComponentResult, AnalysisError> {
    let profile = validate_biregular(h)?;
    let girth = bfs_girth(&build_tanner_graph(h));
    let (traces, cps) = traces_for(h, poly, req.max_k as usize, req.paranoid, notes);
    let reports = run_methods(req.method, &profile, &traces, req.max_k, girth, notes)?;
    let rows = combine(&reports, req.max_k, girth, notes);
    let legs = req.verify;
    let verification = if legs.dfs || legs.edge || legs.predict {
        match verify_methods(h, cps.as_ref(), req.max_k, legs) {
            Ok(r) => Some(r),
            Err(OracleError::Disagreement { two_k, values, report }) => {
                notes.disagreements.push(format!("verification at 2k = {two_k}: {values}"));
                Some(*report)
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    Ok(ComponentResult {
        profile,
        girth,
        traces,
        qc_path: cps.is_some(),
        rows,
        verification,
    })
}

fn sum_rows(parts: &[ComponentResult]) -> Vec<CountRow> {
    let first = &parts[0].rows;
    (0..first.len())
        .map(|i| {
            let k = first[i].k;
            let rows: Vec<&CountRow> = parts.iter().map(|p| &p.rows[i]).collect();
            let value = rows
                .iter()
                .map(|r| r.value.clone())
                .sum::<Option<BigInt>>();
            let mut methods = BTreeMap::new();
            for name in first[i].methods.keys() {
                if let Some(total) = rows.iter().map(|r| r.methods.get(name).cloned()).sum::<Option<BigInt>>() {
                    methods.insert(name.clone(), total);
                }
            }
            CountRow {
                k,
                value,
                methods,
                certified: rows.iter().all(|r| r.certified),
            }
        })
        .collect()
}

fn verification_section(parts: &[ComponentResult]) -> Option<VerificationSection> {
    let reports: Vec<&VerificationReport> = parts.iter().filter_map(|p| p.verification.as_ref()).collect();
    if reports.is_empty() {
        return None;
    }
    Some(VerificationSection::from_reports(&reports))
}

/// Runs the whole pipeline on one request.
pub fn run_analyze(req: &AnalysisRequest) -> Result<AnalysisOutcome, AnalysisError> {
    if req.max_k < 2 {
        return Err(AnalysisError::Request(format!("kmax must be at least 2, got {}", req.max_k)));
    }
    let input = load_input(&req.text, req.format, req.strict)?;
    let mut notes = Notes {
        warnings: input.warnings.clone(),
        ..Notes::default()
    };
    let h = &input.scalar;
    let global = if req.allow_disconnected {
        validate_biregular_allow_disconnected(h)?
    } else {
        validate_biregular(h)?
    };
    let comps = connected_components(h);
    let parts: Vec<ComponentResult> = if comps.len() == 1 {
        vec![analyze_component(h, input.poly.as_ref(), req, &mut notes)?]
    } else {
        notes.warnings.push(format!(
            "{} connected components analysed separately; counts are summed",
            comps.len()
        ));
        comps
            .iter()
            .map(|(rows, cols)| analyze_component(&h.submatrix(rows, cols), None, req, &mut notes))
            .collect::<Result<_, _>>()?
    };

    let girth = parts.iter().map(|p| p.girth).min().expect("at least one component");
    let mut total_traces = parts[0].traces.values().to_vec();
    for p in &parts[1..] {
        for (acc, v) in total_traces.iter_mut().zip(p.traces.values()) {
            *acc += v;
        }
    }
    let certificate = girth_certificate(&global, &PowerSumTable::from_values(total_traces));
    let cert_consistent = match certificate.girth {
        Some(g) => g == girth,
        None => girth.at_least(certificate.lower_bound),
    };
    if !cert_consistent {
        notes.disagreements.push(format!(
            "girth certificate ({}) contradicts breadth-first girth {girth}",
            certificate
                .girth
                .map_or_else(|| format!(">= {}", certificate.lower_bound), |g| g.to_string())
        ));
    }

    let rows = sum_rows(&parts);
    if let Some(first) = rows.iter().find(|r| !r.certified) {
        notes.warnings.push(format!(
            "counts from 2k = {} on are advisory: closed non-backtracking walks that long need not be cycles",
            2 * first.k
        ));
        if let Girth::Finite(g) = girth {
            if g <= req.max_k {
                notes.warnings.push(format!(
                    "2k = {} (twice the girth) is reported as advisory; certified counts stop at 2k = {}",
                    2 * g,
                    2 * g - 2
                ));
            }
        }
    }

    let p = &global;
    let report = JsonReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        input: InputSummary {
            format: req.format.to_string(),
            m: p.m,
            n: p.n,
            q1: p.q1,
            q2: p.q2,
            variable_degree: p.q1 + 1,
            check_degree: p.q2 + 1,
            edge_count: p.edge_count,
            rank: p.rank,
            components: comps.len(),
            qc: input.poly.as_ref().map(|pm| QcSummary {
                n_c: pm.n_c(),
                n_v: pm.n_v(),
                lifting: pm.lifting(),
            }),
        },
        request: RequestSummary {
            method: req.method.to_string(),
            kmax: req.max_k,
            verify: [("dfs", req.verify.dfs), ("edge", req.verify.edge), ("predict", req.verify.predict)]
                .iter()
                .filter(|x| x.1)
                .map(|x| x.0.to_string())
                .collect(),
            allow_disconnected: req.allow_disconnected,
            paranoid: req.paranoid,
        },
        trace_path: if parts.iter().all(|c| c.qc_path) {
            "roots_of_unity".into()
        } else {
            "expanded".into()
        },
        girth: GirthSection {
            bfs: girth.to_string(),
            certificate: CertificateSection {
                girth: certificate.girth.map(|g| g.to_string()),
                lower_bound: certificate.lower_bound,
                conditions: certificate
                    .conditions
                    .iter()
                    .map(|c| ConditionEntry {
                        j: c.j,
                        trace: c.trace.to_string(),
                        tree_value: c.tree_value.to_string(),
                        holds: c.holds,
                    })
                    .collect(),
            },
        },
        counts: rows
            .iter()
            .map(|r| CountEntry {
                two_k: 2 * r.k,
                value: r.value.as_ref().map(ToString::to_string),
                methods: r.methods.iter().map(|(m, v)| (m.clone(), v.to_string())).collect(),
                certified: r.certified,
            })
            .collect(),
        verification: verification_section(&parts),
        components: if parts.len() > 1 {
            parts
                .iter()
                .map(|c| ComponentSummary {
                    m: c.profile.m,
                    n: c.profile.n,
                    rank: c.profile.rank,
                    girth: c.girth.to_string(),
                })
                .collect()
        } else {
            Vec::new()
        },
        disagreements: notes.disagreements,
        warnings: notes.warnings,
    };
    Ok(AnalysisOutcome { report })
}
