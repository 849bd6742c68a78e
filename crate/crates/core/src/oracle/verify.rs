use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{
    build_edge_matrix, cluster_eigenvalues, count_from_edge_spectrum, dfs_budget, dfs_cycle_count, gram_eigenvalues,
    predict_edge_spectrum, OracleError, SpectrumStep, EDGE_DIMENSION_LIMIT,
};
use crate::formulas::{count_recursive, count_via_ek, count_via_lambda, lambda_gate_limit, CycleCountReport, MAX_CLOSED_FORM_K};
use crate::matrix::{bfs_girth, build_tanner_graph, validate_biregular, Girth, ScalarParityMatrix};
use crate::spectral::{gram_power_traces, hermitian_eigenvalues, qc_power_traces, shifted_moments, CharPolySet};

/// Relative tolerance for predicted edge-spectrum power sums.
pub const PREDICTION_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerifyLegs {
    pub dfs: bool,
    pub edge: bool,
    pub predict: bool,
}

impl VerifyLegs {
    pub fn all() -> Self {
        Self {
            dfs: true,
            edge: true,
            predict: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LegStatus {
    Ran,
    Skipped(String),
    Failed(String),
}

impl fmt::Display for LegStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LegStatus::Ran => f.write_str("ran"),
            LegStatus::Skipped(why) => write!(f, "skipped: {why}"),
            LegStatus::Failed(why) => write!(f, "failed: {why}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LengthRecord {
    pub two_k: u32,
    /// `2k < 2g`; only these lengths are compared.
    pub certified: bool,
    /// Value per leg name.
    pub values: BTreeMap<String, BigInt>,
    /// `|predicted - Tr(A_e^{2k})| / max(1, |Tr(A_e^{2k})|)`.
    pub prediction_relative_error: Option<f64>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub max_k: u32,
    pub girth: Girth,
    pub legs: BTreeMap<String, LegStatus>,
    pub lengths: Vec<LengthRecord>,
    /// Girth read off the edge traces, when computed and resolved.
    pub edge_girth: Option<Girth>,
    pub odd_traces_vanish: Option<bool>,
    /// Multiplicities from the three prediction steps.
    pub predicted_step_totals: Option<[u64; 3]>,
    pub agreed: bool,
}

impl VerificationReport {
    fn first_disagreement(&self) -> Option<&LengthRecord> {
        self.lengths.iter().find(|l| !l.agree)
    }
}

fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// Runs every formula together with the requested oracle legs on one
/// connected bi-regular matrix and compares them at each `2k < 2g`. With
/// `blocks`, traces and eigenvalues come from the root-of-unity blocks.
pub fn verify_methods(
    h: &ScalarParityMatrix,
    blocks: Option<&CharPolySet>,
    max_k: u32,
    legs: VerifyLegs,
) -> Result<VerificationReport, OracleError> {
    let profile = validate_biregular(h)?;
    let graph = build_tanner_graph(h);
    let girth = bfs_girth(&graph);
    let traces = match blocks {
        Some(cps) => qc_power_traces(cps, max_k as usize)?,
        None => gram_power_traces(h, max_k as usize),
    };
    let moments = shifted_moments(&traces, &profile, max_k as usize)?;

    let mut status = BTreeMap::new();
    let mut reports: Vec<CycleCountReport> = vec![count_recursive(&profile, &moments, max_k, girth)?];
    status.insert("recursive".to_string(), LegStatus::Ran);
    let closed_k = max_k.min(MAX_CLOSED_FORM_K);
    if max_k <= MAX_CLOSED_FORM_K {
        reports.push(count_via_ek(&profile, &moments, max_k, girth)?);
        status.insert("ek".into(), LegStatus::Ran);
    } else {
        status.insert("ek".into(), LegStatus::Skipped(format!("closed form stops at k = {MAX_CLOSED_FORM_K}")));
    }
    let lambda_k = (2..=closed_k).take_while(|&k| girth.at_least(lambda_gate_limit(k))).last();
    match lambda_k {
        Some(k) => {
            reports.push(count_via_lambda(&profile, &traces, k, girth)?);
            let note = if k < max_k {
                LegStatus::Skipped(format!("girth gate limits it to 2k <= {}", 2 * k))
            } else {
                LegStatus::Ran
            };
            status.insert("lambda".into(), note);
        }
        None => {
            status.insert("lambda".into(), LegStatus::Skipped("girth gate".into()));
        }
    }

    let mut values: BTreeMap<u32, BTreeMap<String, BigInt>> = (2..=max_k).map(|k| (2 * k, BTreeMap::new())).collect();
    for r in &reports {
        for c in &r.counts {
            if let Some(v) = &c.value {
                values.get_mut(&c.two_k()).unwrap().insert(r.method.to_string(), v.clone());
            }
        }
    }

    let dim = 2 * profile.edge_count as usize;
    let needs_edge = legs.edge || legs.predict;
    let run_edge = needs_edge && dim <= EDGE_DIMENSION_LIMIT;
    let dfs_top = match girth {
        Girth::Finite(g) => (2 * max_k).min(2 * g - 2),
        Girth::Infinite => 2 * max_k,
    };
    // The two walk-based legs are independent; run them side by side.
    let (edge_result, dfs_result) = rayon::join(
        || run_edge.then(|| count_from_edge_spectrum(&build_edge_matrix(&graph), max_k)),
        || legs.dfs.then(|| dfs_cycle_count(&graph, dfs_top, dfs_budget())),
    );

    let mut edge = None;
    if needs_edge && !run_edge {
        let why = format!("2|E| = {dim} exceeds {EDGE_DIMENSION_LIMIT}");
        if legs.edge {
            status.insert("edge".into(), LegStatus::Skipped(why.clone()));
        }
        if legs.predict {
            status.insert("predict".into(), LegStatus::Skipped(why));
        }
    }
    if let Some(result) = edge_result {
        let e = result?;
        if legs.edge {
            for (two_k, v) in &e.counts {
                values.get_mut(two_k).unwrap().insert("edge".into(), v.clone());
            }
            status.insert("edge".into(), LegStatus::Ran);
        }
        edge = Some(e);
    }

    match dfs_result {
        None => {}
        Some(Ok(counts)) => {
            for (len, c) in counts {
                if let Some(slot) = values.get_mut(&len) {
                    slot.insert("dfs".into(), BigInt::from(c));
                }
            }
            status.insert("dfs".into(), LegStatus::Ran);
        }
        Some(Err(OracleError::BudgetExceeded { limit, .. })) => {
            status.insert("dfs".into(), LegStatus::Skipped(format!("over the budget of {limit} expansions")));
        }
        Some(Err(e)) => return Err(e),
    }

    let mut prediction_errors: BTreeMap<u32, f64> = BTreeMap::new();
    let mut predicted_step_totals = None;
    if let (true, Some(e)) = (legs.predict, &edge) {
        let eigen = match blocks {
            Some(cps) => {
                let mut all = Vec::with_capacity(cps.lifting * cps.n_c);
                for b in &cps.blocks {
                    all.extend(hermitian_eigenvalues(&b.gram)?);
                }
                all
            }
            None => gram_eigenvalues(h)?,
        };
        match predict_edge_spectrum(&profile, &cluster_eigenvalues(&eigen)) {
            Ok(pred) => {
                predicted_step_totals = Some([
                    pred.step_total(SpectrumStep::Quadratic),
                    pred.step_total(SpectrumStep::Nullspace),
                    pred.step_total(SpectrumStep::Unit),
                ]);
                let mut worst = 0.0f64;
                for k in 1..=max_k.min(MAX_CLOSED_FORM_K) {
                    let len = 2 * k;
                    let t = big_to_f64(&e.traces[len as usize]);
                    let p = pred.power_sum(len);
                    let err = (p - t).norm() / t.abs().max(1.0);
                    worst = worst.max(err);
                    if k >= 2 {
                        prediction_errors.insert(len, err);
                        if girth.certifies(k) {
                            let approx = (p.re / (2 * len) as f64).round();
                            values.get_mut(&len).unwrap().insert("predict".into(), BigInt::from(approx as i128));
                        }
                    }
                }
                status.insert(
                    "predict".into(),
                    if worst <= PREDICTION_TOLERANCE {
                        LegStatus::Ran
                    } else {
                        LegStatus::Failed(format!("relative error {worst:.3e}"))
                    },
                );
            }
            Err(OracleError::MultiplicityMismatch { total, expected }) => {
                status.insert(
                    "predict".into(),
                    LegStatus::Failed(format!("multiplicities total {total}, expected {expected}")),
                );
            }
            Err(err) => return Err(err),
        }
    }

    let mut lengths = Vec::new();
    for (two_k, vals) in values {
        let certified = girth.certifies(two_k / 2);
        let prediction_relative_error = prediction_errors.get(&two_k).copied();
        let within = prediction_relative_error.is_none_or(|e| e <= PREDICTION_TOLERANCE);
        let same = !certified || vals.values().collect::<std::collections::BTreeSet<_>>().len() <= 1;
        lengths.push(LengthRecord {
            two_k,
            certified,
            values: vals,
            prediction_relative_error,
            agree: same && within,
        });
    }
    let edge_ok = edge.as_ref().is_none_or(|e| e.odd_traces_vanish);
    let legs_ok = !status.values().any(|s| matches!(s, LegStatus::Failed(_)));
    let report = VerificationReport {
        max_k,
        girth,
        legs: status,
        agreed: lengths.iter().all(|l| l.agree) && edge_ok && legs_ok,
        lengths,
        edge_girth: edge.as_ref().filter(|e| e.girth_resolved).map(|e| e.girth),
        odd_traces_vanish: edge.as_ref().map(|e| e.odd_traces_vanish),
        predicted_step_totals,
    };
    if !report.agreed {
        let (two_k, values) = match report.first_disagreement() {
            Some(l) => (
                l.two_k,
                l.values.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", "),
            ),
            None => (0, "oracle leg failed".to_string()),
        };
        return Err(OracleError::Disagreement {
            two_k,
            values,
            report: Box::new(report),
        });
    }
    Ok(report)
}
