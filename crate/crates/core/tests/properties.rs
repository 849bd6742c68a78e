mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use tanner_cycles::analysis::{run_analyze, AnalysisRequest, InputFormat, MethodSelector};
use tanner_cycles::formats::{write_alist, write_expmat};
use tanner_cycles::matrix::{expand_qc, ScalarParityMatrix};
use tanner_cycles::oracle::{verify_methods, LegStatus, VerifyLegs};
use tanner_cycles::spectral::roots_of_unity_charpolys;

fn counts_json(text: String, format: InputFormat, allow_disconnected: bool) -> Vec<(u32, Option<String>)> {
    let mut req = AnalysisRequest::new(text, format);
    req.method = MethodSelector::All;
    req.allow_disconnected = allow_disconnected;
    let out = run_analyze(&req).expect("analysis succeeds");
    out.report.counts.into_iter().map(|c| (c.two_k, c.value)).collect()
}

fn block_diagonal(a: &ScalarParityMatrix, b: &ScalarParityMatrix) -> ScalarParityMatrix {
    let rows = a
        .rows()
        .iter()
        .cloned()
        .chain(b.rows().iter().map(|r| r.iter().map(|&c| c + a.n()).collect()))
        .collect();
    ScalarParityMatrix::new(a.m() + b.m(), a.n() + b.n(), rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn every_leg_agrees_on_random_fixtures(seed in any::<u64>(), min_girth in prop::sample::select(vec![4u32, 6, 8])) {
        let mut rng = common::rng(seed);
        let h = common::random_biregular_with_girth(&mut rng, 12, 18, min_girth);
        let report = verify_methods(&h, None, 7, VerifyLegs::all()).expect("legs agree");
        prop_assert!(report.agreed);
        prop_assert_eq!(report.odd_traces_vanish, Some(true));
        prop_assert_eq!(report.edge_girth, Some(report.girth));
        for leg in ["recursive", "ek", "dfs", "edge", "predict"] {
            prop_assert_eq!(&report.legs[leg], &LegStatus::Ran, "{}", leg);
        }
        for len in report.lengths.iter().filter(|l| l.certified) {
            prop_assert!(len.values.len() >= 5, "2k = {}: {:?}", len.two_k, len.values);
        }
    }

    #[test]
    fn counts_ignore_node_labelling(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let h = common::random_biregular(&mut rng, 12, 18);
        let mut rp: Vec<usize> = (0..h.m()).collect();
        let mut cp: Vec<usize> = (0..h.n()).collect();
        rp.shuffle(&mut rng);
        cp.shuffle(&mut rng);
        let p = h.permuted(&rp, &cp);
        prop_assert_eq!(
            counts_json(write_alist(&h), InputFormat::Alist, false),
            counts_json(write_alist(&p), InputFormat::Alist, false)
        );
    }

    #[test]
    fn disjoint_union_adds_counts(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let a = common::random_biregular(&mut rng, 12, 18);
        // Same degrees, fresh pairing.
        let b = loop {
            let b = common::random_biregular(&mut rng, 12, 18);
            if b.row_weights()[0] == a.row_weights()[0] && b.column_weights()[0] == a.column_weights()[0] {
                break b;
            }
        };
        let union = counts_json(write_alist(&block_diagonal(&a, &b)), InputFormat::Alist, true);
        let ca = counts_json(write_alist(&a), InputFormat::Alist, false);
        let cb = counts_json(write_alist(&b), InputFormat::Alist, false);
        for ((u, x), y) in union.iter().zip(&ca).zip(&cb) {
            prop_assert_eq!(u.0, x.0);
            if let (Some(uv), Some(xv), Some(yv)) = (&u.1, &x.1, &y.1) {
                let sum: u128 = xv.parse::<u128>().unwrap() + yv.parse::<u128>().unwrap();
                prop_assert_eq!(uv.parse::<u128>().unwrap(), sum, "2k = {}", u.0);
            }
        }
    }

    #[test]
    fn qc_input_matches_its_expansion(seed in any::<u64>(), n_v in 4usize..7, lifting in 7usize..20) {
        let mut rng = common::rng(seed);
        let pm = common::random_monomial_qc(&mut rng, n_v, lifting);
        let h = expand_qc(&pm);
        prop_assume!(tanner_cycles::matrix::validate_biregular(&h).is_ok());
        let cps = roots_of_unity_charpolys(&pm).unwrap();
        let fast = verify_methods(&h, Some(&cps), 7, VerifyLegs { dfs: false, edge: true, predict: true }).unwrap();
        let slow = verify_methods(&h, None, 7, VerifyLegs { dfs: false, edge: true, predict: true }).unwrap();
        prop_assert_eq!(&fast.lengths.iter().map(|l| &l.values).collect::<Vec<_>>(), &slow.lengths.iter().map(|l| &l.values).collect::<Vec<_>>());
        prop_assert_eq!(
            counts_json(write_expmat(&pm), InputFormat::Expmat, false),
            counts_json(write_alist(&h), InputFormat::Alist, false)
        );
    }
}
