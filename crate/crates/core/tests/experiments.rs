// SPDX-License-Identifier: Apache-2.0

mod common;

use common::*;
use proptest::prelude::*;
use vnent_core::centrality::{CentralityScores, Method};
use vnent_core::experiments::*;
use vnent_core::generators::GeneratorConfig;
use vnent_core::Graph;

fn opts() -> DismantleOptions {
    DismantleOptions::default()
}

#[test]
fn q_grid_and_length() {
    let g = GeneratorConfig::er(97, 200, 1).generate().unwrap();
    for stop_q in [0.01, 0.1, 0.2, 0.5, 1.0] {
        let t = dismantle(&g, Method::Dc, stop_q, &opts()).unwrap();
        assert_eq!(t.steps.len(), (stop_q * 97.0_f64).ceil() as usize);
        for (k, s) in t.steps.iter().enumerate() {
            assert_eq!(s.step, k + 1);
            assert_eq!(s.q, (k + 1) as f64 / 97.0);
        }
    }
}

#[test]
fn giant_never_grows_for_any_strategy() {
    let g = GeneratorConfig::sf(150, 2.5, 2, 4).generate().unwrap();
    for m in Method::ALL {
        if m == Method::CeExact {
            continue;
        }
        let t = dismantle(&g, m, 0.5, &opts()).unwrap();
        assert!(t.steps.windows(2).all(|w| w[1].giant <= w[0].giant), "{m}");
        let mut removed: Vec<&str> = t.steps.iter().map(|s| s.removed.as_str()).collect();
        removed.sort();
        removed.dedup();
        assert_eq!(removed.len(), t.steps.len());
    }
}

#[test]
fn exact_entropy_driver_on_small_graph() {
    let g = GeneratorConfig::er(40, 80, 2).generate().unwrap();
    let t = dismantle(&g, Method::CeExact, 0.25, &opts()).unwrap();
    assert_eq!(t.steps.len(), 10);
    assert!(t.steps.windows(2).all(|w| w[1].giant <= w[0].giant));
}

#[test]
fn traces_replay_byte_identically() {
    let g = GeneratorConfig::rgg(200, 3, 4.0, 8).generate().unwrap();
    let a = correlation_trace(&g, Method::CeApprox, &[Method::Dc, Method::Clc], 0.3, &opts()).unwrap();
    let b = correlation_trace(&g, Method::CeApprox, &[Method::Dc, Method::Clc], 0.3, &opts()).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.meta.to_text(), b.meta.to_text());
}

#[test]
fn trace_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = GeneratorConfig::er(60, 120, 3).generate().unwrap();
    let t = correlation_trace(&g, Method::CeApprox, &[Method::Bc, Method::Kc], 1.0, &opts()).unwrap();
    let path = dir.path().join("trace.csv");
    let meta = t.write(&path).unwrap();
    assert!(meta.ends_with("trace.meta"));
    let back = DismantleTrace::read(&path).unwrap();
    assert_eq!(back.to_csv(), t.to_csv());
    assert_eq!(back.strategy, Method::CeApprox);
    assert_eq!(back.spearman_methods, [Method::Bc, Method::Kc]);
    for (a, b) in back.steps.iter().zip(&t.steps) {
        assert_eq!(a.removed, b.removed);
        for (x, y) in a.spearman.iter().zip(&b.spearman) {
            match (x, y) {
                (Some(x), Some(y)) => assert!((x - y).abs() <= 1e-11 * y.abs().max(1.0)),
                (None, None) => {}
                _ => panic!("absent marker changed"),
            }
        }
    }
    let err = DismantleTrace::read(&dir.path().join("missing.csv")).unwrap_err();
    assert!(err.to_string().contains("missing"));
}

#[test]
fn clustering_correlation_ends_in_absent_values() {
    let g = GeneratorConfig::sf(300, 2.5, 2, 5).generate().unwrap();
    let t = correlation_trace(&g, Method::CeApprox, &[Method::Clc], 0.6, &opts()).unwrap();
    let last_present = t.steps.iter().rposition(|s| s.spearman[0].is_some()).unwrap();
    assert!(last_present + 1 < t.steps.len(), "CLC never went flat");
    assert!(t.steps[last_present + 1..].iter().all(|s| s.spearman[0].is_none()));
    assert_eq!(t.steps[last_present + 1].avg_clustering, 0.0);
}

#[test]
fn entropy_and_degree_correlate_on_intact_er() {
    let mut total = 0.0;
    for seed in 0..5 {
        let g = GeneratorConfig::er(1000, 2000, seed).generate().unwrap();
        let t = correlation_trace(&g, Method::CeApprox, &[Method::Dc], 0.001, &opts()).unwrap();
        total += t.steps[0].spearman[0].unwrap();
    }
    assert!(total / 5.0 > 0.5, "mean {}", total / 5.0);
}

#[test]
fn experiment_writes_file_set() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig::parse(
        "name=fig\nmodel=er\nn=80\nm=160\nseed=100\nreplicates=3\nstrategies=dc,ce_approx\nstop_q=0.25\nsvg=true\n",
    )
    .unwrap();
    let res = run_experiment(&cfg).unwrap();
    let files = res.write(dir.path()).unwrap();
    assert_eq!(files.len(), 2 + 2 * 3 * 2 + 1);
    let summary = std::fs::read_to_string(dir.path().join("fig.csv")).unwrap();
    let header = summary.lines().next().unwrap();
    assert_eq!(header, "q,G_DC,G_CE_APPROX");
    assert_eq!(summary.lines().count(), 1 + 20);
    let meta = std::fs::read_to_string(dir.path().join("fig.meta")).unwrap();
    assert!(meta.contains("seeds=100,101,102"));
    let svg = std::fs::read_to_string(dir.path().join("fig.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 2);
    for col in &res.summary.columns {
        let v: Vec<f64> = col.1.iter().map(|x| x.unwrap()).collect();
        assert!(v.windows(2).all(|w| w[1] <= w[0] + 1e-15), "{}", col.0);
    }
    let per_rep = DismantleTrace::read(&dir.path().join("fig_DC_seed101.csv")).unwrap();
    assert_eq!(per_rep.meta.get("generator.seed"), Some("101"));

    let blocked = dir.path().join("fig.csv").join("sub");
    let err = res.write(&blocked).unwrap_err();
    assert!(err.to_string().contains("fig.csv"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spearman_ignores_monotone_transforms(xs in prop::collection::vec(-100.0f64..100.0, 3..30), seed in any::<u64>()) {
        let n = xs.len();
        let g = Graph::from_edges(n, &[]).unwrap();
        let mut r = rng(seed);
        let ys: Vec<f64> = (0..n).map(|_| rand::Rng::random_range(&mut r, -1.0..1.0)).collect();
        let a = CentralityScores::new(Method::Dc, &g, xs.clone());
        let b = CentralityScores::new(Method::Dc, &g, ys.clone());
        let fx = CentralityScores::new(Method::Dc, &g, xs.iter().map(|x| (x / 40.0).exp() + 3.0).collect());
        match (spearman(&a, &b), spearman(&fx, &b)) {
            (Ok(p), Ok(q)) => {
                prop_assert!((p - q).abs() < 1e-12);
                prop_assert!((-1.0..=1.0).contains(&p));
                prop_assert!((spearman(&b, &a).unwrap() - p).abs() < 1e-12);
            }
            (Err(_), Err(_)) => {}
            (p, q) => prop_assert!(false, "{p:?} vs {q:?}"),
        }
    }

    #[test]
    fn dismantling_invariants(seed in any::<u64>(), n in 2usize..40, p in 0.02f64..0.4) {
        let g = gnp(n, p, &mut rng(seed));
        for m in [Method::Dc, Method::Bc, Method::CeApprox, Method::Ci] {
            let t = dismantle(&g, m, 1.0, &opts()).unwrap();
            prop_assert_eq!(t.steps.len(), n);
            prop_assert!(t.steps.windows(2).all(|w| w[1].giant <= w[0].giant));
            prop_assert_eq!(t.steps[n - 1].giant, 0.0);
        }
    }
}
