use nalgebra::DMatrix;
use zfthrottle::graph::enumerate_connected;
use zfthrottle::harness::{max_spectral_graphs, spectral_radius, verify, Corpus, TheoremId, VerifyParams};
use zfthrottle::throttle::throttling_number;
use zfthrottle::forcing::Rule;
use zfthrottle::{Error, Graph};

fn dense_radius(g: &Graph) -> f64 {
    let n = g.n();
    let m = DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    m.symmetric_eigenvalues().iter().cloned().fold(f64::NEG_INFINITY, f64::max)
}

#[test]
fn power_iteration_matches_dense_eigensolver() {
    for n in 1..=7 {
        for g in enumerate_connected(n).unwrap() {
            let a = spectral_radius(&g);
            let b = dense_radius(&g);
            assert!((a - b).abs() < 1e-8, "{g:?}: {a} vs {b}");
        }
    }
}

#[test]
fn extremal_graphs_are_unthrottled() {
    for n in 1..=6 {
        for m in n - 1..=n * (n - 1) / 2 {
            for g in max_spectral_graphs(n, m).unwrap() {
                assert_eq!(throttling_number(Rule::Z, &g).unwrap().th, n);
            }
        }
    }
}

#[test]
fn reports_are_reproducible() {
    let corpus = Corpus::connected(2, 5).unwrap();
    for theorem in TheoremId::ALL {
        let params = VerifyParams::default();
        let a = verify(theorem, &corpus, &params).unwrap();
        let b = verify(theorem, &corpus, &VerifyParams { workers: Some(1), ..params }).unwrap();
        assert_eq!(a.to_json_lines(false), b.to_json_lines(false), "{theorem}");
        assert!(a.passed(), "{}", a.summary_line());
    }
}

#[test]
fn theorem_ids_round_trip() {
    for t in TheoremId::ALL {
        assert_eq!(t.name().parse::<TheoremId>().unwrap(), t);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, format!("\"{}\"", t.name()));
    }
    assert!(matches!("thm-nope".parse::<TheoremId>(), Err(Error::Usage(_))));
}

#[test]
fn oversized_corpus_is_a_capacity_error() {
    let corpus = Corpus::from_graphs("big", vec![Graph::path(8)]);
    assert!(matches!(verify(TheoremId::Spectral, &corpus, &VerifyParams::default()), Err(Error::Capacity { .. })));
}

#[test]
fn summary_record_shape() {
    let corpus = Corpus::connected(2, 4).unwrap();
    let r = verify(TheoremId::ThEqN, &corpus, &VerifyParams::default()).unwrap();
    let lines: Vec<serde_json::Value> =
        r.to_json_lines(true).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), corpus.graphs.len() + 1);
    let summary = lines.last().unwrap();
    assert_eq!(summary["theorem"], "thm-th-eq-n");
    assert_eq!(summary["verdict"], "pass");
    assert_eq!(summary["totals"]["items"], 9);
    assert!(summary["wall_time_ms"].is_number());
    assert_eq!(r.summary_line(), "thm-th-eq-n: pass, 9 graphs");
}
