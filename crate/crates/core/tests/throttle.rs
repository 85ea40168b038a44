mod common;

use proptest::prelude::*;
use zfthrottle::forcing::Rule;
use zfthrottle::harness::naive;
use zfthrottle::throttle::{
    extract_certificate_subgraph, floor_throttling_via_supergraphs, standardize_witness, throttling_number,
    throttling_of_set, WitnessKind,
};
use zfthrottle::{Error, Graph, VertexSet};

#[test]
fn small_values() {
    assert_eq!(throttling_number(Rule::Z, &Graph::path(5)).unwrap().th, 4);
    assert_eq!(throttling_number(Rule::ZPlus, &Graph::path(5)).unwrap().th, 3);
    assert_eq!(throttling_number(Rule::Z, &Graph::complete(5)).unwrap().th, 5);
    assert_eq!(throttling_number(Rule::ZPlus, &Graph::star(4)).unwrap().th, 2);
    assert!(matches!(throttling_number(Rule::Z, &Graph::empty(0).unwrap()), Err(Error::Domain(_))));
    assert!(matches!(throttling_number(Rule::Z, &Graph::path(17)), Err(Error::Capacity { .. })));
    assert!(matches!(floor_throttling_via_supergraphs(Rule::Z, &Graph::path(3)), Err(Error::Usage(_))));
    assert!(matches!(floor_throttling_via_supergraphs(Rule::ZFloor, &Graph::path(7)), Err(Error::Capacity { .. })));
}

#[test]
fn extraction_rejects_large_k() {
    // th(P4) = 3 = n - 1, so k = 1 has no witness
    assert!(extract_certificate_subgraph(&Graph::path(4), Rule::Z, 1).is_err());
    let ext = extract_certificate_subgraph(&Graph::path(4), Rule::Z, 0).unwrap();
    ext.check().unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matches_brute_force(g in common::graph(1, 8)) {
        prop_assert_eq!(throttling_number(Rule::Z, &g).unwrap().th, naive::throttling_number(false, &g));
        prop_assert_eq!(throttling_number(Rule::ZPlus, &g).unwrap().th, naive::throttling_number(true, &g));
    }

    #[test]
    fn certificate_is_consistent(g in common::graph(1, 8)) {
        for rule in Rule::ALL {
            if rule.is_floor() && g.n() > 6 {
                continue;
            }
            let cert = throttling_number(rule, &g).unwrap();
            prop_assert_eq!(cert.th, cert.initial().len() + cert.pt);
            cert.schedule.validate(&g).unwrap();
            prop_assert_eq!(throttling_of_set(rule, &g, cert.initial()).unwrap(), Some(cert.th));
        }
    }

    #[test]
    fn monotone_chain(g in common::graph(1, 6)) {
        let z = throttling_number(Rule::Z, &g).unwrap().th;
        let zp = throttling_number(Rule::ZPlus, &g).unwrap().th;
        let zf = throttling_number(Rule::ZFloor, &g).unwrap().th;
        let zpf = throttling_number(Rule::ZPlusFloor, &g).unwrap().th;
        prop_assert!(zp <= z && zf <= z && zpf <= zp && zpf <= zf);
    }

    #[test]
    fn floor_search_matches_supergraphs(g in common::connected(1, 6)) {
        for rule in [Rule::ZFloor, Rule::ZPlusFloor] {
            let a = throttling_number(rule, &g).unwrap().th;
            let oracle = floor_throttling_via_supergraphs(rule, &g).unwrap();
            prop_assert_eq!(a, oracle.th);
            for (u, v) in g.edges() {
                prop_assert!(oracle.supergraph.has_edge(u, v));
            }
        }
    }

    #[test]
    fn standardizing_keeps_the_cost(g in common::graph(1, 8)) {
        for rule in [Rule::Z, Rule::ZPlus] {
            let cert = throttling_number(rule, &g).unwrap();
            let std = standardize_witness(&g, &cert).unwrap();
            prop_assert!(std.initial().len() + std.pt <= cert.th);
            prop_assert_eq!(std.witness_kind, WitnessKind::StandardWitness);
            prop_assert!(std.schedule.layers.iter().all(|l| l.len() >= 2));
            std.schedule.validate(&g).unwrap();
        }
    }

    #[test]
    fn extraction_postconditions(g in common::connected(2, 8)) {
        for (psd, rule) in [(false, Rule::Z), (true, Rule::ZPlus)] {
            let th = naive::throttling_number(psd, &g);
            for k in 0..g.n().saturating_sub(th) {
                let ext = extract_certificate_subgraph(&g, rule, k as i64).unwrap();
                ext.check().unwrap();
                prop_assert!(ext.h.n() <= 4 * k + 4);
                prop_assert!(naive::throttling_number(psd, &ext.h) + k + 1 <= ext.h.n());
                prop_assert!(ext.initial.is_subset(ext.x));
                let _: VertexSet = ext.x;
            }
        }
    }
}
