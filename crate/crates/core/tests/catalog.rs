use zfthrottle::catalog::{
    classify_th_eq_n, classify_thplus, compositions, contains_gk_member, generate_gk, is_accelerator, NamedGraph,
    ThPlusClass,
};
use zfthrottle::graph::{canonical_form, contains_induced, enumerate_connected};
use zfthrottle::harness::naive;
use zfthrottle::{Error, Graph};

#[test]
fn classifier_examples() {
    for n in 1..=8 {
        assert!(classify_th_eq_n(&Graph::complete(n)).unwrap());
    }
    assert!(!classify_th_eq_n(&Graph::path(4)).unwrap());
    assert!(!classify_th_eq_n(&Graph::cycle(5)).unwrap());
    assert!(matches!(classify_th_eq_n(&Graph::empty(2).unwrap()), Err(Error::Domain(_))));
    assert_eq!(classify_thplus(&Graph::complete(5)).unwrap(), ThPlusClass::EqualsN);
    assert_eq!(classify_thplus(&Graph::path(3)).unwrap(), ThPlusClass::EqualsNMinus1);
    assert_eq!(classify_thplus(&Graph::cycle(5)).unwrap(), ThPlusClass::Below);
    assert!(matches!(classify_thplus(&Graph::empty(3).unwrap()), Err(Error::Domain(_))));
}

#[test]
fn named_graphs_parse() {
    for g in NamedGraph::ALL {
        assert_eq!(g.name().parse::<NamedGraph>().unwrap(), g);
    }
    assert!(matches!("petersen".parse::<NamedGraph>(), Err(Error::Usage(_))));
}

#[test]
fn accelerator_examples() {
    let d = is_accelerator(&Graph::path(4), &[1]).unwrap();
    assert!(d.holds_in(&Graph::path(4)));
    assert!(is_accelerator(&NamedGraph::K2xP3.graph(), &[2]).is_some());
    assert!(is_accelerator(&Graph::complete(3), &[1]).is_none());
    assert!(is_accelerator(&Graph::complete(4), &[1]).is_none());
}

#[test]
fn generated_members_are_accelerators() {
    for k in 0..=1 {
        let members = generate_gk(k, false).unwrap();
        let forms: Vec<Vec<u8>> = members.iter().map(|m| canonical_form(&m.graph).unwrap()).collect();
        let mut dedup = forms.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), forms.len(), "duplicate members for k = {k}");
        for m in &members {
            let r = m.composition.len();
            assert_eq!(m.composition.iter().sum::<usize>(), k + 1);
            assert!(m.graph.n() <= 2 * (k + 1 + r) && m.graph.n() <= 4 * k + 4);
            assert!(m.decomposition.holds_in(&m.graph));
            assert!(naive::throttling_number(false, &m.graph) + k + 1 <= m.graph.n());
        }
    }
    let k1 = generate_gk(1, false).unwrap();
    let has = |g: &Graph, list: &[zfthrottle::catalog::CatalogMember]| {
        let f = canonical_form(g).unwrap();
        list.iter().any(|m| canonical_form(&m.graph).unwrap() == f)
    };
    assert!(has(&NamedGraph::K2xP3.graph(), &k1));
    assert!(has(&NamedGraph::K2xP4.graph(), &k1));
    let reduced = generate_gk(1, true).unwrap();
    assert!(!has(&NamedGraph::K2xP4.graph(), &reduced));
    for m in &reduced {
        for other in &reduced {
            if other.graph.n() < m.graph.n() {
                assert!(!contains_induced(&other.graph, &m.graph));
            }
        }
    }
    assert!(matches!(generate_gk(2, false), Err(Error::Capacity { .. })));
}

#[test]
fn compositions_of_three() {
    assert_eq!(compositions(3), vec![vec![1, 1, 1], vec![1, 2], vec![2, 1], vec![3]]);
}

#[test]
fn forbidden_members_track_throttling() {
    for n in 2..=7 {
        for g in enumerate_connected(n).unwrap() {
            let th = naive::throttling_number(false, &g) as i64;
            for k in 0..=2i64 {
                let found = contains_gk_member(&g, k).unwrap();
                assert_eq!(found.is_none(), th >= n as i64 - k, "{g:?} k = {k}");
            }
        }
    }
    assert!(contains_gk_member(&Graph::complete(6), 0).unwrap().is_none());
    let c4 = contains_gk_member(&Graph::cycle(4), 0).unwrap().unwrap();
    assert_eq!(canonical_form(&c4.member).unwrap(), canonical_form(&Graph::cycle(4)).unwrap());
    assert!(contains_gk_member(&NamedGraph::K2xP4.graph(), 1).unwrap().is_some());
    assert!(matches!(contains_gk_member(&Graph::path(3), 3), Err(Error::Capacity { .. })));
    assert!(matches!(contains_gk_member(&Graph::path(3), -2), Err(Error::Domain(_))));
}
