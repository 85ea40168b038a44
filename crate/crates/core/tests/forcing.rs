mod common;

use std::collections::HashSet;

use proptest::prelude::*;
use zfthrottle::forcing::{
    forcing_trees, min_propagation_floor, propagate_deterministic, propagation_time, valid_forces, ForcingState,
    Propagation, Rule,
};
use zfthrottle::harness::naive;
use zfthrottle::{Graph, VertexSet};

fn pairs(rule: Rule, g: &Graph, blue: VertexSet) -> HashSet<(usize, usize)> {
    let state = ForcingState::initial(rule, g, blue);
    valid_forces(rule, g, &state).into_iter().map(|f| (f.source, f.target)).collect()
}

#[test]
fn path_from_the_middle() {
    let p5 = Graph::path(5);
    let s = propagate_deterministic(Rule::ZPlus, &p5, VertexSet::singleton(2)).unwrap().into_complete().unwrap();
    assert_eq!(s.layers, vec![VertexSet::from_iter([1, 3]), VertexSet::from_iter([0, 4])]);
    // a middle vertex leaves two white neighbours in one component for Z
    assert!(matches!(propagate_deterministic(Rule::Z, &p5, VertexSet::singleton(2)).unwrap(), Propagation::Stalled { .. }));
    assert_eq!(propagation_time(Rule::Z, &p5, VertexSet::singleton(0)).unwrap(), Some(4));
}

#[test]
fn forced_vertex_stays_in_its_component() {
    let p5 = Graph::path(5);
    let start = ForcingState::initial(Rule::ZPlus, &p5, VertexSet::singleton(2));
    let next = start.apply(Rule::ZPlus, &p5, &[(2, 1), (2, 3)]).unwrap();
    let forces: HashSet<(usize, usize)> =
        valid_forces(Rule::ZPlus, &p5, &next).into_iter().map(|f| (f.source, f.target)).collect();
    assert_eq!(forces, HashSet::from([(1, 0), (3, 4)]));
}

#[test]
fn floor_hops_reach_other_components() {
    // a blue vertex with no white neighbours may hop once
    let pair = Graph::empty(2).unwrap();
    assert_eq!(propagation_time(Rule::Z, &pair, VertexSet::singleton(0)).unwrap(), None);
    for rule in [Rule::ZFloor, Rule::ZPlusFloor] {
        let s = min_propagation_floor(rule, &pair, VertexSet::singleton(0)).unwrap().unwrap();
        assert_eq!(s.pt(), 1);
    }
    // a leaf that has already forced the centre of K1,3 is spent
    let star = Graph::star(3);
    assert!(min_propagation_floor(Rule::ZFloor, &star, VertexSet::singleton(1)).unwrap().is_none());
}

proptest! {
    #[test]
    fn rules_refine((g, blue) in common::graph_and_set(1, 7)) {
        let z = pairs(Rule::Z, &g, blue);
        let zp = pairs(Rule::ZPlus, &g, blue);
        let zf = pairs(Rule::ZFloor, &g, blue);
        let zpf = pairs(Rule::ZPlusFloor, &g, blue);
        prop_assert!(z.is_subset(&zp));
        prop_assert!(z.is_subset(&zf));
        prop_assert!(zp.is_subset(&zpf));
    }

    #[test]
    fn layers_do_not_depend_on_vertex_order((g, blue) in common::graph_and_set(1, 8)) {
        let n = g.n();
        let rev: Vec<usize> = (0..n).rev().collect();
        let h = g.permute(&rev);
        let hb: VertexSet = blue.iter().map(|v| n - 1 - v).collect();
        for rule in [Rule::Z, Rule::ZPlus] {
            let a = propagate_deterministic(rule, &g, blue).unwrap().into_complete();
            let b = propagate_deterministic(rule, &h, hb).unwrap().into_complete();
            let back = b.map(|s| s.layers.iter().map(|l| l.iter().map(|v| n - 1 - v).collect::<VertexSet>()).collect::<Vec<_>>());
            prop_assert_eq!(a.map(|s| s.layers), back);
        }
    }

    #[test]
    fn engine_matches_the_plain_simulator((g, blue) in common::graph_and_set(1, 9)) {
        prop_assert_eq!(propagation_time(Rule::Z, &g, blue).unwrap(), naive::propagation_time(false, &g, blue.0));
        prop_assert_eq!(propagation_time(Rule::ZPlus, &g, blue).unwrap(), naive::propagation_time(true, &g, blue.0));
    }

    #[test]
    fn floor_never_slower((g, blue) in common::graph_and_set(1, 6)) {
        for (floor, base) in [(Rule::ZFloor, Rule::Z), (Rule::ZPlusFloor, Rule::ZPlus)] {
            if let Some(pt) = propagation_time(base, &g, blue).unwrap() {
                let f = min_propagation_floor(floor, &g, blue).unwrap();
                prop_assert!(f.is_some_and(|s| s.pt() <= pt));
            }
        }
    }

    #[test]
    fn schedules_replay((g, blue) in common::graph_and_set(1, 6)) {
        for rule in [Rule::Z, Rule::ZPlus] {
            if let Some(s) = propagate_deterministic(rule, &g, blue).unwrap().into_complete() {
                s.validate(&g).unwrap();
            }
        }
        for rule in [Rule::ZFloor, Rule::ZPlusFloor] {
            if let Some(s) = min_propagation_floor(rule, &g, blue).unwrap() {
                s.validate(&g).unwrap();
            }
        }
    }

    #[test]
    fn forcing_trees_partition_forces((g, blue) in common::graph_and_set(1, 8)) {
        for rule in [Rule::Z, Rule::ZPlus] {
            let Some(s) = propagate_deterministic(rule, &g, blue).unwrap().into_complete() else { continue };
            let trees = forcing_trees(&g, &s).unwrap();
            prop_assert_eq!(trees.len(), blue.len());
            let mut seen = HashSet::new();
            let mut cover = VertexSet::EMPTY;
            for t in &trees {
                prop_assert!(t.vertices.intersection(cover).is_empty());
                cover = cover.union(t.vertices);
                for &e in &t.edges {
                    prop_assert!(g.has_edge(e.0, e.1));
                    prop_assert!(seen.insert((e.0.min(e.1), e.0.max(e.1))));
                }
                if rule == Rule::Z {
                    // standard chains are paths
                    prop_assert!(t.vertices.iter().all(|v| t.children(v).len() <= 1));
                }
            }
            prop_assert_eq!(cover, g.vertices());
            for (u, v) in g.edges() {
                if seen.contains(&(u, v)) {
                    continue;
                }
                let same = trees.iter().find(|t| t.vertices.contains(u)).unwrap().vertices.contains(v);
                if same {
                    let t = trees.iter().find(|t| t.vertices.contains(u)).unwrap();
                    prop_assert!(t.parent(u) != Some(v) && t.parent(v) != Some(u));
                }
            }
        }
    }
}
