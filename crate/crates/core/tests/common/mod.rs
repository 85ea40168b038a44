#![allow(dead_code)]

use proptest::prelude::*;
use zfthrottle::{Graph, VertexSet};

/// A random graph on `lo..=hi` vertices with each edge present independently.
pub fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

pub fn connected(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    graph(lo, hi).prop_filter("connected", |g| g.is_connected())
}

/// A graph with a subset of its vertices.
pub fn graph_and_set(lo: usize, hi: usize) -> impl Strategy<Value = (Graph, VertexSet)> {
    graph(lo, hi).prop_flat_map(|g| {
        let full = g.vertices().0;
        (Just(g), any::<u32>().prop_map(move |m| VertexSet(m & full)))
    })
}

pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}
