//! Small simple graphs on at most 32 vertices, stored as neighbor bitsets.

mod canon;
mod enumerate;
mod graph6;
mod product;
mod search;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::{canonical_form, canonical_graph, canonical_permutation, CANON_MAX_VERTICES};
pub use enumerate::{enumerate_connected, enumerate_graphs, ENUMERATE_MAX_CONNECTED, ENUMERATE_MAX_ALL};
pub use graph6::{emit_graph6, parse_edge_list, parse_graph6, emit_edge_list};
pub use product::{cartesian_product_template, EdgeClass, ProductTemplate, TemplateNode};
pub use search::{contains_induced, induced_subgraph_search};

/// Serde adapter storing a [`Graph`] as its graph6 string.
pub mod graph6_serde {
    use super::{emit_graph6, parse_graph6, Graph};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&emit_graph6(g))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Graph, D::Error> {
        let text = String::deserialize(d)?;
        parse_graph6(&text).map_err(serde::de::Error::custom)
    }
}

/// Hard vertex cap for [`Graph`].
pub const MAX_VERTICES: usize = 32;

/// A set of vertices of a graph with at most 32 vertices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 32 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        if let Some(&bad) = v.iter().find(|&&x| x >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {bad} out of range")));
        }
        Ok(v.into_iter().collect())
    }
}

pub struct VertexIter(u32);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Simple undirected graph with optional vertex labels.
///
/// Values are immutable once built: every operation returns a new graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::capacity(format!("graph with {n} vertices"), MAX_VERTICES));
        }
        Ok(Graph { adj: vec![0; n], labels: None })
    }

    /// Builds a graph from an edge list. Loops and out-of-range endpoints
    /// are rejected; repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Domain(format!("edge {u}{v} has an endpoint outside 0..{n}")));
            }
            if u == v {
                return Err(Error::Domain(format!("loop at vertex {u}")));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path within capacity")
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`, `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).expect("cycle within capacity")
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n).expect("complete graph within capacity");
        let full = VertexSet::full(n).0;
        for v in 0..n {
            g.adj[v] = full & !(1 << v);
        }
        g
    }

    /// Star `K_{1,m}` with center 0.
    pub fn star(m: usize) -> Graph {
        let edges: Vec<_> = (1..=m).map(|i| (0, i)).collect();
        Graph::from_edges(m + 1, &edges).expect("star within capacity")
    }

    pub(crate) fn from_adjacency(adj: Vec<u32>) -> Graph {
        debug_assert!(adj.len() <= MAX_VERTICES);
        Graph { adj, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.n() {
            return Err(Error::Domain(format!(
                "{} labels supplied for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    /// Copy of the graph with labels dropped.
    pub fn unlabeled(&self) -> Graph {
        Graph { adj: self.adj.clone(), labels: None }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u] >> v & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for v in self.neighbors(u).iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Pairs `(u, v)` with `u < v` that are not edges.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in u + 1..self.n() {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        2 * self.edge_count() == self.n() * self.n().saturating_sub(1)
    }

    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if u >= self.n() || v >= self.n() || u == v {
            return Err(Error::InvalidEdge { u, v });
        }
        let mut g = self.clone();
        g.adj[u] |= 1 << v;
        g.adj[v] |= 1 << u;
        Ok(g)
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::InvalidEdge { u, v });
        }
        let mut g = self.clone();
        g.adj[u] &= !(1 << v);
        g.adj[v] &= !(1 << u);
        Ok(g)
    }

    /// Contracts the edge `uv`.
    ///
    /// The merged vertex sits at index `min(u, v)` and carries the label of
    /// `u`; vertices above `max(u, v)` shift down by one.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::InvalidEdge { u, v });
        }
        let (keep, drop) = (u.min(v), u.max(v));
        let merged = (self.adj[u] | self.adj[v]) & !(1 << u) & !(1 << v);
        let n = self.n();
        let squeeze = |bits: u32| -> u32 {
            let low = bits & ((1u32 << drop) - 1);
            let high = if drop + 1 >= 32 { 0 } else { bits >> (drop + 1) };
            low | (high << drop)
        };
        let mut adj = Vec::with_capacity(n - 1);
        for w in 0..n {
            if w == drop {
                continue;
            }
            let mut row = if w == keep { merged } else { self.adj[w] };
            if w != keep && (row >> drop & 1 == 1 || row >> keep & 1 == 1) {
                row |= 1 << keep;
                row &= !(1 << drop);
            }
            adj.push(squeeze(row));
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut out: Vec<String> = Vec::with_capacity(n - 1);
            for (w, name) in l.iter().enumerate() {
                if w == drop {
                    continue;
                }
                out.push(if w == keep { l[u].clone() } else { name.clone() });
            }
            out
        });
        Ok(Graph { adj, labels })
    }

    /// `G[S]`, vertices renumbered in increasing order of their index in `G`.
    pub fn induced_subgraph(&self, s: VertexSet) -> Graph {
        let order: Vec<usize> = s.iter().filter(|&v| v < self.n()).collect();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let adj = order
            .iter()
            .map(|&v| {
                let mut row = 0u32;
                for w in VertexSet(self.adj[v] & s.0).iter() {
                    row |= 1 << pos[w];
                }
                row
            })
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| order.iter().map(|&v| l[v].clone()).collect());
        Graph { adj, labels }
    }

    /// Graph with vertex `v` of `self` placed at position `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        let n = self.n();
        assert_eq!(perm.len(), n, "permutation length");
        let mut adj = vec![0u32; n];
        for v in 0..n {
            for w in self.neighbors(v).iter() {
                adj[perm[v]] |= 1 << perm[w];
            }
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut out = vec![String::new(); n];
            for v in 0..n {
                out[perm[v]] = l[v].clone();
            }
            out
        });
        Graph { adj, labels }
    }

    /// Connected components of `G[within]`, each as a vertex set, ordered
    /// by smallest vertex.
    pub fn connected_components(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within.intersection(self.vertices());
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = 0u32;
                for v in frontier.iter() {
                    next |= self.adj[v];
                }
                frontier = VertexSet(next & within.0 & !comp.0);
                comp = comp.union(frontier);
            }
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.connected_components(self.vertices()).len() == 1
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertices().0;
        let adj = (0..self.n()).map(|v| !self.adj[v] & full & !(1 << v)).collect();
        Graph { adj, labels: self.labels.clone() }
    }

    /// `self` followed by `other`, vertices of `other` shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n() + other.n();
        if n > MAX_VERTICES {
            return Err(Error::capacity(format!("disjoint union with {n} vertices"), MAX_VERTICES));
        }
        let shift = self.n();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&a| a << shift));
        let labels = match (&self.labels, &other.labels) {
            (None, None) => None,
            _ => {
                let mut l: Vec<String> = match &self.labels {
                    Some(l) => l.clone(),
                    None => (0..self.n()).map(|v| v.to_string()).collect(),
                };
                match &other.labels {
                    Some(o) => l.extend(o.iter().cloned()),
                    None => l.extend((0..other.n()).map(|v| (v + shift).to_string())),
                }
                Some(l)
            }
        };
        Ok(Graph { adj, labels })
    }

    pub(crate) fn adjacency(&self) -> &[u32] {
        &self.adj
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contract_triangle_gives_k2() {
        let k3 = Graph::complete(3);
        let g = k3.contract_edge(0, 1).unwrap();
        assert_eq!(g, Graph::complete(2));
    }

    #[test]
    fn contract_middle_of_p4_gives_p3() {
        let g = Graph::path(4).contract_edge(1, 2).unwrap();
        assert_eq!(g, Graph::path(3));
    }

    #[test]
    fn contract_non_edge_is_rejected() {
        assert_eq!(
            Graph::path(4).contract_edge(0, 2),
            Err(Error::InvalidEdge { u: 0, v: 2 })
        );
    }

    #[test]
    fn contraction_keeps_label_of_first_endpoint() {
        let g = Graph::path(3)
            .with_labels(vec!["a".into(), "b".into(), "c".into()])
            .unwrap();
        let h = g.contract_edge(2, 1).unwrap();
        assert_eq!(h.labels().unwrap(), &["a".to_string(), "c".to_string()]);
        assert!(h.has_edge(0, 1));
    }

    #[test]
    fn components_respect_within() {
        let g = Graph::path(5);
        let comps = g.connected_components(VertexSet::from_iter([0, 1, 3, 4]));
        assert_eq!(comps, vec![VertexSet::from_iter([0, 1]), VertexSet::from_iter([3, 4])]);
    }

    #[test]
    fn induced_subgraph_renumbers() {
        let c5 = Graph::cycle(5);
        let h = c5.induced_subgraph(VertexSet::from_iter([0, 1, 2, 3]));
        assert_eq!(h, Graph::path(4));
    }

    #[test]
    fn complement_of_c4_is_2k2() {
        let c = Graph::cycle(4).complement();
        assert_eq!(c.edge_count(), 2);
        assert!(c.has_edge(0, 2) && c.has_edge(1, 3));
    }

    #[test]
    fn capacity_is_enforced() {
        assert!(matches!(Graph::empty(33), Err(Error::Capacity { .. })));
        let big = Graph::empty(20).unwrap();
        assert!(big.disjoint_union(&big).is_err());
    }
}
