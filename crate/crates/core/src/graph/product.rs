//! The products `K_a □ T_{k,b}` with their tree/complete edge classes.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

/// Largest template handled symbolically (scripts address vertices without
/// materializing a [`Graph`]).
pub const TEMPLATE_MAX_VERTICES: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    /// Inside one copy of `T_{k,b}`.
    Tree,
    /// Inside one copy of `K_a`.
    Complete,
}

/// A vertex of `K_a □ T_{k,b}`: a clique index and a path from the tree
/// root (child indices in `0..k`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TemplateNode {
    pub clique: usize,
    pub path: Vec<usize>,
}

impl TemplateNode {
    pub fn path_string(&self) -> String {
        self.path.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(".")
    }

    pub fn parse_path(s: &str) -> Result<Vec<usize>> {
        if s.is_empty() {
            return Ok(Vec::new());
        }
        s.split('.')
            .map(|p| p.parse::<usize>().map_err(|_| Error::Script(format!("bad tree path {s:?}"))))
            .collect()
    }
}

impl fmt::Display for TemplateNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, \"{}\")", self.clique, self.path_string())
    }
}

impl Serialize for TemplateNode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.clique, self.path_string()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for TemplateNode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (clique, path): (usize, String) = Deserialize::deserialize(d)?;
        let path = TemplateNode::parse_path(&path).map_err(serde::de::Error::custom)?;
        Ok(TemplateNode { clique, path })
    }
}

/// `K_a □ T_{k,b}`, held symbolically.
///
/// Tree nodes use heap numbering: the root is 0 and the children of node `i`
/// are `k*i + 1 ..= k*i + k`. Product vertex `(c, i)` has index
/// `c * tree_size + i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductTemplate {
    pub a: usize,
    pub k: usize,
    pub b: usize,
}

impl ProductTemplate {
    pub fn new(a: usize, k: usize, b: usize) -> Result<ProductTemplate> {
        if a == 0 || k == 0 {
            return Err(Error::Domain(format!("template needs a >= 1 and k >= 1 (got a={a}, k={k})")));
        }
        let t = ProductTemplate { a, k, b };
        t.checked_vertex_count()
            .filter(|&c| c <= TEMPLATE_MAX_VERTICES)
            .ok_or_else(|| Error::capacity(format!("K_{a} x T_({k},{b})"), TEMPLATE_MAX_VERTICES))?;
        Ok(t)
    }

    fn checked_tree_size(&self) -> Option<usize> {
        let mut total: usize = 0;
        let mut level: usize = 1;
        for depth in 0..=self.b {
            if depth > 0 {
                level = level.checked_mul(self.k)?;
            }
            total = total.checked_add(level)?;
        }
        Some(total)
    }

    fn checked_vertex_count(&self) -> Option<usize> {
        self.checked_tree_size()?.checked_mul(self.a)
    }

    /// Vertices of `T_{k,b}`.
    pub fn tree_size(&self) -> usize {
        self.checked_tree_size().expect("validated at construction")
    }

    pub fn vertex_count(&self) -> usize {
        self.a * self.tree_size()
    }

    pub fn tree_edge_count(&self) -> usize {
        self.a * (self.tree_size() - 1)
    }

    pub fn complete_edge_count(&self) -> usize {
        self.tree_size() * self.a * (self.a - 1) / 2
    }

    pub fn tree_parent(&self, i: usize) -> Option<usize> {
        (i > 0).then(|| (i - 1) / self.k)
    }

    pub fn tree_children(&self, i: usize) -> std::ops::Range<usize> {
        let first = self.k * i + 1;
        let ts = self.tree_size();
        if first >= ts {
            first..first
        } else {
            first..(first + self.k).min(ts)
        }
    }

    pub fn depth(&self, mut i: usize) -> usize {
        let mut d = 0;
        while let Some(p) = self.tree_parent(i) {
            i = p;
            d += 1;
        }
        d
    }

    pub fn index(&self, clique: usize, tree_node: usize) -> usize {
        clique * self.tree_size() + tree_node
    }

    pub fn split(&self, v: usize) -> (usize, usize) {
        let ts = self.tree_size();
        (v / ts, v % ts)
    }

    pub fn tree_path(&self, mut i: usize) -> Vec<usize> {
        let mut path = Vec::new();
        while let Some(p) = self.tree_parent(i) {
            path.push(i - 1 - p * self.k);
            i = p;
        }
        path.reverse();
        path
    }

    pub fn node(&self, v: usize) -> TemplateNode {
        let (clique, i) = self.split(v);
        TemplateNode { clique, path: self.tree_path(i) }
    }

    /// Index of an addressed vertex, if it exists in this template.
    pub fn locate(&self, node: &TemplateNode) -> Option<usize> {
        if node.clique >= self.a || node.path.len() > self.b {
            return None;
        }
        let mut i = 0usize;
        for &c in &node.path {
            if c >= self.k {
                return None;
            }
            i = self.k * i + 1 + c;
        }
        Some(self.index(node.clique, i))
    }

    /// Classifies the pair `uv`, or `None` if it is not an edge.
    pub fn edge_class(&self, u: usize, v: usize) -> Option<EdgeClass> {
        let ((cu, iu), (cv, iv)) = (self.split(u), self.split(v));
        if cu == cv && (self.tree_parent(iu) == Some(iv) || self.tree_parent(iv) == Some(iu)) {
            Some(EdgeClass::Tree)
        } else if iu == iv && cu != cv {
            Some(EdgeClass::Complete)
        } else {
            None
        }
    }

    /// All edges `(u, v, class)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize, EdgeClass)> {
        let ts = self.tree_size();
        let mut out = Vec::with_capacity(self.tree_edge_count() + self.complete_edge_count());
        for c in 0..self.a {
            for i in 1..ts {
                let p = (i - 1) / self.k;
                out.push((self.index(c, p), self.index(c, i), EdgeClass::Tree));
            }
        }
        for i in 0..ts {
            for c1 in 0..self.a {
                for c2 in c1 + 1..self.a {
                    out.push((self.index(c1, i), self.index(c2, i), EdgeClass::Complete));
                }
            }
        }
        out
    }

    /// Materializes the product; fails above 32 vertices.
    pub fn graph(&self) -> Result<Graph> {
        let n = self.vertex_count();
        if n > MAX_VERTICES {
            return Err(Error::capacity(format!("K_{} x T_({},{}) with {n} vertices", self.a, self.k, self.b), MAX_VERTICES));
        }
        let edges: Vec<(usize, usize)> = self.edges().into_iter().map(|(u, v, _)| (u, v)).collect();
        Graph::from_edges(n, &edges)
    }
}

/// Builds `K_a □ T_{k,b}` together with its edge classification.
pub fn cartesian_product_template(a: usize, k: usize, b: usize) -> Result<(ProductTemplate, Graph)> {
    let t = ProductTemplate::new(a, k, b)?;
    let g = t.graph()?;
    Ok((t, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex() {
        let (t, g) = cartesian_product_template(1, 2, 0).unwrap();
        assert_eq!(t.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn k2_times_p2_is_c4() {
        let (t, g) = cartesian_product_template(2, 1, 1).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 4);
        assert!((0..4).all(|v| g.degree(v) == 2) && g.is_connected());
        let classes: Vec<_> = t.edges().iter().map(|e| e.2).collect();
        assert_eq!(classes.iter().filter(|&&c| c == EdgeClass::Tree).count(), 2);
        assert_eq!(classes.iter().filter(|&&c| c == EdgeClass::Complete).count(), 2);
    }

    #[test]
    fn binary_tree_of_height_two() {
        let (t, g) = cartesian_product_template(1, 2, 2).unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(g.edge_count(), 6);
        assert!(t.edges().iter().all(|e| e.2 == EdgeClass::Tree));
    }

    #[test]
    fn addressing_round_trips() {
        let t = ProductTemplate::new(3, 3, 2).unwrap();
        for v in 0..t.vertex_count() {
            let node = t.node(v);
            assert_eq!(t.locate(&node), Some(v));
            assert_eq!(node.path.len(), t.depth(t.split(v).1));
        }
    }

    #[test]
    fn capacity() {
        assert!(cartesian_product_template(2, 2, 4).is_err());
        assert!(ProductTemplate::new(2, 2, 4).is_ok());
        assert!(ProductTemplate::new(1, 10, 40).is_err());
        assert!(ProductTemplate::new(0, 1, 1).is_err());
    }
}
