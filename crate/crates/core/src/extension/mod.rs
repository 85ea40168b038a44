//! Labeled copies of the component tree, the PSD extension built from them,
//! and minor scripts over `K_a □ T_{k,b}`.

mod script;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forcing::{component_tree, forcing_trees, ComponentTree, ForcingSchedule, ForcingTree, Rule};
use crate::graph::{Graph, VertexSet, MAX_VERTICES};

pub use script::{apply_script, characterization_certificate, Flavor, MinorScript};

/// The component tree with each node carrying a vertex of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledExtensionTree {
    pub root: usize,
    pub tree: ComponentTree,
    /// `labels[node]` for every node of `tree`.
    pub labels: Vec<usize>,
}

/// Labels a copy of the component tree for the initial vertex `b`.
///
/// The root gets `b`; each vertex of `b`'s forcing tree labels the node at
/// the depth where it turned blue, below the edge of its component; every
/// other node copies its parent's label.
pub fn build_labeled_tree(
    g: &Graph,
    b: usize,
    tree: &ComponentTree,
    schedule: &ForcingSchedule,
) -> Result<LabeledExtensionTree> {
    if !schedule.initial.contains(b) {
        return Err(Error::Usage(format!("{b} is not in the initial set {}", schedule.initial)));
    }
    let forcing = forcing_trees(g, schedule)?;
    let ft = forcing
        .iter()
        .find(|t| t.root == b)
        .ok_or_else(|| Error::Internal(format!("no forcing tree rooted at {b}")))?;
    label_copy(g, b, ft, tree, schedule)
}

fn label_copy(
    g: &Graph,
    b: usize,
    ft: &ForcingTree,
    tree: &ComponentTree,
    schedule: &ForcingSchedule,
) -> Result<LabeledExtensionTree> {
    let mut labels: Vec<Option<usize>> = vec![None; tree.nodes.len()];
    labels[tree.root()] = Some(b);
    for u in ft.vertices.iter().filter(|&u| u != b) {
        let t = schedule.time_of(u).ok_or_else(|| Error::Internal(format!("{u} never turns blue")))?;
        let w = crate::forcing::component_containing(g, schedule.blue_after(t - 1), u);
        let node = tree
            .node_with_label(t, w)
            .ok_or_else(|| Error::Internal(format!("no component node for {u} at depth {t}")))?;
        match labels[node] {
            Some(prev) if prev != u => {
                return Err(Error::Internal(format!(
                    "node at depth {t} labelled both {prev} and {u} in the tree of {b}"
                )))
            }
            _ => labels[node] = Some(u),
        }
    }
    // parents come before children in node order
    for id in 0..tree.nodes.len() {
        if labels[id].is_none() {
            let p = tree.nodes[id].parent.expect("root is labelled");
            labels[id] = labels[p];
        }
    }
    Ok(LabeledExtensionTree { root: b, tree: tree.clone(), labels: labels.into_iter().map(|l| l.unwrap()).collect() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionEdgeKind {
    /// Inside one labeled tree.
    Tree,
    /// Between two roots, for an edge of `G` inside the initial set.
    Root,
    /// Between copies of the same node in two trees, for an edge of `G`
    /// outside every forcing tree.
    Cross,
}

/// A vertex of the extension: a copy (index into `roots`) and a node of the
/// component tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtensionVertex {
    pub copy: usize,
    pub node: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionEdge {
    pub a: ExtensionVertex,
    pub b: ExtensionVertex,
    pub kind: ExtensionEdgeKind,
}

/// `𝓔₊(G; B; F)`. It can exceed 32 vertices, so it is held as an explicit
/// edge list rather than a [`Graph`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionGraph {
    /// Initial vertices in increasing order; copy `i` belongs to `roots[i]`.
    pub roots: Vec<usize>,
    pub tree: ComponentTree,
    /// `labels[copy][node]`.
    pub labels: Vec<Vec<usize>>,
    pub edges: Vec<ExtensionEdge>,
}

impl ExtensionGraph {
    pub fn vertex_count(&self) -> usize {
        self.roots.len() * self.tree.nodes.len()
    }

    pub fn index(&self, v: ExtensionVertex) -> usize {
        v.copy * self.tree.nodes.len() + v.node
    }

    pub fn label(&self, v: ExtensionVertex) -> usize {
        self.labels[v.copy][v.node]
    }

    pub fn count(&self, kind: ExtensionEdgeKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    /// The extension as a graph with vertex labels set to the `G` names.
    pub fn to_graph(&self) -> Result<Graph> {
        let n = self.vertex_count();
        if n > MAX_VERTICES {
            return Err(Error::capacity(format!("extension graph with {n} vertices"), MAX_VERTICES));
        }
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (self.index(e.a), self.index(e.b))).collect();
        let mut labels = vec![String::new(); n];
        for copy in 0..self.roots.len() {
            for node in 0..self.tree.nodes.len() {
                let v = ExtensionVertex { copy, node };
                labels[self.index(v)] = self.label(v).to_string();
            }
        }
        Graph::from_edges(n, &edges)?.with_labels(labels)
    }

    /// Contracts every tree edge whose endpoints share a label. The result
    /// has one vertex per label, numbered by label, so it can be compared
    /// with `G` directly.
    pub fn contract_same_label(&self, n: usize) -> Result<Graph> {
        let total = self.vertex_count();
        let mut uf = UnionFind::new(total);
        for e in self.edges.iter().filter(|e| e.kind == ExtensionEdgeKind::Tree) {
            if self.label(e.a) == self.label(e.b) {
                uf.union(self.index(e.a), self.index(e.b));
            }
        }
        // each label must form exactly one class
        let mut class_of_label: Vec<Option<usize>> = vec![None; n];
        for copy in 0..self.roots.len() {
            for node in 0..self.tree.nodes.len() {
                let v = ExtensionVertex { copy, node };
                let l = self.label(v);
                if l >= n {
                    return Err(Error::Internal(format!("label {l} outside the graph")));
                }
                let c = uf.find(self.index(v));
                match class_of_label[l] {
                    None => class_of_label[l] = Some(c),
                    Some(prev) if prev != c => {
                        return Err(Error::Internal(format!("label {l} is split across several tree pieces")))
                    }
                    _ => {}
                }
            }
        }
        let mut edges = Vec::new();
        for e in &self.edges {
            let (x, y) = (self.label(e.a), self.label(e.b));
            if x != y {
                edges.push((x, y));
            }
        }
        Graph::from_edges(n, &edges)
    }

    /// Whether contracting same-label tree edges gives back exactly `g`.
    pub fn recovers(&self, g: &Graph) -> bool {
        self.contract_same_label(g.n()).is_ok_and(|h| h.edges() == g.edges())
    }
}

/// Builds `𝓔₊(G; B; F)` from a completed Z+ schedule.
pub fn build_extension(g: &Graph, schedule: &ForcingSchedule) -> Result<ExtensionGraph> {
    if schedule.rule != Rule::ZPlus {
        return Err(Error::Usage(format!("the extension is built from zplus schedules, not {}", schedule.rule)));
    }
    let tree = component_tree(g, schedule)?;
    let forcing = forcing_trees(g, schedule)?;
    let roots: Vec<usize> = schedule.initial.to_vec();
    let mut labels = Vec::with_capacity(roots.len());
    for (ft, &b) in forcing.iter().zip(&roots) {
        labels.push(label_copy(g, b, ft, &tree, schedule)?.labels);
    }
    let mut edges = Vec::new();

    // the labeled trees
    for copy in 0..roots.len() {
        for (id, node) in tree.nodes.iter().enumerate() {
            if let Some(p) = node.parent {
                edges.push(ExtensionEdge {
                    a: ExtensionVertex { copy, node: p },
                    b: ExtensionVertex { copy, node: id },
                    kind: ExtensionEdgeKind::Tree,
                });
            }
        }
    }

    let copy_of = |v: usize| -> usize {
        forcing.iter().position(|t| t.vertices.contains(v)).expect("forcing trees cover V")
    };
    let tree_edge = |u: usize, v: usize| forcing.iter().any(|t| t.edges.contains(&(u, v)) || t.edges.contains(&(v, u)));

    for (u, v) in g.edges() {
        if schedule.initial.contains(u) && schedule.initial.contains(v) {
            edges.push(ExtensionEdge {
                a: ExtensionVertex { copy: copy_of(u), node: 0 },
                b: ExtensionVertex { copy: copy_of(v), node: 0 },
                kind: ExtensionEdgeKind::Root,
            });
            continue;
        }
        if tree_edge(u, v) {
            continue;
        }
        let (tu, tv) = (schedule.time_of(u).unwrap(), schedule.time_of(v).unwrap());
        let (later, t) = if tv >= tu { (v, tv) } else { (u, tu) };
        let path: Vec<VertexSet> = (0..t)
            .map(|s| crate::forcing::component_containing(g, schedule.blue_after(s), later))
            .collect();
        let node = tree
            .follow(&path)
            .ok_or_else(|| Error::Internal(format!("no component path for edge {u}{v}")))?;
        let (a, b) = (ExtensionVertex { copy: copy_of(u), node }, ExtensionVertex { copy: copy_of(v), node });
        if labels[a.copy][node] != u || labels[b.copy][node] != v {
            return Err(Error::Internal(format!(
                "cross edge {u}{v} lands on nodes labelled {} and {}",
                labels[a.copy][node], labels[b.copy][node]
            )));
        }
        edges.push(ExtensionEdge { a, b, kind: ExtensionEdgeKind::Cross });
    }
    Ok(ExtensionGraph { roots, tree, labels, edges })
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as representative
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forcing::propagate_deterministic;

    fn zplus(g: &Graph, b: &[usize]) -> ForcingSchedule {
        propagate_deterministic(Rule::ZPlus, g, b.iter().copied().collect())
            .unwrap()
            .into_complete()
            .unwrap()
    }

    #[test]
    fn p5_labeled_tree() {
        let g = Graph::path(5);
        let s = zplus(&g, &[2]);
        let ct = component_tree(&g, &s).unwrap();
        let lt = build_labeled_tree(&g, 2, &ct, &s).unwrap();
        assert_eq!(lt.labels[0], 2);
        let depth1: Vec<usize> = ct.nodes[0].children.iter().map(|&c| lt.labels[c]).collect();
        assert_eq!(depth1, vec![1, 3]);
        let depth2: Vec<usize> = ct.nodes[0]
            .children
            .iter()
            .flat_map(|&c| ct.nodes[c].children.iter().map(|&d| lt.labels[d]))
            .collect();
        assert_eq!(depth2, vec![0, 4]);
    }

    #[test]
    fn c4_extension() {
        let g = Graph::cycle(4);
        let s = zplus(&g, &[0, 1]);
        let e = build_extension(&g, &s).unwrap();
        assert_eq!(e.roots, vec![0, 1]);
        assert_eq!(e.count(ExtensionEdgeKind::Root), 1);
        assert_eq!(e.count(ExtensionEdgeKind::Cross), 1);
        let cross = e.edges.iter().find(|x| x.kind == ExtensionEdgeKind::Cross).unwrap();
        assert_eq!(e.tree.nodes[cross.a.node].depth, 1);
        assert!(e.recovers(&g));
    }

    #[test]
    fn tree_has_no_cross_edges() {
        let g = Graph::star(3);
        let e = build_extension(&g, &zplus(&g, &[0])).unwrap();
        assert_eq!(e.count(ExtensionEdgeKind::Cross), 0);
        assert!(e.recovers(&g));
    }

    #[test]
    fn all_blue_gives_roots_only() {
        let g = Graph::complete(3);
        let s = zplus(&g, &[0, 1, 2]);
        let e = build_extension(&g, &s).unwrap();
        assert_eq!(e.vertex_count(), 3);
        assert_eq!(e.count(ExtensionEdgeKind::Root), 3);
        assert!(e.recovers(&g));
    }
}
