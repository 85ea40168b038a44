use serde::{Deserialize, Serialize};

use super::{ForcingSchedule, Rule};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// The forcing tree of an initial vertex: every vertex reached from `root`
/// through forcing chains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcingTree {
    pub root: usize,
    pub vertices: VertexSet,
    /// `(parent, child)` pairs, one per force inside the tree.
    pub edges: Vec<(usize, usize)>,
}

impl ForcingTree {
    pub fn children(&self, v: usize) -> Vec<usize> {
        self.edges.iter().filter(|e| e.0 == v).map(|e| e.1).collect()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.edges.iter().find(|e| e.1 == v).map(|e| e.0)
    }
}

/// One tree per initial vertex, in increasing root order.
pub fn forcing_trees(g: &Graph, schedule: &ForcingSchedule) -> Result<Vec<ForcingTree>> {
    if !schedule.is_complete(g) {
        return Err(Error::Usage("forcing trees need a completed schedule".into()));
    }
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    for f in &schedule.forces {
        parent[f.target] = f.source;
    }
    let root_of = |mut v: usize| {
        while parent[v] != usize::MAX {
            v = parent[v];
        }
        v
    };
    let mut trees: Vec<ForcingTree> = schedule
        .initial
        .iter()
        .map(|b| ForcingTree { root: b, vertices: VertexSet::singleton(b), edges: Vec::new() })
        .collect();
    let mut forces: Vec<_> = schedule.forces.iter().collect();
    forces.sort_by_key(|f| (f.time, f.target));
    for f in forces {
        let r = root_of(f.target);
        let tree = trees
            .iter_mut()
            .find(|t| t.root == r)
            .ok_or_else(|| Error::Internal(format!("vertex {} has no initial ancestor", f.target)))?;
        tree.vertices.insert(f.target);
        tree.edges.push((f.source, f.target));
    }
    Ok(trees)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentNode {
    pub parent: Option<usize>,
    pub depth: usize,
    /// White component labelling the edge from the parent (none at the root).
    pub label: Option<VertexSet>,
    pub children: Vec<usize>,
}

/// How the white components break up during a Z+ propagation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentTree {
    pub nodes: Vec<ComponentNode>,
}

impl ComponentTree {
    pub fn root(&self) -> usize {
        0
    }

    pub fn height(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    /// Largest number of children of any node.
    pub fn max_children(&self) -> usize {
        self.nodes.iter().map(|n| n.children.len()).max().unwrap_or(0)
    }

    /// Edge labels from the root down to `id`.
    pub fn path_labels(&self, mut id: usize) -> Vec<VertexSet> {
        let mut out = Vec::new();
        while let Some(p) = self.nodes[id].parent {
            out.push(self.nodes[id].label.expect("non-root nodes are labelled"));
            id = p;
        }
        out.reverse();
        out
    }

    /// The node reached from the root by following the given labels.
    pub fn follow(&self, labels: &[VertexSet]) -> Option<usize> {
        let mut id = 0;
        for l in labels {
            id = *self.nodes[id].children.iter().find(|&&c| self.nodes[c].label == Some(*l))?;
        }
        Some(id)
    }

    /// The node at depth `t` whose incoming edge is labelled `w`.
    pub fn node_with_label(&self, t: usize, w: VertexSet) -> Option<usize> {
        self.nodes.iter().position(|n| n.depth == t && n.label == Some(w))
    }
}

/// Builds the component tree of a completed Z+ schedule.
pub fn component_tree(g: &Graph, schedule: &ForcingSchedule) -> Result<ComponentTree> {
    if schedule.rule != Rule::ZPlus {
        return Err(Error::Usage(format!("component trees are built from zplus schedules, not {}", schedule.rule)));
    }
    if !schedule.is_complete(g) {
        return Err(Error::Usage("component tree needs a completed schedule".into()));
    }
    let mut nodes = vec![ComponentNode { parent: None, depth: 0, label: None, children: Vec::new() }];
    // (node, white region below it)
    let mut frontier = vec![(0usize, g.vertices().difference(schedule.initial))];
    let mut t = 0;
    while !frontier.is_empty() {
        let blue = schedule.blue_after(t);
        let comps = g.connected_components(g.vertices().difference(blue));
        let mut next = Vec::new();
        for (id, region) in frontier {
            for c in comps.iter().filter(|c| c.is_subset(region)) {
                nodes.push(ComponentNode { parent: Some(id), depth: t + 1, label: Some(*c), children: Vec::new() });
                let child = nodes.len() - 1;
                nodes[id].children.push(child);
                // the region inherited by the child's own children
                let remaining = c.difference(schedule.blue_after(t + 1));
                if !remaining.is_empty() {
                    next.push((child, remaining));
                }
            }
        }
        frontier = next;
        t += 1;
    }
    Ok(ComponentTree { nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forcing::propagate_deterministic;

    #[test]
    fn p5_trees() {
        let g = Graph::path(5);
        let s = propagate_deterministic(Rule::ZPlus, &g, VertexSet::singleton(2))
            .unwrap()
            .into_complete()
            .unwrap();
        let trees = forcing_trees(&g, &s).unwrap();
        assert_eq!(trees.len(), 1);
        let t = &trees[0];
        assert_eq!(t.children(2), vec![1, 3]);
        assert_eq!(t.children(1), vec![0]);
        assert_eq!(t.children(3), vec![4]);

        let ct = component_tree(&g, &s).unwrap();
        let root = &ct.nodes[0];
        let labels: Vec<_> = root.children.iter().map(|&c| ct.nodes[c].label.unwrap()).collect();
        assert_eq!(labels, vec![VertexSet(0b00011), VertexSet(0b11000)]);
        for &c in &root.children {
            assert_eq!(ct.nodes[c].children.len(), 1);
        }
        assert_eq!(ct.height(), 2);
    }

    #[test]
    fn all_blue() {
        let g = Graph::cycle(4);
        let s = propagate_deterministic(Rule::ZPlus, &g, g.vertices()).unwrap().into_complete().unwrap();
        assert_eq!(forcing_trees(&g, &s).unwrap().len(), 4);
        assert_eq!(component_tree(&g, &s).unwrap().nodes.len(), 1);
    }

    #[test]
    fn incomplete_schedule_rejected() {
        let g = Graph::path(5);
        let p = propagate_deterministic(Rule::Z, &g, VertexSet::singleton(2)).unwrap();
        assert!(forcing_trees(&g, p.schedule()).is_err());
    }
}
