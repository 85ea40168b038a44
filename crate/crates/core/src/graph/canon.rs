//! Canonical labeling by equitable refinement and individualization, with
//! orbit pruning from automorphisms discovered during the search.

use super::{emit_graph6, Graph};
use crate::error::{Error, Result};

pub const CANON_MAX_VERTICES: usize = 16;

type Cells = Vec<Vec<usize>>;

/// A byte string that is equal for two graphs iff they are isomorphic.
/// Labels are ignored.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>> {
    Ok(emit_graph6(&canonical_graph(g)?).into_bytes())
}

/// The canonical relabeling of `g` (labels dropped).
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let perm = canonical_permutation(g)?;
    Ok(g.unlabeled().permute(&perm))
}

/// `perm[v]` is the canonical position of vertex `v`.
pub fn canonical_permutation(g: &Graph) -> Result<Vec<usize>> {
    let n = g.n();
    if n > CANON_MAX_VERTICES {
        return Err(Error::capacity(format!("canonical form of a {n}-vertex graph"), CANON_MAX_VERTICES));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut search = Search { g, best: None, autos: Vec::new() };
    let mut cells: Cells = vec![(0..n).collect()];
    // degree split first so refinement has something to work with
    refine(g, &mut cells);
    search.descend(cells, &mut Vec::new());
    Ok(search.best.expect("at least one leaf").1)
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u32>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Cells, seq: &mut Vec<usize>) {
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(target) = target else {
            self.leaf(&cells);
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if !explored.is_empty() && self.same_orbit(seq, v, &explored) {
                continue;
            }
            explored.push(v);
            let mut child = cells.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&x| x != v).collect();
            child[target] = vec![v];
            child.insert(target + 1, rest);
            refine(self.g, &mut child);
            seq.push(v);
            self.descend(child, seq);
            seq.pop();
        }
    }

    fn leaf(&mut self, cells: &Cells) {
        let n = self.g.n();
        let mut perm = vec![0usize; n];
        for (pos, cell) in cells.iter().enumerate() {
            perm[cell[0]] = pos;
        }
        let mut code = vec![0u32; n];
        for v in 0..n {
            let mut row = 0u32;
            for w in self.g.neighbors(v).iter() {
                row |= 1 << perm[w];
            }
            code[perm[v]] = row;
        }
        match &self.best {
            None => self.best = Some((code, perm)),
            Some((best_code, best_perm)) => match code.cmp(best_code) {
                std::cmp::Ordering::Greater => self.best = Some((code, perm)),
                std::cmp::Ordering::Equal => {
                    // vertex v -> position perm[v] -> vertex at that position in best
                    let mut inv = vec![0usize; n];
                    for (v, &p) in best_perm.iter().enumerate() {
                        inv[p] = v;
                    }
                    let auto: Vec<usize> = (0..n).map(|v| inv[perm[v]]).collect();
                    if auto.iter().enumerate().any(|(v, &w)| v != w) {
                        self.autos.push(auto);
                    }
                }
                std::cmp::Ordering::Less => {}
            },
        }
    }

    /// Whether `v` shares an orbit with an explored sibling under the
    /// automorphisms found so far that fix `seq` pointwise.
    fn same_orbit(&self, seq: &[usize], v: usize, explored: &[usize]) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for a in &self.autos {
            if seq.iter().any(|&s| a[s] != s) {
                continue;
            }
            any = true;
            for x in 0..n {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, a[x]));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == rv)
    }
}

/// Splits cells until the partition is equitable. Deterministic and
/// isomorphism-invariant: sub-cells are ordered by neighbor count.
fn refine(g: &Graph, cells: &mut Cells) {
    'outer: loop {
        for s in 0..cells.len() {
            let splitter: u32 = cells[s].iter().fold(0, |m, &v| m | 1 << v);
            for x in 0..cells.len() {
                if cells[x].len() < 2 {
                    continue;
                }
                let count = |v: usize| (g.neighbors(v).0 & splitter).count_ones();
                let first = count(cells[x][0]);
                if cells[x].iter().all(|&v| count(v) == first) {
                    continue;
                }
                let mut members = std::mem::take(&mut cells[x]);
                members.sort_by_key(|&v| (count(v), v));
                let mut groups: Cells = Vec::new();
                let mut last = None;
                for v in members {
                    let c = count(v);
                    if last != Some(c) {
                        groups.push(Vec::new());
                        last = Some(c);
                    }
                    groups.last_mut().unwrap().push(v);
                }
                cells.splice(x..=x, groups);
                continue 'outer;
            }
        }
        break;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paw() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap()
    }

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn c4_orderings_agree() {
        let a = Graph::cycle(4);
        let b = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn p4_differs_from_claw() {
        assert_ne!(canonical_form(&Graph::path(4)).unwrap(), canonical_form(&Graph::star(3)).unwrap());
    }

    #[test]
    fn every_relabeling_of_paw_agrees() {
        let g = paw();
        let forms: std::collections::HashSet<_> =
            all_perms(4).iter().map(|p| canonical_form(&g.permute(p)).unwrap()).collect();
        assert_eq!(forms.len(), 1);
    }

    #[test]
    fn symmetric_graphs_finish() {
        canonical_form(&Graph::complete(16)).unwrap();
        canonical_form(&Graph::empty(16).unwrap()).unwrap();
        let petersen = Graph::from_edges(
            10,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        )
        .unwrap();
        let p2 = petersen.permute(&[3, 1, 4, 0, 2, 9, 5, 8, 7, 6]);
        assert_eq!(canonical_form(&petersen).unwrap(), canonical_form(&p2).unwrap());
    }

    #[test]
    fn too_large() {
        assert!(canonical_form(&Graph::empty(17).unwrap()).is_err());
    }
}
