use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};

/// Sets `S_i`, `T_i` with the matching `S_i -> T_i` for each part of the
/// composition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcceleratorDecomposition {
    pub composition: Vec<usize>,
    pub s: Vec<Vec<usize>>,
    pub t: Vec<Vec<usize>>,
    /// `matching[i]` pairs each vertex of `s[i]` with its partner in `t[i]`.
    pub matching: Vec<Vec<(usize, usize)>>,
}

impl AcceleratorDecomposition {
    /// The initial set `S_1 ∪ (S_2 \ T_1) ∪ ...` that forces `T_i` at step `i`.
    pub fn initial_set(&self) -> VertexSet {
        let mut b = VertexSet::EMPTY;
        for (i, s) in self.s.iter().enumerate() {
            for &v in s {
                if i == 0 || !self.t[i - 1].contains(&v) {
                    b.insert(v);
                }
            }
        }
        b
    }

    /// Re-checks the decomposition against `g`.
    pub fn holds_in(&self, g: &Graph) -> bool {
        let s: Vec<VertexSet> = self.s.iter().map(|x| x.iter().copied().collect()).collect();
        let t: Vec<VertexSet> = self.t.iter().map(|x| x.iter().copied().collect()).collect();
        let r = self.composition.len();
        if s.len() != r || t.len() != r {
            return false;
        }
        let mut cover = VertexSet::EMPTY;
        for i in 0..r {
            let size = self.composition[i] + 1;
            if s[i].len() != size || t[i].len() != size || self.s[i].len() != size || self.t[i].len() != size {
                return false;
            }
            cover = cover.union(s[i]).union(t[i]);
            for j in 0..r {
                if i != j && (!s[i].intersection(s[j]).is_empty() || !t[i].intersection(t[j]).is_empty()) {
                    return false;
                }
                if j != i + 1 && !t[i].intersection(s[j]).is_empty() {
                    return false;
                }
            }
            if !matched(g, s[i], t[i]) || !self.matching[i].iter().all(|&(x, y)| g.has_edge(x, y)) {
                return false;
            }
            for tj in &t[i + 1..] {
                if s[i].iter().any(|x| !g.neighbors(x).intersection(*tj).is_empty()) {
                    return false;
                }
            }
            if i > 0 && !dominated(g, s[i], t[i - 1]) {
                return false;
            }
        }
        cover == g.vertices()
    }
}

/// Every vertex of `s` has exactly one neighbor in `t` and vice versa.
fn matched(g: &Graph, s: VertexSet, t: VertexSet) -> bool {
    s.iter().all(|x| g.neighbors(x).intersection(t).len() == 1)
        && t.iter().all(|y| g.neighbors(y).intersection(s).len() == 1)
}

/// Every vertex of `s` lies in `t` or has a neighbor there.
fn dominated(g: &Graph, s: VertexSet, t: VertexSet) -> bool {
    s.iter().all(|x| t.contains(x) || !g.neighbors(x).intersection(t).is_empty())
}

fn subsets_of(pool: VertexSet, size: usize, mut f: impl FnMut(VertexSet) -> bool) -> bool {
    let items = pool.to_vec();
    if size > items.len() {
        return false;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if f(idx.iter().map(|&i| items[i]).collect()) {
            return true;
        }
        // next combination
        let mut i = size;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] != i + items.len() - size {
                break;
            }
            if i == 0 {
                return false;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    comp: &'a [usize],
    s: Vec<VertexSet>,
    t: Vec<VertexSet>,
}

impl Search<'_> {
    fn used(&self) -> VertexSet {
        self.s.iter().chain(&self.t).fold(VertexSet::EMPTY, |a, &b| a.union(b))
    }

    /// Smallest number of vertices the remaining parts still need.
    fn still_needed(&self, from: usize) -> usize {
        // each later part adds at least its T side, and S side minus a full overlap
        self.comp[from..].iter().map(|a| a + 1).sum()
    }

    fn step(&mut self, i: usize) -> bool {
        let all = self.g.vertices();
        let used = self.used();
        if i == self.comp.len() {
            return used == all;
        }
        let free = all.difference(used);
        if free.len() < self.still_needed(i) {
            return false;
        }
        let size = self.comp[i] + 1;
        let prev_t = if i > 0 { self.t[i - 1] } else { VertexSet::EMPTY };
        let max_overlap = prev_t.len().min(size);
        for overlap in 0..=max_overlap {
            let fresh = size - overlap;
            let found = subsets_of(prev_t, overlap, |o| {
                subsets_of(free, fresh, |nw| {
                    let si = o.union(nw);
                    if i > 0 && !dominated(self.g, si, prev_t) {
                        return false;
                    }
                    let t_pool = free.difference(nw);
                    subsets_of(t_pool, size, |ti| {
                        if !matched(self.g, si, ti) {
                            return false;
                        }
                        // no earlier S may see the new T
                        if self.s.iter().any(|&sj| sj.iter().any(|x| !self.g.neighbors(x).intersection(ti).is_empty())) {
                            return false;
                        }
                        self.s.push(si);
                        self.t.push(ti);
                        if self.step(i + 1) {
                            return true;
                        }
                        self.s.pop();
                        self.t.pop();
                        false
                    })
                })
            });
            if found {
                return true;
            }
        }
        false
    }
}

/// Finds a decomposition of `g` as an accelerator for `composition`.
///
/// The edge conditions are the ones that make the initial set
/// `S_1 ∪ (S_i \ T_{i-1})` force exactly `T_i` at step `i`: an `S_i`
/// vertex sees no `T_j` with `j > i`, and `S_i`–`T_i` edges form a perfect
/// matching. Every other pair is free. Subsets are tried in increasing
/// order, so the result is deterministic.
pub fn is_accelerator(g: &Graph, composition: &[usize]) -> Option<AcceleratorDecomposition> {
    if composition.is_empty() {
        return (g.n() == 0).then(|| AcceleratorDecomposition {
            composition: Vec::new(),
            s: Vec::new(),
            t: Vec::new(),
            matching: Vec::new(),
        });
    }
    if composition.contains(&0) {
        return None;
    }
    let min = composition.iter().map(|a| a + 1).sum::<usize>() + composition[0] + 1;
    let max = composition.iter().map(|a| 2 * (a + 1)).sum::<usize>();
    if g.n() < min || g.n() > max {
        return None;
    }
    let mut search = Search { g, comp: composition, s: Vec::new(), t: Vec::new() };
    if !search.step(0) {
        return None;
    }
    let matching = search
        .s
        .iter()
        .zip(&search.t)
        .map(|(si, ti)| {
            si.iter()
                .map(|x| (x, g.neighbors(x).intersection(*ti).first().expect("matched")))
                .collect()
        })
        .collect();
    Some(AcceleratorDecomposition {
        composition: composition.to_vec(),
        s: search.s.iter().map(|x| x.to_vec()).collect(),
        t: search.t.iter().map(|x| x.to_vec()).collect(),
        matching,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::NamedGraph;

    #[test]
    fn p4_is_a_one_accelerator() {
        let d = is_accelerator(&Graph::path(4), &[1]).unwrap();
        assert_eq!(d.s, vec![vec![0, 3]]);
        assert_eq!(d.t, vec![vec![1, 2]]);
        assert_eq!(d.matching, vec![vec![(0, 1), (3, 2)]]);
        assert!(d.holds_in(&Graph::path(4)));
        assert_eq!(d.initial_set(), VertexSet(0b1001));
    }

    #[test]
    fn ladders() {
        let g = NamedGraph::K2xP3.graph();
        assert!(is_accelerator(&g, &[2]).unwrap().holds_in(&g));
        let g = NamedGraph::K2xP4.graph();
        for c in [&[3][..], &[1, 1], &[1, 1, 1]] {
            let d = is_accelerator(&g, c).unwrap_or_else(|| panic!("{c:?}"));
            assert!(d.holds_in(&g));
        }
    }

    #[test]
    fn too_small() {
        assert!(is_accelerator(&Graph::complete(3), &[1]).is_none());
        assert!(is_accelerator(&Graph::complete(4), &[1]).is_none());
    }

    #[test]
    fn subsets_in_order() {
        let mut seen = Vec::new();
        subsets_of(VertexSet(0b1011), 2, |s| {
            seen.push(s.0);
            false
        });
        assert_eq!(seen, vec![0b0011, 0b1001, 0b1010]);
        let mut empty = 0;
        subsets_of(VertexSet(0b11), 0, |_| {
            empty += 1;
            false
        });
        assert_eq!(empty, 1);
    }
}
