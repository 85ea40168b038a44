use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::accelerator::{is_accelerator, AcceleratorDecomposition};
use crate::error::{Error, Result};
use crate::graph::{canonical_form, canonical_permutation, contains_induced, induced_subgraph_search, Graph, VertexSet};
use crate::throttle::masks_of_size;

/// Largest `k` whose catalog is generated exhaustively. `k = 2` already
/// has `2^42` free edge patterns for the composition `(1,1,1)`.
pub const CATALOG_MAX_K: usize = 1;

/// Largest host searched directly (subset by subset) for `k = 2`.
const DIRECT_MAX_VERTICES: usize = 16;

/// Compositions of `m` into positive parts, first part ascending.
pub fn compositions(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=m {
        for mut rest in compositions(m - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogMember {
    /// Canonical representative.
    #[serde(with = "crate::graph::graph6_serde")]
    pub graph: Graph,
    pub composition: Vec<usize>,
    /// Decomposition in the representative's vertex numbering.
    pub decomposition: AcceleratorDecomposition,
}

/// Vertex layout for one composition and one overlap pattern.
struct Layout {
    n: usize,
    s: Vec<Vec<usize>>,
    t: Vec<Vec<usize>>,
}

impl Layout {
    fn build(comp: &[usize], overlaps: &[Vec<usize>]) -> Layout {
        let mut n = 0;
        let mut s: Vec<Vec<usize>> = Vec::new();
        let mut t: Vec<Vec<usize>> = Vec::new();
        for (i, &a) in comp.iter().enumerate() {
            let size = a + 1;
            // overlapping vertices take the first slots of S_i
            let mut si: Vec<usize> = if i > 0 { overlaps[i - 1].iter().map(|&p| t[i - 1][p]).collect() } else { Vec::new() };
            while si.len() < size {
                si.push(n);
                n += 1;
            }
            let ti: Vec<usize> = (n..n + size).collect();
            n += size;
            s.push(si);
            t.push(ti);
        }
        Layout { n, s, t }
    }

    fn in_s(&self, v: usize) -> Option<usize> {
        self.s.iter().position(|x| x.contains(&v))
    }

    fn in_t(&self, v: usize) -> Option<usize> {
        self.t.iter().position(|x| x.contains(&v))
    }

    fn matched(&self, x: usize, y: usize) -> bool {
        (0..self.s.len()).any(|i| {
            (0..self.s[i].len())
                .any(|j| (self.s[i][j] == x && self.t[i][j] == y) || (self.s[i][j] == y && self.t[i][j] == x))
        })
    }

    /// Some(true) = edge forced, Some(false) = edge forbidden, None = free.
    fn pair(&self, x: usize, y: usize) -> Option<bool> {
        if self.matched(x, y) {
            return Some(true);
        }
        let blocked = |p: usize, q: usize| match (self.in_s(p), self.in_t(q)) {
            (Some(i), Some(j)) => j >= i,
            _ => false,
        };
        if blocked(x, y) || blocked(y, x) {
            Some(false)
        } else {
            None
        }
    }

    fn dominated(&self, g: &Graph) -> bool {
        (1..self.s.len()).all(|i| {
            let prev: VertexSet = self.t[i - 1].iter().copied().collect();
            self.s[i].iter().all(|&x| prev.contains(x) || !g.neighbors(x).intersection(prev).is_empty())
        })
    }

    /// Every graph on this layout, deduplicated by canonical form.
    fn members(&self, comp: &[usize]) -> Result<BTreeMap<Vec<u8>, CatalogMember>> {
        let mut forced = Vec::new();
        let mut free = Vec::new();
        for x in 0..self.n {
            for y in x + 1..self.n {
                match self.pair(x, y) {
                    Some(true) => forced.push((x, y)),
                    Some(false) => {}
                    None => free.push((x, y)),
                }
            }
        }
        if free.len() > 24 {
            return Err(Error::capacity(format!("{} free vertex pairs", free.len()), 24));
        }
        let base = Graph::from_edges(self.n, &forced)?;
        let mut out = BTreeMap::new();
        for mask in 0u32..(1u32 << free.len()) {
            let mut g = base.clone();
            for (i, &(x, y)) in free.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g = g.add_edge(x, y)?;
                }
            }
            if !self.dominated(&g) {
                continue;
            }
            let key = canonical_form(&g)?;
            if out.contains_key(&key) {
                continue;
            }
            let perm = canonical_permutation(&g)?;
            let relabel = |v: &Vec<usize>| v.iter().map(|&x| perm[x]).collect::<Vec<_>>();
            let decomposition = AcceleratorDecomposition {
                composition: comp.to_vec(),
                s: self.s.iter().map(relabel).collect(),
                t: self.t.iter().map(relabel).collect(),
                matching: self
                    .s
                    .iter()
                    .zip(&self.t)
                    .map(|(s, t)| s.iter().zip(t).map(|(&x, &y)| (perm[x], perm[y])).collect())
                    .collect(),
            };
            out.insert(
                key,
                CatalogMember { graph: g.permute(&perm), composition: comp.to_vec(), decomposition },
            );
        }
        Ok(out)
    }
}

/// Overlap patterns: for each consecutive pair of parts, which slots of
/// `T_i` reappear (in order) as the first slots of `S_{i+1}`.
fn overlap_patterns(comp: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![Vec::new()];
    for i in 0..comp.len().saturating_sub(1) {
        let (ti, next) = (comp[i] + 1, comp[i + 1] + 1);
        let mut choices = Vec::new();
        for size in 0..=ti.min(next) {
            for mask in masks_of_size(ti, size) {
                choices.push(VertexSet(mask).to_vec());
            }
        }
        out = out
            .into_iter()
            .flat_map(|p| {
                choices.iter().map(move |c| {
                    let mut q = p.clone();
                    q.push(c.clone());
                    q
                })
            })
            .collect();
    }
    out
}

/// All accelerators over compositions of `k + 1`, one canonical
/// representative per isomorphism class, ordered by size and then by
/// canonical form. With `reduced`, members containing a smaller member as
/// an induced subgraph are dropped.
pub fn generate_gk(k: usize, reduced: bool) -> Result<Vec<CatalogMember>> {
    if k > CATALOG_MAX_K {
        return Err(Error::capacity(format!("exhaustive catalog for k = {k}"), CATALOG_MAX_K));
    }
    let jobs: Vec<(Vec<usize>, Vec<Vec<usize>>)> = compositions(k + 1)
        .into_iter()
        .flat_map(|c| overlap_patterns(&c).into_iter().map(move |o| (c.clone(), o)))
        .collect();
    let parts: Vec<BTreeMap<Vec<u8>, CatalogMember>> = jobs
        .par_iter()
        .map(|(c, o)| Layout::build(c, o).members(c))
        .collect::<Result<_>>()?;
    // first layout in job order wins
    let mut merged: BTreeMap<(usize, Vec<u8>), CatalogMember> = BTreeMap::new();
    for part in parts {
        for (key, m) in part {
            merged.entry((m.graph.n(), key)).or_insert(m);
        }
    }
    let all: Vec<CatalogMember> = merged.into_values().collect();
    if !reduced {
        return Ok(all);
    }
    let keep: Vec<bool> = all
        .par_iter()
        .map(|m| !all.iter().any(|o| o.graph.n() < m.graph.n() && contains_induced(&o.graph, &m.graph)))
        .collect();
    Ok(all.into_iter().zip(keep).filter(|(_, k)| *k).map(|(m, _)| m).collect())
}

fn reduced_catalog(k: usize) -> Result<&'static [CatalogMember]> {
    static CACHE: [OnceLock<Vec<CatalogMember>>; CATALOG_MAX_K + 1] = [OnceLock::new(), OnceLock::new()];
    if let Some(c) = CACHE[k].get() {
        return Ok(c);
    }
    let built = generate_gk(k, true)?;
    Ok(CACHE[k].get_or_init(|| built))
}

/// An induced accelerator found inside a host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GkMatch {
    #[serde(with = "crate::graph::graph6_serde")]
    pub member: Graph,
    pub composition: Vec<usize>,
    /// Decomposition in the member's numbering.
    pub decomposition: AcceleratorDecomposition,
    /// `embedding[i]` is the host vertex of member vertex `i`.
    pub embedding: Vec<usize>,
}

/// Looks for an induced member of `G_k` in `g`. `k = -1` is the family of
/// the empty composition, whose only member is the null graph.
pub fn contains_gk_member(g: &Graph, k: i64) -> Result<Option<GkMatch>> {
    match k {
        ..=-2 => Err(Error::Domain(format!("k must be at least -1 (got {k})"))),
        -1 => Ok(Some(GkMatch {
            member: Graph::empty(0)?,
            composition: Vec::new(),
            decomposition: is_accelerator(&Graph::empty(0)?, &[]).expect("null graph"),
            embedding: Vec::new(),
        })),
        0..=1 => {
            for m in reduced_catalog(k as usize)? {
                if let Some(embedding) = induced_subgraph_search(&m.graph, g) {
                    return Ok(Some(GkMatch {
                        member: m.graph.clone(),
                        composition: m.composition.clone(),
                        decomposition: m.decomposition.clone(),
                        embedding,
                    }));
                }
            }
            Ok(None)
        }
        2 => direct_search(g, 3),
        _ => Err(Error::capacity(format!("forbidden-family search for k = {k}"), 2)),
    }
}

/// Tries every induced subgraph, smallest first, against every composition
/// of `total`.
fn direct_search(g: &Graph, total: usize) -> Result<Option<GkMatch>> {
    if g.n() > DIRECT_MAX_VERTICES {
        return Err(Error::capacity(format!("direct accelerator search on {} vertices", g.n()), DIRECT_MAX_VERTICES));
    }
    let comps = compositions(total);
    let largest = 4 * total;
    for size in 1..=g.n().min(largest) {
        for mask in masks_of_size(g.n(), size) {
            let x = VertexSet(mask);
            let h = g.induced_subgraph(x).unlabeled();
            for c in &comps {
                if let Some(decomposition) = is_accelerator(&h, c) {
                    return Ok(Some(GkMatch { member: h, composition: c.clone(), decomposition, embedding: x.to_vec() }));
                }
            }
        }
    }
    Ok(None)
}
