use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{build_extension, ExtensionEdgeKind, ExtensionGraph, UnionFind};
use crate::error::{Error, Result};
use crate::forcing::Rule;
use crate::graph::{canonical_form, EdgeClass, Graph, ProductTemplate, TemplateNode, MAX_VERTICES};
use crate::throttle::{floor_throttling_via_supergraphs, throttling_number, THROTTLE_MAX_VERTICES};

/// Which deletions a script may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    /// Complete edges only; certifies `th+`.
    Psd,
    /// Any edge; certifies the floor PSD throttling number.
    PsdFloor,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Psd => "psd",
            Flavor::PsdFloor => "psd_floor",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Flavor> {
        match s {
            "psd" => Ok(Flavor::Psd),
            "psd_floor" | "psdfloor" | "psd-floor" => Ok(Flavor::PsdFloor),
            _ => Err(Error::Usage(format!("unknown flavor {s:?} (expected psd or psdfloor)"))),
        }
    }
}

/// Contractions and deletions turning `K_a □ T_{k,b}` into a graph.
///
/// Applied as a quotient: the result has one vertex per class of the
/// contracted tree edges, and an edge between two classes when some
/// template edge joins them and is not deleted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorScript {
    pub a: usize,
    pub k: usize,
    pub b: usize,
    pub flavor: Flavor,
    pub contract: Vec<(TemplateNode, TemplateNode)>,
    pub delete: Vec<(TemplateNode, TemplateNode)>,
}

impl MinorScript {
    pub fn template(&self) -> Result<ProductTemplate> {
        ProductTemplate::new(self.a, self.k, self.b)
    }
}

fn locate_edge(t: &ProductTemplate, e: &(TemplateNode, TemplateNode)) -> Result<(usize, usize, EdgeClass)> {
    let find = |x: &TemplateNode| t.locate(x).ok_or_else(|| Error::Script(format!("{x} is not a vertex of the template")));
    let (u, v) = (find(&e.0)?, find(&e.1)?);
    let class = t
        .edge_class(u, v)
        .ok_or_else(|| Error::Script(format!("{} {} is not an edge of the template", e.0, e.1)))?;
    Ok((u.min(v), u.max(v), class))
}

/// Applies a script. Result vertices are numbered by the smallest template
/// index in their class.
pub fn apply_script(script: &MinorScript) -> Result<Graph> {
    let t = script.template()?;
    let mut contracted = BTreeSet::new();
    for e in &script.contract {
        let (u, v, class) = locate_edge(&t, e)?;
        if class != EdgeClass::Tree {
            return Err(Error::Script(format!("cannot contract the complete edge {} {}", e.0, e.1)));
        }
        contracted.insert((u, v));
    }
    let mut deleted = BTreeSet::new();
    for e in &script.delete {
        let (u, v, class) = locate_edge(&t, e)?;
        if script.flavor == Flavor::Psd && class != EdgeClass::Complete {
            return Err(Error::Script(format!("psd scripts delete complete edges only, not {} {}", e.0, e.1)));
        }
        if contracted.contains(&(u, v)) {
            return Err(Error::Script(format!("{} {} is both contracted and deleted", e.0, e.1)));
        }
        deleted.insert((u, v));
    }

    let n = t.vertex_count();
    let mut uf = UnionFind::new(n);
    for &(u, v) in &contracted {
        uf.union(u, v);
    }
    let mut class_index = vec![usize::MAX; n];
    let mut classes = 0;
    for v in 0..n {
        let r = uf.find(v);
        if class_index[r] == usize::MAX {
            class_index[r] = classes;
            classes += 1;
        }
    }
    if classes > MAX_VERTICES {
        return Err(Error::capacity(format!("script result with {classes} vertices"), MAX_VERTICES));
    }
    let mut edges = BTreeSet::new();
    for (u, v, _) in t.edges() {
        if deleted.contains(&(u, v)) {
            continue;
        }
        let (cu, cv) = (class_index[uf.find(u)], class_index[uf.find(v)]);
        if cu != cv {
            edges.insert((cu.min(cv), cu.max(cv)));
        }
    }
    Graph::from_edges(classes, &edges.into_iter().collect::<Vec<_>>())
}

/// A script from some `K_a □ T_{k,b}` with `a + b = t` producing `g`, or
/// `None` when the relevant throttling number exceeds `t`.
pub fn characterization_certificate(g: &Graph, t: usize, flavor: Flavor) -> Result<Option<MinorScript>> {
    if t == 0 {
        return Err(Error::Domain("t must be at least 1".into()));
    }
    if g.n() > THROTTLE_MAX_VERTICES {
        return Err(Error::capacity(format!("certificate for a {}-vertex graph", g.n()), THROTTLE_MAX_VERTICES));
    }
    let script = match flavor {
        Flavor::Psd => {
            let cert = throttling_number(Rule::ZPlus, g)?;
            if cert.th > t {
                return Ok(None);
            }
            let ext = build_extension(g, &cert.schedule)?;
            psd_script(&ext, t)?.0
        }
        Flavor::PsdFloor => {
            if throttling_number(Rule::ZPlusFloor, g)?.th > t {
                return Ok(None);
            }
            let opt = floor_throttling_via_supergraphs(Rule::ZPlusFloor, g)?;
            let h = &opt.supergraph;
            let ext = build_extension(h, &opt.certificate.schedule)?;
            let (mut script, labels) = psd_script(&ext, t)?;
            script.flavor = Flavor::PsdFloor;
            // drop every surviving template edge that maps onto an edge of
            // the supergraph missing from g
            let template = script.template()?;
            let contracted: BTreeSet<(usize, usize)> = script
                .contract
                .iter()
                .map(|e| locate_edge(&template, e).map(|(u, v, _)| (u, v)))
                .collect::<Result<_>>()?;
            let already: BTreeSet<(usize, usize)> = script
                .delete
                .iter()
                .map(|e| locate_edge(&template, e).map(|(u, v, _)| (u, v)))
                .collect::<Result<_>>()?;
            for (u, v, _) in template.edges() {
                if contracted.contains(&(u, v)) || already.contains(&(u, v)) {
                    continue;
                }
                let (x, y) = (labels[u], labels[v]);
                if x != y && h.has_edge(x, y) && !g.has_edge(x, y) {
                    script.delete.push((template.node(u), template.node(v)));
                }
            }
            script.delete.sort();
            script
        }
    };
    let produced = apply_script(&script)?;
    if canonical_form(&produced)? != canonical_form(g)? {
        return Err(Error::Internal(format!("certificate script does not reproduce the graph (flavor {flavor})")));
    }
    Ok(Some(script))
}

/// Embeds the component tree in `T_{k,b}` (child `j` goes to child slot
/// `j`), contracts the unused template nodes into their parents and the
/// same-label tree edges, and deletes complete edges absent from the
/// extension. Also returns the `G` label of every template vertex.
fn psd_script(ext: &ExtensionGraph, t: usize) -> Result<(MinorScript, Vec<usize>)> {
    let a = ext.roots.len();
    let height = ext.tree.height();
    if t < a + height {
        return Err(Error::Internal(format!("t = {t} is below |B| + pt = {}", a + height)));
    }
    let k = ext.tree.max_children().max(1);
    let b = t - a;
    let template = ProductTemplate::new(a, k, b)?;
    let ts = template.tree_size();

    // image[i] = component-tree node standing for template tree node i
    // (its nearest embedded ancestor for padding nodes)
    let mut image = vec![usize::MAX; ts];
    let mut embedded = vec![false; ts];
    image[0] = ext.tree.root();
    embedded[0] = true;
    for i in 1..ts {
        let p = template.tree_parent(i).unwrap();
        let slot = i - 1 - p * k;
        let parent_node = image[p];
        match ext.tree.nodes[parent_node].children.get(slot) {
            Some(&child) if embedded[p] => {
                image[i] = child;
                embedded[i] = true;
            }
            _ => image[i] = parent_node,
        }
    }

    let mut labels = vec![0; template.vertex_count()];
    for c in 0..a {
        for i in 0..ts {
            labels[template.index(c, i)] = ext.labels[c][image[i]];
        }
    }

    // complete edges present in the extension, as (node, copy, copy)
    let mut kept = BTreeSet::new();
    for e in &ext.edges {
        if matches!(e.kind, ExtensionEdgeKind::Root | ExtensionEdgeKind::Cross) {
            debug_assert_eq!(e.a.node, e.b.node);
            kept.insert((e.a.node, e.a.copy.min(e.b.copy), e.a.copy.max(e.b.copy)));
        }
    }

    let mut contract = Vec::new();
    let mut delete = Vec::new();
    for (u, v, class) in template.edges() {
        let ((cu, iu), (cv, iv)) = (template.split(u), template.split(v));
        match class {
            EdgeClass::Tree => {
                // u is the parent
                if !embedded[iv] || labels[u] == labels[v] {
                    contract.push((template.node(u), template.node(v)));
                }
            }
            EdgeClass::Complete => {
                debug_assert_eq!(iu, iv);
                if !kept.contains(&(image[iu], cu.min(cv), cu.max(cv))) {
                    delete.push((template.node(u), template.node(v)));
                }
            }
        }
    }
    Ok((MinorScript { a, k, b, flavor: Flavor::Psd, contract, delete }, labels))
}
