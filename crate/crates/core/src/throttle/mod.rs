//! Exact throttling numbers, savings, standard witnesses, the bounded-size
//! certificate subgraph and the spanning-supergraph oracle.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forcing::{
    min_propagation_floor_bounded, propagate_deterministic, ForcingSchedule, HopSemantics, Rule,
};
use crate::graph::{canonical_form, Graph, VertexSet};

/// Exhaustive subset search limit.
pub const THROTTLE_MAX_VERTICES: usize = 16;
/// Supergraph oracle limit (2^(missing edges) supergraphs).
pub const SUPERGRAPH_MAX_VERTICES: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Witness,
    /// Every layer forces at least two vertices.
    StandardWitness,
}

/// An initial set together with a schedule realizing `th = |B| + pt`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThrottlingCertificate {
    #[serde(flatten)]
    pub schedule: ForcingSchedule,
    pub pt: usize,
    pub th: usize,
    pub savings: Vec<usize>,
    #[serde(rename = "witnessKind")]
    pub witness_kind: WitnessKind,
}

impl ThrottlingCertificate {
    pub fn from_schedule(schedule: ForcingSchedule) -> ThrottlingCertificate {
        let pt = schedule.pt();
        let savings = schedule.savings_profile();
        let witness_kind = if savings.iter().all(|&s| s >= 1) {
            WitnessKind::StandardWitness
        } else {
            WitnessKind::Witness
        };
        ThrottlingCertificate { th: schedule.initial.len() + pt, pt, savings, witness_kind, schedule }
    }

    pub fn rule(&self) -> Rule {
        self.schedule.rule
    }

    pub fn initial(&self) -> VertexSet {
        self.schedule.initial
    }
}

/// Total savings and the per-step profile `|B^(i)| - 1`.
pub fn savings(cert: &ThrottlingCertificate) -> (usize, Vec<usize>) {
    let profile = cert.schedule.savings_profile();
    (profile.iter().sum(), profile)
}

/// Propagation from `initial`, giving up beyond `max_pt` steps.
fn schedule_within(
    rule: Rule,
    g: &Graph,
    initial: VertexSet,
    max_pt: usize,
    semantics: HopSemantics,
) -> Result<Option<ForcingSchedule>> {
    if rule.is_floor() {
        min_propagation_floor_bounded(rule, g, initial, Some(max_pt), semantics)
    } else {
        Ok(propagate_deterministic(rule, g, initial)?
            .into_complete()
            .filter(|s| s.pt() <= max_pt))
    }
}

/// `th_R(G)` with a certificate.
///
/// Sets are scanned by increasing size and, within a size, by increasing
/// bitmask. Among optimal sets the numerically smallest bitmask wins.
pub fn throttling_number(rule: Rule, g: &Graph) -> Result<ThrottlingCertificate> {
    throttling_number_with(rule, g, HopSemantics::default())
}

/// [`throttling_number`] with an explicit hop semantics for the floor rules.
pub fn throttling_number_with(rule: Rule, g: &Graph, semantics: HopSemantics) -> Result<ThrottlingCertificate> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Domain("throttling needs a nonempty graph".into()));
    }
    if n > THROTTLE_MAX_VERTICES {
        return Err(Error::capacity(format!("throttling search on {n} vertices"), THROTTLE_MAX_VERTICES));
    }
    let full = g.vertices();
    let mut best_th = n;
    let mut best = schedule_within(rule, g, full, 0, semantics)?.expect("the whole vertex set forces in zero steps");
    for size in 0..n {
        if size > best_th {
            break;
        }
        for mask in masks_of_size(n, size) {
            let b = VertexSet(mask);
            if let Some(s) = schedule_within(rule, g, b, best_th - size, semantics)? {
                let th = size + s.pt();
                if th < best_th || (th == best_th && mask < best.initial.0) {
                    best_th = th;
                    best = s;
                }
            }
        }
    }
    Ok(ThrottlingCertificate::from_schedule(best))
}

/// `th_R(G; B)`, `None` if `B` is not an R forcing set.
pub fn throttling_of_set(rule: Rule, g: &Graph, initial: VertexSet) -> Result<Option<usize>> {
    Ok(crate::forcing::propagation_time(rule, g, initial)?.map(|pt| initial.len() + pt))
}

/// Bitmasks over `0..n` with exactly `size` bits, increasing.
pub(crate) fn masks_of_size(n: usize, size: usize) -> impl Iterator<Item = u32> {
    let limit: u64 = 1u64 << n;
    let mut cur: Option<u64> = if size > n { None } else { Some((1u64 << size) - 1) };
    std::iter::from_fn(move || {
        let c = cur?;
        if c >= limit {
            cur = None;
            return None;
        }
        cur = if c == 0 {
            None
        } else {
            // Gosper's hack
            let u = c & c.wrapping_neg();
            let v = c + u;
            Some(v + (((v ^ c) / u) >> 2))
        };
        Some(c as u32)
    })
}

/// Adds every vertex forced alone in its step to the initial set, repeating
/// until every layer has at least two vertices.
pub fn standardize_witness(g: &Graph, cert: &ThrottlingCertificate) -> Result<ThrottlingCertificate> {
    let rule = cert.rule();
    if rule.is_floor() {
        return Err(Error::Usage(format!(
            "standard witnesses are defined for z and zplus, not {rule}"
        )));
    }
    let mut current = cert.clone();
    loop {
        let singles: VertexSet = current
            .schedule
            .layers
            .iter()
            .filter(|l| l.len() == 1)
            .fold(VertexSet::EMPTY, |acc, &l| acc.union(l));
        if singles.is_empty() {
            break;
        }
        let b = current.initial().union(singles);
        let s = propagate_deterministic(rule, g, b)?
            .into_complete()
            .ok_or_else(|| Error::Internal(format!("superset {b} of a forcing set stalled")))?;
        current = ThrottlingCertificate::from_schedule(s);
    }
    if current.th > cert.th {
        return Err(Error::Internal(format!(
            "standardizing raised th from {} to {}",
            cert.th, current.th
        )));
    }
    Ok(current)
}

/// The induced subgraph `H = G[X]` built from a standard witness of
/// `th_R(G) < n - k`, with its proof data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateExtraction {
    pub rule: Rule,
    pub k: usize,
    /// The standard witness the construction started from.
    pub witness: ThrottlingCertificate,
    /// First step at which the cumulative savings reach `k + 1`.
    pub r: usize,
    /// `B̂^(1..=r)`: the witness layers with the last one trimmed.
    pub layers: Vec<VertexSet>,
    /// `U^(1..=r)`: the sources forcing those layers.
    pub sources: Vec<VertexSet>,
    /// `X`, in the vertex numbering of `G`.
    pub x: VertexSet,
    /// The initial set for `H` used in the proof, in `G`'s numbering.
    pub initial: VertexSet,
    /// `H = G[X]`, vertices renumbered in increasing order of `X`.
    #[serde(with = "crate::graph::graph6_serde")]
    pub h: Graph,
}

impl CertificateExtraction {
    /// Index in `H` of each vertex of `X`.
    pub fn h_index(&self, v: usize) -> Option<usize> {
        self.x.contains(v).then(|| self.x.iter().position(|x| x == v).unwrap())
    }

    /// `|H| <= 4k + 4` and `th_R(H) <= |H| - k - 1`, the latter by
    /// exhaustive search on `H`.
    pub fn check(&self) -> Result<()> {
        let size = self.h.n();
        if size > 4 * self.k + 4 {
            return Err(Error::Internal(format!("|H| = {size} exceeds 4k+4 = {}", 4 * self.k + 4)));
        }
        let th = throttling_number(self.rule, &self.h)?.th;
        if th + self.k + 1 > size {
            return Err(Error::Internal(format!(
                "th(H) = {th} exceeds |H| - k - 1 = {}",
                size as i64 - self.k as i64 - 1
            )));
        }
        let trimmed: usize = self.layers.iter().map(|l| l.len() - 1).sum();
        if trimmed != self.k + 1 || self.r > self.k + 1 {
            return Err(Error::Internal(format!("trimmed savings {trimmed} with r = {}", self.r)));
        }
        Ok(())
    }
}

/// Builds `H = G[X]` from an optimal standard witness of
/// `th_R(G) < |G| - k`.
///
/// The last layer is trimmed to its lowest-index vertices so that the
/// savings add up to exactly `k + 1`.
pub fn extract_certificate_subgraph(g: &Graph, rule: Rule, k: i64) -> Result<CertificateExtraction> {
    if rule != Rule::Z && rule != Rule::ZPlus {
        return Err(Error::Usage(format!("certificate extraction is defined for z and zplus, not {rule}")));
    }
    if k < 0 {
        return Err(Error::Domain(format!("k must be non-negative (got {k})")));
    }
    let k = k as usize;
    let n = g.n();
    if n < k {
        return Err(Error::Domain(format!("need |G| >= k, got |G| = {n}, k = {k}")));
    }
    let opt = throttling_number(rule, g)?;
    if opt.th + k >= n {
        return Err(Error::Domain(format!(
            "{} = {} is not below |G| - k = {}",
            rule.th_symbol(),
            opt.th,
            n - k
        )));
    }
    let witness = standardize_witness(g, &opt)?;
    let layers = &witness.schedule.layers;
    let mut acc = 0usize;
    let mut r = 0usize;
    for (i, l) in layers.iter().enumerate() {
        acc += l.len() - 1;
        if acc > k {
            r = i + 1;
            break;
        }
    }
    if r == 0 {
        return Err(Error::Internal("standard witness with too little savings".into()));
    }
    let before: usize = layers[..r - 1].iter().map(|l| l.len() - 1).sum();
    let keep = k + 1 - before + 1;
    let mut hat: Vec<VertexSet> = layers[..r - 1].to_vec();
    hat.push(layers[r - 1].iter().take(keep).collect());

    let sources: Vec<VertexSet> = hat
        .iter()
        .enumerate()
        .map(|(i, l)| {
            witness
                .schedule
                .forces
                .iter()
                .filter(|f| f.time == i + 1 && l.contains(f.target))
                .map(|f| f.source)
                .collect()
        })
        .collect();
    let x = hat
        .iter()
        .zip(&sources)
        .fold(VertexSet::EMPTY, |acc, (l, u)| acc.union(*l).union(*u));
    let mut initial = VertexSet::EMPTY;
    let mut earlier = VertexSet::EMPTY;
    for (l, u) in hat.iter().zip(&sources) {
        initial = initial.union(u.difference(earlier));
        earlier = earlier.union(*l);
    }
    let h = g.induced_subgraph(x).unlabeled();
    Ok(CertificateExtraction { rule, k, witness, r, layers: hat, sources, x, initial, h })
}

/// Result of the spanning-supergraph oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupergraphOptimum {
    pub th: usize,
    /// A spanning supergraph attaining the minimum (first in subset order).
    pub supergraph: Graph,
    pub certificate: ThrottlingCertificate,
}

/// Floor-rule throttling as the minimum of the base rule's throttling
/// number over every spanning supergraph.
pub fn floor_throttling_via_supergraphs(rule: Rule, g: &Graph) -> Result<SupergraphOptimum> {
    let base = match rule {
        Rule::ZFloor => Rule::Z,
        Rule::ZPlusFloor => Rule::ZPlus,
        _ => return Err(Error::Usage(format!("the supergraph oracle is for zfloor and zplusfloor, not {rule}"))),
    };
    if g.n() > SUPERGRAPH_MAX_VERTICES {
        return Err(Error::capacity(format!("supergraph oracle on {} vertices", g.n()), SUPERGRAPH_MAX_VERTICES));
    }
    if g.n() == 0 {
        return Err(Error::Domain("throttling needs a nonempty graph".into()));
    }
    let missing = g.non_edges();
    let mut memo: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut best: Option<(usize, Graph)> = None;
    for mask in 0u64..(1u64 << missing.len()) {
        let mut h = g.unlabeled();
        for (i, &(u, v)) in missing.iter().enumerate() {
            if mask >> i & 1 == 1 {
                h = h.add_edge(u, v)?;
            }
        }
        let key = canonical_form(&h)?;
        let th = match memo.get(&key) {
            Some(&t) => t,
            None => {
                let t = throttling_number(base, &h)?.th;
                memo.insert(key, t);
                t
            }
        };
        if best.as_ref().is_none_or(|(b, _)| th < *b) {
            best = Some((th, h));
        }
    }
    let (th, supergraph) = best.expect("at least the graph itself");
    let certificate = throttling_number(base, &supergraph)?;
    Ok(SupergraphOptimum { th, supergraph, certificate })
}
