//! Color change rules, single-step force validity, propagation and the
//! tree structures derived from a completed schedule.

mod engine;
mod trees;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub use engine::{
    min_propagation_floor, min_propagation_floor_bounded, propagate_deterministic, propagation_time,
    propagation_time_bounded, HopSemantics, Propagation, FLOOR_MAX_VERTICES,
};
pub use trees::{component_tree, forcing_trees, ComponentNode, ComponentTree, ForcingTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    /// Standard zero forcing.
    Z,
    /// Minor monotone floor of Z (hopping allowed).
    ZFloor,
    /// Positive semidefinite forcing.
    ZPlus,
    /// Minor monotone floor of Z+ (hopping inside each component).
    ZPlusFloor,
}

impl Rule {
    pub const ALL: [Rule; 4] = [Rule::Z, Rule::ZFloor, Rule::ZPlus, Rule::ZPlusFloor];

    /// Forces act per white component.
    pub fn is_psd(self) -> bool {
        matches!(self, Rule::ZPlus | Rule::ZPlusFloor)
    }

    pub fn is_floor(self) -> bool {
        matches!(self, Rule::ZFloor | Rule::ZPlusFloor)
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::Z => "z",
            Rule::ZFloor => "zfloor",
            Rule::ZPlus => "zplus",
            Rule::ZPlusFloor => "zplusfloor",
        }
    }

    /// Symbol used for the throttling number in text output.
    pub fn th_symbol(self) -> &'static str {
        match self {
            Rule::Z => "th",
            Rule::ZFloor => "th_floor",
            Rule::ZPlus => "th+",
            Rule::ZPlusFloor => "th_floor+",
        }
    }

    pub fn pt_symbol(self) -> &'static str {
        match self {
            Rule::Z => "pt",
            Rule::ZFloor => "pt_floor",
            Rule::ZPlus => "pt+",
            Rule::ZPlusFloor => "pt_floor+",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rule> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(Rule::Z),
            "zfloor" => Ok(Rule::ZFloor),
            "zplus" | "z+" => Ok(Rule::ZPlus),
            "zplusfloor" => Ok(Rule::ZPlusFloor),
            _ => Err(Error::Usage(format!("unknown rule {s:?} (expected z, zfloor, zplus or zplusfloor)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ForceKind {
    Standard,
    Hop,
}

/// A single force `source -> target` performed at step `time`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Force {
    #[serde(rename = "u")]
    pub source: usize,
    #[serde(rename = "w")]
    pub target: usize,
    #[serde(rename = "t")]
    pub time: usize,
    pub kind: ForceKind,
    /// White components containing the target at steps `1..=time`; empty
    /// for the non-PSD rules.
    pub lineage: Vec<VertexSet>,
}

/// Forces of a propagation split into time layers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcingSchedule {
    pub rule: Rule,
    #[serde(rename = "B")]
    pub initial: VertexSet,
    /// `layers[t-1]` is the set of vertices turning blue at step `t`.
    pub layers: Vec<VertexSet>,
    /// `sources[t-1]` is the set of vertices forcing at step `t`.
    pub sources: Vec<VertexSet>,
    pub forces: Vec<Force>,
}

impl ForcingSchedule {
    pub fn pt(&self) -> usize {
        self.layers.len()
    }

    /// Blue set after `t` steps.
    pub fn blue_after(&self, t: usize) -> VertexSet {
        self.layers[..t.min(self.layers.len())]
            .iter()
            .fold(self.initial, |acc, &l| acc.union(l))
    }

    pub fn final_blue(&self) -> VertexSet {
        self.blue_after(self.layers.len())
    }

    pub fn is_complete(&self, g: &Graph) -> bool {
        self.final_blue() == g.vertices()
    }

    /// Step at which `v` became blue (0 for initial vertices).
    pub fn time_of(&self, v: usize) -> Option<usize> {
        if self.initial.contains(v) {
            return Some(0);
        }
        self.layers.iter().position(|l| l.contains(v)).map(|i| i + 1)
    }

    /// The force that colored `v`, if `v` was not initially blue.
    pub fn force_into(&self, v: usize) -> Option<&Force> {
        self.forces.iter().find(|f| f.target == v)
    }

    /// `|layer| - 1` for each step.
    pub fn savings_profile(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.len().saturating_sub(1)).collect()
    }

    /// Checks the structural invariants against `g` and replays every force
    /// under the schedule's rule. Used by tests and certificate checks.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if !self.initial.is_subset(g.vertices()) {
            return Err(Error::Internal("initial set outside the graph".into()));
        }
        if self.sources.len() != self.layers.len() {
            return Err(Error::Internal("sources and layers differ in length".into()));
        }
        let mut blue = self.initial;
        let mut state = ForcingState::initial(self.rule, g, self.initial);
        for (i, &layer) in self.layers.iter().enumerate() {
            let t = i + 1;
            if layer.is_empty() || !layer.intersection(blue).is_empty() {
                return Err(Error::Internal(format!("layer {t} is empty or overlaps earlier layers")));
            }
            let step: Vec<&Force> = self.forces.iter().filter(|f| f.time == t).collect();
            let targets: VertexSet = step.iter().map(|f| f.target).collect();
            if targets != layer || step.len() != layer.len() {
                return Err(Error::Internal(format!("forces at step {t} do not match layer {t}")));
            }
            let sources: VertexSet = step.iter().map(|f| f.source).collect();
            if sources != self.sources[i] {
                return Err(Error::Internal(format!("sources at step {t} do not match the forces")));
            }
            let valid = valid_forces(self.rule, g, &state);
            for f in &step {
                let ok = valid
                    .iter()
                    .any(|v| v.source == f.source && v.target == f.target && v.kind == f.kind);
                if !ok {
                    return Err(Error::Internal(format!("force {} -> {} at step {t} is not valid", f.source, f.target)));
                }
            }
            let pairs: Vec<(usize, usize)> = step.iter().map(|f| (f.source, f.target)).collect();
            state = state.apply(self.rule, g, &pairs)?;
            blue = blue.union(layer);
        }
        if self.forces.iter().any(|f| f.time == 0 || f.time > self.layers.len()) {
            return Err(Error::Internal("force outside the schedule's time range".into()));
        }
        Ok(())
    }
}

/// A coloring together with activity bookkeeping for the floor rules.
///
/// `blocks` are the white blocks forces act in: one block holding every
/// white vertex for Z and ZFloor, the components of `G - blue` (ordered by
/// smallest vertex) for Z+ and ZPlusFloor. `active[i]` is the active set
/// for `blocks[i]`; it is only consulted by the floor rules.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ForcingState {
    pub blue: VertexSet,
    pub time: usize,
    pub blocks: Vec<VertexSet>,
    pub active: Vec<VertexSet>,
    /// Blue sets after steps `0..time` (exclusive of the current one), used
    /// to report lineages.
    pub history: Vec<VertexSet>,
}

impl ForcingState {
    /// The state at time 0: every initial vertex active in every block.
    pub fn initial(rule: Rule, g: &Graph, blue: VertexSet) -> ForcingState {
        let blocks = white_blocks(rule, g, blue);
        let active = vec![blue; blocks.len()];
        ForcingState { blue, time: 0, blocks, active, history: Vec::new() }
    }

    /// Builds a state with explicit activity. `active` must be aligned with
    /// the blocks of `blue` under `rule`.
    pub fn with_active(rule: Rule, g: &Graph, blue: VertexSet, active: Vec<VertexSet>) -> Result<ForcingState> {
        let blocks = white_blocks(rule, g, blue);
        if active.len() != blocks.len() {
            return Err(Error::Domain(format!(
                "{} active sets supplied for {} white blocks",
                active.len(),
                blocks.len()
            )));
        }
        if active.iter().any(|a| !a.is_subset(blue)) {
            return Err(Error::Domain("active vertices must be blue".into()));
        }
        Ok(ForcingState { blue, time: 0, blocks, active, history: Vec::new() })
    }

    /// Performs the given simultaneous forces (all assumed valid) and
    /// returns the next state with per-lineage activity updated.
    pub fn apply(&self, rule: Rule, g: &Graph, forces: &[(usize, usize)]) -> Result<ForcingState> {
        let targets: VertexSet = forces.iter().map(|&(_, w)| w).collect();
        if targets.len() != forces.len() || !targets.intersection(self.blue).is_empty() {
            return Err(Error::Domain("targets must be distinct white vertices".into()));
        }
        let blue = self.blue.union(targets);
        let blocks = white_blocks(rule, g, blue);
        let mut parent_active = self.active.clone();
        for &(u, w) in forces {
            let i = self.block_of(w).ok_or_else(|| Error::Domain(format!("{w} is not white")))?;
            parent_active[i].remove(u);
            parent_active[i].insert(w);
        }
        let active = blocks
            .iter()
            .map(|b| {
                let i = self.block_of(b.first().expect("blocks are nonempty")).expect("white shrinks");
                parent_active[i]
            })
            .collect();
        let mut history = self.history.clone();
        history.push(self.blue);
        Ok(ForcingState { blue, time: self.time + 1, blocks, active, history })
    }

    pub fn block_of(&self, w: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(w))
    }

    fn lineage(&self, g: &Graph, w: usize) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = self
            .history
            .iter()
            .map(|&h| component_containing(g, h, w))
            .collect();
        out.push(component_containing(g, self.blue, w));
        out
    }
}

/// White blocks for a rule: all white vertices as one block, or the
/// components of `G - blue` for the PSD rules.
pub(crate) fn white_blocks(rule: Rule, g: &Graph, blue: VertexSet) -> Vec<VertexSet> {
    let white = g.vertices().difference(blue);
    if white.is_empty() {
        return Vec::new();
    }
    if rule.is_psd() {
        g.connected_components(white)
    } else {
        vec![white]
    }
}

pub(crate) fn component_containing(g: &Graph, blue: VertexSet, w: usize) -> VertexSet {
    let white = g.vertices().difference(blue);
    g.connected_components(white)
        .into_iter()
        .find(|c| c.contains(w))
        .unwrap_or(VertexSet::EMPTY)
}

/// Every force permitted by `rule` at `state`.
///
/// Forces come out ordered by block, then source, then target. For PSD
/// rules each force carries the chain of white components containing its
/// target.
pub fn valid_forces(rule: Rule, g: &Graph, state: &ForcingState) -> Vec<Force> {
    let mut out = Vec::new();
    let time = state.time + 1;
    for (i, &block) in state.blocks.iter().enumerate() {
        let sources = if rule.is_floor() { state.active[i] } else { state.blue };
        for u in sources.iter() {
            let white_nbrs = g.neighbors(u).intersection(block);
            let lineage = |w: usize| if rule.is_psd() { state.lineage(g, w) } else { Vec::new() };
            match white_nbrs.len() {
                1 => {
                    let w = white_nbrs.first().unwrap();
                    out.push(Force { source: u, target: w, time, kind: ForceKind::Standard, lineage: lineage(w) });
                }
                0 if rule.is_floor() => {
                    for w in block.iter() {
                        out.push(Force { source: u, target: w, time, kind: ForceKind::Hop, lineage: lineage(w) });
                    }
                }
                _ => {}
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_on_p3_center_has_no_force() {
        let g = Graph::path(3);
        let s = ForcingState::initial(Rule::Z, &g, VertexSet::singleton(1));
        assert!(valid_forces(Rule::Z, &g, &s).is_empty());
    }

    #[test]
    fn zplus_on_p5_center_forces_both_sides() {
        let g = Graph::path(5);
        let s = ForcingState::initial(Rule::ZPlus, &g, VertexSet::singleton(2));
        let f = valid_forces(Rule::ZPlus, &g, &s);
        let pairs: Vec<_> = f.iter().map(|f| (f.source, f.target, f.lineage.clone())).collect();
        assert_eq!(
            pairs,
            vec![
                (2, 1, vec![VertexSet(0b00011)]),
                (2, 3, vec![VertexSet(0b11000)]),
            ]
        );
    }

    #[test]
    fn zfloor_on_p4_hops_and_forces() {
        let g = Graph::path(4);
        let s = ForcingState::initial(Rule::ZFloor, &g, VertexSet(0b0011));
        let f: Vec<_> = valid_forces(Rule::ZFloor, &g, &s)
            .into_iter()
            .map(|f| (f.source, f.target, f.kind))
            .collect();
        assert!(f.contains(&(0, 2, ForceKind::Hop)));
        assert!(f.contains(&(0, 3, ForceKind::Hop)));
        assert!(f.contains(&(1, 2, ForceKind::Standard)));
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn rule_names_round_trip() {
        for r in Rule::ALL {
            assert_eq!(r.name().parse::<Rule>().unwrap(), r);
        }
        assert!("zz".parse::<Rule>().is_err());
    }
}
