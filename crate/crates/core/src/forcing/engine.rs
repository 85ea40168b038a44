use std::collections::HashSet;

use super::{white_blocks, Force, ForceKind, ForcingSchedule, ForcingState, Rule};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// State-space search limit for the floor rules.
pub const FLOOR_MAX_VERTICES: usize = 16;

/// Result of a propagation run. A stall is a result, not an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Propagation {
    Complete(ForcingSchedule),
    /// No further force exists; `schedule` holds the steps performed.
    Stalled { blue: VertexSet, schedule: ForcingSchedule },
}

impl Propagation {
    pub fn pt(&self) -> Option<usize> {
        match self {
            Propagation::Complete(s) => Some(s.pt()),
            Propagation::Stalled { .. } => None,
        }
    }

    pub fn schedule(&self) -> &ForcingSchedule {
        match self {
            Propagation::Complete(s) | Propagation::Stalled { schedule: s, .. } => s,
        }
    }

    pub fn into_complete(self) -> Option<ForcingSchedule> {
        match self {
            Propagation::Complete(s) => Some(s),
            Propagation::Stalled { .. } => None,
        }
    }
}

/// How a hop affects the hopping vertex's activity under ZPlusFloor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HopSemantics {
    /// A force deactivates its source only in the component lineage where
    /// it happened (and that lineage's descendants).
    #[default]
    PerLineage,
    /// A hop deactivates its source in every lineage; a vertex hops at most
    /// once per step.
    Global,
}

/// Runs Z or Z+ performing every valid force at each step. Each target is
/// credited to its least-index valid source.
pub fn propagate_deterministic(rule: Rule, g: &Graph, initial: VertexSet) -> Result<Propagation> {
    if rule.is_floor() {
        return Err(Error::Usage(format!(
            "deterministic propagation is defined for z and zplus, not {rule}"
        )));
    }
    check_initial(g, initial)?;
    let full = g.vertices();
    let mut state = ForcingState::initial(rule, g, initial);
    let mut schedule = empty_schedule(rule, initial);
    while state.blue != full {
        let mut chosen: Vec<Force> = Vec::new();
        let mut taken = VertexSet::EMPTY;
        let mut valid = super::valid_forces(rule, g, &state);
        valid.sort_by_key(|f| (f.target, f.source));
        for f in valid {
            if !taken.contains(f.target) {
                taken.insert(f.target);
                chosen.push(f);
            }
        }
        if chosen.is_empty() {
            return Ok(Propagation::Stalled { blue: state.blue, schedule });
        }
        let pairs: Vec<(usize, usize)> = chosen.iter().map(|f| (f.source, f.target)).collect();
        schedule.layers.push(taken);
        schedule.sources.push(chosen.iter().map(|f| f.source).collect());
        schedule.forces.extend(chosen);
        state = state.apply(rule, g, &pairs)?;
    }
    Ok(Propagation::Complete(schedule))
}

/// Minimum propagation time under ZFloor or ZPlusFloor with a realizing
/// schedule, or `None` if `initial` is not a forcing set.
pub fn min_propagation_floor(rule: Rule, g: &Graph, initial: VertexSet) -> Result<Option<ForcingSchedule>> {
    floor_search(rule, g, initial, None, HopSemantics::PerLineage)
}

/// As [`min_propagation_floor`], giving up once more than `max_pt` steps
/// would be needed.
pub fn min_propagation_floor_bounded(
    rule: Rule,
    g: &Graph,
    initial: VertexSet,
    max_pt: Option<usize>,
    semantics: HopSemantics,
) -> Result<Option<ForcingSchedule>> {
    floor_search(rule, g, initial, max_pt, semantics)
}

/// `pt_R(G; B)` for any rule, `None` meaning infinite.
pub fn propagation_time(rule: Rule, g: &Graph, initial: VertexSet) -> Result<Option<usize>> {
    propagation_time_bounded(rule, g, initial, None)
}

/// `pt_R(G; B)` if it is at most `max_pt`, else `None`.
pub fn propagation_time_bounded(rule: Rule, g: &Graph, initial: VertexSet, max_pt: Option<usize>) -> Result<Option<usize>> {
    let pt = if rule.is_floor() {
        floor_search(rule, g, initial, max_pt, HopSemantics::PerLineage)?.map(|s| s.pt())
    } else {
        propagate_deterministic(rule, g, initial)?.pt()
    };
    Ok(pt.filter(|&p| max_pt.is_none_or(|m| p <= m)))
}

fn check_initial(g: &Graph, initial: VertexSet) -> Result<()> {
    if !initial.is_subset(g.vertices()) {
        return Err(Error::Domain(format!("initial set {initial} is not within 0..{}", g.n())));
    }
    Ok(())
}

fn empty_schedule(rule: Rule, initial: VertexSet) -> ForcingSchedule {
    ForcingSchedule { rule, initial, layers: Vec::new(), sources: Vec::new(), forces: Vec::new() }
}

type Key = (u32, Vec<u32>);

struct Node {
    blue: u32,
    active: Vec<u32>,
    parent: usize,
    step: Vec<(usize, usize, ForceKind)>,
}

/// One way a single block can act during a step.
struct BlockMove {
    targets: u32,
    /// Sources whose activity is spent in this block.
    spent: u32,
    /// Hopping sources (subset of `spent`).
    hoppers: u32,
    forces: Vec<(usize, usize, ForceKind)>,
}

fn floor_search(
    rule: Rule,
    g: &Graph,
    initial: VertexSet,
    max_pt: Option<usize>,
    semantics: HopSemantics,
) -> Result<Option<ForcingSchedule>> {
    if !rule.is_floor() {
        return Err(Error::Usage(format!("minimum-propagation search is for zfloor and zplusfloor, not {rule}")));
    }
    if g.n() > FLOOR_MAX_VERTICES {
        return Err(Error::capacity(
            format!("floor-rule propagation search on {} vertices", g.n()),
            FLOOR_MAX_VERTICES,
        ));
    }
    check_initial(g, initial)?;
    let full = g.vertices().0;
    let root_blocks = white_blocks(rule, g, initial);
    let mut nodes = vec![Node {
        blue: initial.0,
        active: vec![initial.0; root_blocks.len()],
        parent: usize::MAX,
        step: Vec::new(),
    }];
    if initial.0 == full {
        return Ok(Some(rebuild(rule, g, &nodes, 0)));
    }
    let mut seen: HashSet<Key> = HashSet::new();
    seen.insert((initial.0, nodes[0].active.clone()));
    let mut level = vec![0usize];
    let mut depth = 0usize;
    while !level.is_empty() {
        if max_pt.is_some_and(|m| depth >= m) {
            return Ok(None);
        }
        let mut next = Vec::new();
        for &idx in &level {
            let blue = nodes[idx].blue;
            let active = nodes[idx].active.clone();
            for (nb, na, step) in successors(rule, g, blue, &active, semantics) {
                let key = (nb, na.clone());
                if !seen.insert(key) {
                    continue;
                }
                nodes.push(Node { blue: nb, active: na, parent: idx, step });
                let id = nodes.len() - 1;
                if nb == full {
                    return Ok(Some(rebuild(rule, g, &nodes, id)));
                }
                next.push(id);
            }
        }
        level = next;
        depth += 1;
    }
    Ok(None)
}

fn successors(
    rule: Rule,
    g: &Graph,
    blue: u32,
    active: &[u32],
    semantics: HopSemantics,
) -> Vec<(u32, Vec<u32>, Vec<(usize, usize, ForceKind)>)> {
    let blocks = white_blocks(rule, g, VertexSet(blue));
    let per_block: Vec<Vec<BlockMove>> = blocks
        .iter()
        .zip(active)
        .map(|(&w, &a)| block_moves(g, w.0, a, semantics))
        .collect();

    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(blocks.len());
    combine(&per_block, &mut chosen, 0, semantics, &mut |choice: &[usize]| {
        let targets: u32 = choice.iter().enumerate().map(|(i, &c)| per_block[i][c].targets).fold(0, |x, y| x | y);
        if targets == 0 {
            return;
        }
        let all_hoppers: u32 = choice.iter().enumerate().map(|(i, &c)| per_block[i][c].hoppers).fold(0, |x, y| x | y);
        let nb = blue | targets;
        let new_blocks = white_blocks(rule, g, VertexSet(nb));
        let na: Vec<u32> = new_blocks
            .iter()
            .map(|c| {
                let v = c.first().expect("blocks are nonempty");
                let p = blocks.iter().position(|b| b.contains(v)).expect("white shrinks");
                let m = &per_block[p][choice[p]];
                let mut a = (active[p] & !m.spent) | m.targets;
                if semantics == HopSemantics::Global {
                    a &= !all_hoppers;
                }
                a
            })
            .collect();
        let mut step: Vec<(usize, usize, ForceKind)> = Vec::new();
        for (i, &c) in choice.iter().enumerate() {
            step.extend(per_block[i][c].forces.iter().copied());
        }
        out.push((nb, na, step));
    });
    out
}

fn combine(
    per_block: &[Vec<BlockMove>],
    chosen: &mut Vec<usize>,
    used_hoppers: u32,
    semantics: HopSemantics,
    emit: &mut dyn FnMut(&[usize]),
) {
    let i = chosen.len();
    if i == per_block.len() {
        emit(chosen);
        return;
    }
    for (c, m) in per_block[i].iter().enumerate() {
        if semantics == HopSemantics::Global && m.hoppers & used_hoppers != 0 {
            continue;
        }
        chosen.push(c);
        combine(per_block, chosen, used_hoppers | m.hoppers, semantics, emit);
        chosen.pop();
    }
}

/// All distinct ways one block can act, up to interchangeable sources.
///
/// Standard targets are credited to their least-index source; hop targets
/// are drawn from white vertices that no source forces in the standard way.
/// Under per-lineage activity any two hoppers of a block are
/// interchangeable, so the least-index ones are used.
fn block_moves(g: &Graph, white: u32, active: u32, semantics: HopSemantics) -> Vec<BlockMove> {
    let mut std_pairs: Vec<(usize, usize)> = Vec::new(); // (target, source)
    let mut hoppers: Vec<usize> = Vec::new();
    for u in VertexSet(active).iter() {
        let nbrs = g.neighbors(u).0 & white;
        match nbrs.count_ones() {
            0 => hoppers.push(u),
            1 => {
                let w = nbrs.trailing_zeros() as usize;
                if !std_pairs.iter().any(|&(t, _)| t == w) {
                    std_pairs.push((w, u));
                }
            }
            _ => {}
        }
    }
    std_pairs.sort();
    let std_targets: u32 = std_pairs.iter().fold(0, |m, &(t, _)| m | 1 << t);
    let hop_pool = white & !std_targets;

    let hop_choices: Vec<(u32, Vec<usize>)> = {
        let mut out = Vec::new();
        let h = hoppers.len();
        let mut sub = hop_pool;
        // all subsets of the pool with at most h elements
        loop {
            let size = sub.count_ones() as usize;
            if size <= h {
                match semantics {
                    HopSemantics::PerLineage => out.push((sub, hoppers[..size].to_vec())),
                    HopSemantics::Global => {
                        for pick in subsets_of_size(&hoppers, size) {
                            out.push((sub, pick));
                        }
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & hop_pool;
        }
        out
    };

    let mut moves = Vec::new();
    for xmask in 0u32..(1u32 << std_pairs.len()) {
        let mut base_forces = Vec::new();
        let mut targets = 0u32;
        let mut spent = 0u32;
        for (j, &(t, s)) in std_pairs.iter().enumerate() {
            if xmask >> j & 1 == 1 {
                base_forces.push((s, t, ForceKind::Standard));
                targets |= 1 << t;
                spent |= 1 << s;
            }
        }
        for (zmask, hs) in &hop_choices {
            let mut forces = base_forces.clone();
            let mut hmask = 0u32;
            for (w, &h) in VertexSet(*zmask).iter().zip(hs) {
                forces.push((h, w, ForceKind::Hop));
                hmask |= 1 << h;
            }
            moves.push(BlockMove { targets: targets | zmask, spent: spent | hmask, hoppers: hmask, forces });
        }
    }
    moves
}

fn subsets_of_size(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

fn rebuild(rule: Rule, g: &Graph, nodes: &[Node], mut id: usize) -> ForcingSchedule {
    let mut steps: Vec<&Vec<(usize, usize, ForceKind)>> = Vec::new();
    while nodes[id].parent != usize::MAX {
        steps.push(&nodes[id].step);
        id = nodes[id].parent;
    }
    steps.reverse();
    let initial = VertexSet(nodes[id].blue);
    let mut schedule = empty_schedule(rule, initial);
    let mut history = vec![initial];
    for (i, step) in steps.iter().enumerate() {
        let t = i + 1;
        let mut forces: Vec<Force> = step
            .iter()
            .map(|&(u, w, kind)| Force {
                source: u,
                target: w,
                time: t,
                kind,
                lineage: if rule.is_psd() {
                    history.iter().map(|&h| super::component_containing(g, h, w)).collect()
                } else {
                    Vec::new()
                },
            })
            .collect();
        forces.sort_by_key(|f| (f.target, f.source));
        let layer: VertexSet = forces.iter().map(|f| f.target).collect();
        schedule.layers.push(layer);
        schedule.sources.push(forces.iter().map(|f| f.source).collect());
        schedule.forces.extend(forces);
        history.push(history.last().unwrap().union(layer));
    }
    schedule
}
