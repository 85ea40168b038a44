//! Isomorphism-class enumeration by vertex augmentation plus canonical dedup.

use std::collections::BTreeMap;

use super::{canonical_form, canonical_graph, Graph};
use crate::error::{Error, Result};

pub const ENUMERATE_MAX_CONNECTED: usize = 7;
pub const ENUMERATE_MAX_ALL: usize = 8;

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, in canonical form, sorted by canonical bytes.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::Domain("enumeration needs n >= 1".into()));
    }
    if n > ENUMERATE_MAX_CONNECTED {
        return Err(Error::capacity(
            format!("built-in enumeration of connected graphs on {n} vertices; supply a graph6 file instead"),
            ENUMERATE_MAX_CONNECTED,
        ));
    }
    // every connected graph has a non-cut vertex, so removing it leaves a
    // connected graph on n-1 vertices
    grow(n, true)
}

/// One representative per isomorphism class of all graphs on `n` vertices.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > ENUMERATE_MAX_ALL {
        return Err(Error::capacity(format!("built-in enumeration of all graphs on {n} vertices"), ENUMERATE_MAX_ALL));
    }
    if n == 0 {
        return Ok(vec![Graph::empty(0)?]);
    }
    grow(n, false)
}

fn grow(n: usize, connected: bool) -> Result<Vec<Graph>> {
    let mut level = vec![Graph::empty(1)?];
    for m in 2..=n {
        let mut seen: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
        let first_mask = if connected { 1 } else { 0 };
        for g in &level {
            for mask in first_mask..(1u32 << (m - 1)) {
                let mut adj = g.adjacency().to_vec();
                for (v, row) in adj.iter_mut().enumerate() {
                    if mask >> v & 1 == 1 {
                        *row |= 1 << (m - 1);
                    }
                }
                adj.push(mask);
                let h = Graph::from_adjacency(adj);
                let key = canonical_form(&h)?;
                if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(key) {
                    e.insert(canonical_graph(&h)?);
                }
            }
        }
        level = seen.into_values().collect();
    }
    Ok(level)
}
