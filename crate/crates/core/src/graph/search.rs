use super::Graph;

/// Finds an induced embedding of `pattern` into `host`.
///
/// Returns `phi` with `phi[i]` the host vertex of pattern vertex `i`; the
/// first embedding in lexicographic order of `phi` is returned.
pub fn induced_subgraph_search(pattern: &Graph, host: &Graph) -> Option<Vec<usize>> {
    let p = pattern.n();
    if p > host.n() {
        return None;
    }
    if pattern.edge_count() > host.edge_count() {
        return None;
    }
    let mut phi = Vec::with_capacity(p);
    let mut used = 0u32;
    if extend(pattern, host, &mut phi, &mut used) {
        Some(phi)
    } else {
        None
    }
}

pub fn contains_induced(pattern: &Graph, host: &Graph) -> bool {
    induced_subgraph_search(pattern, host).is_some()
}

fn extend(pattern: &Graph, host: &Graph, phi: &mut Vec<usize>, used: &mut u32) -> bool {
    let i = phi.len();
    if i == pattern.n() {
        return true;
    }
    let pdeg = pattern.degree(i);
    let padj = pattern.adjacency()[i];
    for h in 0..host.n() {
        if *used >> h & 1 == 1 || host.degree(h) < pdeg {
            continue;
        }
        let hadj = host.adjacency()[h];
        // adjacency to already-mapped vertices must match exactly
        let ok = phi
            .iter()
            .enumerate()
            .all(|(j, &hj)| (padj >> j & 1) == (hadj >> hj & 1));
        if !ok {
            continue;
        }
        phi.push(h);
        *used |= 1 << h;
        if extend(pattern, host, phi, used) {
            return true;
        }
        phi.pop();
        *used &= !(1 << h);
    }
    false
}
