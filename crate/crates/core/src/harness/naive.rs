//! A deliberately plain forcing simulator, written against adjacency lists
//! and sharing no code with the engine. The verifier uses it as the second
//! opinion on `th` and `th+`.

use crate::graph::Graph;

fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.n()];
    for (u, v) in g.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

/// White components as a vertex -> component id map.
fn white_components(adj: &[Vec<usize>], blue: &[bool]) -> Vec<usize> {
    let n = adj.len();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if blue[start] || comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = next;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !blue[y] && comp[y] == usize::MAX {
                    comp[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Propagation time of `initial` (a bitmask) under the standard rule, or
/// the PSD rule with `psd`; `None` if it stalls.
pub fn propagation_time(psd: bool, g: &Graph, initial: u32) -> Option<usize> {
    let adj = adjacency(g);
    let n = adj.len();
    let mut blue: Vec<bool> = (0..n).map(|v| initial >> v & 1 == 1).collect();
    let mut t = 0;
    loop {
        if blue.iter().all(|&b| b) {
            return Some(t);
        }
        let comp = if psd { white_components(&adj, &blue) } else { vec![0; n] };
        let mut newly = Vec::new();
        for u in 0..n {
            if !blue[u] {
                continue;
            }
            // white neighbors grouped by component
            let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
            for &w in &adj[u] {
                if blue[w] {
                    continue;
                }
                match groups.iter_mut().find(|(c, _)| *c == comp[w]) {
                    Some((_, ws)) => ws.push(w),
                    None => groups.push((comp[w], vec![w])),
                }
            }
            for (_, ws) in groups {
                if ws.len() == 1 {
                    newly.push(ws[0]);
                }
            }
        }
        if newly.is_empty() {
            return None;
        }
        for w in newly {
            blue[w] = true;
        }
        t += 1;
    }
}

/// `min |B| + pt(G; B)` over every subset.
pub fn throttling_number(psd: bool, g: &Graph) -> usize {
    let n = g.n();
    let mut best = n;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        if let Some(pt) = propagation_time(psd, g, mask) {
            best = best.min(size + pt);
        }
    }
    best
}

/// Largest total savings `|V \ B| - pt(G; B)` over all forcing sets.
pub fn max_savings(psd: bool, g: &Graph) -> usize {
    let n = g.n();
    let mut best = 0;
    for mask in 0u32..(1u32 << n) {
        if let Some(pt) = propagation_time(psd, g, mask) {
            let white = n - mask.count_ones() as usize;
            best = best.max(white.saturating_sub(pt));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(throttling_number(false, &Graph::complete(4)), 4);
        assert_eq!(throttling_number(false, &Graph::path(4)), 3);
        assert_eq!(throttling_number(true, &Graph::star(3)), 2);
        assert_eq!(propagation_time(true, &Graph::path(5), 0b00100), Some(2));
        assert_eq!(propagation_time(false, &Graph::path(5), 0b00100), None);
    }
}
