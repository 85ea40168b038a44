use crate::error::{Error, Result};
use crate::graph::{enumerate_connected, Graph};

/// Largest `n` for which extremal graphs are searched exhaustively.
pub const SPECTRAL_MAX_VERTICES: usize = 7;

/// Radii closer than this count as tied.
pub const SPECTRAL_TIE_TOLERANCE: f64 = 1e-7;

const MAX_ITERATIONS: usize = 100_000;
const RAYLEIGH_TOLERANCE: f64 = 1e-12;

/// Largest adjacency eigenvalue.
///
/// Power iteration on `A + nI`: the shift makes every eigenvalue
/// nonnegative, so a bipartite graph's `±λ` pair cannot make the iteration
/// oscillate.
pub fn spectral_radius(g: &Graph) -> f64 {
    let n = g.n();
    if n == 0 {
        return 0.0;
    }
    let shift = n as f64;
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    let mul = |x: &[f64]| -> Vec<f64> {
        (0..n).map(|v| shift * x[v] + adj[v].iter().map(|&w| x[w]).sum::<f64>()).collect()
    };
    let norm = (n as f64).sqrt();
    let mut x = vec![1.0 / norm; n];
    let mut lambda = f64::NAN;
    for _ in 0..MAX_ITERATIONS {
        let y = mul(&x);
        let rayleigh: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let len = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        x = y.into_iter().map(|v| v / len).collect();
        if (rayleigh - lambda).abs() < RAYLEIGH_TOLERANCE {
            lambda = rayleigh;
            break;
        }
        lambda = rayleigh;
    }
    lambda - shift
}

/// Every connected graph on `n` vertices and `m` edges whose spectral
/// radius is within the tie tolerance of the largest, in enumeration order.
pub fn max_spectral_graphs(n: usize, m: usize) -> Result<Vec<Graph>> {
    if n > SPECTRAL_MAX_VERTICES {
        return Err(Error::capacity(format!("extremal spectral search on {n} vertices"), SPECTRAL_MAX_VERTICES));
    }
    let candidates: Vec<(Graph, f64)> = enumerate_connected(n)?
        .into_iter()
        .filter(|g| g.edge_count() == m)
        .map(|g| {
            let r = spectral_radius(&g);
            (g, r)
        })
        .collect();
    let best = candidates.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
    if candidates.is_empty() {
        return Err(Error::Domain(format!("no connected graph has {n} vertices and {m} edges")));
    }
    Ok(candidates.into_iter().filter(|c| best - c.1 <= SPECTRAL_TIE_TOLERANCE).map(|c| c.0).collect())
}
