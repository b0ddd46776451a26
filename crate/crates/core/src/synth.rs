//! Random hypergraph generators.

use alloc::vec;
use alloc::vec::Vec;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{arg, Result};
use crate::hypergraph::Hypergraph;

/// `m` edges on `n` vertices; each edge size `s` is drawn from `{2, ..., n}`
/// with `Pr[s] ∝ s^(-exponent)`, then `s` distinct vertices are chosen
/// uniformly. Duplicate edges are kept.
pub fn power_law(n: usize, m: usize, exponent: u32, seed: u64) -> Result<Hypergraph> {
    if n < 2 {
        return arg("power-law hypergraphs need at least 2 vertices");
    }
    let weights: Vec<f64> = (2..=n).map(|s| 1.0 / (0..exponent).fold(1.0, |acc, _| acc * s as f64)).collect();
    let sizes = WeightedIndex::new(&weights).map_err(|e| crate::Error::Argument(alloc::format!("{e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = (0..m)
        .map(|_| {
            let s = sizes.sample(&mut rng) + 2;
            index::sample(&mut rng, n, s).into_iter().map(|v| v as u32).collect()
        })
        .collect();
    Hypergraph::new(n, edges)
}

/// Parameters of a random `(alpha, beta)`-nice hypergraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NiceFamily {
    pub n: usize,
    /// Edges with size drawn uniformly from `{2, ..., alpha - 1}`.
    pub small_edges: usize,
    /// Edges of exactly `large_size > alpha` vertices.
    pub large_edges: usize,
    pub alpha: usize,
    pub beta: usize,
    pub large_size: usize,
}

/// Samples a hypergraph from `p`. Large edges only use vertices that are in
/// fewer than `beta` large edges so far, so the upper part of the
/// alpha-split has maximum degree at most `beta`.
pub fn nice_family(p: &NiceFamily, seed: u64) -> Result<Hypergraph> {
    if p.alpha < 3 || p.large_size <= p.alpha || p.large_size > p.n || p.n < p.alpha {
        return arg("need 3 <= alpha < large_size <= n");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<Vec<u32>> = Vec::with_capacity(p.small_edges + p.large_edges);
    for _ in 0..p.small_edges {
        let s = rng.gen_range(2..p.alpha);
        edges.push(index::sample(&mut rng, p.n, s).into_iter().map(|v| v as u32).collect());
    }
    let mut available: Vec<u32> = (0..p.n as u32).collect();
    let mut degree = vec![0usize; p.n];
    for _ in 0..p.large_edges {
        if available.len() < p.large_size {
            return arg("beta too small for the requested number of large edges");
        }
        let mut picks: Vec<usize> = index::sample(&mut rng, available.len(), p.large_size).into_vec();
        let e: Vec<u32> = picks.iter().map(|&i| available[i]).collect();
        picks.sort_unstable_by(|a, b| b.cmp(a));
        for i in picks {
            let v = available[i] as usize;
            degree[v] += 1;
            if degree[v] >= p.beta {
                available.swap_remove(i);
            }
        }
        edges.push(e);
    }
    Hypergraph::new(p.n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::split::apply_split;

    #[test]
    fn power_law_shape() {
        let h = power_law(1000, 500, 3, 1).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (1000, 500));
        let small = h.edges().filter(|e| e.len() == 2).count();
        // Pr[s = 2] is about 0.62 for exponent 3.
        assert!((270..350).contains(&small), "{small}");
        assert_eq!(h, power_law(1000, 500, 3, 1).unwrap());
    }

    #[test]
    fn nice_family_is_nice() {
        let p = NiceFamily { n: 400, small_edges: 300, large_edges: 12, alpha: 5, beta: 2, large_size: 50 };
        let h = nice_family(&p, 4).unwrap();
        let s = apply_split(&h, p.alpha);
        assert!(s.beta <= p.beta);
        assert_eq!(s.upper.edge_count(), 12);
        assert!(s.lower.edges().all(|e| (2..5).contains(&e.len())));
    }
}
