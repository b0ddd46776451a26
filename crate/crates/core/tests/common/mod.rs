#![allow(dead_code)]

use hgcount_core::hypergraph::Hypergraph;
use rand::seq::index;
use rand::Rng;

/// `m` edges with sizes uniform in `1..=max_size` (capped at `n`).
pub fn random_hypergraph<R: Rng>(rng: &mut R, n: usize, m: usize, max_size: usize) -> Hypergraph {
    let edges = (0..m)
        .map(|_| {
            let s = rng.gen_range(1..=max_size.min(n));
            index::sample(rng, n, s).into_iter().map(|v| v as u32).collect()
        })
        .collect();
    Hypergraph::new(n, edges).unwrap().dedupe_edges()
}

/// Connected components of the subgraph of `adj` (neighbor lists) induced by `set`.
pub fn induced_connected(adj: &[Vec<u32>], set: &[u32]) -> bool {
    if set.is_empty() {
        return false;
    }
    let mut seen = vec![set[0]];
    let mut stack = vec![set[0]];
    while let Some(v) = stack.pop() {
        for &u in &adj[v as usize] {
            if set.contains(&u) && !seen.contains(&u) {
                seen.push(u);
                stack.push(u);
            }
        }
    }
    seen.len() == set.len()
}

/// Neighbor lists of the Gaifman graph, built pair by pair from the edges.
pub fn pairwise_projection(h: &Hypergraph) -> Vec<Vec<u32>> {
    let mut adj = vec![Vec::new(); h.vertex_count()];
    for e in h.edges() {
        for &a in e {
            for &b in e {
                if a != b && !adj[a as usize].contains(&b) {
                    adj[a as usize].push(b);
                }
            }
        }
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    adj
}

/// All subsets of `0..n` of size `k`, ascending.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, k: usize, from: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in from..n as u32 {
            cur.push(v);
            rec(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}
