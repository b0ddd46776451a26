//! The two reductions behind the lower bounds, as runnable constructions:
//! k-Clique to connected section sub-hypergraph (k-SH), and Orthogonal
//! Vectors to neighbor counting.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::buildup::{build_counters, BuildOptions, Coloring};
use crate::canon::for_each_connected_set;
use crate::error::{arg, Error, Result};
use crate::hypergraph::{gaifman, Graph, Hypergraph};
use crate::nw::{nw_ie, nw_naive, DEFAULT_DEGREE_CAP};
use crate::split::apply_split;
use crate::treelet::star_code;

/// Default cap on the `k`-subsets the generic k-SH decider may inspect.
pub const KSH_BUDGET: u128 = 10_000_000;

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut c = 1u128;
    for i in 0..k.min(n - k) {
        c = c.saturating_mul(n - i) / (i + 1);
    }
    c
}

/// Gadget vertex of one graph edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeGadget {
    pub u: u32,
    pub v: u32,
    /// The singleton vertex `c_e`.
    pub vertex: u32,
}

#[derive(Debug, Clone)]
pub struct CliqueReduction {
    pub graph: Graph,
    pub k: usize,
    /// Target set size `(k + 1) * C(k, 2)`.
    pub k_prime: usize,
    pub hypergraph: Hypergraph,
    /// Block `Q_v` of every graph vertex.
    pub blocks: Vec<Vec<u32>>,
    /// One entry per graph edge, in the order of the hyperedges.
    pub edges: Vec<EdgeGadget>,
}

/// Replaces every vertex `v` of `g` by a block `Q_v` of `C(k, 2)` vertices
/// and every edge `uv` by a vertex `c_uv` and the hyperedge
/// `Q_u ∪ Q_v ∪ {c_uv}`. Then `g` has a `k`-clique iff the hypergraph has a
/// connected section sub-hypergraph on `k'` vertices.
pub fn reduce_clique_to_ksh(g: &Graph, k: usize) -> Result<CliqueReduction> {
    if k < 3 {
        return arg("the clique reduction needs k >= 3 (smaller k is trivial)");
    }
    let b = k * (k - 1) / 2;
    let n = g.vertex_count();
    let blocks: Vec<Vec<u32>> = (0..n).map(|v| ((v * b) as u32..((v + 1) * b) as u32).collect()).collect();
    let mut edges = Vec::new();
    let mut hyper = Vec::new();
    for (i, (u, v)) in g.edge_list().into_iter().enumerate() {
        let c = (n * b + i) as u32;
        let mut e = blocks[u as usize].clone();
        e.extend_from_slice(&blocks[v as usize]);
        e.push(c);
        hyper.push(e);
        edges.push(EdgeGadget { u, v, vertex: c });
    }
    let hypergraph = Hypergraph::new(n * b + edges.len(), hyper)?;
    Ok(CliqueReduction { graph: g.clone(), k, k_prime: (k + 1) * b, hypergraph, blocks, edges })
}

/// Whether the edges of `h` inside `u` connect `u` (`marks` flags `u`).
fn section_connected(h: &Hypergraph, u: &[u32], marks: &mut [bool]) -> bool {
    for &v in u {
        marks[v as usize] = true;
    }
    let mut parent: Vec<usize> = (0..u.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let local = |v: u32| u.binary_search(&v).unwrap();
    let mut components = u.len();
    for &v in u {
        for &j in h.incidence(v as usize) {
            let e = h.edge(j as usize);
            if e[0] != v || !e.iter().all(|&x| marks[x as usize]) {
                continue;
            }
            for &x in &e[1..] {
                let (a, c) = (find(&mut parent, local(e[0])), find(&mut parent, local(x)));
                if a != c {
                    parent[a] = c;
                    components -= 1;
                }
            }
        }
    }
    for &v in u {
        marks[v as usize] = false;
    }
    components == 1
}

/// Searches all `k`-subsets of the vertices for one whose section
/// sub-hypergraph is connected, and returns it.
pub fn decide_ksh_bruteforce(h: &Hypergraph, k: usize, budget: u128) -> Result<Option<Vec<u32>>> {
    let n = h.vertex_count();
    if k == 0 || k > n {
        return Ok(None);
    }
    let estimate = binom(n as u128, k as u128);
    if estimate > budget {
        return Err(Error::Budget { estimate, budget });
    }
    let mut marks = vec![false; n];
    let mut u: Vec<u32> = (0..k as u32).collect();
    loop {
        if section_connected(h, &u, &mut marks) {
            return Ok(Some(u));
        }
        let Some(i) = (0..k).rev().find(|&i| (u[i] as usize) < n - k + i) else {
            return Ok(None);
        };
        u[i] += 1;
        for j in i + 1..k {
            u[j] = u[j - 1] + 1;
        }
    }
}

/// A solution of a reduced instance: graph vertices whose blocks are taken
/// whole, and graph edges whose singleton vertices are taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KshWitness {
    pub blocks: Vec<u32>,
    /// Indices into [`CliqueReduction::edges`].
    pub edges: Vec<usize>,
    /// The `k'` hypergraph vertices, ascending.
    pub vertices: Vec<u32>,
}

/// Decides the reduced instance using its block structure.
///
/// In a connected section sub-hypergraph on at least two vertices every
/// block is taken whole or not at all, and `c_uv` is taken only with both
/// blocks. So a solution is a set `T` of graph vertices plus a set `S` of
/// edges of `G[T]` making `(T, S)` connected, with `|T| * C(k, 2) + |S| = k'`.
/// Such `S` exists iff `G[T]` is connected and
/// `|T| - 1 <= k' - |T| * C(k, 2) <= |E(G[T])|`.
pub fn decide_ksh_reduction(red: &CliqueReduction) -> Result<Option<KshWitness>> {
    let b = red.k * (red.k - 1) / 2;
    let g = &red.graph;
    for t in 2..=red.k + 1 {
        let Some(s) = red.k_prime.checked_sub(t * b) else { continue };
        if s < t - 1 {
            continue;
        }
        let mut found = None;
        for_each_connected_set(g, t, None, u128::MAX, |set| {
            let inside: Vec<usize> = red
                .edges
                .iter()
                .enumerate()
                .filter(|(_, e)| set.binary_search(&e.u).is_ok() && set.binary_search(&e.v).is_ok())
                .map(|(i, _)| i)
                .collect();
            if inside.len() >= s {
                found = Some((set.to_vec(), inside));
                return Ok(false);
            }
            Ok(true)
        })?;
        if let Some((set, inside)) = found {
            // A spanning tree of G[T] first, then any further edges.
            let mut chosen = Vec::new();
            let mut reached = vec![set[0]];
            while reached.len() < set.len() {
                let &i = inside
                    .iter()
                    .find(|&&i| {
                        let e = red.edges[i];
                        reached.contains(&e.u) != reached.contains(&e.v)
                    })
                    .ok_or_else(|| Error::Internal("connected set without spanning tree".into()))?;
                let e = red.edges[i];
                reached.push(if reached.contains(&e.u) { e.v } else { e.u });
                chosen.push(i);
            }
            for &i in &inside {
                if chosen.len() == s {
                    break;
                }
                if !chosen.contains(&i) {
                    chosen.push(i);
                }
            }
            chosen.sort_unstable();
            let mut vertices: Vec<u32> = set.iter().flat_map(|&v| red.blocks[v as usize].iter().copied()).collect();
            vertices.extend(chosen.iter().map(|&i| red.edges[i].vertex));
            vertices.sort_unstable();
            return Ok(Some(KshWitness { blocks: set, edges: chosen, vertices }));
        }
    }
    Ok(None)
}

/// `n` Boolean vectors of a common dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OvInstance {
    dim: usize,
    vectors: Vec<Vec<bool>>,
}

impl OvInstance {
    pub fn new(vectors: Vec<Vec<bool>>) -> Result<Self> {
        let dim = vectors.first().map_or(0, Vec::len);
        if let Some(i) = vectors.iter().position(|v| v.len() != dim) {
            return arg(format!("vector {i} has dimension {}, expected {dim}", vectors[i].len()));
        }
        Ok(OvInstance { dim, vectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<bool>] {
        &self.vectors
    }

    /// One vertex per vector and, for every coordinate, the edge of the
    /// vectors with a 1 there (coordinates nobody uses give no edge).
    pub fn hypergraph(&self) -> Result<Hypergraph> {
        let edges = (0..self.dim)
            .map(|l| (0..self.vectors.len() as u32).filter(|&i| self.vectors[i as usize][l]).collect::<Vec<u32>>())
            .filter(|e| !e.is_empty())
            .collect();
        Hypergraph::new(self.vectors.len(), edges)
    }
}

#[derive(Debug, Clone)]
pub struct OvOutcome {
    /// Whether two of the vectors are orthogonal.
    pub orthogonal: bool,
    /// A vector with fewer than `n - 1` non-orthogonal partners.
    pub witness: Option<usize>,
    pub neighbor_counts: Vec<u128>,
    pub hypergraph: Hypergraph,
}

/// Solves OV with one neighbor-count computation: two vectors are
/// orthogonal iff their vertices share no edge, so some pair is orthogonal
/// iff some vertex has fewer than `n - 1` Gaifman neighbors.
pub fn solve_ov_via_nc(inst: &OvInstance) -> Result<OvOutcome> {
    let n = inst.vectors.len();
    if n < 2 {
        return arg("need at least two vectors");
    }
    let h = inst.hypergraph()?;
    let ones = vec![1u128; n];
    let neighbor_counts = if h.max_degree() <= DEFAULT_DEGREE_CAP {
        nw_ie(&h, &ones, DEFAULT_DEGREE_CAP)?
    } else {
        nw_naive(&gaifman(&h), &ones)?
    };
    let witness = neighbor_counts.iter().position(|&c| c < n as u128 - 1);
    Ok(OvOutcome { orthogonal: witness.is_some(), witness, neighbor_counts, hypergraph: h })
}

/// Quadratic baseline: tries every pair.
pub fn ov_pairwise(inst: &OvInstance) -> bool {
    let v = &inst.vectors;
    (0..v.len()).any(|i| (i + 1..v.len()).any(|j| v[i].iter().zip(&v[j]).all(|(a, b)| !(a & b))))
}

/// `k` copies of every vertex, the copy index as color, and every edge
/// replaced by the union of the copies of its vertices. Copy `c` of `v` is
/// vertex `v * k + c`.
pub fn blow_up(h: &Hypergraph, k: usize) -> Result<(Hypergraph, Coloring)> {
    let edges = h
        .edges()
        .map(|e| e.iter().flat_map(|&v| (0..k as u32).map(move |c| v * k as u32 + c)).collect())
        .collect();
    let n = h.vertex_count() * k;
    let colors = (0..n).map(|i| (i % k) as u8).collect();
    Ok((Hypergraph::new(n, edges)?, Coloring::new(k, colors)?))
}

/// Result of comparing star counters on a blow-up with neighborhood sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarCheck {
    pub checked: usize,
    /// `(vertex of the blow-up, expected, counted)` for every disagreement.
    pub mismatches: Vec<(usize, u128, u128)>,
}

/// On the `k`-fold blow-up of `h`, the colorful stars centered at copy `v'`
/// of `v` pick, for every other color, one copy of a vertex adjacent to
/// `v'`. The original vertices adjacent to `v'` are `N(v)` together with
/// `v` itself when `v` lies in some edge, so the count is
/// `(|N(v)| + [d(v) > 0])^(k - 1)`.
pub fn check_star_identity(h: &Hypergraph, k: usize) -> Result<StarCheck> {
    if !(2..=crate::treelet::MAX_ORDER).contains(&k) {
        return arg("the star identity needs 2 <= k <= 16");
    }
    let (big, coloring) = blow_up(h, k)?;
    let split = apply_split(&big, big.rank());
    let cs = build_counters(&split, &coloring, &BuildOptions::default())?;
    let star = cs.catalog().find(&star_code(k)).ok_or_else(|| Error::Internal("star missing from catalog".into()))?;
    let g = gaifman(h);
    let mut mismatches = Vec::new();
    for vp in 0..big.vertex_count() {
        let v = vp / k;
        let adjacent = g.degree(v) as u128 + u128::from(h.degree(v) > 0);
        let expected = adjacent.checked_pow(k as u32 - 1).ok_or(Error::Overflow("star count"))?;
        let counted = cs.count(star, cs.full_mask(), vp);
        if expected != counted {
            mismatches.push((vp, expected, counted));
        }
    }
    Ok(StarCheck { checked: big.vertex_count(), mismatches })
}
