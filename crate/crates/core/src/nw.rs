//! Neighbor weights: `eta(v) = sum of w(u) over the Gaifman neighbors u of v`.
//!
//! Three ways to compute them: by walking an explicit graph, by
//! inclusion-exclusion over vertex types (no projection needed, cost
//! exponential in the degree), and the combination used on an alpha-split.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::hypergraph::{Graph, Hypergraph};
use crate::pool::Pool;
use crate::split::{sorted_intersection_len, AlphaSplit};

/// Default bound on the degree accepted by [`nw_ie`].
pub const DEFAULT_DEGREE_CAP: usize = 20;

const NEG: u32 = 1 << 31;
const PRUNED: u32 = u32::MAX;

fn add(a: u128, b: u128) -> Result<u128> {
    a.checked_add(b).ok_or(Error::Overflow("neighbor weight"))
}

fn naive_at(g: &Graph, w: &[u128], v: usize) -> Result<u128> {
    g.neighbors(v).iter().try_fold(0u128, |acc, &u| add(acc, w[u as usize]))
}

/// Sums the weights of the neighbors of every vertex of `g`.
pub fn nw_naive(g: &Graph, w: &[u128]) -> Result<Vec<u128>> {
    check_len(g.vertex_count(), w)?;
    (0..g.vertex_count()).map(|v| naive_at(g, w, v)).collect()
}

fn check_len(n: usize, w: &[u128]) -> Result<()> {
    if w.len() != n {
        return Err(Error::Argument(alloc::format!("weight vector has length {}, expected {n}", w.len())));
    }
    Ok(())
}

/// Per-vertex table of the nonempty subsets `X` of its type whose
/// intersection has at least two vertices, with one shared slot for every
/// distinct subset (keyed by its sorted edge indices).
///
/// A slot holds `t[X] = w(∩X)`, which is the sum of `w(u)` over the vertices
/// `u` whose type contains `X`, so slots are filled from member lists and
/// the index can be reused for any weight vector. A subset with `∩X = {v}`
/// has `t[X] = w(v)`; those are not stored and are folded into a per-vertex
/// multiple of `w(v)` instead.
#[derive(Debug, Clone)]
pub struct NwIndex {
    n: usize,
    vert_off: Vec<usize>,
    /// Slot ids; the top bit marks subsets of even size.
    vert_slots: Vec<u32>,
    /// Signed count of the stored subsets of each vertex.
    kept_sign: Vec<i64>,
    slot_off: Vec<usize>,
    slot_members: Vec<u32>,
}

/// Walks the subsets of one vertex type. `ids` is shared across vertices
/// and also remembers the subsets found to be pruned, so each distinct
/// subset is tested once.
struct Walk<'a> {
    h: &'a Hypergraph,
    ty: &'a [u32],
    ids: &'a mut HashMap<Vec<u32>, u32>,
    next_id: &'a mut u32,
    chosen: Vec<u32>,
    out: &'a mut Vec<u32>,
    sign: i64,
}

impl Walk<'_> {
    /// Whether at least two vertices lie in every edge of `chosen`.
    fn shared(&self) -> bool {
        let x = &self.chosen;
        let smallest = x.iter().map(|&e| self.h.edge(e as usize)).min_by_key(|e| e.len()).unwrap_or(&[]);
        smallest
            .iter()
            .filter(|&&u| sorted_intersection_len(x, self.h.incidence(u as usize), x.len()) == x.len())
            .take(2)
            .count()
            == 2
    }

    /// Extends `chosen` by every edge after position `from`. An extension is
    /// kept, and extended further, only if its intersection still has two or
    /// more vertices; adding edges can only shrink it.
    fn go(&mut self, from: usize) -> Result<()> {
        for i in from..self.ty.len() {
            self.chosen.push(self.ty[i]);
            let id = match self.ids.get(self.chosen.as_slice()) {
                Some(&id) => id,
                None => {
                    let id = if self.shared() {
                        *self.next_id += 1;
                        *self.next_id - 1
                    } else {
                        PRUNED
                    };
                    self.ids.insert(self.chosen.clone(), id);
                    id
                }
            };
            if id != PRUNED {
                if id >= NEG {
                    return Err(Error::Overflow("inclusion-exclusion slots"));
                }
                if self.chosen.len() % 2 == 1 {
                    self.out.push(id);
                    self.sign += 1;
                } else {
                    self.out.push(id | NEG);
                    self.sign -= 1;
                }
                self.go(i + 1)?;
            }
            self.chosen.pop();
        }
        Ok(())
    }
}

impl NwIndex {
    pub fn new(h: &Hypergraph, cap: usize) -> Result<Self> {
        if h.max_degree() > cap {
            return Err(Error::DegreeCap { degree: h.max_degree(), cap });
        }
        let n = h.vertex_count();
        let mut ids = HashMap::new();
        let mut next_id = 0u32;
        let mut vert_off = Vec::with_capacity(n + 1);
        vert_off.push(0);
        let mut vert_slots = Vec::new();
        let mut kept_sign = Vec::with_capacity(n);
        for v in 0..n {
            let mut walk = Walk {
                h,
                ty: h.incidence(v),
                ids: &mut ids,
                next_id: &mut next_id,
                chosen: Vec::new(),
                out: &mut vert_slots,
                sign: 0,
            };
            walk.go(0)?;
            kept_sign.push(walk.sign);
            vert_off.push(vert_slots.len());
        }
        let slots = next_id as usize;
        let mut slot_off = vec![0usize; slots + 1];
        for &s in &vert_slots {
            slot_off[(s & !NEG) as usize + 1] += 1;
        }
        for i in 0..slots {
            slot_off[i + 1] += slot_off[i];
        }
        let mut fill = slot_off[..slots].to_vec();
        let mut slot_members = vec![0u32; vert_slots.len()];
        for v in 0..n {
            for &s in &vert_slots[vert_off[v]..vert_off[v + 1]] {
                let s = (s & !NEG) as usize;
                slot_members[fill[s]] = v as u32;
                fill[s] += 1;
            }
        }
        Ok(NwIndex { n, vert_off, vert_slots, kept_sign, slot_off, slot_members })
    }

    pub fn slot_count(&self) -> usize {
        self.slot_off.len() - 1
    }

    fn slot_sum(&self, w: &[u128], s: usize) -> Result<u128> {
        self.slot_members[self.slot_off[s]..self.slot_off[s + 1]]
            .iter()
            .try_fold(0u128, |acc, &u| add(acc, w[u as usize]))
    }

    fn eta_at(&self, w: &[u128], t: &[u128], v: usize) -> Result<u128> {
        let slots = &self.vert_slots[self.vert_off[v]..self.vert_off[v + 1]];
        let (mut pos, mut neg) = (0u128, 0u128);
        for &s in slots {
            if s & NEG == 0 {
                pos = add(pos, t[s as usize])?;
            } else {
                neg = add(neg, t[(s & !NEG) as usize])?;
            }
        }
        let k = self.kept_sign[v];
        let own = w[v].checked_mul(k.unsigned_abs() as u128).ok_or(Error::Overflow("neighbor weight"))?;
        if k > 0 {
            neg = add(neg, own)?;
        } else {
            pos = add(pos, own)?;
        }
        pos.checked_sub(neg).ok_or_else(|| Error::Internal("negative inclusion-exclusion sum".into()))
    }

    pub(crate) fn eval(&self, w: &[u128], pool: &Pool, slots: &mut Vec<u128>, out: &mut [u128]) -> Result<()> {
        check_len(self.n, w)?;
        slots.resize(self.slot_count(), 0);
        pool.fill(slots, |s| self.slot_sum(w, s))?;
        let t: &[u128] = slots;
        pool.fill(out, |v| self.eta_at(w, t, v))
    }
}

/// Neighbor weights in the Gaifman graph of `h`, by inclusion-exclusion over
/// the subsets of every vertex type. Refuses hypergraphs whose maximum degree
/// exceeds `cap`.
pub fn nw_ie(h: &Hypergraph, w: &[u128], cap: usize) -> Result<Vec<u128>> {
    let index = NwIndex::new(h, cap)?;
    let mut out = vec![0u128; h.vertex_count()];
    index.eval(w, &Pool::new(1)?, &mut Vec::new(), &mut out)?;
    Ok(out)
}

/// Neighbor weights on an alpha-split, split by where the neighbor is seen.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NeighborWeights {
    /// Sum over all Gaifman neighbors of `H`.
    pub eta: Vec<u128>,
    /// Sum over `N_{<=alpha}(v)`.
    pub low: Vec<u128>,
    /// Sum over `N_{>alpha}(v)`.
    pub high: Vec<u128>,
}

/// Everything about an alpha-split that does not depend on the weights.
#[derive(Debug, Clone)]
pub struct SplitNeighborhoods<'a> {
    split: &'a AlphaSplit,
    index: NwIndex,
    /// For every `v`, the vertices adjacent to it in both parts.
    overlap_off: Vec<usize>,
    overlap: Vec<u32>,
}

impl<'a> SplitNeighborhoods<'a> {
    pub fn new(split: &'a AlphaSplit, cap: usize) -> Result<Self> {
        let index = NwIndex::new(&split.upper, cap)?;
        let n = split.vertex_count();
        let mut overlap_off = Vec::with_capacity(n + 1);
        overlap_off.push(0);
        let mut overlap = Vec::new();
        for v in 0..n {
            if !split.upper_type(v).is_empty() {
                overlap.extend(split.lower_neighbors(v).iter().copied().filter(|&u| split.upper_adjacent(u as usize, v)));
            }
            overlap_off.push(overlap.len());
        }
        Ok(SplitNeighborhoods { split, index, overlap_off, overlap })
    }

    pub fn split(&self) -> &AlphaSplit {
        self.split
    }

    pub(crate) fn eval(&self, w: &[u128], pool: &Pool, scratch: &mut Vec<u128>, out: &mut NeighborWeights) -> Result<()> {
        let n = self.split.vertex_count();
        check_len(n, w)?;
        out.low.resize(n, 0);
        out.high.resize(n, 0);
        out.eta.resize(n, 0);
        let g = &self.split.lower_gaifman;
        pool.fill(&mut out.low, |v| naive_at(g, w, v))?;
        self.index.eval(w, pool, scratch, &mut out.high)?;
        let (low, high) = (&out.low, &out.high);
        pool.fill(&mut out.eta, |v| {
            let both = self.overlap[self.overlap_off[v]..self.overlap_off[v + 1]]
                .iter()
                .try_fold(0u128, |acc, &u| add(acc, w[u as usize]))?;
            add(low[v], high[v])?
                .checked_sub(both)
                .ok_or_else(|| Error::Internal("overlap exceeds neighbor weight".into()))
        })
    }

    /// Neighbor weights of `w`, computed on the calling thread.
    pub fn weights(&self, w: &[u128]) -> Result<NeighborWeights> {
        let mut out = NeighborWeights::default();
        self.eval(w, &Pool::new(1)?, &mut Vec::new(), &mut out)?;
        Ok(out)
    }
}

/// `eta(v) = eta_low(v) + eta_high(v) - (weight of the neighbors seen in
/// both parts)`, which is the neighbor weight in the Gaifman graph of the
/// whole hypergraph.
pub fn combined_neighbor_weight(split: &AlphaSplit, w: &[u128]) -> Result<NeighborWeights> {
    SplitNeighborhoods::new(split, DEFAULT_DEGREE_CAP)?.weights(w)
}
