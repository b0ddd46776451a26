//! Random colorings and the color-coding dynamic program.
//!
//! `C(T, S, v)` counts the copies of the rooted treelet `T` in the Gaifman
//! graph that are rooted at `v` and use exactly the colors `S`, one vertex
//! per color. With `T` decomposed into `T1` (keeping the root) and `T2`
//! (hanging from a root child, `d` children of that shape):
//!
//! `C(T, S, v) = (1/d) * sum over S1 ⊎ S2 = S of C(T1, S1, v) * eta(T2, S2, v)`
//!
//! where `eta(T2, S2, v)` sums `C(T2, S2, u)` over the neighbors `u` of `v`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{arg, Error, Result};
use crate::hypergraph::{gaifman_bounded, Hypergraph};
use crate::nw::{nw_naive, NeighborWeights, SplitNeighborhoods, DEFAULT_DEGREE_CAP};
use crate::pool::Pool;
use crate::split::AlphaSplit;
use crate::treelet::{TreeletCatalog, MAX_ORDER};

/// RNG stream reserved for colorings.
pub const COLORING_STREAM: u64 = 0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    k: usize,
    colors: Vec<u8>,
    seed: Option<u64>,
}

impl Coloring {
    pub fn new(k: usize, colors: Vec<u8>) -> Result<Self> {
        if !(1..=MAX_ORDER).contains(&k) {
            return arg(format!("number of colors must be in 1..={MAX_ORDER}"));
        }
        if colors.iter().any(|&c| c as usize >= k) {
            return arg("color out of range");
        }
        Ok(Coloring { k, colors, seed: None })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v] as usize
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    /// Whether the vertices carry pairwise distinct colors.
    pub fn is_colorful(&self, set: &[u32]) -> bool {
        let mut seen = 0u32;
        for &v in set {
            let bit = 1u32 << self.colors[v as usize];
            if seen & bit != 0 {
                return false;
            }
            seen |= bit;
        }
        true
    }
}

/// Colors each of `n` vertices independently and uniformly from `0..k`.
pub fn random_coloring(n: usize, k: usize, seed: u64) -> Result<Coloring> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(COLORING_STREAM);
    let colors = (0..n).map(|_| rng.gen_range(0..k.max(1)) as u8).collect();
    let mut c = Coloring::new(k, colors)?;
    c.seed = Some(seed);
    Ok(c)
}

/// Color subsets of `0..k` as bitmasks, ranked within their size.
#[derive(Debug, Clone)]
pub struct ColorSets {
    rank: Vec<u32>,
    by_size: Vec<Vec<u32>>,
}

impl ColorSets {
    pub fn new(k: usize) -> Self {
        let mut by_size = vec![Vec::new(); k + 1];
        let mut rank = vec![0u32; 1 << k];
        for mask in 0u32..(1 << k) {
            let list = &mut by_size[mask.count_ones() as usize];
            rank[mask as usize] = list.len() as u32;
            list.push(mask);
        }
        ColorSets { rank, by_size }
    }

    pub fn of_size(&self, h: usize) -> &[u32] {
        &self.by_size[h]
    }

    pub fn rank(&self, mask: u32) -> usize {
        self.rank[mask as usize] as usize
    }
}

#[derive(Debug, Clone)]
pub struct BuildOptions {
    pub threads: usize,
    /// Largest upper-part degree accepted by the inclusion-exclusion step.
    pub degree_cap: usize,
    /// Largest Gaifman projection (adjacency entries) the naive build accepts.
    pub projection_limit: u128,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { threads: 1, degree_cap: DEFAULT_DEGREE_CAP, projection_limit: 1 << 32 }
    }
}

/// One term of the recurrence for a fixed `(T, S)`.
#[derive(Debug, Clone, Copy)]
struct Term {
    s1: u32,
    slot1: usize,
    slot2: usize,
}

/// All counters `C(T, S, v)` and neighbor sums for one coloring.
///
/// Slots enumerate the pairs `(T, S)` with `|S| = |T|`, treelet-major in
/// catalog order, then by the rank of `S`. Slots of order `< k` come first
/// and are the only ones with neighbor sums.
#[derive(Debug, Clone)]
pub struct CounterSet {
    catalog: TreeletCatalog,
    coloring: Coloring,
    alpha: Option<usize>,
    n: usize,
    sets: ColorSets,
    slot_base: Vec<usize>,
    slots: usize,
    eta_slots: usize,
    counts: Vec<u128>,
    eta: Vec<u128>,
    eta_low: Vec<u128>,
    eta_high: Vec<u128>,
    total: u128,
}

impl CounterSet {
    fn empty(coloring: &Coloring, alpha: Option<usize>) -> Result<Self> {
        let k = coloring.k();
        let catalog = TreeletCatalog::new(k)?;
        let sets = ColorSets::new(k);
        let n = coloring.vertex_count();
        let mut slot_base = Vec::with_capacity(catalog.len());
        let mut slots = 0usize;
        let mut eta_slots = 0usize;
        for t in catalog.treelets() {
            slot_base.push(slots);
            slots += sets.of_size(t.order).len();
            if t.order < k {
                eta_slots = slots;
            }
        }
        let cells = slots.checked_mul(n).ok_or(Error::Overflow("table size"))?;
        Ok(CounterSet {
            catalog,
            coloring: coloring.clone(),
            alpha,
            n,
            sets,
            slot_base,
            slots,
            eta_slots,
            counts: vec![0; cells],
            eta: vec![0; eta_slots * n],
            eta_low: vec![0; eta_slots * n],
            eta_high: vec![0; eta_slots * n],
            total: 0,
        })
    }

    pub fn k(&self) -> usize {
        self.coloring.k()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn catalog(&self) -> &TreeletCatalog {
        &self.catalog
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    /// The split threshold the table was built with; `None` for the naive build.
    pub fn alpha(&self) -> Option<usize> {
        self.alpha
    }

    pub fn color_sets(&self) -> &ColorSets {
        &self.sets
    }

    pub fn slot_count(&self) -> usize {
        self.slots
    }

    pub fn slot(&self, t: usize, s: u32) -> usize {
        debug_assert_eq!(s.count_ones() as usize, self.catalog.get(t).order);
        self.slot_base[t] + self.sets.rank(s)
    }

    /// `C(T, S, v)` for every vertex `v`.
    pub fn counts_of(&self, t: usize, s: u32) -> &[u128] {
        let i = self.slot(t, s);
        &self.counts[i * self.n..(i + 1) * self.n]
    }

    pub fn count(&self, t: usize, s: u32, v: usize) -> u128 {
        self.counts[self.slot(t, s) * self.n + v]
    }

    fn eta_range(&self, t: usize, s: u32) -> core::ops::Range<usize> {
        let i = self.slot(t, s);
        assert!(i < self.eta_slots, "no neighbor sums for treelets of order k");
        i * self.n..(i + 1) * self.n
    }

    /// Neighbor sum of `C(T, S, .)` over all Gaifman neighbors.
    pub fn eta(&self, t: usize, s: u32) -> &[u128] {
        &self.eta[self.eta_range(t, s)]
    }

    /// Neighbor sum over the lower-part neighbors only.
    pub fn eta_low(&self, t: usize, s: u32) -> &[u128] {
        &self.eta_low[self.eta_range(t, s)]
    }

    /// Neighbor sum over the upper-part neighbors only.
    pub fn eta_high(&self, t: usize, s: u32) -> &[u128] {
        &self.eta_high[self.eta_range(t, s)]
    }

    /// `W`: the number of colorful rooted `k`-treelet copies.
    pub fn total(&self) -> u128 {
        self.total
    }

    pub fn full_mask(&self) -> u32 {
        (1u32 << self.k()) - 1
    }

    /// The raw table, slot-major.
    pub fn raw_counts(&self) -> &[u128] {
        &self.counts
    }

    /// Rebuilds a counter set from a raw table, recomputing the neighbor sums
    /// on `split`.
    pub fn from_raw(split: &AlphaSplit, coloring: &Coloring, alpha: Option<usize>, counts: Vec<u128>, opts: &BuildOptions) -> Result<Self> {
        let mut cs = CounterSet::empty(coloring, alpha)?;
        if counts.len() != cs.counts.len() || split.vertex_count() != cs.n {
            return arg("table does not match the hypergraph and k");
        }
        cs.counts = counts;
        let nb = SplitNeighborhoods::new(split, opts.degree_cap)?;
        let pool = Pool::new(opts.threads)?;
        let mut scratch = Vec::new();
        let mut out = NeighborWeights::default();
        for slot in 0..cs.eta_slots {
            nb.eval(&cs.counts[slot * cs.n..(slot + 1) * cs.n], &pool, &mut scratch, &mut out)?;
            cs.store_eta(slot, &out);
        }
        cs.total = cs.root_total()?;
        Ok(cs)
    }

    fn store_eta(&mut self, slot: usize, w: &NeighborWeights) {
        let r = slot * self.n..(slot + 1) * self.n;
        self.eta[r.clone()].copy_from_slice(&w.eta);
        self.eta_low[r.clone()].copy_from_slice(&w.low);
        self.eta_high[r].copy_from_slice(&w.high);
    }

    fn root_total(&self) -> Result<u128> {
        let full = self.full_mask();
        let mut total = 0u128;
        for t in self.catalog.of_order(self.k()) {
            for &c in self.counts_of(t, full) {
                total = total.checked_add(c).ok_or(Error::Overflow("total weight"))?;
            }
        }
        Ok(total)
    }

    fn terms(&self, t: usize, s: u32) -> Vec<Term> {
        let d = self.catalog.get(t).decomposition.expect("order >= 2");
        let h1 = self.catalog.get(d.t1).order as u32;
        let mut out = Vec::new();
        let mut s1 = s;
        loop {
            s1 = s1.wrapping_sub(1) & s;
            if s1 == 0 {
                break;
            }
            if s1.count_ones() == h1 {
                out.push(Term { s1, slot1: self.slot(d.t1, s1), slot2: self.slot(d.t2, s & !s1) });
            }
        }
        out.sort_unstable_by_key(|t| t.s1);
        out
    }

    /// Runs the recurrence, calling `neighbor` once per slot of order `< k`
    /// to obtain its neighbor sums.
    fn run<F>(&mut self, pool: &Pool, mut neighbor: F) -> Result<()>
    where
        F: FnMut(&[u128], &mut NeighborWeights) -> Result<()>,
    {
        let n = self.n;
        let k = self.k();
        let mut nw = NeighborWeights::default();
        for h in 1..=k {
            for t in self.catalog.of_order(h) {
                for si in 0..self.sets.of_size(h).len() {
                    let s = self.sets.of_size(h)[si];
                    let slot = self.slot_base[t] + si;
                    let colors = self.coloring.colors();
                    if h == 1 {
                        for (v, c) in self.counts[slot * n..(slot + 1) * n].iter_mut().enumerate() {
                            *c = u128::from(1u32 << colors[v] == s);
                        }
                        continue;
                    }
                    let d = self.catalog.get(t).decomposition.expect("order >= 2").d as u128;
                    let terms = self.terms(t, s);
                    let (done, rest) = self.counts.split_at_mut(slot * n);
                    let done: &[u128] = done;
                    let eta = &self.eta;
                    pool.fill(&mut rest[..n], |v| {
                        let cv = 1u32 << colors[v];
                        if s & cv == 0 {
                            return Ok(0);
                        }
                        let mut sum = 0u128;
                        for term in terms.iter().filter(|term| term.s1 & cv != 0) {
                            let a = done[term.slot1 * n + v];
                            if a == 0 {
                                continue;
                            }
                            let prod = a.checked_mul(eta[term.slot2 * n + v]).ok_or(Error::Overflow("counter"))?;
                            sum = sum.checked_add(prod).ok_or(Error::Overflow("counter"))?;
                        }
                        if !sum.is_multiple_of(d) {
                            return Err(Error::Internal(format!("counter sum {sum} at vertex {v} not divisible by {d}")));
                        }
                        Ok(sum / d)
                    })?;
                }
            }
            if h < k {
                for t in self.catalog.of_order(h) {
                    for si in 0..self.sets.of_size(h).len() {
                        let slot = self.slot_base[t] + si;
                        neighbor(&self.counts[slot * n..(slot + 1) * n], &mut nw)?;
                        self.store_eta(slot, &nw);
                    }
                }
            }
        }
        self.total = self.root_total()?;
        Ok(())
    }
}

fn check_coloring(n: usize, coloring: &Coloring) -> Result<()> {
    if coloring.vertex_count() != n {
        return arg(format!("coloring has {} vertices, hypergraph has {n}", coloring.vertex_count()));
    }
    Ok(())
}

/// Builds every counter on an alpha-split: lower-part neighbors through the
/// projection of the small edges, upper-part neighbors by inclusion-exclusion
/// over vertex types, minus the neighbors seen by both.
pub fn build_counters(split: &AlphaSplit, coloring: &Coloring, opts: &BuildOptions) -> Result<CounterSet> {
    check_coloring(split.vertex_count(), coloring)?;
    let pool = Pool::new(opts.threads)?;
    let nb = SplitNeighborhoods::new(split, opts.degree_cap)?;
    let mut cs = CounterSet::empty(coloring, Some(split.alpha))?;
    let mut scratch = Vec::new();
    cs.run(&pool, |w, out| nb.eval(w, &pool, &mut scratch, out))?;
    Ok(cs)
}

/// Builds every counter on the explicit Gaifman projection of `h`.
pub fn build_counters_naive(h: &Hypergraph, coloring: &Coloring, opts: &BuildOptions) -> Result<CounterSet> {
    check_coloring(h.vertex_count(), coloring)?;
    let pool = Pool::new(opts.threads)?;
    let g = gaifman_bounded(h, opts.projection_limit)?;
    let mut cs = CounterSet::empty(coloring, None)?;
    cs.run(&pool, |w, out| {
        out.eta = nw_naive(&g, w)?;
        out.low.clone_from(&out.eta);
        out.high = vec![0; w.len()];
        Ok(())
    })?;
    Ok(cs)
}
