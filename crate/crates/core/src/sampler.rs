//! Sampling colorful treelets from a built counter table, and turning the
//! samples into hypergraphlet count estimates.
//!
//! A sample is a uniformly random colorful rooted `k`-treelet copy, so its
//! vertex set `U` comes up with probability `k * sigma(U) / W`, where
//! `sigma(U)` is the number of spanning trees of the Gaifman graph on `U`
//! and `W` the total root weight. Weighting every sample by `1 / sigma`
//! makes the estimate unbiased.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alias::AliasTable;
use crate::buildup::CounterSet;
use crate::canon::{canonical_key, HypergraphletKey};
use crate::error::{arg, Error, Result};
use crate::hypergraph::Hypergraphlet;
use crate::pool::Pool;
use crate::split::AlphaSplit;

/// First RNG stream used by sampling workers; worker `i` uses this plus `i`.
pub const SAMPLING_STREAM: u64 = 1;

/// Alias tables shared by all sampling workers. The per-vertex and per-edge
/// tables are built on first use by each [`Sampler`].
#[derive(Debug)]
pub struct Generators<'a> {
    cs: &'a CounterSet,
    split: &'a AlphaSplit,
    root: AliasTable,
    root_items: Vec<(u32, u32)>,
}

impl<'a> Generators<'a> {
    pub fn new(cs: &'a CounterSet, split: &'a AlphaSplit) -> Result<Self> {
        if split.vertex_count() != cs.vertex_count() {
            return arg("split and counter table have different vertex counts");
        }
        let full = cs.full_mask();
        let mut weights = Vec::new();
        let mut root_items = Vec::new();
        for t in cs.catalog().of_order(cs.k()) {
            for (v, &c) in cs.counts_of(t, full).iter().enumerate() {
                if c > 0 {
                    weights.push(c);
                    root_items.push((t as u32, v as u32));
                }
            }
        }
        let root = AliasTable::new(&weights)?.ok_or(Error::NoColorfulOccurrences)?;
        Ok(Generators { cs, split, root, root_items })
    }

    pub fn counters(&self) -> &CounterSet {
        self.cs
    }

    pub fn split(&self) -> &AlphaSplit {
        self.split
    }

    /// `W`, the number of colorful rooted `k`-treelet copies.
    pub fn total(&self) -> u128 {
        self.root.total()
    }

    /// The support of the root generator: `(treelet, vertex, weight)`.
    pub fn root_support(&self) -> Vec<(usize, usize, u128)> {
        let full = self.cs.full_mask();
        self.root_items.iter().map(|&(t, v)| (t as usize, v as usize, self.cs.count(t as usize, full, v as usize))).collect()
    }
}

/// A sampled colorful treelet copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeletSample {
    /// Vertex set, ascending.
    pub vertices: Vec<u32>,
    pub tree_edges: Vec<(u32, u32)>,
}

/// A sampled vertex set together with what it induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleOutcome {
    pub vertices: Vec<u32>,
    pub tree_edges: Vec<(u32, u32)>,
    pub sigma: u128,
    pub hypergraphlet: Hypergraphlet,
    pub key: HypergraphletKey,
}

/// How induced hypergraphlets are read off the split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Extraction {
    /// Truncate the edges incident to the sampled vertices.
    #[default]
    Incidence,
    /// Inclusion-exclusion over subset counters.
    InclusionExclusion,
}

/// One sampling worker: lazily built alias tables plus a key cache.
pub struct Sampler<'g, 'a> {
    gen: &'g Generators<'a>,
    partitions: HashMap<u64, (AliasTable, Vec<u32>)>,
    lower: HashMap<u64, Option<AliasTable>>,
    types: HashMap<u64, Option<AliasTable>>,
    members: HashMap<u64, Option<AliasTable>>,
    keys: HashMap<Vec<u32>, HypergraphletKey>,
    ie: Option<IeExtractor>,
}

impl<'g, 'a> Sampler<'g, 'a> {
    pub fn new(gen: &'g Generators<'a>) -> Self {
        Sampler {
            gen,
            partitions: HashMap::new(),
            lower: HashMap::new(),
            types: HashMap::new(),
            members: HashMap::new(),
            keys: HashMap::new(),
            ie: None,
        }
    }

    /// Switches hypergraphlet extraction to the inclusion-exclusion variant.
    pub fn with_extraction(mut self, extraction: Extraction) -> Result<Self> {
        self.ie = match extraction {
            Extraction::Incidence => None,
            Extraction::InclusionExclusion => Some(IeExtractor::new(self.gen.split, self.gen.cs.k())?),
        };
        Ok(self)
    }

    fn key(&self, slot: usize, x: usize) -> u64 {
        (slot as u64) << 40 | x as u64
    }

    /// Draws `(S1, S2)` and then a neighbor `u` of `v` with probability
    /// proportional to `C(T2, S2, u)`. Returns `(S1, S2, u)`.
    pub fn sample_neigh<R: Rng + ?Sized>(&mut self, t: usize, s: u32, v: usize, rng: &mut R) -> Result<(u32, u32, usize)> {
        let cs = self.gen.cs;
        let split = self.gen.split;
        let d = cs.catalog().get(t).decomposition.ok_or_else(|| Error::Internal("sampling a neighbor of a single vertex".into()))?;
        let pkey = self.key(cs.slot(t, s), v);
        if !self.partitions.contains_key(&pkey) {
            let h1 = cs.catalog().get(d.t1).order as u32;
            let cv = 1u32 << cs.coloring().color(v);
            let (mut weights, mut s1s) = (Vec::new(), Vec::new());
            let mut s1 = s;
            loop {
                s1 = s1.wrapping_sub(1) & s;
                if s1 == 0 {
                    break;
                }
                if s1.count_ones() == h1 && s1 & cv != 0 {
                    let w = cs.count(d.t1, s1, v).checked_mul(cs.eta(d.t2, s & !s1)[v]).ok_or(Error::Overflow("partition weight"))?;
                    if w > 0 {
                        weights.push(w);
                        s1s.push(s1);
                    }
                }
            }
            let table = AliasTable::new(&weights)?.ok_or_else(|| Error::Internal("sampling from a zero counter".into()))?;
            self.partitions.insert(pkey, (table, s1s));
        }
        let (table, s1s) = &self.partitions[&pkey];
        let s1 = s1s[table.sample(rng)];
        let s2 = s & !s1;
        let slot2 = cs.slot(d.t2, s2);
        let w2 = cs.counts_of(d.t2, s2);
        let wl = cs.eta_low(d.t2, s2)[v];
        let wh = cs.eta_high(d.t2, s2)[v];
        let branch_total = wl.checked_add(wh).ok_or(Error::Overflow("branch weight"))?;
        if branch_total == 0 {
            return Err(Error::Internal("drawn partition has no neighbor weight".into()));
        }
        loop {
            let u = if rng.gen_range(0..branch_total) < wl {
                let lkey = self.key(slot2, v);
                let table = self
                    .lower
                    .entry(lkey)
                    .or_insert_with(|| {
                        let weights: Vec<u128> = split.lower_neighbors(v).iter().map(|&u| w2[u as usize]).collect();
                        AliasTable::new(&weights).ok().flatten()
                    })
                    .as_ref()
                    .ok_or_else(|| Error::Internal("lower neighbor table missing".into()))?;
                split.lower_neighbors(v)[table.sample(rng)] as usize
            } else {
                self.sample_upper(slot2, w2, v, rng)?
            };
            debug_assert_ne!(u, v);
            let c = u32::from(split.lower_adjacent(u, v)) + u32::from(split.upper_adjacent(u, v));
            if c == 1 || rng.gen_range(0..c) == 0 {
                return Ok((s1, s2, u));
            }
        }
    }

    fn member_table(&mut self, slot2: usize, w2: &[u128], e: usize) -> Result<Option<&AliasTable>> {
        let upper = &self.gen.split.upper;
        let key = self.key(slot2, e);
        if !self.members.contains_key(&key) {
            let weights: Vec<u128> = upper.edge(e).iter().map(|&u| w2[u as usize]).collect();
            self.members.insert(key, AliasTable::new(&weights)?);
        }
        Ok(self.members[&key].as_ref())
    }

    /// Draws `u` in `N_{>alpha}(v)` with probability proportional to `w2(u)`:
    /// an edge of the type of `v` by edge weight, a member by vertex weight,
    /// then rejection to undo the multiplicity of shared edges.
    fn sample_upper<R: Rng + ?Sized>(&mut self, slot2: usize, w2: &[u128], v: usize, rng: &mut R) -> Result<usize> {
        let split = self.gen.split;
        let ty = split.upper_type(v);
        let tkey = self.key(slot2, v);
        if !self.types.contains_key(&tkey) {
            let mut weights = Vec::with_capacity(ty.len());
            for &e in ty {
                weights.push(self.member_table(slot2, w2, e as usize)?.map_or(0, AliasTable::total));
            }
            self.types.insert(tkey, AliasTable::new(&weights)?);
        }
        loop {
            let types = self.types[&tkey].as_ref().ok_or_else(|| Error::Internal("upper neighbor table missing".into()))?;
            let e = ty[types.sample(rng)] as usize;
            let members = self.member_table(slot2, w2, e)?.ok_or_else(|| Error::Internal("empty edge drawn".into()))?;
            let u = split.upper.edge(e)[members.sample(rng)] as usize;
            let m = split.upper_common(u, v) as u64;
            if m == 1 || rng.gen_range(0..m) == 0 {
                return Ok(u);
            }
        }
    }

    fn grow<R: Rng + ?Sized>(&mut self, t: usize, s: u32, v: usize, rng: &mut R, out: &mut TreeletSample) -> Result<()> {
        let Some(d) = self.gen.cs.catalog().get(t).decomposition else {
            out.vertices.push(v as u32);
            return Ok(());
        };
        let (s1, s2, u) = self.sample_neigh(t, s, v, rng)?;
        out.tree_edges.push((v as u32, u as u32));
        self.grow(d.t1, s1, v, rng, out)?;
        self.grow(d.t2, s2, u, rng, out)
    }

    /// Draws a uniformly random colorful rooted `k`-treelet copy.
    pub fn sample_treelet<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<TreeletSample> {
        let (t, v) = self.gen.root_items[self.gen.root.sample(rng)];
        let mut out = TreeletSample { vertices: Vec::new(), tree_edges: Vec::new() };
        self.grow(t as usize, self.gen.cs.full_mask(), v as usize, rng, &mut out)?;
        out.vertices.sort_unstable();
        Ok(out)
    }

    /// Computes `sigma`, the induced hypergraphlet and its key.
    pub fn observe(&mut self, sample: TreeletSample) -> Result<SampleOutcome> {
        let split = self.gen.split;
        let sigma = spanning_tree_count(&local_adjacency(split, &sample.vertices))?;
        let hypergraphlet = match &self.ie {
            Some(ie) => ie.extract(split, &sample.vertices)?,
            None => extract_hypergraphlet(split, &sample.vertices)?,
        };
        let key = match self.keys.get(&hypergraphlet.edges) {
            Some(key) => key.clone(),
            None => {
                let key = canonical_key(&hypergraphlet)?;
                self.keys.insert(hypergraphlet.edges.clone(), key.clone());
                key
            }
        };
        Ok(SampleOutcome { vertices: sample.vertices, tree_edges: sample.tree_edges, sigma, hypergraphlet, key })
    }

    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<SampleOutcome> {
        let s = self.sample_treelet(rng)?;
        self.observe(s)
    }
}

/// Gaifman adjacency among the vertices of `u` (in the given order), as one
/// neighbor mask per vertex.
pub fn local_adjacency(split: &AlphaSplit, u: &[u32]) -> Vec<u32> {
    let mut adj = vec![0u32; u.len()];
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if split.adjacent(u[i] as usize, u[j] as usize) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    adj
}

/// Number of spanning trees of the graph given by neighbor masks, as the
/// determinant of a Laplacian minor (fraction-free elimination).
pub fn spanning_tree_count(adj: &[u32]) -> Result<u128> {
    let k = adj.len();
    if k == 0 {
        return arg("empty graph");
    }
    let m = k - 1;
    let mut a: Vec<Vec<i128>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { adj[i].count_ones() as i128 } else { -i128::from(adj[i] >> j & 1 == 1) })
                .collect()
        })
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for p in 0..m {
        if a[p][p] == 0 {
            match (p + 1..m).find(|&r| a[r][p] != 0) {
                Some(r) => {
                    a.swap(p, r);
                    sign = -sign;
                }
                None => return arg("graph is disconnected"),
            }
        }
        for i in p + 1..m {
            for j in p + 1..m {
                let x = a[i][j]
                    .checked_mul(a[p][p])
                    .and_then(|x| x.checked_sub(a[i][p].checked_mul(a[p][j])?))
                    .ok_or(Error::Overflow("spanning tree count"))?;
                a[i][j] = x / prev;
            }
            a[i][p] = 0;
        }
        prev = a[p][p];
    }
    let det = if m == 0 { 1 } else { sign * a[m - 1][m - 1] };
    if det <= 0 {
        return arg("graph is disconnected");
    }
    Ok(det as u128)
}

/// `H|_U` read off the two parts of the split by truncating incident edges.
pub fn extract_hypergraphlet(split: &AlphaSplit, u: &[u32]) -> Result<Hypergraphlet> {
    if u.len() > 32 {
        return arg("vertex sets are limited to 32 vertices");
    }
    let mut masks: HashMap<(bool, u32), u32> = HashMap::new();
    for (i, &v) in u.iter().enumerate() {
        if v as usize >= split.vertex_count() {
            return arg("vertex out of range");
        }
        for &j in split.lower.incidence(v as usize) {
            *masks.entry((false, j)).or_insert(0) |= 1 << i;
        }
        for &j in split.upper_type(v as usize) {
            *masks.entry((true, j)).or_insert(0) |= 1 << i;
        }
    }
    Hypergraphlet::from_masks(u.len(), masks.into_values(), u.to_vec())
}

/// Largest number of lower-edge subsets [`IeExtractor`] will index.
pub const IE_INDEX_LIMIT: u128 = 50_000_000;

/// Extraction through edge counters: `N[X]` counts the edges containing the
/// vertex set `X`, and the number of edges whose trace on `U` is exactly `X`
/// follows by inclusion-exclusion over the supersets of `X` inside `U`.
/// Lower edges have their subsets of size `<= k` indexed up front; upper
/// counts come from intersecting the sorted types.
#[derive(Debug, Clone)]
pub struct IeExtractor {
    k: usize,
    lower: HashMap<Vec<u32>, u32>,
}

impl IeExtractor {
    pub fn new(split: &AlphaSplit, k: usize) -> Result<Self> {
        let mut estimate = 0u128;
        for e in split.lower.edges() {
            let mut c = 1u128;
            for i in 1..=k.min(e.len()) {
                c = c * (e.len() + 1 - i) as u128 / i as u128;
                estimate += c;
            }
        }
        if estimate > IE_INDEX_LIMIT {
            return Err(Error::Budget { estimate, budget: IE_INDEX_LIMIT });
        }
        let mut lower: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut buf = Vec::new();
        for e in split.lower.edges() {
            subsets_up_to(e, k, &mut buf, 0, &mut |x| *lower.entry_ref(x).or_insert(0) += 1);
        }
        Ok(IeExtractor { k, lower })
    }

    pub fn extract(&self, split: &AlphaSplit, u: &[u32]) -> Result<Hypergraphlet> {
        let kk = u.len();
        if kk > self.k || kk > 16 {
            return arg("vertex set larger than the indexed order");
        }
        let mut sorted: Vec<(u32, usize)> = u.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        sorted.sort_unstable();
        let mut f = vec![0i64; 1 << kk];
        let mut tuple = Vec::with_capacity(kk);
        for x in 1usize..(1 << kk) {
            tuple.clear();
            tuple.extend(sorted.iter().filter(|(_, i)| x >> i & 1 == 1).map(|&(v, _)| v));
            let low = self.lower.get(tuple.as_slice()).copied().unwrap_or(0) as i64;
            let mut common: Vec<u32> = split.upper_type(tuple[0] as usize).to_vec();
            for &v in &tuple[1..] {
                let other = split.upper_type(v as usize);
                common.retain(|e| other.binary_search(e).is_ok());
            }
            f[x] = low + common.len() as i64;
        }
        for b in 0..kk {
            for x in 0..(1usize << kk) {
                if x >> b & 1 == 0 {
                    f[x] -= f[x | 1 << b];
                }
            }
        }
        let masks = (1usize..(1 << kk)).filter(|&x| f[x] > 0).map(|x| x as u32);
        Hypergraphlet::from_masks(kk, masks, u.to_vec())
    }
}

fn subsets_up_to(e: &[u32], k: usize, buf: &mut Vec<u32>, from: usize, f: &mut impl FnMut(&[u32])) {
    for i in from..e.len() {
        buf.push(e[i]);
        f(buf);
        if buf.len() < k {
            subsets_up_to(e, k, buf, i + 1, f);
        }
        buf.pop();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SampleMode {
    /// Keep every sample, weighted by `1 / sigma`.
    #[default]
    Weighted,
    /// Keep a sample with probability `1 / sigma`; kept sets are uniform over
    /// the colorful connected `k`-sets.
    Uniform,
}

/// Per-type sample tally. `sigma_counts[s]` is the number of kept samples
/// whose vertex set has `s` spanning trees.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TypeTally {
    pub samples: u64,
    pub sigma_counts: BTreeMap<u128, u64>,
}

impl TypeTally {
    /// `sum 1 / sigma` over the kept samples.
    pub fn inv_sigma_sum(&self) -> f64 {
        self.sigma_counts.iter().map(|(&s, &c)| c as f64 / s as f64).sum()
    }
}

/// One line of the sample log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleRecord {
    pub key: HypergraphletKey,
    pub sigma: u128,
    pub vertices: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub k: usize,
    pub mode: SampleMode,
    /// `W` of the counter table.
    pub total_weight: u128,
    /// Number of treelet samples drawn.
    pub draws: u64,
    pub tallies: BTreeMap<HypergraphletKey, TypeTally>,
    pub log: Vec<SampleRecord>,
}

/// `k! / k^k`, the probability that a fixed `k`-set is colorful.
pub fn colorful_probability(k: usize) -> f64 {
    (1..=k).map(|i| i as f64 / k as f64).product()
}

impl Estimate {
    fn empty(k: usize, mode: SampleMode, total_weight: u128) -> Self {
        Estimate { k, mode, total_weight, draws: 0, tallies: BTreeMap::new(), log: Vec::new() }
    }

    /// Estimated number of colorful occurrences of `key`.
    pub fn colorful_estimate(&self, key: &HypergraphletKey) -> f64 {
        let Some(t) = self.tallies.get(key) else { return 0.0 };
        if self.draws == 0 {
            return 0.0;
        }
        let scale = self.total_weight as f64 / (self.k as f64 * self.draws as f64);
        match self.mode {
            SampleMode::Weighted => scale * t.inv_sigma_sum(),
            SampleMode::Uniform => scale * t.samples as f64,
        }
    }

    /// Estimated number of occurrences of `key`, colorful or not.
    pub fn total_estimate(&self, key: &HypergraphletKey) -> f64 {
        self.colorful_estimate(key) / colorful_probability(self.k)
    }

    /// Share of `key` among all estimated occurrences.
    pub fn relative_frequency(&self, key: &HypergraphletKey) -> f64 {
        let sum: f64 = self.tallies.keys().map(|k| self.colorful_estimate(k)).sum();
        if sum == 0.0 {
            0.0
        } else {
            self.colorful_estimate(key) / sum
        }
    }

    /// Folds another estimate built on the same table into this one.
    pub fn merge(&mut self, other: Estimate) {
        self.draws += other.draws;
        for (key, t) in other.tallies {
            let mine = self.tallies.entry(key).or_default();
            mine.samples += t.samples;
            for (s, c) in t.sigma_counts {
                *mine.sigma_counts.entry(s).or_insert(0) += c;
            }
        }
        self.log.extend(other.log);
    }
}

#[derive(Debug, Clone, Default)]
pub struct EstimateOptions {
    pub samples: u64,
    pub seed: u64,
    pub threads: usize,
    pub mode: SampleMode,
    pub extraction: Extraction,
    /// Keep one [`SampleRecord`] per kept sample.
    pub keep_log: bool,
}

/// Draws `opts.samples` colorful treelets and tallies the hypergraphlets
/// they span. Worker `i` draws its share from its own RNG stream, so the
/// output is fixed by the seed and the thread count.
pub fn estimate_counts(gen: &Generators<'_>, opts: &EstimateOptions) -> Result<Estimate> {
    if opts.samples == 0 {
        return arg("sample budget must be positive");
    }
    let workers = opts.threads.max(1);
    let pool = Pool::new(workers)?;
    let k = gen.cs.k();
    let parts = pool.tasks(workers, |w| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(SAMPLING_STREAM + w as u64);
        let quota = opts.samples / workers as u64 + u64::from((w as u64) < opts.samples % workers as u64);
        let mut sampler = Sampler::new(gen).with_extraction(opts.extraction)?;
        let mut est = Estimate::empty(k, opts.mode, gen.total());
        for _ in 0..quota {
            let s = sampler.sample(&mut rng)?;
            est.draws += 1;
            if opts.mode == SampleMode::Uniform && rng.gen_range(0..s.sigma) != 0 {
                continue;
            }
            let t = est.tallies.entry(s.key.clone()).or_default();
            t.samples += 1;
            *t.sigma_counts.entry(s.sigma).or_insert(0) += 1;
            if opts.keep_log {
                est.log.push(SampleRecord { key: s.key, sigma: s.sigma, vertices: s.vertices });
            }
        }
        Ok(est)
    })?;
    let mut total = Estimate::empty(k, opts.mode, gen.total());
    for p in parts {
        total.merge(p);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::buildup::{build_counters, BuildOptions, Coloring};
    use crate::hypergraph::Hypergraph;
    use crate::split::apply_split;

    #[test]
    fn kirchhoff_small() {
        assert_eq!(spanning_tree_count(&[0b110, 0b101, 0b011]).unwrap(), 3);
        assert_eq!(spanning_tree_count(&[0b010, 0b101, 0b010]).unwrap(), 1);
        assert_eq!(spanning_tree_count(&[0b1110, 0b1101, 0b1011, 0b0111]).unwrap(), 16);
        assert_eq!(spanning_tree_count(&[0]).unwrap(), 1);
        assert!(spanning_tree_count(&[0b10, 0b01, 0]).is_err());
    }

    #[test]
    fn triangle_estimate_is_exact() {
        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        let split = apply_split(&h, 2);
        let col = Coloring::new(3, vec![0, 1, 2]).unwrap();
        let cs = build_counters(&split, &col, &BuildOptions::default()).unwrap();
        let gen = Generators::new(&cs, &split).unwrap();
        assert_eq!(gen.total(), 9);
        let est = estimate_counts(&gen, &EstimateOptions { samples: 50, threads: 1, ..Default::default() }).unwrap();
        assert_eq!(est.tallies.len(), 1);
        let key = est.tallies.keys().next().unwrap().clone();
        assert!((est.colorful_estimate(&key) - 1.0).abs() < 1e-12);
        assert_eq!(est.tallies[&key].sigma_counts.keys().copied().collect::<Vec<_>>(), vec![3]);
    }

    #[test]
    fn monochrome_has_no_generators() {
        let h = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        let split = apply_split(&h, 2);
        let col = Coloring::new(2, vec![0, 0]).unwrap();
        let cs = build_counters(&split, &col, &BuildOptions::default()).unwrap();
        assert_eq!(Generators::new(&cs, &split).unwrap_err(), Error::NoColorfulOccurrences);
    }

    #[test]
    fn toy_extraction() {
        let h = Hypergraph::new(8, vec![vec![0, 1], vec![1, 4], vec![3, 5, 6], vec![0, 1, 2, 4, 6]]).unwrap();
        let split = apply_split(&h, 2);
        let hg = extract_hypergraphlet(&split, &[0, 1, 4]).unwrap();
        assert_eq!(hg.edges, vec![0b011, 0b110, 0b111]);
        let ie = IeExtractor::new(&split, 3).unwrap();
        assert_eq!(ie.extract(&split, &[0, 1, 4]).unwrap(), hg);
        assert_eq!(local_adjacency(&split, &[2, 3, 7]), vec![0, 0, 0]);
        assert_eq!(local_adjacency(&split, &[0, 1, 4]), vec![0b110, 0b101, 0b011]);
        assert!(extract_hypergraphlet(&split, &[7]).unwrap().edges.is_empty());
    }
}
