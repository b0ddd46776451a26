//! Canonical keys for small hypergraphs and exhaustive counting oracles.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use hashbrown::HashMap;

use crate::buildup::Coloring;
use crate::error::{arg, Error, Result};
use crate::hypergraph::{gaifman, induced_sub, Graph, Hypergraph, Hypergraphlet};

/// Largest order accepted by [`canonical_key`].
pub const MAX_KEY_ORDER: usize = 8;

/// Default cap on the number of vertex sets an exhaustive oracle visits.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Isomorphism-invariant encoding of a hypergraphlet: the smallest sorted
/// edge-mask list reachable by relabeling its vertices.
///
/// Written as `order:mask-mask-...` with hex masks, e.g. `3:3-6` for the
/// path made of two 2-edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HypergraphletKey {
    order: u8,
    edges: Vec<u32>,
}

impl HypergraphletKey {
    pub fn order(&self) -> usize {
        self.order as usize
    }

    pub fn edges(&self) -> &[u32] {
        &self.edges
    }

    pub fn to_hypergraphlet(&self) -> Hypergraphlet {
        Hypergraphlet { order: self.order(), edges: self.edges.clone(), vertex_map: (0..self.order as u32).collect() }
    }
}

impl fmt::Display for HypergraphletKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.order)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str("-")?;
            }
            write!(f, "{e:x}")?;
        }
        Ok(())
    }
}

impl FromStr for HypergraphletKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Argument(format!("malformed hypergraphlet key {s:?}"));
        let (order, rest) = s.split_once(':').ok_or_else(bad)?;
        let order: usize = order.parse().map_err(|_| bad())?;
        let masks = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split('-').map(|m| u32::from_str_radix(m, 16).map_err(|_| bad())).collect::<Result<Vec<_>>>()?
        };
        let hg = Hypergraphlet::from_masks(order, masks.iter().copied(), (0..order as u32).collect())?;
        let key = canonical_key(&hg)?;
        if key.edges != masks {
            return Err(bad());
        }
        Ok(key)
    }
}

/// Per-vertex isomorphism invariant: degree, Gaifman degree, then the sizes
/// of the incident edges in decreasing order.
fn invariant(hg: &Hypergraphlet, adj: &[u32], i: usize) -> Vec<u32> {
    let mut sizes: Vec<u32> = hg.edges.iter().filter(|&&e| e >> i & 1 == 1).map(|e| e.count_ones()).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let mut inv = vec![sizes.len() as u32, adj[i].count_ones()];
    inv.extend(sizes);
    inv
}

struct Search<'a> {
    edges: &'a [u32],
    /// Vertices allowed at each position.
    cell_of_pos: Vec<usize>,
    cells: Vec<Vec<usize>>,
    pos: Vec<u32>,
    used: u32,
    buf: Vec<u32>,
    best: Option<Vec<u32>>,
}

impl Search<'_> {
    fn run(&mut self, p: usize) {
        if p == self.pos.len() {
            self.buf.clear();
            for &e in self.edges {
                let mut m = 0u32;
                let mut bits = e;
                while bits != 0 {
                    let i = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    m |= 1 << self.pos[i];
                }
                self.buf.push(m);
            }
            self.buf.sort_unstable();
            if self.best.as_ref().is_none_or(|b| self.buf < *b) {
                self.best = Some(self.buf.clone());
            }
            return;
        }
        let cell = self.cell_of_pos[p];
        for j in 0..self.cells[cell].len() {
            let v = self.cells[cell][j];
            if self.used >> v & 1 == 0 {
                self.used |= 1 << v;
                self.pos[v] = p as u32;
                self.run(p + 1);
                self.used &= !(1 << v);
            }
        }
    }
}

/// Computes the canonical key of `hg`.
///
/// Vertices are first grouped by an isomorphism invariant and cells are
/// ordered by invariant value; the search then ranges over the relabelings
/// that keep every vertex inside its cell's block of positions.
pub fn canonical_key(hg: &Hypergraphlet) -> Result<HypergraphletKey> {
    let k = hg.order;
    if k > MAX_KEY_ORDER {
        return arg(format!("canonical keys are limited to {MAX_KEY_ORDER} vertices, got {k}"));
    }
    let adj = hg.adjacency_masks();
    let mut verts: Vec<(Vec<u32>, usize)> = (0..k).map(|i| (invariant(hg, &adj, i), i)).collect();
    verts.sort();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut cell_of_pos = Vec::with_capacity(k);
    for (i, (inv, v)) in verts.iter().enumerate() {
        if i == 0 || verts[i - 1].0 != *inv {
            cells.push(Vec::new());
        }
        cells.last_mut().unwrap().push(*v);
        cell_of_pos.push(cells.len() - 1);
    }
    let mut search = Search { edges: &hg.edges, cell_of_pos, cells, pos: vec![0; k], used: 0, buf: Vec::new(), best: None };
    search.run(0);
    Ok(HypergraphletKey { order: k as u8, edges: search.best.unwrap_or_default() })
}

/// Calls `f` once for every connected vertex set of size `k` in `g`, as a
/// sorted list, until `f` returns `false`. When `coloring` is given only
/// colorful sets are visited. Returns the number of sets visited.
///
/// Each set is produced once, grown from its smallest vertex through the
/// exclusive neighborhoods of the vertices added so far.
pub fn for_each_connected_set<F>(g: &Graph, k: usize, coloring: Option<&Coloring>, budget: u128, mut f: F) -> Result<u128>
where
    F: FnMut(&[u32]) -> Result<bool>,
{
    struct Esu<'a, F> {
        g: &'a Graph,
        k: usize,
        coloring: Option<&'a Coloring>,
        budget: u128,
        seen: u128,
        sub: Vec<u32>,
        sorted: Vec<u32>,
        used_colors: u32,
        stopped: bool,
        f: F,
    }
    impl<F: FnMut(&[u32]) -> Result<bool>> Esu<'_, F> {
        fn in_closed_neighborhood(&self, u: u32) -> bool {
            self.sub.iter().any(|&s| s == u || self.g.has_edge(s as usize, u as usize))
        }

        fn extend(&mut self, mut ext: Vec<u32>, root: u32) -> Result<()> {
            if self.sub.len() == self.k {
                self.seen += 1;
                if self.seen > self.budget {
                    return Err(Error::Budget { estimate: self.seen, budget: self.budget });
                }
                self.sorted.clone_from(&self.sub);
                self.sorted.sort_unstable();
                self.stopped = !(self.f)(&self.sorted)?;
                return Ok(());
            }
            while let Some(w) = ext.pop() {
                if self.stopped {
                    break;
                }
                let bit = self.coloring.map_or(0, |c| 1u32 << c.color(w as usize));
                if self.used_colors & bit != 0 {
                    continue;
                }
                let mut next = ext.clone();
                for &u in self.g.neighbors(w as usize) {
                    if u > root && !self.in_closed_neighborhood(u) && !next.contains(&u) {
                        next.push(u);
                    }
                }
                self.sub.push(w);
                self.used_colors |= bit;
                self.extend(next, root)?;
                self.used_colors &= !bit;
                self.sub.pop();
            }
            Ok(())
        }
    }
    if k == 0 {
        return Ok(0);
    }
    let mut esu = Esu { g, k, coloring, budget, seen: 0, sub: Vec::new(), sorted: Vec::new(), used_colors: 0, stopped: false, f: &mut f };
    for v in 0..g.vertex_count() as u32 {
        if esu.stopped {
            break;
        }
        esu.sub.push(v);
        esu.used_colors = coloring.map_or(0, |c| 1u32 << c.color(v as usize));
        let ext: Vec<u32> = g.neighbors(v as usize).iter().copied().filter(|&u| u > v).collect();
        esu.extend(ext, v)?;
        esu.sub.pop();
    }
    Ok(esu.seen)
}

fn count_types(h: &Hypergraph, k: usize, coloring: Option<&Coloring>, budget: u128) -> Result<BTreeMap<HypergraphletKey, u128>> {
    if k > MAX_KEY_ORDER {
        return arg(format!("exact counting is limited to k <= {MAX_KEY_ORDER}"));
    }
    let g = gaifman(h);
    let mut keys: HashMap<Vec<u32>, HypergraphletKey> = HashMap::new();
    let mut counts = BTreeMap::new();
    for_each_connected_set(&g, k, coloring, budget, |set| {
        let hg = induced_sub(h, set)?;
        let key = match keys.get(&hg.edges) {
            Some(key) => key.clone(),
            None => {
                let key = canonical_key(&hg)?;
                keys.insert(hg.edges, key.clone());
                key
            }
        };
        *counts.entry(key).or_insert(0u128) += 1;
        Ok(true)
    })?;
    Ok(counts)
}

/// Number of `k`-sets inducing each connected hypergraphlet type.
pub fn exact_counts(h: &Hypergraph, k: usize, budget: u128) -> Result<BTreeMap<HypergraphletKey, u128>> {
    count_types(h, k, None, budget)
}

/// Like [`exact_counts`], restricted to sets with pairwise distinct colors.
pub fn exact_colorful_counts(h: &Hypergraph, coloring: &Coloring, k: usize, budget: u128) -> Result<BTreeMap<HypergraphletKey, u128>> {
    if coloring.vertex_count() != h.vertex_count() {
        return arg("coloring does not match the hypergraph");
    }
    count_types(h, k, Some(coloring), budget)
}

/// Rooted tree code, `(` + sorted child codes + `)`.
fn rooted_code(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v].iter().filter(|&&u| u != parent).map(|&u| rooted_code(adj, u, v)).collect();
    kids.sort();
    let mut s = String::from("(");
    for c in kids {
        s.push_str(&c);
    }
    s.push(')');
    s
}

/// Calls `f` with the edge list of every spanning tree of the graph on
/// `0..n` with the given edges, by trying every edge subset of size `n - 1`.
fn for_each_spanning_tree(n: usize, edges: &[(usize, usize)], mut f: impl FnMut(&[(usize, usize)])) {
    if n == 0 {
        return;
    }
    let m = edges.len();
    let mut chosen = Vec::with_capacity(n);
    for mask in 0u64..(1u64 << m) {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        chosen.clear();
        let mut acyclic = true;
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra == rb {
                    acyclic = false;
                    break;
                }
                parent[ra] = rb;
                chosen.push((a, b));
            }
        }
        if acyclic {
            f(&chosen);
        }
    }
}

/// Counts the spanning trees of the graph given by neighbor masks.
pub fn brute_spanning_trees(adj: &[u32]) -> u128 {
    let n = adj.len();
    let mut edges = Vec::new();
    for (a, &row) in adj.iter().enumerate() {
        for b in a + 1..n {
            if row >> b & 1 == 1 {
                edges.push((a, b));
            }
        }
    }
    let mut count = 0u128;
    for_each_spanning_tree(n, &edges, |_| count += 1);
    count
}

/// Counts the copies of the rooted tree with canonical code `code` in the
/// Gaifman graph of `h` that are rooted at `v` and whose vertex colors are
/// pairwise distinct and equal to the color set `s`, by enumerating vertex
/// sets and their spanning trees.
pub fn brute_rooted_colorful_treelets(h: &Hypergraph, coloring: &Coloring, code: &str, s: u32, v: usize) -> Result<u128> {
    let n = h.vertex_count();
    if n > 16 {
        return arg("the rooted treelet oracle is limited to 16 vertices");
    }
    let order = code.len() / 2;
    if s.count_ones() as usize != order || s >> coloring.color(v) & 1 == 0 {
        return Ok(0);
    }
    let g = gaifman(h);
    let mut count = 0u128;
    for set in 0u32..(1u32 << n) {
        if set >> v & 1 == 0 || set.count_ones() as usize != order {
            continue;
        }
        let verts: Vec<usize> = (0..n).filter(|&u| set >> u & 1 == 1).collect();
        let colors = verts.iter().fold(0u32, |acc, &u| acc | 1 << coloring.color(u));
        if colors != s {
            continue;
        }
        let mut edges = Vec::new();
        for (i, &a) in verts.iter().enumerate() {
            for (j, &b) in verts.iter().enumerate().skip(i + 1) {
                if g.has_edge(a, b) {
                    edges.push((i, j));
                }
            }
        }
        let root = verts.iter().position(|&u| u == v).unwrap();
        for_each_spanning_tree(order, &edges, |tree| {
            let mut adj = vec![Vec::new(); order];
            for &(a, b) in tree {
                adj[a].push(b);
                adj[b].push(a);
            }
            if rooted_code(&adj, root, usize::MAX) == code {
                count += 1;
            }
        });
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(order: usize, masks: &[u32]) -> Hypergraphlet {
        Hypergraphlet::from_masks(order, masks.iter().copied(), (0..order as u32).collect()).unwrap()
    }

    #[test]
    fn swap_symmetry() {
        assert_eq!(canonical_key(&hg(2, &[0b11, 0b10])).unwrap(), canonical_key(&hg(2, &[0b11, 0b01])).unwrap());
    }

    #[test]
    fn key_text_roundtrip() {
        let key = canonical_key(&hg(4, &[0b0011, 0b0110, 0b1100, 0b1111])).unwrap();
        let text = key.to_string();
        assert_eq!(text.parse::<HypergraphletKey>().unwrap(), key);
        assert!("3:7-7".parse::<HypergraphletKey>().is_err());
        assert_eq!(canonical_key(&hg(1, &[])).unwrap().to_string(), "1:");
    }

    #[test]
    fn small_exact_counts() {
        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        let c = exact_counts(&h, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.values().copied().collect::<Vec<_>>(), vec![1]);
        let h = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let c = exact_counts(&h, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.keys().next().unwrap().to_string(), "3:5-6");
    }

    #[test]
    fn triangle_trees() {
        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        let col = Coloring::new(3, vec![0, 1, 2]).unwrap();
        assert_eq!(brute_rooted_colorful_treelets(&h, &col, "((()))", 0b111, 0).unwrap(), 2);
        assert_eq!(brute_rooted_colorful_treelets(&h, &col, "(()())", 0b111, 0).unwrap(), 1);
        assert_eq!(brute_rooted_colorful_treelets(&h, &col, "(())", 0b110, 0).unwrap(), 0);
    }

    #[test]
    fn spanning_tree_oracle() {
        assert_eq!(brute_spanning_trees(&[0b110, 0b101, 0b011]), 3);
        assert_eq!(brute_spanning_trees(&[0b1110, 0b1101, 0b1011, 0b0111]), 16);
        assert_eq!(brute_spanning_trees(&[0b10, 0b01, 0]), 0);
    }
}
