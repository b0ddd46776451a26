//! Hypergraphs, their Gaifman projection, and the two notions of
//! sub-hypergraph induced by a vertex set (truncated edges and section).

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use hashbrown::{HashMap, HashSet};

use crate::error::{arg, Error, Result};

/// A hypergraph on the dense vertex set `0..vertex_count`.
///
/// Edges and incidence lists are stored CSR-style. Every edge is sorted by
/// vertex id and every incidence list is sorted by edge index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edge_off: Vec<usize>,
    edge_verts: Vec<u32>,
    inc_off: Vec<usize>,
    inc_edges: Vec<u32>,
    rank: usize,
    max_degree: usize,
}

impl Hypergraph {
    /// Builds a hypergraph, sorting each edge. Empty edges, repeated vertices
    /// and out-of-range ids are rejected.
    pub fn new(vertex_count: usize, edges: Vec<Vec<u32>>) -> Result<Self> {
        if vertex_count > u32::MAX as usize {
            return arg("vertex count does not fit 32-bit ids");
        }
        let mut sorted = Vec::with_capacity(edges.len());
        for (j, mut e) in edges.into_iter().enumerate() {
            if e.is_empty() {
                return arg(format!("edge {j} is empty"));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return arg(format!("edge {j} repeats a vertex"));
            }
            if let Some(&last) = e.last() {
                if last as usize >= vertex_count {
                    return arg(format!("edge {j} has vertex {last} >= {vertex_count}"));
                }
            }
            sorted.push(e);
        }
        Ok(Self::from_sorted(vertex_count, sorted))
    }

    pub(crate) fn from_sorted(n: usize, edges: Vec<Vec<u32>>) -> Self {
        let mut edge_off = Vec::with_capacity(edges.len() + 1);
        edge_off.push(0);
        let total: usize = edges.iter().map(Vec::len).sum();
        let mut edge_verts = Vec::with_capacity(total);
        let mut degree = vec![0usize; n];
        let mut rank = 0;
        for e in &edges {
            rank = rank.max(e.len());
            for &v in e {
                degree[v as usize] += 1;
            }
            edge_verts.extend_from_slice(e);
            edge_off.push(edge_verts.len());
        }
        let mut inc_off = Vec::with_capacity(n + 1);
        inc_off.push(0);
        for d in &degree {
            inc_off.push(inc_off.last().unwrap() + d);
        }
        let mut fill = inc_off[..n].to_vec();
        let mut inc_edges = vec![0u32; total];
        for (j, e) in edges.iter().enumerate() {
            for &v in e {
                inc_edges[fill[v as usize]] = j as u32;
                fill[v as usize] += 1;
            }
        }
        let max_degree = degree.iter().copied().max().unwrap_or(0);
        Hypergraph { n, edge_off, edge_verts, inc_off, inc_edges, rank, max_degree }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_off.len() - 1
    }

    pub fn edge(&self, j: usize) -> &[u32] {
        &self.edge_verts[self.edge_off[j]..self.edge_off[j + 1]]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        (0..self.edge_count()).map(move |j| self.edge(j))
    }

    /// The type `E(v)`: indices of the edges containing `v`, ascending.
    pub fn incidence(&self, v: usize) -> &[u32] {
        &self.inc_edges[self.inc_off[v]..self.inc_off[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.inc_off[v + 1] - self.inc_off[v]
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// `|V| + sum of edge sizes`.
    pub fn size(&self) -> usize {
        self.n + self.edge_verts.len()
    }

    /// Drops later copies of edges that repeat an earlier edge exactly.
    pub fn dedupe_edges(&self) -> Hypergraph {
        let mut seen: HashSet<&[u32]> = HashSet::new();
        let kept: Vec<Vec<u32>> = self.edges().filter(|e| seen.insert(*e)).map(<[u32]>::to_vec).collect();
        Hypergraph::from_sorted(self.n, kept)
    }

    /// Returns the sub-hypergraph made of the edges selected by `keep`, on the
    /// same vertex set, together with the original index of every kept edge.
    pub fn filter_edges(&self, mut keep: impl FnMut(&[u32]) -> bool) -> (Hypergraph, Vec<u32>) {
        let mut ids = Vec::new();
        let mut kept = Vec::new();
        for (j, e) in self.edges().enumerate() {
            if keep(e) {
                ids.push(j as u32);
                kept.push(e.to_vec());
            }
        }
        (Hypergraph::from_sorted(self.n, kept), ids)
    }

    /// Upper bound on the number of directed adjacency entries of the Gaifman
    /// projection, `sum |e| (|e| - 1)`.
    pub fn projection_bound(&self) -> u128 {
        self.edges().map(|e| (e.len() as u128) * (e.len() as u128).saturating_sub(1)).sum()
    }
}

/// A simple undirected graph with sorted, deduplicated adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    off: Vec<usize>,
    adj: Vec<u32>,
}

impl Graph {
    /// Builds a graph from undirected edges; loops are dropped and duplicates
    /// merged.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut lists = vec![Vec::new(); n];
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return arg(format!("graph edge ({u},{v}) out of range for {n} vertices"));
            }
            if u != v {
                lists[u as usize].push(v);
                lists[v as usize].push(u);
            }
        }
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
        }
        Ok(Self::from_lists(lists))
    }

    pub(crate) fn from_lists(lists: Vec<Vec<u32>>) -> Self {
        let mut off = Vec::with_capacity(lists.len() + 1);
        off.push(0);
        let mut adj = Vec::with_capacity(lists.iter().map(Vec::len).sum());
        for l in lists {
            adj.extend_from_slice(&l);
            off.push(adj.len());
        }
        Graph { off, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.off.len() - 1
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[self.off[v]..self.off[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.off[v + 1] - self.off[v]
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.adj.len() / 2
    }

    /// Total length of all adjacency lists.
    pub fn adjacency_len(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Undirected edges `(u, v)` with `u < v`, in ascending order.
    pub fn edge_list(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.vertex_count() {
            for &v in self.neighbors(u) {
                if (u as u32) < v {
                    out.push((u as u32, v));
                }
            }
        }
        out
    }
}

/// The Gaifman (primal) graph: `u ~ v` iff they share an edge.
pub fn gaifman(h: &Hypergraph) -> Graph {
    let n = h.vertex_count();
    let mut stamp = vec![u32::MAX; n];
    let mut lists = Vec::with_capacity(n);
    for v in 0..n {
        let mut nb = Vec::new();
        stamp[v] = v as u32;
        for &j in h.incidence(v) {
            for &u in h.edge(j as usize) {
                if stamp[u as usize] != v as u32 {
                    stamp[u as usize] = v as u32;
                    nb.push(u);
                }
            }
        }
        nb.sort_unstable();
        lists.push(nb);
    }
    Graph::from_lists(lists)
}

/// Like [`gaifman`], but refuses projections larger than `limit` entries.
pub fn gaifman_bounded(h: &Hypergraph, limit: u128) -> Result<Graph> {
    let entries = h.projection_bound();
    if entries > limit {
        return Err(Error::ProjectionTooLarge { entries, limit });
    }
    Ok(gaifman(h))
}

/// A small hypergraph on local vertices `0..order`, each edge a bitmask.
///
/// Edges are distinct, nonempty, and kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hypergraphlet {
    pub order: usize,
    pub edges: Vec<u32>,
    /// Original vertex ids, in local-index order.
    pub vertex_map: Vec<u32>,
}

impl Hypergraphlet {
    /// Builds a hypergraphlet from arbitrary masks, collapsing duplicates.
    pub fn from_masks(order: usize, masks: impl IntoIterator<Item = u32>, vertex_map: Vec<u32>) -> Result<Self> {
        if order > 32 {
            return arg("hypergraphlets are limited to 32 vertices");
        }
        let full = if order == 32 { u32::MAX } else { (1u32 << order) - 1 };
        let mut edges: Vec<u32> = masks.into_iter().collect();
        if edges.iter().any(|&m| m == 0 || m & !full != 0) {
            return arg("edge mask empty or outside the vertex range");
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Hypergraphlet { order, edges, vertex_map })
    }

    /// Gaifman adjacency as one neighbor mask per local vertex.
    pub fn adjacency_masks(&self) -> Vec<u32> {
        let mut adj = vec![0u32; self.order];
        for &e in &self.edges {
            let mut bits = e;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                adj[i] |= e;
            }
        }
        for (i, a) in adj.iter_mut().enumerate() {
            *a &= !(1u32 << i);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.order == 0 {
            return false;
        }
        let adj = self.adjacency_masks();
        let full = if self.order == 32 { u32::MAX } else { (1u32 << self.order) - 1 };
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let i = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[i] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == full
    }

    /// `order` on the first line, then one hex mask per line, ascending.
    pub fn serialize(&self) -> String {
        let mut s = self.order.to_string();
        s.push('\n');
        for e in &self.edges {
            let _ = writeln!(s, "{e:x}");
        }
        s
    }

    pub fn deserialize(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing order".into() })?;
        let order: usize = first
            .trim()
            .parse()
            .map_err(|_| Error::Parse { line: 1, msg: format!("bad order {first:?}") })?;
        let mut masks = Vec::new();
        for (i, l) in lines {
            let m = u32::from_str_radix(l.trim(), 16)
                .map_err(|_| Error::Parse { line: i + 1, msg: format!("bad mask {l:?}") })?;
            masks.push(m);
        }
        Self::from_masks(order, masks, (0..order as u32).collect())
    }
}

fn normalize_set(h: &Hypergraph, u: &[u32]) -> Result<Vec<u32>> {
    if u.is_empty() {
        return arg("vertex set is empty");
    }
    let mut s = u.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&last) = s.last() {
        if last as usize >= h.vertex_count() {
            return arg(format!("vertex {last} out of range"));
        }
    }
    if s.len() > 32 {
        return arg("vertex sets are limited to 32 vertices");
    }
    Ok(s)
}

/// Maps every edge meeting `set` (sorted) to the mask of its trace on `set`.
fn traces(h: &Hypergraph, set: &[u32]) -> HashMap<u32, u32> {
    let mut masks: HashMap<u32, u32> = HashMap::new();
    for (i, &v) in set.iter().enumerate() {
        for &j in h.incidence(v as usize) {
            *masks.entry(j).or_insert(0) |= 1 << i;
        }
    }
    masks
}

/// `H|_U`: edges truncated to `U`, duplicates collapsed, singletons kept.
pub fn induced_sub(h: &Hypergraph, u: &[u32]) -> Result<Hypergraphlet> {
    let set = normalize_set(h, u)?;
    let masks = traces(h, &set);
    Hypergraphlet::from_masks(set.len(), masks.into_values(), set)
}

/// `H<U>`: only the edges entirely contained in `U`.
pub fn section_sub(h: &Hypergraph, u: &[u32]) -> Result<Hypergraphlet> {
    let set = normalize_set(h, u)?;
    let masks = traces(h, &set);
    let inside = masks
        .into_iter()
        .filter(|&(j, m)| m.count_ones() as usize == h.edge(j as usize).len())
        .map(|(_, m)| m);
    Hypergraphlet::from_masks(set.len(), inside, set)
}

/// Whether `H|_U` is connected, i.e. whether `U` induces a connected
/// subgraph of the Gaifman graph.
pub fn is_connected_induced(h: &Hypergraph, u: &[u32]) -> Result<bool> {
    let set = normalize_set(h, u)?;
    let k = set.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut components = k;
    for (_, m) in traces(h, &set) {
        let first = m.trailing_zeros() as usize;
        let mut rest = m & (m - 1);
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let (a, b) = (find(&mut parent, first), find(&mut parent, i));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
    }
    Ok(components == 1)
}

/// Ingestion options for the edge-list text format.
#[derive(Debug, Clone, Copy)]
pub struct ParseOptions {
    pub dedupe_edges: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { dedupe_edges: true }
    }
}

/// A parsed hypergraph with the original token of every vertex.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub hypergraph: Hypergraph,
    pub labels: Vec<String>,
}

/// Parses the edge-list format.
///
/// An optional first line `# vertices <n>` fixes the vertex count. Each
/// other nonempty line is one edge of whitespace-separated vertex tokens;
/// lines starting with `%` are comments. When a header is present and every
/// token is an integer, tokens are taken as ids in `0..n`; otherwise tokens
/// are densified in first-appearance order (padding up to `n` if a header
/// asks for more vertices).
pub fn parse_hypergraph(text: &str, opts: ParseOptions) -> Result<Parsed> {
    let mut header: Option<usize> = None;
    let mut raw: Vec<(usize, Vec<&str>)> = Vec::new();
    let mut seen_content = false;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        if let Some(rest) = t.strip_prefix('#') {
            let mut words = rest.split_whitespace();
            match (words.next(), words.next(), words.next()) {
                (Some("vertices"), Some(n), None) if !seen_content && header.is_none() => {
                    let n = n
                        .parse::<usize>()
                        .map_err(|_| Error::Parse { line: lineno, msg: format!("bad vertex count {n:?}") })?;
                    header = Some(n);
                    continue;
                }
                _ => {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "only a leading `# vertices <n>` header may start with '#'".into(),
                    })
                }
            }
        }
        seen_content = true;
        let toks: Vec<&str> = t.split_whitespace().collect();
        let mut uniq = BTreeSet::new();
        for tok in &toks {
            if !uniq.insert(*tok) {
                return Err(Error::Parse { line: lineno, msg: format!("vertex {tok:?} repeated within an edge") });
            }
        }
        raw.push((lineno, toks));
    }

    let numeric = header.is_some() && raw.iter().all(|(_, ts)| ts.iter().all(|t| t.parse::<u32>().is_ok()));
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::with_capacity(raw.len());
    if numeric {
        let n = header.unwrap_or(0);
        for (lineno, ts) in &raw {
            let mut e = Vec::with_capacity(ts.len());
            for t in ts {
                let id: u32 = t.parse().unwrap_or(u32::MAX);
                if id as usize >= n {
                    return Err(Error::Parse { line: *lineno, msg: format!("vertex {id} >= declared count {n}") });
                }
                e.push(id);
            }
            edges.push(e);
        }
        labels.extend((0..n).map(|i| i.to_string()));
    } else {
        let mut ids: HashMap<&str, u32> = HashMap::new();
        for (_, ts) in &raw {
            let mut e = Vec::with_capacity(ts.len());
            for t in ts {
                let next = ids.len() as u32;
                let id = *ids.entry(t).or_insert_with(|| {
                    labels.push((*t).to_string());
                    next
                });
                e.push(id);
            }
            edges.push(e);
        }
        if let Some(n) = header {
            if n < labels.len() {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("header declares {n} vertices but {} distinct tokens appear", labels.len()),
                });
            }
            for i in labels.len()..n {
                labels.push(format!("_{i}"));
            }
        }
    }
    let n = labels.len();
    let mut h = Hypergraph::new(n, edges)?;
    if opts.dedupe_edges {
        h = h.dedupe_edges();
    }
    Ok(Parsed { hypergraph: h, labels })
}

/// Writes `h` in the edge-list format with a vertex-count header and numeric
/// ids, so that parsing the output reproduces `h` exactly.
pub fn write_edge_list(h: &Hypergraph) -> String {
    let mut s = format!("# vertices {}\n", h.vertex_count());
    for e in h.edges() {
        let mut first = true;
        for v in e {
            if !first {
                s.push(' ');
            }
            first = false;
            let _ = write!(s, "{v}");
        }
        s.push('\n');
    }
    s
}
