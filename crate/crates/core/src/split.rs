//! The alpha-split of a hypergraph and the choice of alpha.
//!
//! Edges of size `<= alpha` form the lower part, which is handled through its
//! Gaifman projection; the remaining edges form the upper part, whose maximum
//! degree is `beta`.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{arg, Result};
use crate::hypergraph::{gaifman, Graph, Hypergraph};

/// The shipped default weight of the lower-part cost.
pub const DEFAULT_GAMMA: f64 = 0.01;

/// Degrees above this make `2^d` unusable as a cost.
const CAP_DEGREE: usize = 63;

#[derive(Debug, Clone)]
pub struct AlphaSplit {
    pub alpha: usize,
    pub beta: usize,
    /// `H_{<= alpha}` on the full vertex set.
    pub lower: Hypergraph,
    /// Index in the original hypergraph of every lower edge.
    pub lower_ids: Vec<u32>,
    /// `H_{> alpha}` on the full vertex set. Its incidence lists are the
    /// sorted types `E_{> alpha}(v)`.
    pub upper: Hypergraph,
    pub upper_ids: Vec<u32>,
    /// `Gaif(H_{<= alpha})`; its adjacency lists are the sorted `N_{<= alpha}(v)`.
    pub lower_gaifman: Graph,
}

impl AlphaSplit {
    pub fn vertex_count(&self) -> usize {
        self.lower.vertex_count()
    }

    pub fn lower_neighbors(&self, v: usize) -> &[u32] {
        self.lower_gaifman.neighbors(v)
    }

    pub fn upper_type(&self, v: usize) -> &[u32] {
        self.upper.incidence(v)
    }

    pub fn lower_adjacent(&self, u: usize, v: usize) -> bool {
        self.lower_gaifman.has_edge(u, v)
    }

    /// `|E_{>alpha}(u) ∩ E_{>alpha}(v)|` by merging the sorted types.
    pub fn upper_common(&self, u: usize, v: usize) -> usize {
        sorted_intersection_len(self.upper_type(u), self.upper_type(v), usize::MAX)
    }

    /// Whether `u` and `v` share an upper edge.
    pub fn upper_adjacent(&self, u: usize, v: usize) -> bool {
        u != v && sorted_intersection_len(self.upper_type(u), self.upper_type(v), 1) > 0
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u != v && (self.lower_adjacent(u, v) || self.upper_adjacent(u, v))
    }
}

/// Size of the intersection of two ascending lists, stopping at `limit`.
pub(crate) fn sorted_intersection_len(a: &[u32], b: &[u32], limit: usize) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() && c < limit {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Partitions the edges of `h` by size and builds the lookup structures.
pub fn apply_split(h: &Hypergraph, alpha: usize) -> AlphaSplit {
    let (lower, lower_ids) = h.filter_edges(|e| e.len() <= alpha);
    let (upper, upper_ids) = h.filter_edges(|e| e.len() > alpha);
    let lower_gaifman = gaifman(&lower);
    AlphaSplit { alpha, beta: upper.max_degree(), lower, lower_ids, upper, upper_ids, lower_gaifman }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurvePoint {
    pub alpha: usize,
    pub beta: usize,
}

/// The (alpha, beta)-curve: for every candidate threshold
/// `alpha ∈ {0} ∪ {edge sizes}`, the smallest beta making `h`
/// (alpha, beta)-nice. Computed by decrementing degrees through a max-heap as
/// edges move from the upper to the lower part.
pub fn alpha_beta_curve(h: &Hypergraph) -> Vec<CurvePoint> {
    let n = h.vertex_count();
    let mut order: Vec<usize> = (0..h.edge_count()).collect();
    order.sort_by_key(|&j| h.edge(j).len());
    let mut degree: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let mut heap: BinaryHeap<(usize, u32)> = degree.iter().enumerate().map(|(v, &d)| (d, v as u32)).collect();
    let beta_now = |heap: &mut BinaryHeap<(usize, u32)>, degree: &[usize]| -> usize {
        while let Some(&(d, v)) = heap.peek() {
            if degree[v as usize] == d {
                return d;
            }
            heap.pop();
        }
        0
    };

    let mut curve = vec![CurvePoint { alpha: 0, beta: beta_now(&mut heap, &degree) }];
    let mut i = 0;
    while i < order.len() {
        let size = h.edge(order[i]).len();
        while i < order.len() && h.edge(order[i]).len() == size {
            for &v in h.edge(order[i]) {
                degree[v as usize] -= 1;
                heap.push((degree[v as usize], v));
            }
            i += 1;
        }
        curve.push(CurvePoint { alpha: size, beta: beta_now(&mut heap, &degree) });
    }
    curve
}

/// Cost estimate of a split.
///
/// `lower_cost` is `sum_{e in E_<=alpha} |e|^2` and `upper_cost` is
/// `sum_v 2^{d_>alpha(v)}`, except for [`choose_split_simple`], which reports
/// the coarse terms `alpha^2 |E|` and `2^beta |V|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitCost {
    pub lower_cost: u128,
    pub upper_cost: u128,
    pub gamma: f64,
    pub weighted: f64,
    /// Some exponent exceeded 63; `upper_cost` is saturated.
    pub capped: bool,
}

impl SplitCost {
    fn new(lower_cost: u128, upper_cost: u128, gamma: f64, capped: bool) -> Self {
        let weighted = gamma * lower_cost as f64 + (1.0 - gamma) * upper_cost as f64;
        SplitCost { lower_cost, upper_cost, gamma, weighted, capped }
    }
}

/// One row of the refined sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdCost {
    pub alpha: usize,
    pub beta: usize,
    pub cost: SplitCost,
}

fn pow2(d: usize) -> u128 {
    1u128 << d.min(CAP_DEGREE)
}

/// Picks the lowest-cost row; capped rows lose unless every row is capped,
/// ties go to the smaller alpha.
fn pick(rows: &[ThresholdCost]) -> ThresholdCost {
    let any_uncapped = rows.iter().any(|r| !r.cost.capped);
    let mut best: Option<ThresholdCost> = None;
    for r in rows {
        if any_uncapped && r.cost.capped {
            continue;
        }
        best = match best {
            None => Some(*r),
            Some(b) => {
                let better = r.cost.weighted < b.cost.weighted
                    || (r.cost.weighted == b.cost.weighted && r.alpha < b.alpha);
                Some(if better { *r } else { b })
            }
        };
    }
    best.expect("the curve always has at least one point")
}

/// Minimizes `alpha^2 |E| + 2^beta |V|` over the (alpha, beta)-curve.
pub fn choose_split_simple(h: &Hypergraph) -> (AlphaSplit, SplitCost) {
    let m = h.edge_count() as u128;
    let n = h.vertex_count() as u128;
    let rows: Vec<ThresholdCost> = alpha_beta_curve(h)
        .into_iter()
        .map(|p| {
            let capped = p.beta > CAP_DEGREE;
            let lower = (p.alpha as u128) * (p.alpha as u128) * m;
            let upper = if capped { u128::MAX } else { pow2(p.beta).saturating_mul(n) };
            ThresholdCost { alpha: p.alpha, beta: p.beta, cost: SplitCost::new(lower, upper, 0.5, capped) }
        })
        .collect();
    let best = pick(&rows);
    (apply_split(h, best.alpha), best.cost)
}

/// Evaluates `gamma * sum_{E_<=alpha} |e|^2 + (1 - gamma) * sum_v 2^{d_>alpha(v)}`
/// at every candidate threshold with a single descending sweep over
/// `(v, s, p)` incidence triples. Rows are returned by ascending alpha.
pub fn threshold_costs(h: &Hypergraph, gamma: f64) -> Result<Vec<ThresholdCost>> {
    if !(0.0..=1.0).contains(&gamma) {
        return arg("gamma must lie in [0, 1]");
    }
    let n = h.vertex_count();
    let m = h.edge_count();
    let rank = h.rank();

    // Edges in non-increasing size order (counting sort), so that filling the
    // per-vertex lists in this order sorts every I_v by non-increasing size.
    let mut by_size = vec![0usize; rank + 2];
    for e in h.edges() {
        by_size[e.len()] += 1;
    }
    let mut start = vec![0usize; rank + 2];
    let mut acc = 0;
    for s in (0..=rank).rev() {
        start[s] = acc;
        acc += by_size[s];
    }
    let mut edge_order = vec![0usize; m];
    for (j, e) in h.edges().enumerate() {
        edge_order[start[e.len()]] = j;
        start[e.len()] += 1;
    }
    let mut pos_fill = vec![0usize; n];
    // triples (v, s, p)
    let mut triples: Vec<(u32, u32, u32)> = Vec::with_capacity(h.size() - n);
    for &j in &edge_order {
        let e = h.edge(j);
        for &v in e {
            triples.push((v, e.len() as u32, pos_fill[v as usize] as u32));
            pos_fill[v as usize] += 1;
        }
    }
    // Sort by non-increasing s, then non-increasing p: counting sort by p,
    // then a stable counting sort by s.
    let max_p = h.max_degree();
    let triples = counting_sort_desc(triples, max_p, |t| t.2 as usize);
    let triples = counting_sort_desc(triples, rank, |t| t.1 as usize);

    let mut lower: u128 = h.edges().map(|e| (e.len() as u128) * (e.len() as u128)).sum();
    let mut upper: u128 = n as u128;
    let mut capped_vertices = 0usize;
    let mut degree = vec![0usize; n];
    let mut beta = 0usize;
    let mut stamp = vec![u32::MAX; n];

    let row = |alpha: usize, beta: usize, lower: u128, upper: u128, capped_vertices: usize| {
        let capped = capped_vertices > 0;
        let up = if capped { u128::MAX } else { upper };
        ThresholdCost { alpha, beta, cost: SplitCost::new(lower, up, gamma, capped) }
    };

    let mut rows = Vec::new();
    let mut i = 0;
    let mut threshold = rank;
    rows.push(row(threshold, 0, lower, upper, 0));
    if m == 0 {
        rows[0].alpha = 0;
        return Ok(rows);
    }
    while i < triples.len() {
        let s = triples[i].1 as usize;
        lower -= (by_size[s] as u128) * (s as u128) * (s as u128);
        while i < triples.len() && triples[i].1 as usize == s {
            let (v, _, p) = triples[i];
            let vi = v as usize;
            if stamp[vi] != s as u32 {
                stamp[vi] = s as u32;
                let old = degree[vi];
                let new = p as usize + 1;
                if old > CAP_DEGREE {
                    capped_vertices -= 1;
                } else {
                    upper -= pow2(old);
                }
                if new > CAP_DEGREE {
                    capped_vertices += 1;
                } else {
                    upper += pow2(new);
                }
                degree[vi] = new;
                beta = beta.max(new);
            }
            i += 1;
        }
        // every edge of size >= s is now upper: the threshold is the next
        // smaller size, or 0
        threshold = triples.get(i).map_or(0, |t| t.1 as usize);
        rows.push(row(threshold, beta, lower, upper, capped_vertices));
    }
    rows.reverse();
    Ok(rows)
}

fn counting_sort_desc<T: Copy>(items: Vec<T>, max_key: usize, key: impl Fn(&T) -> usize) -> Vec<T> {
    let mut count = vec![0usize; max_key + 2];
    for it in &items {
        count[key(it)] += 1;
    }
    let mut start = vec![0usize; max_key + 2];
    let mut acc = 0;
    for k in (0..=max_key).rev() {
        start[k] = acc;
        acc += count[k];
    }
    let mut out: Vec<Option<T>> = vec![None; items.len()];
    for it in items {
        let k = key(&it);
        out[start[k]] = Some(it);
        start[k] += 1;
    }
    out.into_iter().map(|x| x.expect("every slot is filled")).collect()
}

/// Minimizes the gamma-weighted cost over all thresholds.
pub fn choose_split_refined(h: &Hypergraph, gamma: f64) -> Result<(AlphaSplit, SplitCost)> {
    let rows = threshold_costs(h, gamma)?;
    let best = pick(&rows);
    Ok((apply_split(h, best.alpha), best.cost))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{parse_hypergraph, ParseOptions};

    const TOY: &str = "# vertices 8\na b\nb e\nd f g\na b c e g\n";

    fn toy() -> Hypergraph {
        parse_hypergraph(TOY, ParseOptions::default()).unwrap().hypergraph
    }

    fn pairs(c: &[CurvePoint]) -> Vec<(usize, usize)> {
        c.iter().map(|p| (p.alpha, p.beta)).collect()
    }

    #[test]
    fn toy_curve() {
        assert_eq!(pairs(&alpha_beta_curve(&toy())), vec![(0, 3), (2, 2), (3, 1), (5, 0)]);
        let empty = Hypergraph::new(3, vec![]).unwrap();
        assert_eq!(pairs(&alpha_beta_curve(&empty)), vec![(0, 0)]);
    }

    #[test]
    fn toy_simple_split() {
        // objective values: 0 -> 64, 2 -> 48, 3 -> 52, 5 -> 108
        let (s, cost) = choose_split_simple(&toy());
        assert_eq!((s.alpha, s.beta), (2, 2));
        assert_eq!(cost.lower_cost + cost.upper_cost, 48);
    }

    #[test]
    fn toy_refined_split() {
        let rows = threshold_costs(&toy(), 0.5).unwrap();
        let totals: Vec<(usize, usize, u128)> =
            rows.iter().map(|r| (r.alpha, r.beta, r.cost.lower_cost + r.cost.upper_cost)).collect();
        assert_eq!(totals, vec![(0, 3, 27), (2, 2, 25), (3, 1, 30), (5, 0, 50)]);
        let (s, _) = choose_split_refined(&toy(), 0.5).unwrap();
        assert_eq!((s.alpha, s.beta), (2, 2));
        let (s, _) = choose_split_refined(&toy(), 1.0).unwrap();
        assert_eq!(s.alpha, 0);
        assert!(choose_split_refined(&toy(), 1.5).is_err());
        assert!(choose_split_refined(&toy(), -0.1).is_err());
    }

    #[test]
    fn toy_split_at_four() {
        let h = toy();
        let s = apply_split(&h, 4);
        assert_eq!(s.lower_ids, vec![0, 1, 2]);
        assert_eq!(s.upper_ids, vec![3]);
        assert_eq!(s.beta, 1);
        let s = apply_split(&h, 5);
        assert_eq!((s.upper.edge_count(), s.beta), (0, 0));
        let s = apply_split(&h, 0);
        assert_eq!((s.lower.edge_count(), s.beta), (0, 3));
    }

    #[test]
    fn degenerate_inputs() {
        let single = Hypergraph::new(1, vec![]).unwrap();
        let (s, c) = choose_split_simple(&single);
        assert_eq!((s.alpha, s.beta), (0, 0));
        assert_eq!(c.upper_cost, 1);
        let (s, _) = choose_split_refined(&single, DEFAULT_GAMMA).unwrap();
        assert_eq!((s.alpha, s.beta), (0, 0));
        let graph = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let curve = alpha_beta_curve(&graph);
        assert_eq!(pairs(&curve), vec![(0, 2), (2, 0)]);
    }
}
