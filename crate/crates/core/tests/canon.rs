mod common;

use std::collections::{BTreeMap, HashMap};

use common::{random_hypergraph, subsets};
use hgcount_core::canon::{brute_spanning_trees, canonical_key, exact_colorful_counts, exact_counts, for_each_connected_set, DEFAULT_BUDGET};
use hgcount_core::hypergraph::is_connected_induced;
use hgcount_core::sampler::spanning_tree_count;
use hgcount_core::{gaifman, induced_sub, random_coloring, Error, Hypergraphlet, HypergraphletKey};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn relabel(edges: &[u32], perm: &[usize]) -> Vec<u32> {
    let mut out: Vec<u32> = edges
        .iter()
        .map(|&e| (0..perm.len()).filter(|&i| e >> i & 1 == 1).fold(0, |m, i| m | 1 << perm[i]))
        .collect();
    out.sort_unstable();
    out
}

/// Smallest sorted mask list over all relabelings.
fn oracle_form(order: usize, edges: &[u32], perms: &[Vec<usize>]) -> Vec<u32> {
    perms.iter().map(|p| relabel(edges, p)).min().unwrap_or_default()
        .into_iter()
        .chain(std::iter::once(order as u32 + 1000))
        .collect()
}

fn hg(order: usize, edges: &[u32]) -> Hypergraphlet {
    Hypergraphlet::from_masks(order, edges.iter().copied(), (0..order as u32).collect()).unwrap()
}

/// Keys and full permutation minima must induce the same partition.
fn check_partition(samples: impl Iterator<Item = (usize, Vec<u32>)>) {
    let mut by_oracle: HashMap<Vec<u32>, HypergraphletKey> = HashMap::new();
    let mut by_key: HashMap<HypergraphletKey, Vec<u32>> = HashMap::new();
    let mut perms: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for (order, edges) in samples {
        let p = perms.entry(order).or_insert_with(|| permutations(order));
        let o = oracle_form(order, &edges, p);
        let key = canonical_key(&hg(order, &edges)).unwrap();
        assert_eq!(by_oracle.entry(o.clone()).or_insert_with(|| key.clone()), &key, "{edges:?}");
        assert_eq!(by_key.entry(key).or_insert(o.clone()), &o, "{edges:?}");
    }
}

#[test]
fn keys_are_complete_up_to_four_vertices() {
    for order in 1..=4usize {
        let masks: Vec<u32> = (1..1u32 << order).collect();
        let all = (0u64..1 << masks.len()).map(move |sel| {
            let edges: Vec<u32> = (0..masks.len()).filter(|&i| sel >> i & 1 == 1).map(|i| masks[i]).collect();
            (order, edges)
        });
        check_partition(all);
    }
}

#[test]
fn keys_are_complete_on_random_hypergraphlets() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut samples = Vec::new();
    for _ in 0..3000 {
        let order = rng.gen_range(5..=6);
        let m = rng.gen_range(1..7);
        let edges: Vec<u32> = (0..m).map(|_| rng.gen_range(1..1u32 << order)).collect();
        // Add relabeled copies so equal classes actually show up.
        let mut perm: Vec<usize> = (0..order).collect();
        perm.shuffle(&mut rng);
        samples.push((order, hg(order, &edges).edges));
        samples.push((order, relabel(&hg(order, &edges).edges, &perm)));
    }
    check_partition(samples.into_iter());
}

#[test]
fn key_text_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..500 {
        let order = rng.gen_range(1..=7);
        let m = rng.gen_range(0..6);
        let edges: Vec<u32> = (0..m).map(|_| rng.gen_range(1..1u32 << order)).collect();
        let key = canonical_key(&hg(order, &edges)).unwrap();
        let text = key.to_string();
        assert_eq!(text.parse::<HypergraphletKey>().unwrap(), key);
        assert_eq!(canonical_key(&key.to_hypergraphlet()).unwrap(), key);
    }
    assert_eq!("1:".parse::<HypergraphletKey>().unwrap().order(), 1);
    assert!("3:6-5".parse::<HypergraphletKey>().is_err());
    assert!("x".parse::<HypergraphletKey>().is_err());
}

/// Counts by testing every `k`-subset and keying it by permutation minimum.
fn naive_counts(h: &hgcount_core::Hypergraph, k: usize, colorful: Option<&hgcount_core::Coloring>) -> BTreeMap<HypergraphletKey, u128> {
    let mut out = BTreeMap::new();
    for set in subsets(h.vertex_count(), k) {
        if colorful.is_some_and(|c| !c.is_colorful(&set)) || !is_connected_induced(h, &set).unwrap() {
            continue;
        }
        let sub = induced_sub(h, &set).unwrap();
        *out.entry(canonical_key(&sub).unwrap()).or_insert(0) += 1;
    }
    out
}

#[test]
fn exact_counts_match_subset_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..60 {
        let n = rng.gen_range(1..12);
        let m = rng.gen_range(0..10);
        let h = random_hypergraph(&mut rng, n, m, 5);
        for k in 1..=4.min(n) {
            assert_eq!(exact_counts(&h, k, DEFAULT_BUDGET).unwrap(), naive_counts(&h, k, None));
            let col = random_coloring(n, k, rng.gen()).unwrap();
            assert_eq!(exact_colorful_counts(&h, &col, k, DEFAULT_BUDGET).unwrap(), naive_counts(&h, k, Some(&col)));
        }
    }
}

#[test]
fn enumeration_respects_budget() {
    let h = hgcount_core::Hypergraph::new(12, vec![(0..12).collect()]).unwrap();
    let g = gaifman(&h);
    let visited = for_each_connected_set(&g, 3, None, DEFAULT_BUDGET, |_| Ok(true)).unwrap();
    assert_eq!(visited, 220);
    assert!(matches!(exact_counts(&h, 3, 100), Err(Error::Budget { .. })));
    let mut seen = 0;
    for_each_connected_set(&g, 3, None, DEFAULT_BUDGET, |_| {
        seen += 1;
        Ok(seen < 5)
    })
    .unwrap();
    assert_eq!(seen, 5);
}

/// Every labeled graph on up to six vertices, reduced to one representative
/// per isomorphism class before the brute-force count.
#[test]
fn kirchhoff_matches_brute_force() {
    for n in 1..=6usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let perms = permutations(n);
        let mut reps: HashMap<Vec<u32>, u128> = HashMap::new();
        for sel in 0u32..1 << pairs.len() {
            let mut adj = vec![0u32; n];
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if sel >> i & 1 == 1 {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                }
            }
            let edges: Vec<u32> = pairs.iter().enumerate().filter(|(i, _)| sel >> i & 1 == 1).map(|(_, &(a, b))| 1 << a | 1 << b).collect();
            let form = oracle_form(n, &edges, &perms);
            match spanning_tree_count(&adj) {
                Ok(t) => {
                    let want = *reps.entry(form).or_insert_with(|| brute_spanning_trees(&adj));
                    assert_eq!(t, want, "{adj:?}");
                }
                Err(_) => assert_eq!(brute_spanning_trees(&adj), 0),
            }
        }
    }
}
