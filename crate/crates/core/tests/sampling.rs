mod common;

use std::collections::BTreeMap;

use common::random_hypergraph;
use hgcount_core::alias::AliasTable;
use hgcount_core::buildup::{build_counters, random_coloring, BuildOptions, Coloring};
use hgcount_core::canon::{brute_spanning_trees, exact_colorful_counts, for_each_connected_set, DEFAULT_BUDGET};
use hgcount_core::sampler::{estimate_counts, EstimateOptions, Extraction, IeExtractor, SampleMode, Sampler, extract_hypergraphlet};
use hgcount_core::split::{alpha_beta_curve, apply_split};
use hgcount_core::{gaifman, induced_sub, Generators, Hypergraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `|observed - n p| <= 4 sqrt(n p (1 - p))`.
fn within_four_sigma(observed: u64, n: u64, p: f64) -> bool {
    let mean = n as f64 * p;
    let sd = (n as f64 * p * (1.0 - p)).sqrt();
    (observed as f64 - mean).abs() <= 4.0 * sd.max(1e-9)
}

/// Colorful connected `k`-sets with their spanning-tree counts.
fn colorful_sets(h: &Hypergraph, col: &Coloring, k: usize) -> BTreeMap<Vec<u32>, u128> {
    let g = gaifman(h);
    let mut out = BTreeMap::new();
    for_each_connected_set(&g, k, Some(col), DEFAULT_BUDGET, |set| {
        let adj: Vec<u32> = set
            .iter()
            .map(|&a| (0..set.len()).filter(|&j| g.has_edge(a as usize, set[j] as usize)).fold(0, |m, j| m | 1 << j))
            .collect();
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        out.insert(sorted, brute_spanning_trees(&adj));
        Ok(true)
    })
    .unwrap();
    out
}

#[test]
fn alias_frequencies() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..5 {
        let len = rng.gen_range(1..12);
        let w: Vec<u128> = (0..len).map(|_| rng.gen_range(0..50u128)).collect();
        let Some(table) = AliasTable::new(&w).unwrap() else { continue };
        let total: u128 = w.iter().sum();
        assert_eq!(table.total(), total);
        let n = 100_000u64;
        let mut hits = vec![0u64; len];
        for _ in 0..n {
            hits[table.sample(&mut rng)] += 1;
        }
        for i in 0..len {
            if w[i] == 0 {
                assert_eq!(hits[i], 0);
            }
            assert!(within_four_sigma(hits[i], n, w[i] as f64 / total as f64), "{w:?} {hits:?}");
        }
    }
}

#[test]
fn two_components_follow_sigma_law() {
    // Triangle {0,1,2} has 3 spanning trees, path 3-4-5 has one.
    let h = Hypergraph::new(6, vec![vec![0, 1, 2], vec![3, 4], vec![4, 5]]).unwrap();
    let col = Coloring::new(3, vec![0, 1, 2, 0, 1, 2]).unwrap();
    for alpha in [0, 2, 3] {
        let split = apply_split(&h, alpha);
        let cs = build_counters(&split, &col, &BuildOptions::default()).unwrap();
        let gen = Generators::new(&cs, &split).unwrap();
        assert_eq!(gen.total(), 3 * 4);
        let mut sampler = Sampler::new(&gen);
        let mut rng = ChaCha8Rng::seed_from_u64(alpha as u64);
        let n = 40_000;
        let tri = (0..n).filter(|_| sampler.sample_treelet(&mut rng).unwrap().vertices == [0, 1, 2]).count() as u64;
        assert!(within_four_sigma(tri, n, 0.75), "alpha {alpha}: {tri}");
        let est = estimate_counts(&gen, &EstimateOptions { samples: 40_000, seed: 3, threads: 1, mode: SampleMode::Uniform, ..Default::default() }).unwrap();
        let kept: Vec<u64> = est.tallies.values().map(|t| t.samples).collect();
        assert_eq!(kept.len(), 2);
        let all = kept[0] + kept[1];
        assert!(within_four_sigma(kept[0], all, 0.5), "{kept:?}");
    }
}

#[test]
fn random_instances_follow_sigma_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    while checked < 12 {
        let n = rng.gen_range(4..9);
        let m = rng.gen_range(1..6);
        let h = random_hypergraph(&mut rng, n, m, 5);
        let k = rng.gen_range(3..=4);
        let col = random_coloring(n, k, rng.gen()).unwrap();
        let sets = colorful_sets(&h, &col, k);
        if !(2..=4).contains(&sets.len()) {
            continue;
        }
        checked += 1;
        let sigma_total: u128 = sets.values().sum();
        for p in alpha_beta_curve(&h) {
            let split = apply_split(&h, p.alpha);
            let cs = build_counters(&split, &col, &BuildOptions::default()).unwrap();
            let gen = Generators::new(&cs, &split).unwrap();
            assert_eq!(gen.total(), k as u128 * sigma_total);
            let mut sampler = Sampler::new(&gen);
            let draws = 20_000u64;
            let mut hits: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
            for _ in 0..draws {
                *hits.entry(sampler.sample_treelet(&mut rng).unwrap().vertices).or_default() += 1;
            }
            for (set, &sigma) in &sets {
                let got = hits.remove(set).unwrap_or(0);
                assert!(within_four_sigma(got, draws, sigma as f64 / sigma_total as f64), "{set:?}: {got}");
            }
            assert!(hits.is_empty(), "sampled a set outside the support: {hits:?}");
        }
    }
}

#[test]
fn sampled_trees_are_colorful_and_spanning() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let h = random_hypergraph(&mut rng, 40, 40, 6);
    let g = gaifman(&h);
    for k in 2..=5 {
        let col = random_coloring(40, k, 9).unwrap();
        let split = apply_split(&h, 3);
        let cs = build_counters(&split, &col, &BuildOptions::default()).unwrap();
        let Ok(gen) = Generators::new(&cs, &split) else { continue };
        let mut sampler = Sampler::new(&gen);
        for _ in 0..500 {
            let s = sampler.sample_treelet(&mut rng).unwrap();
            assert_eq!(s.vertices.len(), k);
            assert!(col.is_colorful(&s.vertices));
            assert_eq!(s.tree_edges.len(), k - 1);
            for &(a, b) in &s.tree_edges {
                assert!(g.has_edge(a as usize, b as usize));
            }
        }
    }
}

#[test]
fn extraction_variants_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let n = rng.gen_range(3..20);
        let m = rng.gen_range(1..15);
        let h = random_hypergraph(&mut rng, n, m, 7);
        let g = gaifman(&h);
        let k = rng.gen_range(2..=4);
        for p in alpha_beta_curve(&h) {
            let split = apply_split(&h, p.alpha);
            let ie = IeExtractor::new(&split, k).unwrap();
            for_each_connected_set(&g, k, None, DEFAULT_BUDGET, |set| {
                let mut set = set.to_vec();
                set.sort_unstable();
                let direct = induced_sub(&h, &set).unwrap();
                assert_eq!(extract_hypergraphlet(&split, &set).unwrap(), direct);
                assert_eq!(ie.extract(&split, &set).unwrap(), direct);
                Ok(true)
            })
            .unwrap();
        }
    }
}

#[test]
fn estimates_are_unbiased() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let h = random_hypergraph(&mut rng, 14, 10, 5);
    let col = random_coloring(14, 3, 8).unwrap();
    let exact = exact_colorful_counts(&h, &col, 3, DEFAULT_BUDGET).unwrap();
    let split = apply_split(&h, 2);
    let cs = build_counters(&split, &col, &BuildOptions::default()).unwrap();
    let gen = Generators::new(&cs, &split).unwrap();
    let runs = 150;
    for mode in [SampleMode::Weighted, SampleMode::Uniform] {
        let mut values: BTreeMap<_, Vec<f64>> = exact.keys().map(|k| (k.clone(), Vec::new())).collect();
        for r in 0..runs {
            let est = estimate_counts(&gen, &EstimateOptions { samples: 300, seed: r, threads: 1, mode, ..Default::default() }).unwrap();
            for key in est.tallies.keys() {
                assert!(exact.contains_key(key), "sampled a type with no colorful occurrence");
            }
            for (key, v) in values.iter_mut() {
                v.push(est.colorful_estimate(key));
            }
        }
        for (key, v) in &values {
            let mean = v.iter().sum::<f64>() / runs as f64;
            let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (runs - 1) as f64;
            let se = (var / runs as f64).sqrt();
            let want = exact[key] as f64;
            assert!((mean - want).abs() <= 3.0 * se.max(1e-9), "{mode:?} {key}: mean {mean} exact {want} se {se}");
        }
    }
}

#[test]
fn estimates_depend_only_on_seed_and_threads() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let h = random_hypergraph(&mut rng, 60, 50, 6);
    let col = random_coloring(60, 4, 1).unwrap();
    let split = apply_split(&h, 3);
    let cs = build_counters(&split, &col, &BuildOptions::default()).unwrap();
    let gen = Generators::new(&cs, &split).unwrap();
    for threads in [1, 3] {
        for extraction in [Extraction::Incidence, Extraction::InclusionExclusion] {
            let opts = EstimateOptions { samples: 2_000, seed: 11, threads, extraction, keep_log: true, ..Default::default() };
            let a = estimate_counts(&gen, &opts).unwrap();
            let b = estimate_counts(&gen, &opts).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.draws, 2_000);
            assert_eq!(a.log.len(), 2_000);
        }
    }
}
