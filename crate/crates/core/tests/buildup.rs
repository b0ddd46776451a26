mod common;

use common::{pairwise_projection, random_hypergraph};
use hgcount_core::buildup::{build_counters, build_counters_naive, random_coloring, BuildOptions, Coloring, CounterSet};
use hgcount_core::canon::{brute_rooted_colorful_treelets, brute_spanning_trees, for_each_connected_set};
use hgcount_core::nw::{combined_neighbor_weight, nw_ie, nw_naive};
use hgcount_core::split::{alpha_beta_curve, apply_split};
use hgcount_core::{gaifman, Hypergraph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn same_tables(a: &CounterSet, b: &CounterSet) -> bool {
    a.raw_counts() == b.raw_counts() && a.total() == b.total()
}

#[test]
fn split_build_equals_naive_build() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..30 {
        let n = rng.gen_range(2..25);
        let m = rng.gen_range(0..20);
        let h = random_hypergraph(&mut rng, n, m, 7);
        for k in 2..=4 {
            let col = random_coloring(n, k, rng.gen()).unwrap();
            let naive = build_counters_naive(&h, &col, &BuildOptions::default()).unwrap();
            for p in alpha_beta_curve(&h) {
                let cs = build_counters(&apply_split(&h, p.alpha), &col, &BuildOptions::default()).unwrap();
                assert!(same_tables(&cs, &naive), "alpha {} k {k}", p.alpha);
            }
        }
    }
}

#[test]
fn counters_match_brute_force_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..40 {
        let n = rng.gen_range(2..=8);
        let m = rng.gen_range(0..6);
        let h = random_hypergraph(&mut rng, n, m, 4);
        for k in 2..=4 {
            let col = random_coloring(n, k, rng.gen()).unwrap();
            let cs = build_counters(&apply_split(&h, 2), &col, &BuildOptions::default()).unwrap();
            let full = cs.full_mask();
            for t in cs.catalog().of_order(k) {
                let code = &cs.catalog().get(t).code;
                for v in 0..n {
                    let brute = brute_rooted_colorful_treelets(&h, &col, code, full, v).unwrap();
                    assert_eq!(cs.count(t, full, v), brute, "{code} at {v}");
                }
            }
        }
    }
}

/// `W` equals `k` times the number of spanning trees summed over colorful
/// connected `k`-sets: each spanning tree is one rooted copy per root.
#[test]
fn root_weight_counts_spanning_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..30 {
        let n = rng.gen_range(3..=10);
        let m = rng.gen_range(1..8);
        let h = random_hypergraph(&mut rng, n, m, 5);
        let g = gaifman(&h);
        for k in 2..=5 {
            let col = random_coloring(n, k, rng.gen()).unwrap();
            let cs = build_counters_naive(&h, &col, &BuildOptions::default()).unwrap();
            let mut sum = 0u128;
            for_each_connected_set(&g, k, Some(&col), u128::MAX, |set| {
                let adj: Vec<u32> = set
                    .iter()
                    .map(|&a| (0..set.len()).filter(|&j| g.has_edge(a as usize, set[j] as usize)).fold(0, |m, j| m | 1 << j))
                    .collect();
                sum += brute_spanning_trees(&adj);
                Ok(true)
            })
            .unwrap();
            assert_eq!(cs.total(), k as u128 * sum);
        }
    }
}

#[test]
fn tables_do_not_depend_on_thread_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let h = random_hypergraph(&mut rng, 300, 400, 9);
    let col = random_coloring(300, 4, 3).unwrap();
    let split = apply_split(&h, 4);
    let one = build_counters(&split, &col, &BuildOptions::default()).unwrap();
    for threads in [2, 3, 8] {
        let many = build_counters(&split, &col, &BuildOptions { threads, ..BuildOptions::default() }).unwrap();
        assert!(same_tables(&one, &many));
    }
}

#[test]
fn color_frequencies_are_uniform() {
    let n = 100_000;
    for k in [2usize, 3, 5] {
        let col = random_coloring(n, k, 77).unwrap();
        let p = 1.0 / k as f64;
        let sd = (n as f64 * p * (1.0 - p)).sqrt();
        for c in 0..k {
            let count = col.colors().iter().filter(|&&x| x as usize == c).count() as f64;
            assert!((count - n as f64 * p).abs() <= 3.0 * sd, "color {c}: {count}");
        }
    }
}

#[test]
fn edgeless_and_monochrome() {
    let h = Hypergraph::new(5, vec![]).unwrap();
    let col = random_coloring(5, 3, 1).unwrap();
    let cs = build_counters_naive(&h, &col, &BuildOptions::default()).unwrap();
    assert_eq!(cs.total(), 0);
    let h = Hypergraph::new(4, vec![vec![0, 1, 2, 3]]).unwrap();
    let col = Coloring::new(3, vec![2; 4]).unwrap();
    let cs = build_counters(&apply_split(&h, 2), &col, &BuildOptions::default()).unwrap();
    for t in cs.catalog().of_order(2).chain(cs.catalog().of_order(3)) {
        let order = cs.catalog().get(t).order;
        for &s in cs.color_sets().of_size(order) {
            assert!(cs.counts_of(t, s).iter().all(|&c| c == 0));
        }
    }
}

proptest! {
    #[test]
    fn inclusion_exclusion_equals_projection(seed in any::<u64>(), n in 1usize..60, m in 0usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hypergraph(&mut rng, n, m, 10);
        prop_assume!(h.max_degree() <= 12);
        let w: Vec<u128> = (0..n).map(|_| rng.gen_range(0..1000u128)).collect();
        let g = gaifman(&h);
        prop_assert_eq!(nw_ie(&h, &w, 20).unwrap(), nw_naive(&g, &w).unwrap());
        let adj = pairwise_projection(&h);
        let direct: Vec<u128> = adj.iter().map(|l| l.iter().map(|&u| w[u as usize]).sum()).collect();
        for p in alpha_beta_curve(&h) {
            let nw = combined_neighbor_weight(&apply_split(&h, p.alpha), &w).unwrap();
            prop_assert_eq!(&nw.eta, &direct);
        }
    }
}
