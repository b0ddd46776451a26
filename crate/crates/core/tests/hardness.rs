mod common;

use common::{random_hypergraph, subsets};
use hgcount_core::hardness::{check_star_identity, decide_ksh_bruteforce, decide_ksh_reduction, ov_pairwise, reduce_clique_to_ksh, solve_ov_via_nc, OvInstance, KSH_BUDGET};
use hgcount_core::split::apply_split;
use hgcount_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<(u32, u32)> = (0..n as u32).flat_map(|a| (a + 1..n as u32).map(move |b| (a, b))).collect();
    Graph::from_edges(n, edges.into_iter().filter(|_| rng.gen_bool(p))).unwrap()
}

fn has_clique(g: &Graph, k: usize) -> bool {
    subsets(g.vertex_count(), k)
        .iter()
        .any(|s| s.iter().enumerate().all(|(i, &a)| s[i + 1..].iter().all(|&b| g.has_edge(a as usize, b as usize))))
}

#[test]
fn reduction_preserves_answers() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..2000 {
        let n = rng.gen_range(1..=7);
        let p = rng.gen_range(0.2..0.9);
        let g = random_graph(&mut rng, n, p);
        let red = reduce_clique_to_ksh(&g, 3).unwrap();
        assert_eq!(red.k_prime, 4 * 3);
        assert!(red.hypergraph.rank() <= 9);
        assert_eq!(apply_split(&red.hypergraph, 9).beta, 0);
        let answer = decide_ksh_reduction(&red).unwrap();
        assert_eq!(answer.is_some(), has_clique(&g, 3));
        if let Some(w) = answer {
            assert_eq!(w.vertices.len(), red.k_prime);
        }
    }
}

#[test]
fn structured_decider_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..40 {
        let n = rng.gen_range(1..=4);
        let g = random_graph(&mut rng, n, 0.6);
        let red = reduce_clique_to_ksh(&g, 3).unwrap();
        let brute = decide_ksh_bruteforce(&red.hypergraph, red.k_prime, KSH_BUDGET).unwrap();
        let fast = decide_ksh_reduction(&red).unwrap();
        assert_eq!(brute.is_some(), fast.is_some());
        assert_eq!(fast.is_some(), has_clique(&g, 3));
    }
}

#[test]
fn ov_agrees_with_pairwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..300 {
        let n = rng.gen_range(2..40);
        let d = rng.gen_range(1..=16);
        let density = rng.gen_range(0.1..0.9);
        let vectors = (0..n).map(|_| (0..d).map(|_| rng.gen_bool(density)).collect()).collect();
        let inst = OvInstance::new(vectors).unwrap();
        let out = solve_ov_via_nc(&inst).unwrap();
        assert_eq!(out.orthogonal, ov_pairwise(&inst));
        if let Some(w) = out.witness {
            let v = &inst.vectors()[w];
            assert!(inst.vectors().iter().enumerate().any(|(j, u)| j != w && v.iter().zip(u).all(|(a, b)| !(a & b))));
        }
    }
}

#[test]
fn star_identity_on_blow_ups() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..40 {
        let n = rng.gen_range(1..12);
        let m = rng.gen_range(0..8);
        let h = random_hypergraph(&mut rng, n, m, 4);
        for k in [3, 4] {
            let check = check_star_identity(&h, k).unwrap();
            assert_eq!(check.checked, n * k);
            assert!(check.mismatches.is_empty(), "{:?}", check.mismatches);
        }
    }
}
