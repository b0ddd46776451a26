#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use hgcount_core::Hypergraph;
use rand::seq::index;
use rand::Rng;

/// `m` edges with sizes uniform in `1..=max_size` (capped at `n`),
/// duplicates removed.
pub fn random_hypergraph<R: Rng>(rng: &mut R, n: usize, m: usize, max_size: usize) -> Hypergraph {
    let edges = (0..m)
        .map(|_| {
            let s = rng.gen_range(1..=max_size.min(n));
            index::sample(rng, n, s).into_iter().map(|v| v as u32).collect()
        })
        .collect();
    Hypergraph::new(n, edges).unwrap().dedupe_edges()
}

pub fn hgcount(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgcount")).args(args).current_dir(dir).output().expect("running hgcount")
}

pub const TOY: &str = "# vertices 8\na b\nb e\nd f g\na b c e g\n";
