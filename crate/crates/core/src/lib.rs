//! Approximate counting of k-hypergraphlets (connected induced
//! sub-hypergraphs on k vertices) by color coding.
//!
//! The build-up never materializes the Gaifman projection of the large
//! edges: edges are split by size, small edges are projected, and the
//! large ones are handled by inclusion-exclusion over vertex types.
//!
//! Needs only `alloc`; the `std` feature (default) adds `std::error::Error`
//! impls and the `parallel` feature enables rayon worker pools.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod alias;
pub mod buildup;
pub mod canon;
pub mod error;
pub mod hardness;
pub mod hypergraph;
pub mod nw;
mod pool;
pub mod sampler;
pub mod split;
pub mod synth;
pub mod treelet;

pub use buildup::{build_counters, build_counters_naive, random_coloring, BuildOptions, Coloring, CounterSet};
pub use canon::{canonical_key, exact_colorful_counts, exact_counts, HypergraphletKey};
pub use error::{Error, Result};
pub use hypergraph::{gaifman, induced_sub, parse_hypergraph, section_sub, Graph, Hypergraph, Hypergraphlet};
pub use sampler::{estimate_counts, Estimate, EstimateOptions, Generators, SampleMode};
pub use split::{alpha_beta_curve, apply_split, choose_split_refined, choose_split_simple, AlphaSplit, SplitCost};
pub use treelet::TreeletCatalog;
