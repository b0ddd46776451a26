//! Command-line definitions.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{ArgAction, Args, Parser, Subcommand};
use hgcount_core::split::DEFAULT_GAMMA;

#[derive(Debug, Parser)]
#[command(name = "hgcount", version, about = "Approximate k-hypergraphlet counting by color coding")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Size, rank, degree and projection statistics as JSON.
    Stats(StatsArgs),
    /// Split cost for every threshold, as CSV.
    Curve(CurveArgs),
    /// Pick a threshold and describe the split as JSON.
    Split(SplitArgs),
    /// Color the vertices and build the counter table.
    Build(BuildArgs),
    /// Sample from a saved counter table.
    Sample(SampleArgs),
    /// Build and sample in one go, averaging over several colorings.
    Count(CountArgs),
    /// Exact counts by enumerating connected vertex sets.
    Exact(ExactArgs),
    /// Turn a graph into a k'-vertex section-connectivity instance.
    ReduceClique(ReduceArgs),
    /// Decide whether a connected k-vertex section sub-hypergraph exists.
    Ksh(KshArgs),
    /// Decide orthogonal vectors through neighbor counts.
    Ov(OvArgs),
    /// Random hypergraph generators.
    GenSynthetic(GenArgs),
    /// Time the naive and split builds over growing instances.
    Bench(BenchArgs),
}

#[derive(Debug, Args, Clone)]
pub struct InputArgs {
    /// Edge-list file: one edge per line, whitespace-separated vertices.
    pub input: PathBuf,
    /// Drop repeated edges on input.
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    pub dedupe_edges: bool,
}

/// `auto` (refined weighted cost), `simple` (unweighted cost), `naive`
/// (no split, full projection) or a fixed threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaPolicy {
    Auto,
    Simple,
    Naive,
    Fixed(usize),
}

impl FromStr for AlphaPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(AlphaPolicy::Auto),
            "simple" => Ok(AlphaPolicy::Simple),
            "naive" => Ok(AlphaPolicy::Naive),
            n => n.parse().map(AlphaPolicy::Fixed).map_err(|_| format!("expected auto, simple, naive or a number, got {n:?}")),
        }
    }
}

#[derive(Debug, Args, Clone)]
pub struct SplitChoice {
    #[arg(long, default_value = "auto")]
    pub alpha: AlphaPolicy,
    /// Weight of the lower-part cost in the `auto` objective.
    #[arg(long, default_value_t = DEFAULT_GAMMA)]
    pub gamma: f64,
}

#[derive(Debug, Args, Clone)]
pub struct BuildFlags {
    #[arg(short, long)]
    pub k: usize,
    #[command(flatten)]
    pub split: SplitChoice,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,
    /// Largest upper-part degree handled by inclusion-exclusion.
    #[arg(long, default_value_t = hgcount_core::nw::DEFAULT_DEGREE_CAP)]
    pub degree_cap: usize,
    /// Largest projection (adjacency entries) the naive build accepts.
    #[arg(long, default_value_t = 1u128 << 32)]
    pub projection_limit: u128,
}

#[derive(Debug, Args, Clone)]
pub struct SampleFlags {
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    /// Keep each sample with probability 1/sigma instead of weighting it.
    #[arg(long)]
    pub uniform: bool,
    /// Read induced edges off subset counters instead of incidence lists.
    #[arg(long)]
    pub ie_extraction: bool,
    /// CSV output (default stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON sidecar with run metadata.
    #[arg(long)]
    pub meta: Option<PathBuf>,
    /// Per-sample log: run, key, sigma, vertices.
    #[arg(long)]
    pub log: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = DEFAULT_GAMMA)]
    pub gamma: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SplitArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub split: SplitChoice,
    /// Write the lower part as an edge list.
    #[arg(long)]
    pub lower: Option<PathBuf>,
    /// Write the upper part as an edge list.
    #[arg(long)]
    pub upper: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub build: BuildFlags,
    /// Table file to write.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Table written by `build` for the same input.
    #[arg(long)]
    pub table: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,
    #[arg(long, default_value_t = hgcount_core::nw::DEFAULT_DEGREE_CAP)]
    pub degree_cap: usize,
    #[command(flatten)]
    pub sampling: SampleFlags,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub build: BuildFlags,
    #[command(flatten)]
    pub sampling: SampleFlags,
    /// Independent colorings to average over; run r uses seed + r.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub runs: u64,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(short, long)]
    pub k: usize,
    /// Also count colorful sets under the coloring `build --seed` draws.
    #[arg(long)]
    pub colorful: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub meta: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// Graph as an edge list of vertex pairs; single tokens add isolated vertices.
    pub graph: PathBuf,
    #[arg(short, long)]
    pub k: usize,
    /// Hypergraph output (default stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON sidecar; defaults to `<out>.json` when `--out` is given.
    #[arg(long)]
    pub meta: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct KshArgs {
    /// Hypergraph edge list, or a graph with `--clique`.
    pub input: PathBuf,
    #[arg(short, long)]
    pub k: usize,
    /// Treat the input as a graph, reduce it for clique size `k` and decide
    /// the reduced instance.
    #[arg(long)]
    pub clique: bool,
}

#[derive(Debug, Args)]
pub struct OvArgs {
    /// One 0/1 vector per line, digits optionally separated by spaces.
    pub input: PathBuf,
    /// Also check the k-star identity on the blown-up instance.
    #[arg(long)]
    pub star_k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub family: GenFamily,
}

#[derive(Debug, Subcommand)]
pub enum GenFamily {
    /// Edge sizes s in 2..=n with Pr[s] proportional to s^-exponent.
    PowerLaw {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        exponent: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Small edges below alpha plus large edges of bounded degree.
    Nice {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        small_edges: usize,
        #[arg(long)]
        large_edges: usize,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        beta: usize,
        #[arg(long)]
        large_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args, Clone)]
pub struct BenchArgs {
    /// Vertex counts to time.
    #[arg(long, value_delimiter = ',', default_values_t = [500usize, 1000, 2000, 4000, 8000, 16000])]
    pub sizes: Vec<usize>,
    #[arg(short, long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 4)]
    pub alpha: usize,
    #[arg(long, default_value_t = 3)]
    pub beta: usize,
    /// Large edges have n / large_divisor vertices.
    #[arg(long, default_value_t = 10)]
    pub large_divisor: usize,
    #[arg(long, default_value_t = 3)]
    pub runs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
