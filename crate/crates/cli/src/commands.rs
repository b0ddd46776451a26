//! Subcommand implementations.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use hgcount_core::buildup::{build_counters, build_counters_naive, random_coloring, BuildOptions, Coloring, CounterSet};
use hgcount_core::canon::{exact_colorful_counts, exact_counts, DEFAULT_BUDGET};
use hgcount_core::hardness::{check_star_identity, decide_ksh_bruteforce, decide_ksh_reduction, reduce_clique_to_ksh, solve_ov_via_nc, OvInstance, KSH_BUDGET};
use hgcount_core::hypergraph::{gaifman_bounded, parse_hypergraph, write_edge_list, ParseOptions, Parsed};
use hgcount_core::sampler::{colorful_probability, estimate_counts, EstimateOptions, Extraction, SampleMode};
use hgcount_core::split::{apply_split, choose_split_refined, choose_split_simple, threshold_costs, AlphaSplit};
use hgcount_core::synth::{nice_family, power_law, NiceFamily};
use hgcount_core::{Error as CoreError, Estimate, Generators, Graph, Hypergraph};
use serde_json::{json, Value};

use crate::args::*;
use crate::report::{exact_rows, write_csv, Aggregate, BenchRow, CurveRow};
use crate::table::{read_header, read_table, write_table};

/// Bad invocation: reported with exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

/// Environment variable overriding the enumeration budgets.
pub const BUDGET_VAR: &str = "HM_BUDGET";

fn budget(default: u128) -> Result<u128> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| UsageError(format!("{BUDGET_VAR} must be a non-negative integer, got {v:?}")).into()),
        Err(_) => Ok(default),
    }
}

fn read_input(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| match e.kind() {
        io::ErrorKind::NotFound => UsageError(format!("input file {} not found", path.display())).into(),
        _ => anyhow::Error::new(e).context(format!("reading {}", path.display())),
    })
}

pub fn load(input: &InputArgs) -> Result<Parsed> {
    let text = read_input(&input.input)?;
    parse_hypergraph(&text, ParseOptions { dedupe_edges: input.dedupe_edges }).with_context(|| format!("parsing {}", input.input.display()))
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json(path: Option<&Path>, v: &Value) -> Result<()> {
    let mut w = sink(path)?;
    serde_json::to_writer_pretty(&mut w, v)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// The split a build runs on. `alpha` is `None` for the naive build, whose
/// sampling split keeps every edge in the lower part.
pub struct Plan {
    pub split: AlphaSplit,
    pub alpha: Option<usize>,
}

pub fn plan(h: &Hypergraph, choice: &SplitChoice) -> Result<Plan> {
    Ok(match choice.alpha {
        AlphaPolicy::Auto => {
            let (split, _) = choose_split_refined(h, choice.gamma)?;
            let alpha = Some(split.alpha);
            Plan { split, alpha }
        }
        AlphaPolicy::Simple => {
            let (split, _) = choose_split_simple(h);
            let alpha = Some(split.alpha);
            Plan { split, alpha }
        }
        AlphaPolicy::Fixed(a) => Plan { split: apply_split(h, a), alpha: Some(a) },
        AlphaPolicy::Naive => Plan { split: apply_split(h, h.rank()), alpha: None },
    })
}

fn build_options(b: &BuildFlags) -> BuildOptions {
    BuildOptions { threads: b.threads as usize, degree_cap: b.degree_cap, projection_limit: b.projection_limit }
}

pub fn build_table(h: &Hypergraph, plan: &Plan, coloring: &Coloring, opts: &BuildOptions) -> Result<CounterSet> {
    Ok(match plan.alpha {
        Some(_) => build_counters(&plan.split, coloring, opts)?,
        None => build_counters_naive(h, coloring, opts)?,
    })
}

fn check_k(k: usize) -> Result<()> {
    if !(2..=hgcount_core::canon::MAX_KEY_ORDER).contains(&k) {
        return Err(UsageError(format!("k must be in 2..={}", hgcount_core::canon::MAX_KEY_ORDER)).into());
    }
    Ok(())
}

pub fn stats(a: &StatsArgs) -> Result<u8> {
    let p = load(&a.input)?;
    let h = &p.hypergraph;
    let mut sizes = std::collections::BTreeMap::new();
    for e in h.edges() {
        *sizes.entry(e.len()).or_insert(0usize) += 1;
    }
    let gaifman_edges = gaifman_bounded(h, 1 << 32).ok().map(|g| g.edge_count());
    let v = json!({
        "vertices": h.vertex_count(),
        "edges": h.edge_count(),
        "rank": h.rank(),
        "max_degree": h.max_degree(),
        "size": h.size(),
        "isolated_vertices": (0..h.vertex_count()).filter(|&v| h.degree(v) == 0).count(),
        "projection_bound": h.projection_bound().to_string(),
        "gaifman_edges": gaifman_edges,
        "edge_sizes": sizes.iter().map(|(s, c)| json!({"size": s, "count": c})).collect::<Vec<_>>(),
    });
    write_json(None, &v)?;
    Ok(0)
}

pub fn curve(a: &CurveArgs) -> Result<u8> {
    let p = load(&a.input)?;
    let rows: Vec<CurveRow> = threshold_costs(&p.hypergraph, a.gamma)?.iter().map(CurveRow::from).collect();
    write_csv(sink(a.out.as_deref())?, &rows)?;
    Ok(0)
}

pub fn split(a: &SplitArgs) -> Result<u8> {
    let p = load(&a.input)?;
    let h = &p.hypergraph;
    if a.split.alpha == AlphaPolicy::Naive {
        return Err(UsageError("split needs a threshold; naive has none".into()).into());
    }
    let plan = plan(h, &a.split)?;
    let s = &plan.split;
    let row = threshold_costs(h, a.split.gamma)?.into_iter().find(|r| r.alpha >= s.alpha);
    if let Some(path) = &a.lower {
        std::fs::write(path, write_edge_list(&s.lower))?;
    }
    if let Some(path) = &a.upper {
        std::fs::write(path, write_edge_list(&s.upper))?;
    }
    let v = json!({
        "alpha": s.alpha,
        "beta": s.beta,
        "lower_edges": s.lower.edge_count(),
        "upper_edges": s.upper.edge_count(),
        "lower_cost": row.as_ref().map(|r| r.cost.lower_cost.to_string()),
        "upper_cost": row.as_ref().map(|r| r.cost.upper_cost.to_string()),
        "weighted": row.as_ref().map(|r| r.cost.weighted),
        "gamma": a.split.gamma,
    });
    write_json(None, &v)?;
    Ok(0)
}

pub fn build(a: &BuildArgs) -> Result<u8> {
    check_k(a.build.k)?;
    let p = load(&a.input)?;
    let h = &p.hypergraph;
    let plan = plan(h, &a.build.split)?;
    let coloring = random_coloring(h.vertex_count(), a.build.k, a.build.seed)?;
    let cs = build_table(h, &plan, &coloring, &build_options(&a.build))?;
    let mut w = BufWriter::new(File::create(&a.out).with_context(|| format!("creating {}", a.out.display()))?);
    write_table(&mut w, h, &cs)?;
    let v = json!({
        "k": cs.k(),
        "alpha": plan.alpha,
        "beta": plan.alpha.map(|_| plan.split.beta),
        "seed": a.build.seed,
        "vertices": h.vertex_count(),
        "slots": cs.slot_count(),
        "total_weight": cs.total().to_string(),
        "table": a.out,
    });
    write_json(None, &v)?;
    Ok(0)
}

fn sampling_options(f: &SampleFlags, seed: u64, threads: u64) -> EstimateOptions {
    EstimateOptions {
        samples: f.samples,
        seed,
        threads: threads as usize,
        mode: if f.uniform { SampleMode::Uniform } else { SampleMode::Weighted },
        extraction: if f.ie_extraction { Extraction::InclusionExclusion } else { Extraction::Incidence },
        keep_log: f.log.is_some(),
    }
}

/// Samples once; `Ok(None)` when the coloring has no colorful occurrence.
fn sample_once(cs: &CounterSet, split: &AlphaSplit, opts: &EstimateOptions) -> Result<Option<Estimate>> {
    match Generators::new(cs, split) {
        Ok(gen) => Ok(Some(estimate_counts(&gen, opts)?)),
        Err(CoreError::NoColorfulOccurrences) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

struct Log {
    out: csv::Writer<Box<dyn Write>>,
}

impl Log {
    fn open(path: Option<&PathBuf>) -> Result<Option<Log>> {
        let Some(path) = path else { return Ok(None) };
        let mut out = csv::Writer::from_writer(sink(Some(path))?);
        out.write_record(["run", "key", "sigma", "vertices"])?;
        Ok(Some(Log { out }))
    }

    fn add(&mut self, run: u64, est: &Estimate, labels: &[String]) -> Result<()> {
        for r in &est.log {
            let vs: Vec<&str> = r.vertices.iter().map(|&v| labels[v as usize].as_str()).collect();
            self.out.write_record([run.to_string(), r.key.to_string(), r.sigma.to_string(), vs.join(" ")])?;
        }
        Ok(())
    }
}

fn run_meta(est: Option<&Estimate>, seed: u64) -> Value {
    match est {
        Some(e) => json!({"seed": seed, "total_weight": e.total_weight.to_string(), "draws": e.draws, "kept": e.tallies.values().map(|t| t.samples).sum::<u64>()}),
        None => json!({"seed": seed, "total_weight": "0", "draws": 0, "kept": 0}),
    }
}

pub fn sample(a: &SampleArgs) -> Result<u8> {
    let p = load(&a.input)?;
    let h = &p.hypergraph;
    let mut r = BufReader::new(File::open(&a.table).map_err(|_| UsageError(format!("table file {} not found", a.table.display())))?);
    let header = read_header(&mut r)?;
    let split = apply_split(h, header.alpha.unwrap_or(h.rank()));
    let opts = BuildOptions { threads: a.threads as usize, degree_cap: a.degree_cap, ..BuildOptions::default() };
    let cs = read_table(r, h, &split, &header, &opts)?;
    let eo = sampling_options(&a.sampling, a.seed, a.threads);
    let est = sample_once(&cs, &split, &eo)?;
    let mut agg = Aggregate::new(cs.k());
    agg.add(est.as_ref());
    if let (Some(mut log), Some(e)) = (Log::open(a.sampling.log.as_ref())?, est.as_ref()) {
        log.add(0, e, &p.labels)?;
    }
    write_csv(sink(a.sampling.out.as_deref())?, &agg.rows())?;
    if let Some(m) = &a.sampling.meta {
        let v = json!({
            "k": cs.k(),
            "alpha": header.alpha,
            "table_seed": header.seed,
            "samples": a.sampling.samples,
            "uniform": a.sampling.uniform,
            "ie_extraction": a.sampling.ie_extraction,
            "threads": a.threads,
            "colorful_probability": colorful_probability(cs.k()),
            "runs": [run_meta(est.as_ref(), a.seed)],
        });
        write_json(Some(m), &v)?;
    }
    Ok(0)
}

pub fn count(a: &CountArgs) -> Result<u8> {
    check_k(a.build.k)?;
    let p = load(&a.input)?;
    let h = &p.hypergraph;
    let k = a.build.k;
    let plan = plan(h, &a.build.split)?;
    let bo = build_options(&a.build);
    let mut agg = Aggregate::new(k);
    let mut log = Log::open(a.sampling.log.as_ref())?;
    let mut runs = Vec::new();
    for r in 0..a.runs {
        let seed = a.build.seed.wrapping_add(r);
        let coloring = random_coloring(h.vertex_count(), k, seed)?;
        let cs = build_table(h, &plan, &coloring, &bo)?;
        let est = sample_once(&cs, &plan.split, &sampling_options(&a.sampling, seed, a.build.threads))?;
        agg.add(est.as_ref());
        if let (Some(l), Some(e)) = (log.as_mut(), est.as_ref()) {
            l.add(r, e, &p.labels)?;
        }
        runs.push(run_meta(est.as_ref(), seed));
    }
    if let Some(l) = log.as_mut() {
        l.out.flush()?;
    }
    write_csv(sink(a.sampling.out.as_deref())?, &agg.rows())?;
    if let Some(m) = &a.sampling.meta {
        let v = json!({
            "k": k,
            "alpha": plan.alpha,
            "beta": plan.alpha.map(|_| plan.split.beta),
            "samples": a.sampling.samples,
            "uniform": a.sampling.uniform,
            "ie_extraction": a.sampling.ie_extraction,
            "threads": a.build.threads,
            "colorful_probability": colorful_probability(k),
            "runs": runs,
        });
        write_json(Some(m), &v)?;
    }
    Ok(0)
}

pub fn exact(a: &ExactArgs) -> Result<u8> {
    check_k(a.k)?;
    let p = load(&a.input)?;
    let h = &p.hypergraph;
    let b = budget(DEFAULT_BUDGET)?;
    let counts = exact_counts(h, a.k, b)?;
    let colorful = if a.colorful {
        let coloring = random_coloring(h.vertex_count(), a.k, a.seed)?;
        Some(exact_colorful_counts(h, &coloring, a.k, b)?)
    } else {
        None
    };
    write_csv(sink(a.out.as_deref())?, &exact_rows(a.k, &counts, colorful.as_ref()))?;
    if let Some(m) = &a.meta {
        let v = json!({
            "k": a.k,
            "types": counts.len(),
            "total": counts.values().sum::<u128>().to_string(),
            "colorful_seed": a.colorful.then_some(a.seed),
            "colorful_total": colorful.map(|c| c.values().sum::<u128>().to_string()),
        });
        write_json(Some(m), &v)?;
    }
    Ok(0)
}

/// Reads a graph: lines of two vertex tokens are edges, single tokens
/// declare vertices.
pub fn load_graph(path: &Path) -> Result<(Graph, Vec<String>)> {
    let text = read_input(path)?;
    let p = parse_hypergraph(&text, ParseOptions::default()).with_context(|| format!("parsing {}", path.display()))?;
    let h = &p.hypergraph;
    if let Some(e) = h.edges().find(|e| e.len() > 2) {
        bail!("graph line with {} vertices; expected pairs", e.len());
    }
    let g = Graph::from_edges(h.vertex_count(), h.edges().filter(|e| e.len() == 2).map(|e| (e[0], e[1])))?;
    Ok((g, p.labels))
}

pub fn reduce_clique(a: &ReduceArgs) -> Result<u8> {
    let (g, labels) = load_graph(&a.graph)?;
    let red = reduce_clique_to_ksh(&g, a.k)?;
    let mut w = sink(a.out.as_deref())?;
    w.write_all(write_edge_list(&red.hypergraph).as_bytes())?;
    w.flush()?;
    let meta = a.meta.clone().or_else(|| a.out.as_ref().map(|o| PathBuf::from(format!("{}.json", o.display()))));
    if let Some(m) = meta {
        let blocks: serde_json::Map<String, Value> = red.blocks.iter().enumerate().map(|(v, b)| (labels[v].clone(), json!(b))).collect();
        let edges: Vec<Value> = red
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| json!({"u": labels[e.u as usize], "v": labels[e.v as usize], "singleton": e.vertex, "edge": i}))
            .collect();
        let v = json!({
            "k": red.k,
            "k_prime": red.k_prime,
            "vertices": red.hypergraph.vertex_count(),
            "edges": red.hypergraph.edge_count(),
            "block_map": blocks,
            "edge_map": edges,
        });
        write_json(Some(&m), &v)?;
    }
    Ok(0)
}

pub fn ksh(a: &KshArgs) -> Result<u8> {
    let v = if a.clique {
        let (g, labels) = load_graph(&a.input)?;
        let red = reduce_clique_to_ksh(&g, a.k)?;
        let w = decide_ksh_reduction(&red)?;
        json!({
            "answer": w.is_some(),
            "k": a.k,
            "k_prime": red.k_prime,
            "blocks": w.as_ref().map(|w| w.blocks.iter().map(|&v| labels[v as usize].clone()).collect::<Vec<_>>()),
            "singletons": w.as_ref().map(|w| w.edges.iter().map(|&i| red.edges[i].vertex).collect::<Vec<_>>()),
            "witness": w.as_ref().map(|w| w.vertices.clone()),
        })
    } else {
        let p = load(&InputArgs { input: a.input.clone(), dedupe_edges: true })?;
        let w = decide_ksh_bruteforce(&p.hypergraph, a.k, budget(KSH_BUDGET)?)?;
        json!({
            "answer": w.is_some(),
            "k": a.k,
            "witness": w.map(|w| w.iter().map(|&v| p.labels[v as usize].clone()).collect::<Vec<_>>()),
        })
    };
    write_json(None, &v)?;
    Ok(if v["answer"] == json!(true) { 0 } else { 1 })
}

/// Parses one 0/1 vector per nonempty line.
pub fn parse_vectors(text: &str) -> Result<Vec<Vec<bool>>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') || t.starts_with('#') {
            continue;
        }
        let v = t
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => bail!("line {}: expected 0 or 1, got {c:?}", i + 1),
            })
            .collect::<Result<Vec<bool>>>()?;
        out.push(v);
    }
    Ok(out)
}

pub fn ov(a: &OvArgs) -> Result<u8> {
    let inst = OvInstance::new(parse_vectors(&read_input(&a.input)?)?)?;
    let out = solve_ov_via_nc(&inst)?;
    let mut v = json!({
        "orthogonal": out.orthogonal,
        "witness": out.witness,
        "vectors": inst.vectors().len(),
        "dimension": inst.dim(),
        "min_neighbor_count": out.neighbor_counts.iter().min().map(|c| c.to_string()),
    });
    if let Some(k) = a.star_k {
        let check = check_star_identity(&out.hypergraph, k)?;
        v["star_identity"] = json!({"k": k, "checked": check.checked, "mismatches": check.mismatches.len()});
    }
    write_json(None, &v)?;
    Ok(if out.orthogonal { 0 } else { 1 })
}

pub fn gen_synthetic(a: &GenArgs) -> Result<u8> {
    let (h, out) = match &a.family {
        GenFamily::PowerLaw { n, m, exponent, seed, out } => (power_law(*n, *m, *exponent, *seed)?, out),
        GenFamily::Nice { n, small_edges, large_edges, alpha, beta, large_size, seed, out } => {
            let p = NiceFamily { n: *n, small_edges: *small_edges, large_edges: *large_edges, alpha: *alpha, beta: *beta, large_size: *large_size };
            (nice_family(&p, *seed)?, out)
        }
    };
    let mut w = sink(out.as_deref())?;
    w.write_all(write_edge_list(&h).as_bytes())?;
    w.flush()?;
    Ok(0)
}

/// The instance `bench` times at size `n`: `n` small edges plus large edges
/// of `n / large_divisor` vertices, enough to give most vertices `beta`
/// large edges.
pub fn bench_family(a: &BenchArgs, n: usize) -> NiceFamily {
    let large_size = (n / a.large_divisor.max(1)).max(a.alpha + 1).min(n);
    NiceFamily { n, small_edges: n, large_edges: a.beta * n / (2 * large_size), alpha: a.alpha, beta: a.beta, large_size }
}

pub fn bench_rows(a: &BenchArgs) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n in &a.sizes {
        let p = bench_family(a, n);
        let (mut naive, mut split_time) = (0.0, 0.0);
        let mut last = None;
        for r in 0..a.runs.max(1) {
            let seed = a.seed.wrapping_add(r as u64);
            let h = nice_family(&p, seed)?;
            let coloring = random_coloring(n, a.k, seed)?;
            let opts = BuildOptions { threads: a.threads, ..BuildOptions::default() };
            let t = Instant::now();
            let cs_naive = build_counters_naive(&h, &coloring, &opts)?;
            naive += t.elapsed().as_secs_f64();
            let t = Instant::now();
            let s = apply_split(&h, p.alpha);
            let cs = build_counters(&s, &coloring, &opts)?;
            split_time += t.elapsed().as_secs_f64();
            if cs.raw_counts() != cs_naive.raw_counts() {
                bail!("naive and split tables differ at n = {n}");
            }
            let g = gaifman_bounded(&h, 1 << 34)?;
            last = Some((h.edge_count(), s.beta, g.edge_count()));
        }
        let (m, beta, gaifman_edges) = last.unwrap_or_default();
        let runs = a.runs.max(1) as f64;
        rows.push(BenchRow { n, m, alpha: p.alpha, beta, gaifman_edges, naive_seconds: naive / runs, split_seconds: split_time / runs });
    }
    Ok(rows)
}

pub fn bench(a: &BenchArgs) -> Result<u8> {
    let rows = bench_rows(a)?;
    write_csv(sink(a.out.as_deref())?, &rows)?;
    Ok(0)
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.max(1e-12).ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

pub fn run(cli: Cli) -> Result<u8> {
    match &cli.command {
        Command::Stats(a) => stats(a),
        Command::Curve(a) => curve(a),
        Command::Split(a) => split(a),
        Command::Build(a) => build(a),
        Command::Sample(a) => sample(a),
        Command::Count(a) => count(a),
        Command::Exact(a) => exact(a),
        Command::ReduceClique(a) => reduce_clique(a),
        Command::Ksh(a) => ksh(a),
        Command::Ov(a) => ov(a),
        Command::GenSynthetic(a) => gen_synthetic(a),
        Command::Bench(a) => bench(a),
    }
}
