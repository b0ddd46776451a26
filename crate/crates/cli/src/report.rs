//! CSV rows and JSON sidecars.

use std::collections::BTreeMap;
use std::io::Write;

use anyhow::Result;
use hgcount_core::sampler::colorful_probability;
use hgcount_core::split::ThresholdCost;
use hgcount_core::{Estimate, HypergraphletKey};
use serde::{Deserialize, Serialize};

/// One line of the estimate CSV written by `count`, `sample` and `exact`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRow {
    pub key: String,
    pub samples: u64,
    pub inv_sigma_sum: f64,
    pub colorful_estimate: f64,
    pub relative_frequency: f64,
    pub total_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub alpha: usize,
    pub beta: usize,
    pub lower_cost: u128,
    pub upper_cost: u128,
    pub weighted: f64,
}

impl From<&ThresholdCost> for CurveRow {
    fn from(t: &ThresholdCost) -> Self {
        CurveRow { alpha: t.alpha, beta: t.beta, lower_cost: t.cost.lower_cost, upper_cost: t.cost.upper_cost, weighted: t.cost.weighted }
    }
}

/// Size-versus-time line written by `bench`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub alpha: usize,
    pub beta: usize,
    pub gaifman_edges: usize,
    pub naive_seconds: f64,
    pub split_seconds: f64,
}

/// Column names, written even when there are no rows.
pub trait CsvRow: Serialize {
    const HEADER: &'static [&'static str];
}

impl CsvRow for EstimateRow {
    const HEADER: &'static [&'static str] = &["key", "samples", "inv_sigma_sum", "colorful_estimate", "relative_frequency", "total_estimate"];
}

impl CsvRow for CurveRow {
    const HEADER: &'static [&'static str] = &["alpha", "beta", "lower_cost", "upper_cost", "weighted"];
}

impl CsvRow for BenchRow {
    const HEADER: &'static [&'static str] = &["n", "m", "alpha", "beta", "gaifman_edges", "naive_seconds", "split_seconds"];
}

pub fn write_csv<W: Write, T: CsvRow>(w: W, rows: &[T]) -> Result<()> {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    out.write_record(T::HEADER)?;
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_csv<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    Ok(r.deserialize().collect::<std::result::Result<_, _>>()?)
}

/// Per-type accumulation over several independent colorings.
#[derive(Debug, Clone, Default)]
pub struct Aggregate {
    pub runs: usize,
    per_key: BTreeMap<HypergraphletKey, (u64, f64, f64)>,
    k: usize,
}

impl Aggregate {
    pub fn new(k: usize) -> Self {
        Aggregate { runs: 0, per_key: BTreeMap::new(), k }
    }

    /// Adds one run; `None` is a coloring without colorful occurrences.
    pub fn add(&mut self, est: Option<&Estimate>) {
        self.runs += 1;
        let Some(est) = est else { return };
        for (key, t) in &est.tallies {
            let e = self.per_key.entry(key.clone()).or_insert((0, 0.0, 0.0));
            e.0 += t.samples;
            e.1 += t.inv_sigma_sum();
            e.2 += est.colorful_estimate(key);
        }
    }

    /// Rows sorted by key, with estimates averaged over the runs.
    pub fn rows(&self) -> Vec<EstimateRow> {
        let runs = self.runs.max(1) as f64;
        let p = colorful_probability(self.k);
        let sum: f64 = self.per_key.values().map(|v| v.2 / runs).sum();
        self.per_key
            .iter()
            .map(|(key, &(samples, inv, colorful))| {
                let c = colorful / runs;
                EstimateRow {
                    key: key.to_string(),
                    samples,
                    inv_sigma_sum: inv,
                    colorful_estimate: c,
                    relative_frequency: if sum > 0.0 { c / sum } else { 0.0 },
                    total_estimate: c / p,
                }
            })
            .collect()
    }
}

/// Rows for exact counts. `colorful` holds exact colorful counts when a
/// coloring was given; otherwise the expected colorful count `p_k * c` is
/// reported.
pub fn exact_rows(k: usize, counts: &BTreeMap<HypergraphletKey, u128>, colorful: Option<&BTreeMap<HypergraphletKey, u128>>) -> Vec<EstimateRow> {
    let p = colorful_probability(k);
    let total: f64 = counts.values().map(|&c| c as f64).sum();
    counts
        .iter()
        .map(|(key, &c)| EstimateRow {
            key: key.to_string(),
            samples: 0,
            inv_sigma_sum: 0.0,
            colorful_estimate: match colorful {
                Some(m) => m.get(key).copied().unwrap_or(0) as f64,
                None => c as f64 * p,
            },
            relative_frequency: if total > 0.0 { c as f64 / total } else { 0.0 },
            total_estimate: c as f64,
        })
        .collect()
}
