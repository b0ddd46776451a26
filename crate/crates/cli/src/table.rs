//! Binary counter table files (`.hmt`).
//!
//! Layout, all integers little-endian:
//!
//! | field | bytes |
//! |---|---|
//! | magic `HGCTABLE` | 8 |
//! | version | 4 |
//! | k | 4 |
//! | alpha (`u64::MAX` for the naive build) | 8 |
//! | seed flag, seed | 1 + 8 |
//! | vertex count n | 8 |
//! | SHA-256 of the hypergraph in edge-list form | 32 |
//! | SHA-256 of the treelet catalog dump | 32 |
//! | colors | n |
//! | slot count | 8 |
//! | counters, slot-major | 16 per entry |

use std::io::{Read, Write};

use anyhow::{bail, ensure, Context, Result};
use hgcount_core::buildup::{random_coloring, BuildOptions, Coloring, CounterSet};
use hgcount_core::hypergraph::write_edge_list;
use hgcount_core::split::AlphaSplit;
use hgcount_core::{Hypergraph, TreeletCatalog};
use sha2::{Digest, Sha256};

pub const MAGIC: &[u8; 8] = b"HGCTABLE";
pub const VERSION: u32 = 1;
const NAIVE: u64 = u64::MAX;

pub fn hypergraph_digest(h: &Hypergraph) -> [u8; 32] {
    Sha256::digest(write_edge_list(h).as_bytes()).into()
}

pub fn catalog_digest(catalog: &TreeletCatalog) -> [u8; 32] {
    Sha256::digest(catalog.dump().as_bytes()).into()
}

/// Header fields of a table file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableHeader {
    pub k: usize,
    pub alpha: Option<usize>,
    pub seed: Option<u64>,
    pub n: usize,
    pub hypergraph_digest: [u8; 32],
    pub catalog_digest: [u8; 32],
}

pub fn write_table<W: Write>(mut w: W, h: &Hypergraph, cs: &CounterSet) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(cs.k() as u32).to_le_bytes())?;
    w.write_all(&cs.alpha().map_or(NAIVE, |a| a as u64).to_le_bytes())?;
    let seed = cs.coloring().seed();
    w.write_all(&[u8::from(seed.is_some())])?;
    w.write_all(&seed.unwrap_or(0).to_le_bytes())?;
    w.write_all(&(cs.vertex_count() as u64).to_le_bytes())?;
    w.write_all(&hypergraph_digest(h))?;
    w.write_all(&catalog_digest(cs.catalog()))?;
    w.write_all(cs.coloring().colors())?;
    w.write_all(&(cs.slot_count() as u64).to_le_bytes())?;
    let mut buf = Vec::with_capacity(cs.raw_counts().len() * 16);
    for c in cs.raw_counts() {
        buf.extend_from_slice(&c.to_le_bytes());
    }
    w.write_all(&buf)?;
    w.flush()?;
    Ok(())
}

fn take<const N: usize, R: Read>(r: &mut R) -> Result<[u8; N]> {
    let mut b = [0u8; N];
    r.read_exact(&mut b).context("table file is truncated")?;
    Ok(b)
}

pub fn read_header<R: Read>(r: &mut R) -> Result<TableHeader> {
    ensure!(&take::<8, _>(r)? == MAGIC, "not a counter table file");
    let version = u32::from_le_bytes(take(r)?);
    ensure!(version == VERSION, "unsupported table version {version}");
    let k = u32::from_le_bytes(take(r)?) as usize;
    let alpha = match u64::from_le_bytes(take(r)?) {
        NAIVE => None,
        a => Some(a as usize),
    };
    let [flag] = take::<1, _>(r)?;
    let seed = u64::from_le_bytes(take(r)?);
    let n = u64::from_le_bytes(take(r)?) as usize;
    Ok(TableHeader {
        k,
        alpha,
        seed: (flag == 1).then_some(seed),
        n,
        hypergraph_digest: take(r)?,
        catalog_digest: take(r)?,
    })
}

/// Reads a table written for `h`. `split` must be the split the table's
/// neighbor sums are recomputed on: the alpha-split at the header's alpha,
/// or at the rank of `h` for a naive table.
pub fn read_table<R: Read>(mut r: R, h: &Hypergraph, split: &AlphaSplit, header: &TableHeader, opts: &BuildOptions) -> Result<CounterSet> {
    ensure!(header.n == h.vertex_count(), "table has {} vertices, hypergraph has {}", header.n, h.vertex_count());
    ensure!(header.hypergraph_digest == hypergraph_digest(h), "table was built for a different hypergraph");
    let catalog = TreeletCatalog::new(header.k)?;
    ensure!(header.catalog_digest == catalog_digest(&catalog), "treelet catalog digest mismatch");
    let mut colors = vec![0u8; header.n];
    r.read_exact(&mut colors).context("table file is truncated")?;
    let coloring = match header.seed {
        Some(seed) => {
            let c = random_coloring(header.n, header.k, seed)?;
            ensure!(c.colors() == colors.as_slice(), "stored colors do not match the stored seed");
            c
        }
        None => Coloring::new(header.k, colors)?,
    };
    let slots = u64::from_le_bytes(take(&mut r)?) as usize;
    let len = slots.checked_mul(header.n).context("table size overflows")?;
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    if bytes.len() != len * 16 {
        bail!("table body has {} bytes, expected {}", bytes.len(), len * 16);
    }
    let counts = bytes.chunks_exact(16).map(|c| u128::from_le_bytes(c.try_into().unwrap())).collect();
    Ok(CounterSet::from_raw(split, &coloring, header.alpha, counts, opts)?)
}
