//! Timing tables comparing the fidelity routes.
//!
//! Every (dim, trial) cell draws one full-rank pair from a seed derived
//! from the run seed, and every requested method is timed on that same
//! pair. One untimed warm-up call precedes each timed call.

use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{fidelity_cheb, fidelity_product, fidelity_uhlmann, FidelityReport};
use crate::states::{random_density_ginibre, DensityMatrix, SeededRng};

/// Exact CSV header row.
pub const CSV_HEADER: &str = "method,dim,trial,wall_nanos,value,std_error,diagonalizations,multiplications,seed";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenchMethod {
    Uhlmann,
    Product,
    ChebExact,
    ChebStoch,
}

impl BenchMethod {
    pub const ALL: [BenchMethod; 4] = [
        BenchMethod::Uhlmann,
        BenchMethod::Product,
        BenchMethod::ChebExact,
        BenchMethod::ChebStoch,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BenchMethod::Uhlmann => "uhlmann",
            BenchMethod::Product => "product",
            BenchMethod::ChebExact => "cheb-exact",
            BenchMethod::ChebStoch => "cheb-stoch",
        }
    }
}

impl fmt::Display for BenchMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BenchMethod {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown bench method {s:?} (expected uhlmann, product, cheb-exact or cheb-stoch)"))
    }
}

/// One timed fidelity evaluation. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub method: BenchMethod,
    pub dim: usize,
    pub trial: usize,
    pub wall_nanos: u64,
    pub value: f64,
    /// 0 for the deterministic routes.
    pub std_error: f64,
    pub diagonalizations: usize,
    pub multiplications: usize,
    /// Seed of the cell the pair was drawn from.
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub dims: Vec<usize>,
    pub trials: usize,
    pub methods: Vec<BenchMethod>,
    pub seed: u64,
    /// Chebyshev degree for both cheb methods.
    pub degree: usize,
    /// Probe count for cheb-stoch.
    pub probes: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            dims: vec![2, 4, 8],
            trials: 3,
            methods: vec![BenchMethod::Uhlmann, BenchMethod::Product],
            seed: 0,
            degree: 1000,
            probes: 64,
        }
    }
}

/// Seed of cell (dim, trial): the first output of sub-stream
/// `(dim << 32) | trial` of the run seed.
pub fn cell_seed(run_seed: u64, dim: usize, trial: usize) -> u64 {
    SeededRng::derive(run_seed, ((dim as u64) << 32) | trial as u64).next_u64()
}

/// The pair (ρ, σ) used by cell `seed`, both full rank.
pub fn cell_pair(dim: usize, seed: u64) -> Result<(DensityMatrix, DensityMatrix)> {
    let mut rng = SeededRng::new(seed);
    let rho = random_density_ginibre(dim, dim, &mut rng)?;
    let sigma = random_density_ginibre(dim, dim, &mut rng)?;
    Ok((rho, sigma))
}

fn run_method(
    method: BenchMethod,
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    cfg: &BenchConfig,
    seed: u64,
) -> Result<FidelityReport> {
    // The cheb routes consume randomness; a fresh generator per call makes
    // the warm-up and the timed call identical.
    let mut rng = SeededRng::derive(seed, 1);
    match method {
        BenchMethod::Uhlmann => fidelity_uhlmann(rho, sigma),
        BenchMethod::Product => fidelity_product(rho, sigma),
        BenchMethod::ChebExact => fidelity_cheb(rho, sigma, cfg.degree, 0, &mut rng),
        BenchMethod::ChebStoch => fidelity_cheb(rho, sigma, cfg.degree, cfg.probes, &mut rng),
    }
}

/// Runs every (method, dim, trial) cell sequentially and returns the rows
/// sorted by (dim, trial, method).
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRecord>> {
    if cfg.methods.contains(&BenchMethod::ChebStoch) && cfg.probes < 2 {
        return Err(Error::TooFewProbes(cfg.probes));
    }
    let mut rows = Vec::with_capacity(cfg.dims.len() * cfg.trials * cfg.methods.len());
    for &dim in &cfg.dims {
        for trial in 0..cfg.trials {
            let seed = cell_seed(cfg.seed, dim, trial);
            let (rho, sigma) = cell_pair(dim, seed)?;
            for &method in &cfg.methods {
                run_method(method, &rho, &sigma, cfg, seed)?;
                let start = Instant::now();
                let report = run_method(method, &rho, &sigma, cfg, seed)?;
                let wall_nanos = u64::try_from(start.elapsed().as_nanos()).unwrap_or(u64::MAX);
                rows.push(BenchRecord {
                    method,
                    dim,
                    trial,
                    wall_nanos,
                    value: report.value,
                    std_error: report.std_error.unwrap_or(0.0),
                    diagonalizations: report.diagonalizations,
                    multiplications: report.multiplications,
                    seed,
                });
            }
        }
    }
    rows.sort_by_key(|r| (r.dim, r.trial, r.method));
    Ok(rows)
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse(format!("CSV: {other:?}")),
    }
}

/// Writes a header row and one row per record.
pub fn write_records_to<W: Write>(w: W, records: &[BenchRecord]) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    wtr.write_record(CSV_HEADER.split(',')).map_err(csv_err)?;
    for r in records {
        wtr.serialize(r).map_err(csv_err)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_records(path: &Path, records: &[BenchRecord]) -> Result<()> {
    write_records_to(std::fs::File::create(path)?, records)
}

/// Parses a table written by [`write_records_to`]; the header must match
/// [`CSV_HEADER`] exactly.
pub fn read_records_from<R: Read>(r: R) -> Result<Vec<BenchRecord>> {
    let mut rdr = csv::Reader::from_reader(r);
    let header = rdr.headers().map_err(csv_err)?.iter().collect::<Vec<_>>().join(",");
    if header != CSV_HEADER {
        return Err(Error::Parse(format!("unexpected CSV header {header:?}")));
    }
    rdr.deserialize().map(|row| row.map_err(csv_err)).collect()
}

pub fn read_records(path: &Path) -> Result<Vec<BenchRecord>> {
    read_records_from(std::fs::File::open(path)?)
}
