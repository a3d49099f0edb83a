//! Batch solve-and-classify over `[1, limit]` and the scatter-plot datasets.
//!
//! Records are computed in parallel and collected in ascending `N`, so the
//! emitted files do not depend on the thread count.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::DivisorSieve;
use crate::census::{classify_parts, ClassificationFlags};
use crate::error::{Error, Result};
use crate::solver::max_baskets;

/// Upper end of the small-scale view.
pub const SMALL_VIEW: u64 = 10_000;
pub const DEFAULT_STRIDE: u64 = 10;
pub const DEFAULT_WIDE_STRIDE: u64 = 997;

pub const SAMPLED: &str = "nmax_sampled.csv";
pub const PERFECT: &str = "nmax_perfect.csv";
pub const PRIMES: &str = "nmax_primes_10k.csv";
pub const WIDE_SAMPLED: &str = "nmax_1m_sampled.csv";
pub const WIDE_PERFECT: &str = "nmax_1m_perfect.csv";
pub const WIDE_PRIMES: &str = "nmax_primes_1m.csv";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SweepRecord {
    pub n_input: u64,
    pub n_max: u64,
    pub flags: ClassificationFlags,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub limit: u64,
    /// Sampling interval for the small-view dense series.
    pub stride: u64,
    /// Sampling interval for the full-range dense series.
    pub wide_stride: u64,
    pub output_dir: PathBuf,
    /// `None` lets rayon pick.
    pub threads: Option<usize>,
}

impl SweepConfig {
    pub fn new(limit: u64, output_dir: impl Into<PathBuf>) -> Self {
        SweepConfig {
            limit,
            stride: DEFAULT_STRIDE,
            wide_stride: DEFAULT_WIDE_STRIDE,
            output_dir: output_dir.into(),
            threads: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.limit == 0 {
            return Err(Error::InvalidArgument("limit must be at least 1".into()));
        }
        if self.stride == 0 || self.wide_stride == 0 {
            return Err(Error::InvalidArgument("stride must be at least 1".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidArgument(
                "thread count must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SweepSummary {
    pub records: u64,
    pub perfect_count: u64,
    pub prime_count: u64,
    pub elapsed: Duration,
    pub files: Vec<PathBuf>,
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepSummary> {
    config.validate()?;
    let start = Instant::now();
    let sieve = DivisorSieve::new(config.limit.max(2))?;
    let records = compute_records(config.limit, &sieve, config.threads)?;
    let files = emit_datasets(&records, config)?;
    Ok(SweepSummary {
        records: records.len() as u64,
        perfect_count: records.iter().filter(|r| r.flags.perfect).count() as u64,
        prime_count: records.iter().filter(|r| r.flags.prime).count() as u64,
        elapsed: start.elapsed(),
        files,
    })
}

/// One record per `N` in `[1, limit]`, ascending.
pub fn compute_records(
    limit: u64,
    sieve: &DivisorSieve,
    threads: Option<usize>,
) -> Result<Vec<SweepRecord>> {
    if limit > sieve.limit() && limit > 1 {
        return Err(Error::OutOfSieveRange {
            value: limit,
            limit: sieve.limit(),
        });
    }
    // build the shared record table before fanning out
    sieve.highly_composite_numbers();
    let work = || {
        (1..=limit)
            .into_par_iter()
            .map(|n| record(n, sieve))
            .collect::<Result<Vec<_>>>()
    };
    match threads {
        None => work(),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(work),
    }
}

pub fn record(n_input: u64, sieve: &DivisorSieve) -> Result<SweepRecord> {
    let n_max = max_baskets(n_input, Some(sieve))?;
    Ok(SweepRecord {
        n_input,
        n_max,
        flags: classify_parts(n_input, n_max, sieve)?,
    })
}

/// Writes the small-view series and, when `limit` exceeds it, the
/// full-range series. Returns the written paths in emission order.
pub fn emit_datasets(records: &[SweepRecord], config: &SweepConfig) -> Result<Vec<PathBuf>> {
    config.validate()?;
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    if records
        .iter()
        .enumerate()
        .any(|(i, r)| r.n_input != i as u64 + 1)
    {
        return Err(Error::Invariant("records must cover 1..=limit in order"));
    }
    let dir = &config.output_dir;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;

    let limit = records.len() as u64;
    let small = &records[..limit.min(SMALL_VIEW) as usize];
    let mut written = Vec::new();
    let mut emit = |name: &str, view: &[SweepRecord], stride: u64| -> Result<()> {
        written.push(write_series(dir, name, sampled(view, stride))?);
        written.push(write_series(
            dir,
            perfect_name(name),
            view.iter().filter(|r| r.flags.perfect),
        )?);
        written.push(write_series(
            dir,
            primes_name(name),
            view.iter().filter(|r| is_prime_floor(r)),
        )?);
        Ok(())
    };
    emit(SAMPLED, small, config.stride)?;
    if limit > SMALL_VIEW {
        emit(WIDE_SAMPLED, records, config.wide_stride)?;
    }
    Ok(written)
}

fn perfect_name(sampled: &str) -> &'static str {
    if sampled == SAMPLED {
        PERFECT
    } else {
        WIDE_PERFECT
    }
}

fn primes_name(sampled: &str) -> &'static str {
    if sampled == SAMPLED {
        PRIMES
    } else {
        WIDE_PRIMES
    }
}

/// Primes pinned to a single basket; excludes 2 and 3.
fn is_prime_floor(r: &SweepRecord) -> bool {
    r.flags.prime && r.n_max == 1
}

/// Every `stride`-th record starting at `N = 1`.
fn sampled(view: &[SweepRecord], stride: u64) -> impl Iterator<Item = &SweepRecord> {
    view.iter().step_by(stride as usize)
}

fn write_series<'a>(
    dir: &Path,
    name: &str,
    rows: impl Iterator<Item = &'a SweepRecord>,
) -> Result<PathBuf> {
    let path = dir.join(name);
    let tmp = dir.join(format!(".{name}.tmp"));
    let result = (|| {
        let file = fs::File::create(&tmp)?;
        let mut out = BufWriter::new(file);
        out.write_all(b"N,nmax\n")?;
        for r in rows {
            writeln!(out, "{},{}", r.n_input, r.n_max)?;
        }
        out.into_inner().map_err(|e| e.into_error())?.sync_all()
    })();
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(Error::io(&tmp, e));
    }
    fs::rename(&tmp, &path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Error::io(&path, e)
    })?;
    Ok(path)
}
