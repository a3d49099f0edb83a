//! Command-line front end. [`run`] takes the argument list and output sinks
//! so the binary and the tests share one code path.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::arith::DivisorSieve;
use crate::census::{classify, count_distributions, perfect_values};
use crate::error::Error;
use crate::oracle::{run_oracle, MAX_ORACLE_LIMIT};
use crate::solver::{canonical_distribution, solve};
use crate::sweep::{run_sweep, SweepConfig, DEFAULT_STRIDE, DEFAULT_WIDE_STRIDE};
use crate::table::{render, table_rows, TableFormat};

pub const EXIT_OK: i32 = 0;
/// The oracle found a disagreement.
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "baskets", version, about = "Apples-and-pears basket solver")]
pub struct Cli {
    /// Output format; each command accepts a subset.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Markdown,
    Plain,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximum basket count and canonical pear distribution for one N.
    Solve {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// One row per N in [from, to].
    Table {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        from: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        to: u64,
    },
    /// Solve and classify every N up to a limit and write the CSV datasets.
    Sweep {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
        /// Sampling interval of the small-view dense series.
        #[arg(long, default_value_t = DEFAULT_STRIDE, value_parser = clap::value_parser!(u64).range(1..))]
        stride: u64,
        /// Sampling interval of the full-range dense series.
        #[arg(long, default_value_t = DEFAULT_WIDE_STRIDE, value_parser = clap::value_parser!(u64).range(1..))]
        wide_stride: u64,
        #[arg(long, default_value = "data")]
        out: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        threads: Option<u64>,
    },
    /// Perfect / prime / near-perfect / highly composite flags for one N.
    Classify {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Exact number of valid pear distributions.
    Count {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Basket count; defaults to the maximum for N.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        baskets: Option<u64>,
    },
    /// All perfect values up to a limit.
    Perfect {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
    },
    /// Re-derive the basket maximum by exhaustive search and compare.
    Oracle {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=MAX_ORACLE_LIMIT))]
        limit: u64,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
    Write(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Write(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Write(e.into())
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(failure) => {
            let (code, msg) = match failure {
                Failure::Usage(msg) => (EXIT_USAGE, msg),
                Failure::Lib(e) => (exit_code(&e), e.to_string()),
                Failure::Write(e) => (EXIT_IO, e.to_string()),
            };
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ZeroInput
        | Error::InvalidArgument(_)
        | Error::Capacity { .. }
        | Error::TooLarge { .. } => EXIT_USAGE,
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_DOMAIN,
    }
}

fn pick(format: Option<Format>, allowed: &[Format], command: &str) -> Result<Format, Failure> {
    let f = format.unwrap_or(allowed[0]);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        let names: Vec<_> = allowed
            .iter()
            .map(|a| a.to_possible_value().unwrap().get_name().to_string())
            .collect();
        Err(Failure::Usage(format!(
            "`{command}` supports --format {}",
            names.join("|")
        )))
    }
}

fn sieve_for(n: u64) -> Result<DivisorSieve, Error> {
    DivisorSieve::new(n.max(2))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    use Format::*;
    match &cli.command {
        Command::Solve { n } => {
            let format = pick(cli.format, &[Text, Json], "solve")?;
            let s = solve(*n, None)?;
            if format == Json {
                serde_json::to_writer(&mut *out, &s)?;
                writeln!(out)?;
            } else {
                writeln!(out, "N = {}", s.n_input)?;
                writeln!(out, "baskets (n_max) = {}", s.n_max)?;
                writeln!(out, "apples per basket (k) = {}", s.apples_per_basket)?;
                writeln!(out, "pear bound = {:.4}", s.pear_bound)?;
                writeln!(out, "efficiency = {:.4}", s.efficiency)?;
                writeln!(out, "surplus = {}", s.surplus)?;
                writeln!(out, "pears = {}", s.canonical)?;
            }
        }
        Command::Table { from, to } => {
            let format = pick(cli.format, &[Csv, Markdown, Plain, Json], "table")?;
            if from > to {
                return Err(Failure::Usage(format!("empty range {from}..{to}")));
            }
            let sieve = sieve_for(*to)?;
            let rows = table_rows(*from, *to, &sieve)?;
            let text = match format {
                Json => serde_json::to_string(&rows)? + "\n",
                Markdown => render(&rows, TableFormat::Markdown),
                Plain => render(&rows, TableFormat::Plain),
                _ => render(&rows, TableFormat::Csv),
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Sweep {
            limit,
            stride,
            wide_stride,
            out: dir,
            threads,
        } => {
            let format = pick(cli.format, &[Text, Json], "sweep")?;
            let config = SweepConfig {
                limit: *limit,
                stride: *stride,
                wide_stride: *wide_stride,
                output_dir: dir.clone(),
                threads: threads.map(|t| t as usize),
            };
            let summary = run_sweep(&config)?;
            if format == Json {
                let v = json!({
                    "records": summary.records,
                    "perfect_count": summary.perfect_count,
                    "prime_count": summary.prime_count,
                    "elapsed_seconds": summary.elapsed.as_secs_f64(),
                    "files": summary.files,
                });
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "records: {}", summary.records)?;
                writeln!(out, "perfect values: {}", summary.perfect_count)?;
                writeln!(out, "primes: {}", summary.prime_count)?;
                writeln!(out, "elapsed: {:.3} s", summary.elapsed.as_secs_f64())?;
                for f in &summary.files {
                    writeln!(out, "wrote {}", f.display())?;
                }
            }
        }
        Command::Classify { n } => {
            let format = pick(cli.format, &[Text, Json], "classify")?;
            let sieve = sieve_for(*n)?;
            let s = solve(*n, Some(&sieve))?;
            let flags = classify(&s, &sieve)?;
            if format == Json {
                let v = json!({ "n_input": n, "n_max": s.n_max, "flags": flags });
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "N = {n}, n_max = {}", s.n_max)?;
                writeln!(out, "perfect: {}", flags.perfect)?;
                writeln!(out, "prime: {}", flags.prime)?;
                writeln!(out, "near_perfect: {}", flags.near_perfect)?;
                writeln!(out, "highly_composite: {}", flags.highly_composite)?;
                writeln!(out, "class: {}", flags.display_class)?;
            }
        }
        Command::Count { n, baskets } => {
            let format = pick(cli.format, &[Text, Json], "count")?;
            let baskets = match baskets {
                Some(b) => *b,
                None => solve(*n, None)?.n_max,
            };
            let c = count_distributions(baskets, *n)?;
            if format == Json {
                let v = json!({
                    "n_input": c.n_input,
                    "baskets": c.n_baskets,
                    "surplus": c.surplus,
                    "count": c.count.to_string(),
                    "canonical": canonical_distribution(baskets, *n)?,
                });
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "N = {}, baskets = {}", c.n_input, c.n_baskets)?;
                writeln!(out, "surplus = {}", c.surplus)?;
                writeln!(out, "distributions = {}", c.count)?;
            }
        }
        Command::Perfect { limit } => {
            let format = pick(cli.format, &[Text, Csv, Json], "perfect")?;
            let values = perfect_values(*limit);
            match format {
                Json => {
                    let v: Vec<_> = values
                        .iter()
                        .map(|(n, b)| json!({ "n_input": n, "n_max": b }))
                        .collect();
                    writeln!(out, "{}", serde_json::Value::from(v))?;
                }
                Csv => {
                    writeln!(out, "N,nmax")?;
                    for (n, b) in &values {
                        writeln!(out, "{n},{b}")?;
                    }
                }
                _ => {
                    for (n, b) in &values {
                        writeln!(out, "{n} {b}")?;
                    }
                    writeln!(out, "{} perfect values <= {limit}", values.len())?;
                }
            }
        }
        Command::Oracle { limit } => {
            let format = pick(cli.format, &[Text, Json], "oracle")?;
            let report = run_oracle(*limit)?;
            if format == Json {
                serde_json::to_writer(&mut *out, &report)?;
                writeln!(out)?;
            } else {
                for m in &report.mismatches {
                    writeln!(
                        out,
                        "mismatch at N = {}: solver {}, brute force {}",
                        m.n_input, m.solver, m.oracle
                    )?;
                }
                writeln!(
                    out,
                    "checked {} values, {} mismatches",
                    report.checked,
                    report.mismatches.len()
                )?;
            }
            if !report.mismatches.is_empty() {
                return Ok(EXIT_MISMATCH);
            }
        }
    }
    Ok(EXIT_OK)
}
