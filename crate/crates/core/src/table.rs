//! Tabulated results: one row per `N` with the bound and efficiency rounded
//! half away from zero (1 and 2 decimals).
//!
//! Both rounded columns are computed on integers from `s = sqrt(1 + 8N)`:
//! `floor(10·s)` and `floor(50·n·s)` are integer square roots, so ties and
//! near-ties round the same way on every platform.

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::arith::{DivisorSieve, Natural};
use crate::census::{classify_parts, DisplayClass};
use crate::error::Result;
use crate::solver::{discriminant, pear_bound, solve, PearDistribution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Csv,
    Markdown,
    Plain,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "T: Serialize + Clone"))]
pub struct TableRow<T> {
    pub n_input: T,
    /// Bound in tenths, so 115 displays as `11.5`.
    pub bound_tenths: u64,
    pub n_max: T,
    pub apples_per_basket: T,
    /// Efficiency in hundredths, so 87 displays as `0.87`.
    pub efficiency_hundredths: u64,
    pub distribution: PearDistribution<T>,
    pub class: DisplayClass,
}

impl<T: Natural> TableRow<T> {
    pub fn new(n_input: T, sieve: &DivisorSieve) -> Result<Self> {
        let solution = solve(n_input, Some(sieve))?;
        let flags = classify_parts(n_input, solution.n_max, sieve)?;
        Ok(TableRow {
            n_input,
            bound_tenths: bound_tenths(n_input),
            n_max: solution.n_max,
            apples_per_basket: solution.apples_per_basket,
            efficiency_hundredths: efficiency_hundredths(solution.n_max, n_input),
            distribution: solution.canonical,
            class: flags.table_class(),
        })
    }

    pub fn bound_display(&self) -> String {
        fixed(self.bound_tenths, 1)
    }

    pub fn efficiency_display(&self) -> String {
        fixed(self.efficiency_hundredths, 2)
    }
}

fn fixed(scaled: u64, places: u32) -> String {
    let unit = 10u64.pow(places);
    format!(
        "{}.{:0width$}",
        scaled / unit,
        scaled % unit,
        width = places as usize
    )
}

/// `round(10 · (1 + s) / 2) = 5 + floor((floor(10·s) + 1) / 2)`.
pub fn bound_tenths<T: Natural>(n_input: T) -> u64 {
    let exact = discriminant(n_input)
        .and_then(|d| d.checked_mul(100))
        .map(|x| 5 + x.isqrt().div_ceil(2))
        .and_then(|v| u64::try_from(v).ok());
    exact.unwrap_or_else(|| (pear_bound::<T, f64>(n_input) * 10.0).round() as u64)
}

/// `round(100 · n / bound)`; with `100·n/bound = 25·n·(s − 1)/N` this is
/// `floor((floor(50·n·s) − 50·n + N) / 2N)`.
pub fn efficiency_hundredths<T: Natural>(n: T, n_input: T) -> u64 {
    let exact = (|| {
        let d = discriminant(n_input)?;
        let n = n.to_u128()?;
        let big_n = n_input.to_u128()?;
        let fifty_n = n.checked_mul(50)?;
        let root = fifty_n.checked_mul(fifty_n)?.checked_mul(d)?.isqrt();
        let numer = root.checked_add(big_n)?.checked_sub(fifty_n)?;
        u64::try_from(numer / big_n.checked_mul(2)?).ok()
    })();
    exact.unwrap_or_else(|| {
        (n.to_f64().unwrap() / pear_bound::<T, f64>(n_input) * 100.0).round() as u64
    })
}

pub fn table_rows<T: Natural>(from: T, to: T, sieve: &DivisorSieve) -> Result<Vec<TableRow<T>>> {
    let mut rows = Vec::new();
    let mut n = from;
    while n <= to {
        rows.push(TableRow::new(n, sieve)?);
        match n.checked_add(&T::one()) {
            Some(next) => n = next,
            None => break,
        }
    }
    Ok(rows)
}

pub const CSV_HEADER: &str = "N,Bnd,n,k,Eff,distribution,class";

pub fn render<T: Natural>(rows: &[TableRow<T>], format: TableFormat) -> String {
    match format {
        TableFormat::Csv => render_csv(rows),
        TableFormat::Markdown => render_markdown(rows),
        TableFormat::Plain => render_plain(rows),
    }
}

fn render_csv<T: Natural>(rows: &[TableRow<T>]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        // the distribution holds commas, so it is the one quoted field
        let _ = writeln!(
            out,
            "{},{},{},{},{},\"{}\",{}",
            r.n_input,
            r.bound_display(),
            r.n_max,
            r.apples_per_basket,
            r.efficiency_display(),
            r.distribution,
            r.class
        );
    }
    out
}

fn render_markdown<T: Natural>(rows: &[TableRow<T>]) -> String {
    let mut out = String::new();
    out.push_str("| N | Bnd | n | k | Eff | Pear distribution | class |\n");
    out.push_str("|--:|--:|--:|--:|--:|:--|:--|\n");
    for r in rows {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} |",
            r.n_input,
            r.bound_display(),
            r.n_max,
            r.apples_per_basket,
            r.efficiency_display(),
            r.distribution,
            r.class
        );
    }
    out
}

fn render_plain<T: Natural>(rows: &[TableRow<T>]) -> String {
    let cells: Vec<[String; 7]> = rows
        .iter()
        .map(|r| {
            [
                r.n_input.to_string(),
                r.bound_display(),
                r.n_max.to_string(),
                r.apples_per_basket.to_string(),
                r.efficiency_display(),
                r.distribution.to_string(),
                r.class.to_string(),
            ]
        })
        .collect();
    let header = ["N", "Bnd", "n", "k", "Eff", "Pear distribution", "class"];
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, row: &[&str]| {
        for (i, (c, w)) in row.iter().zip(&widths).enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            // numeric columns right-aligned, text columns left-aligned
            if i < 5 {
                let _ = write!(out, "{c:>w$}");
            } else if i == 6 {
                out.push_str(c);
            } else {
                let _ = write!(out, "{c:<w$}");
            }
        }
        out.push('\n');
    };
    line(&mut out, &header);
    for row in &cells {
        let refs: Vec<&str> = row.iter().map(String::as_str).collect();
        line(&mut out, &refs);
    }
    out
}

impl fmt::Display for TableFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableFormat::Csv => "csv",
            TableFormat::Markdown => "markdown",
            TableFormat::Plain => "plain",
        })
    }
}
