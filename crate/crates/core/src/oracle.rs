//! Brute-force cross-check of the solver.
//!
//! For each `N` a subset-sum table over the values `0..=N` records which
//! counts `c` admit `c` distinct values summing to exactly `N`. The largest
//! divisor (found by a plain modulus scan) with an admissible count is the
//! brute-force basket maximum. Nothing here uses the triangular-number bound.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::solver::max_baskets;

/// The search is cubic-ish in `N`; larger limits are refused.
pub const MAX_ORACLE_LIMIT: u64 = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n_input: u64,
    pub solver: u64,
    pub oracle: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub checked: u64,
    pub mismatches: Vec<Mismatch>,
}

pub fn run_oracle(limit: u64) -> Result<OracleReport> {
    if limit == 0 || limit > MAX_ORACLE_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "oracle limit must be in [1, {MAX_ORACLE_LIMIT}], got {limit}"
        )));
    }
    let mut mismatches = Vec::new();
    for n in 1..=limit {
        let solver = max_baskets(n, None)?;
        let oracle = brute_force_max_baskets(n);
        if solver != oracle {
            mismatches.push(Mismatch {
                n_input: n,
                solver,
                oracle,
            });
        }
    }
    Ok(OracleReport {
        checked: limit,
        mismatches,
    })
}

pub fn brute_force_max_baskets(n_input: u64) -> u64 {
    let admissible = distinct_sum_counts(n_input);
    (1..=n_input)
        .rev()
        .filter(|d| n_input.is_multiple_of(*d))
        .find(|&d| admissible.get(d as usize).copied().unwrap_or(false))
        .expect("a single basket always works")
}

/// `out[c]` is true when some `c` distinct integers from `0..=total` sum to `total`.
pub fn distinct_sum_counts(total: u64) -> Vec<bool> {
    let bits = total as usize + 1;
    let words = bits.div_ceil(64);
    let tail_mask = if bits.is_multiple_of(64) {
        u64::MAX
    } else {
        (1u64 << (bits % 64)) - 1
    };
    // layers[c] is the set of sums reachable with exactly c values
    let mut layers: Vec<Vec<u64>> = vec![vec![0; words]];
    layers[0][0] = 1;
    for value in 0..bits {
        let (shift_words, shift_bits) = (value / 64, value % 64);
        for c in (0..layers.len()).rev() {
            if layers[c].iter().all(|&w| w == 0) {
                continue;
            }
            if c + 1 == layers.len() {
                layers.push(vec![0; words]);
            }
            let (lower, upper) = layers.split_at_mut(c + 1);
            let src = &lower[c];
            let dst = &mut upper[0];
            for i in (shift_words..words).rev() {
                let j = i - shift_words;
                let mut w = src[j] << shift_bits;
                if shift_bits > 0 && j > 0 {
                    w |= src[j - 1] >> (64 - shift_bits);
                }
                dst[i] |= w;
            }
            dst[words - 1] &= tail_mask;
        }
    }
    let (word, bit) = (total as usize / 64, total as usize % 64);
    layers.iter().map(|l| l[word] >> bit & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissible_counts_small() {
        // 6 = 0+1+5 = 0+2+4 = 1+2+3, but 4 distinct values need at least 6 and 0+1+2+3 = 6
        let counts = distinct_sum_counts(6);
        assert_eq!(counts[..5], [false, true, true, true, true]);
        assert!(counts[5..].iter().all(|&b| !b));
        assert_eq!(distinct_sum_counts(1), vec![false, true, true]);
    }

    #[test]
    fn admissible_counts_cross_word_boundary() {
        let counts = distinct_sum_counts(130);
        let last = counts.iter().rposition(|&b| b).unwrap();
        // 0+1+...+15 = 120 <= 130 < 136
        assert_eq!(last, 16);
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_max_baskets(60), 10);
        assert_eq!(brute_force_max_baskets(17), 1);
        assert_eq!(brute_force_max_baskets(1), 1);
        assert_eq!(brute_force_max_baskets(10), 5);
    }

    #[test]
    fn guard() {
        assert!(run_oracle(0).is_err());
        assert!(run_oracle(MAX_ORACLE_LIMIT + 1).is_err());
        assert_eq!(run_oracle(1).unwrap().mismatches, vec![]);
    }
}
