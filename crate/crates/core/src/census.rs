//! Classification of `N` and the census of all valid pear distributions.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{CheckedAdd, Float, One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_highly_composite, is_prime, triangular, DivisorSieve, Natural};
use crate::error::{Error, Result};
use crate::solver::{efficiency_exceeds, feasible, PearDistribution, Solution};

/// Efficiency strictly above `NEAR_PERFECT.0 / NEAR_PERFECT.1` marks a near-perfect `N`.
pub const NEAR_PERFECT: (u64, u64) = (9, 10);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DisplayClass {
    Perfect,
    Prime,
    NearPerfect,
    HighlyComposite,
    Plain,
}

impl DisplayClass {
    pub fn as_str(self) -> &'static str {
        match self {
            DisplayClass::Perfect => "perfect",
            DisplayClass::Prime => "prime",
            DisplayClass::NearPerfect => "near_perfect",
            DisplayClass::HighlyComposite => "highly_composite",
            DisplayClass::Plain => "plain",
        }
    }
}

impl fmt::Display for DisplayClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Non-exclusive flags; `display_class` picks the first set flag in the
/// order perfect, prime, near-perfect, highly composite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassificationFlags {
    pub perfect: bool,
    pub prime: bool,
    pub near_perfect: bool,
    pub highly_composite: bool,
    pub display_class: DisplayClass,
}

impl ClassificationFlags {
    pub fn new(perfect: bool, prime: bool, near_perfect: bool, highly_composite: bool) -> Self {
        let display_class = if perfect {
            DisplayClass::Perfect
        } else if prime {
            DisplayClass::Prime
        } else if near_perfect {
            DisplayClass::NearPerfect
        } else if highly_composite {
            DisplayClass::HighlyComposite
        } else {
            DisplayClass::Plain
        };
        ClassificationFlags {
            perfect,
            prime,
            near_perfect,
            highly_composite,
            display_class,
        }
    }

    /// The class as coloured in the reference table, which has no colour
    /// for highly composite numbers.
    pub fn table_class(&self) -> DisplayClass {
        match self.display_class {
            DisplayClass::HighlyComposite => DisplayClass::Plain,
            c => c,
        }
    }
}

pub fn classify<T: Natural, F: Float>(
    solution: &Solution<T, F>,
    sieve: &DivisorSieve,
) -> Result<ClassificationFlags> {
    classify_parts(solution.n_input, solution.n_max, sieve)
}

/// [`classify`] from the two integers it actually depends on.
pub fn classify_parts<T: Natural>(
    n_input: T,
    n_max: T,
    sieve: &DivisorSieve,
) -> Result<ClassificationFlags> {
    let perfect = is_perfect(n_input, n_max);
    let prime = is_prime(n_input, Some(sieve));
    let near_perfect =
        !perfect && efficiency_exceeds(n_max, n_input, NEAR_PERFECT.0, NEAR_PERFECT.1);
    let highly_composite = is_highly_composite(n_input, sieve)?;
    Ok(ClassificationFlags::new(
        perfect,
        prime,
        near_perfect,
        highly_composite,
    ))
}

/// `2N = n(n-1)` with `n` odd.
pub fn is_perfect<T: Natural>(n_input: T, n_max: T) -> bool {
    let two = T::one() + T::one();
    !(n_max % two).is_zero()
        && matches!(triangular(n_max), Ok(t) if t == n_input)
        && n_max > T::one()
}

/// Every perfect `N <= limit` paired with its basket count, ascending.
pub fn perfect_values<T: Natural>(limit: T) -> Vec<(T, T)> {
    let two = T::one() + T::one();
    let mut out = Vec::new();
    let mut n = two + T::one();
    while let Ok(t) = triangular(n) {
        if t > limit {
            break;
        }
        out.push((t, n));
        match n.checked_add(&two) {
            Some(next) => n = next,
            None => break,
        }
    }
    out
}

/// Largest surplus the counting table is built for.
pub const MAX_COUNT_SURPLUS: u64 = 200_000;

/// Number of ways to give `n_baskets` baskets distinct pear counts totalling `n_input`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionCount<T> {
    pub n_baskets: T,
    pub n_input: T,
    pub surplus: T,
    pub count: BigUint,
}

/// Exact count with unbounded integers.
pub fn count_distributions<T: Natural>(n: T, n_input: T) -> Result<DistributionCount<T>> {
    let count = count_distributions_in::<T, BigUint>(n, n_input)?;
    Ok(DistributionCount {
        n_baskets: n,
        n_input,
        surplus: n_input - triangular(n)?,
        count,
    })
}

/// Counts in any accumulator type; a fixed-width `C` reports overflow
/// instead of wrapping.
///
/// Subtracting `i - 1` from the `i`-th smallest value maps each valid set to
/// a partition of the surplus `S = N - T(n)` into at most `n` parts, and
/// those are counted as partitions of `S` with parts no larger than `n`.
pub fn count_distributions_in<T: Natural, C>(n: T, n_input: T) -> Result<C>
where
    C: Clone + Zero + One + CheckedAdd,
{
    let surplus = checked_surplus(n, n_input)?.as_u64();
    if surplus > MAX_COUNT_SURPLUS {
        return Err(Error::TooLarge {
            what: "surplus",
            value: surplus,
            max: MAX_COUNT_SURPLUS,
        });
    }
    let s = surplus as usize;
    let max_part = n.to_usize().unwrap_or(usize::MAX).min(s);
    let mut ways = vec![C::zero(); s + 1];
    ways[0] = C::one();
    for part in 1..=max_part {
        for total in part..=s {
            ways[total] = ways[total]
                .checked_add(&ways[total - part])
                .ok_or(Error::Overflow("distribution count"))?;
        }
    }
    Ok(ways.swap_remove(s))
}

/// Valid distributions in lexicographic order, at most `limit` of them.
pub fn enumerate_distributions<T: Natural>(
    n: T,
    n_input: T,
    limit: usize,
) -> Result<Vec<PearDistribution<T>>> {
    checked_surplus(n, n_input)?;
    let baskets = n.to_u128().ok_or(Error::Overflow("basket count"))?;
    let total = n_input.to_u128().ok_or(Error::Overflow("N"))?;
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    extend_lex(baskets, 0, total, &mut prefix, &mut out, limit);
    Ok(out
        .into_iter()
        .map(|v| {
            let counts = v.into_iter().map(|c| T::from_u128(c).unwrap()).collect();
            PearDistribution::new(counts).expect("enumeration yields increasing sequences")
        })
        .collect())
}

fn extend_lex(
    remaining: u128,
    lowest: u128,
    sum: u128,
    prefix: &mut Vec<u128>,
    out: &mut Vec<Vec<u128>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if remaining == 1 {
        if sum >= lowest {
            let mut full = prefix.clone();
            full.push(sum);
            out.push(full);
        }
        return;
    }
    // a, a+1, ..., a+remaining-1 is the cheapest continuation from a
    let tail = remaining * (remaining - 1) / 2;
    let mut a = lowest;
    while remaining * a + tail <= sum {
        prefix.push(a);
        extend_lex(remaining - 1, a + 1, sum - a, prefix, out, limit);
        prefix.pop();
        if out.len() >= limit {
            return;
        }
        a += 1;
    }
}

fn checked_surplus<T: Natural>(n: T, n_input: T) -> Result<T> {
    if n.is_zero() || n_input.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !feasible(n, n_input) {
        return Err(Error::Infeasible {
            baskets: n.as_u64(),
            n_input: n_input.as_u64(),
        });
    }
    Ok(n_input - triangular(n)?)
}
