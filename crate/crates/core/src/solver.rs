//! The basket solver: pear bound, feasibility, the maximum basket count and
//! the canonical pear distribution.
//!
//! Feasibility is always decided on integers (`T(n) <= N`). The real-valued
//! bound and the efficiency are reporting data, generic over the float type.

use std::fmt;

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, triangular, DivisorSieve, Natural};
use crate::error::{Error, Result};

/// Distinct, strictly increasing pear counts, one per basket.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(
    try_from = "Vec<T>",
    into = "Vec<T>",
    bound(
        serialize = "T: Serialize + Clone",
        deserialize = "T: Natural + Deserialize<'de>"
    )
)]
pub struct PearDistribution<T> {
    counts: Vec<T>,
}

impl<T: Natural> PearDistribution<T> {
    /// Rejects empty or non-strictly-increasing input.
    pub fn new(counts: Vec<T>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::Invariant("a distribution needs at least one basket"));
        }
        if counts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invariant("pear counts must be strictly increasing"));
        }
        Ok(PearDistribution { counts })
    }

    pub fn as_slice(&self) -> &[T] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Total pears, `None` on overflow.
    pub fn total(&self) -> Option<T> {
        self.counts
            .iter()
            .try_fold(T::zero(), |acc, &c| acc.checked_add(&c))
    }

    pub fn into_vec(self) -> Vec<T> {
        self.counts
    }
}

impl<T: Natural> TryFrom<Vec<T>> for PearDistribution<T> {
    type Error = Error;

    fn try_from(counts: Vec<T>) -> Result<Self> {
        PearDistribution::new(counts)
    }
}

impl<T> From<PearDistribution<T>> for Vec<T> {
    fn from(d: PearDistribution<T>) -> Vec<T> {
        d.counts
    }
}

/// Set notation with every element listed: `{0, 1, 2, 24}`.
impl<T: fmt::Display> fmt::Display for PearDistribution<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

/// Complete answer for one `N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Serialize + Clone, F: Serialize",
    deserialize = "T: Natural + Deserialize<'de>, F: Deserialize<'de>"
))]
pub struct Solution<T, F = f64> {
    pub n_input: T,
    pub n_max: T,
    pub apples_per_basket: T,
    pub pear_bound: F,
    pub efficiency: F,
    pub surplus: T,
    pub canonical: PearDistribution<T>,
}

impl<T: Natural, F: Float> Solution<T, F> {
    /// Re-derives every structural invariant from the integer fields.
    ///
    /// The float fields are compared against a fresh evaluation with a
    /// relative tolerance of `1e-6`, which also covers `f32`.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n_input;
        let d = self.n_max;
        if n.is_zero() || d.is_zero() {
            return Err(Error::ZeroInput);
        }
        if !(n % d).is_zero() || n / d != self.apples_per_basket {
            return Err(Error::Invariant(
                "n_max must divide N into apples_per_basket",
            ));
        }
        if !feasible(d, n) {
            return Err(Error::Invariant("n_max must satisfy the pear constraint"));
        }
        if divisors(n, None)?
            .iter()
            .any(|&other| other > d && feasible(other, n))
        {
            return Err(Error::Invariant("a larger feasible divisor exists"));
        }
        if self.surplus != n - triangular(d)? {
            return Err(Error::Invariant("surplus must equal N - T(n_max)"));
        }
        if self.canonical != canonical_distribution(d, n)? {
            return Err(Error::Invariant("canonical distribution mismatch"));
        }
        let bound: F = pear_bound(n);
        let tol = F::from(1e-6).unwrap();
        let close = |a: F, b: F| (a - b).abs() <= tol * b.abs().max(F::one());
        if !close(self.pear_bound, bound) {
            return Err(Error::Invariant("pear_bound mismatch"));
        }
        let eff = F::from(d).unwrap() / bound;
        if !close(self.efficiency, eff) {
            return Err(Error::Invariant("efficiency must equal n_max / pear_bound"));
        }
        Ok(())
    }
}

/// `(1 + sqrt(1 + 8N)) / 2`, the real upper bound on the basket count.
///
/// Reporting only: feasibility decisions go through [`feasible`].
pub fn pear_bound<T: Natural, F: Float>(n_input: T) -> F {
    let n = F::from(n_input).expect("N representable as a float");
    let one = F::one();
    let two = one + one;
    let eight = two * two * two;
    (one + (one + eight * n).sqrt()) / two
}

/// `T(n) <= N`, on integers. An overflowing `T(n)` is infeasible.
pub fn feasible<T: Natural>(n: T, n_input: T) -> bool {
    matches!(triangular(n), Ok(t) if t <= n_input)
}

/// Largest divisor of `N` that passes [`feasible`], without building the
/// rest of a [`Solution`].
pub fn max_baskets<T: Natural>(n_input: T, sieve: Option<&DivisorSieve>) -> Result<T> {
    if n_input.is_zero() {
        return Err(Error::ZeroInput);
    }
    let list = divisors(n_input, sieve)?;
    Ok(list
        .iter()
        .rev()
        .copied()
        .find(|&d| feasible(d, n_input))
        .expect("1 divides every N and is always feasible"))
}

pub fn solve<T: Natural>(n_input: T, sieve: Option<&DivisorSieve>) -> Result<Solution<T>> {
    solve_as(n_input, sieve)
}

/// [`solve`] with the reporting fields in a chosen float type.
pub fn solve_as<T: Natural, F: Float>(
    n_input: T,
    sieve: Option<&DivisorSieve>,
) -> Result<Solution<T, F>> {
    let n_max = max_baskets(n_input, sieve)?;
    let surplus = n_input - triangular(n_max)?;
    let pear_bound: F = pear_bound(n_input);
    let efficiency = F::from(n_max).unwrap() / pear_bound;
    Ok(Solution {
        n_input,
        n_max,
        apples_per_basket: n_input / n_max,
        pear_bound,
        efficiency,
        surplus,
        canonical: canonical_distribution(n_max, n_input)?,
    })
}

/// `{0, 1, ..., n-2, (n-1) + S}` with `S = N - T(n)`; `{N}` when `n = 1`.
pub fn canonical_distribution<T: Natural>(n: T, n_input: T) -> Result<PearDistribution<T>> {
    if n.is_zero() || n_input.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !feasible(n, n_input) {
        return Err(Error::Infeasible {
            baskets: n.as_u64(),
            n_input: n_input.as_u64(),
        });
    }
    let surplus = n_input - triangular(n)?;
    let last = n - T::one();
    let mut counts: Vec<T> = num_iter(last).collect();
    counts.push(last + surplus);
    Ok(PearDistribution { counts })
}

fn num_iter<T: Natural>(end: T) -> impl Iterator<Item = T> {
    std::iter::successors(Some(T::zero()), |&c| Some(c + T::one())).take_while(move |&c| c < end)
}

/// `1 + 8N` as a `u128`, or `None` past `u128` range.
pub(crate) fn discriminant<T: Natural>(n_input: T) -> Option<u128> {
    n_input.to_u128()?.checked_mul(8)?.checked_add(1)
}

/// Exact test of `n / bound(N) > num / den` on integers.
///
/// With `s = sqrt(1 + 8N)` the inequality is `2·n·den − num > num·s`, which
/// is squared when the left side is positive. Falls back to floats only when
/// the squares leave `u128`.
pub fn efficiency_exceeds<T: Natural>(n: T, n_input: T, num: u64, den: u64) -> bool {
    let exact = (|| {
        let disc = discriminant(n_input)?;
        let lhs = n.to_u128()?.checked_mul(2 * den as u128)?;
        let num = num as u128;
        if lhs <= num {
            return Some(false);
        }
        let diff = lhs - num;
        Some(diff.checked_mul(diff)? > num.checked_mul(num)?.checked_mul(disc)?)
    })();
    exact.unwrap_or_else(|| {
        let eff = n.to_f64().unwrap() / pear_bound::<T, f64>(n_input);
        eff > num as f64 / den as f64
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_examples() {
        let b: f64 = pear_bound(60u64);
        assert!((b - 11.47).abs() < 0.005);
        assert_eq!(pear_bound::<u64, f64>(3), 3.0);
        assert_eq!(pear_bound::<u64, f64>(10), 5.0);
        assert_eq!(pear_bound::<u32, f32>(10), 5.0);
    }

    #[test]
    fn feasibility_examples() {
        assert!(feasible(5u64, 10));
        assert!(feasible(11u64, 55));
        assert!(!feasible(12u64, 60));
        assert!(!feasible(u64::MAX, u64::MAX));
    }

    #[test]
    fn solve_examples() {
        let s = solve(60u64, None).unwrap();
        assert_eq!((s.n_max, s.apples_per_basket, s.surplus), (10, 6, 15));
        let s = solve(17u32, None).unwrap();
        assert_eq!((s.n_max, s.apples_per_basket), (1, 17));
        let s = solve(1u64, None).unwrap();
        assert_eq!((s.n_max, s.apples_per_basket), (1, 1));
        assert_eq!(s.canonical.as_slice(), &[1]);
        assert_eq!(solve(200u64, None).unwrap().n_max, 20);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(matches!(solve(0u64, None), Err(Error::ZeroInput)));
        assert!(matches!(max_baskets(0u8, None), Err(Error::ZeroInput)));
    }

    #[test]
    fn canonical_examples() {
        let d = canonical_distribution(10u64, 60).unwrap();
        assert_eq!(d.as_slice(), &[0, 1, 2, 3, 4, 5, 6, 7, 8, 24]);
        assert_eq!(d.to_string(), "{0, 1, 2, 3, 4, 5, 6, 7, 8, 24}");
        let d = canonical_distribution(13u64, 78).unwrap();
        assert_eq!(d.into_vec(), (0..13).collect::<Vec<u64>>());
        let d = canonical_distribution(9u64, 45).unwrap();
        assert_eq!(d.as_slice(), &[0, 1, 2, 3, 4, 5, 6, 7, 17]);
        assert_eq!(canonical_distribution(1u64, 7).unwrap().as_slice(), &[7]);
    }

    #[test]
    fn canonical_rejects_infeasible() {
        assert!(matches!(
            canonical_distribution(12u64, 60),
            Err(Error::Infeasible {
                baskets: 12,
                n_input: 60
            })
        ));
    }

    #[test]
    fn distribution_validation() {
        assert!(PearDistribution::new(vec![0u32, 1, 1]).is_err());
        assert!(PearDistribution::new(vec![2u32, 1]).is_err());
        assert!(PearDistribution::<u32>::new(vec![]).is_err());
        assert_eq!(
            PearDistribution::new(vec![0u8, 200, 255]).unwrap().total(),
            None
        );
    }

    #[test]
    fn exact_efficiency_comparison() {
        // 9 / 10 is exactly 0.9
        assert!(!efficiency_exceeds(9u64, 45, 9, 10));
        assert!(efficiency_exceeds(10u64, 50, 9, 10));
        assert!(!efficiency_exceeds(5u64, 10, 1, 1));
        assert!(efficiency_exceeds(5u64, 10, 99, 100));
    }

    #[test]
    fn solution_invariants_hold_across_types() {
        solve(60u16, None).unwrap().check_invariants().unwrap();
        solve_as::<u64, f32>(98, None)
            .unwrap()
            .check_invariants()
            .unwrap();
        let mut s = solve(60u64, None).unwrap();
        s.surplus = 14;
        assert!(s.check_invariants().is_err());
    }
}
