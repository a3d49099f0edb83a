//! Exact solver for the apples-and-pears basket problem.
//!
//! `N` apples and `N` pears go into baskets so that every basket holds the
//! same number of apples and a different number of pears. The maximum basket
//! count is the largest divisor `d` of `N` with `d(d-1)/2 <= N`.
//!
//! ```
//! let s = baskets::solve(60u64, None).unwrap();
//! assert_eq!((s.n_max, s.apples_per_basket, s.surplus), (10, 6, 15));
//! assert_eq!(s.canonical.to_string(), "{0, 1, 2, 3, 4, 5, 6, 7, 8, 24}");
//! ```
//!
//! Integer math is generic over [`Natural`] (any unsigned primitive) and the
//! reported bound and efficiency over [`num_traits::Float`]; the aliases
//! below fix the common choices.

pub mod arith;
pub mod census;
pub mod cli;
pub mod error;
pub mod oracle;
pub mod solver;
pub mod sweep;
pub mod table;

pub use arith::{
    build_sieve, divisors, is_highly_composite, is_prime, triangular, DivisorList, DivisorSieve,
    Natural,
};
pub use census::{
    classify, count_distributions, enumerate_distributions, perfect_values, ClassificationFlags,
    DisplayClass, DistributionCount,
};
pub use error::{Error, Result};
pub use solver::{
    canonical_distribution, feasible, max_baskets, pear_bound, solve, solve_as, PearDistribution,
    Solution,
};
pub use sweep::{run_sweep, SweepConfig, SweepRecord, SweepSummary};

pub type Solution32 = Solution<u32, f32>;
pub type Solution64 = Solution<u64, f64>;
pub type Solution128 = Solution<u128, f64>;
pub type Distribution64 = PearDistribution<u64>;
pub type DivisorList64 = DivisorList<u64>;
