use std::sync::OnceLock;

use num_bigint::BigUint;
use proptest::prelude::*;

use baskets::arith::{
    build_sieve, divisors, is_highly_composite, is_prime, triangular, DivisorSieve,
};
use baskets::census::{
    classify, count_distributions, enumerate_distributions, perfect_values, DisplayClass,
};
use baskets::solver::{canonical_distribution, feasible, max_baskets, pear_bound, solve, solve_as};
use baskets::{PearDistribution, Solution64};

fn sieve() -> &'static DivisorSieve {
    static SIEVE: OnceLock<DivisorSieve> = OnceLock::new();
    SIEVE.get_or_init(|| build_sieve(1_000_000).unwrap())
}

#[test]
fn divisor_lists_match_modulus_scan_and_highly_composite_records() {
    let mut best = 0;
    for n in 1u64..=10_000 {
        let scan: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        let listed = divisors(n, None).unwrap().into_vec();
        assert_eq!(listed, scan, "n = {n}");
        assert_eq!(listed.first(), Some(&1));
        assert_eq!(listed.last(), Some(&n));
        assert_eq!(is_prime(n, None), scan.len() == 2, "n = {n}");
        assert_eq!(is_prime(n, Some(sieve())), scan.len() == 2, "n = {n}");
        let record = scan.len() > best;
        best = best.max(scan.len());
        assert_eq!(is_highly_composite(n, sieve()).unwrap(), record, "n = {n}");
    }
}

#[test]
fn sieve_and_trial_division_agree() {
    for n in 2u64..=100_000 {
        assert_eq!(
            divisors(n, Some(sieve())).unwrap(),
            divisors(n, None).unwrap(),
            "n = {n}"
        );
    }
}

#[test]
fn sieve_factors_are_prime_divisors() {
    let sieve = build_sieve(20_000).unwrap();
    for n in 2u64..=20_000 {
        let p = sieve.smallest_prime_factor(n).unwrap();
        assert_eq!(n % p, 0);
        assert!(is_prime(p, None));
        assert_eq!(p == n, is_prime(n, None));
    }
}

#[test]
fn triangular_steps() {
    for m in 0u64..=10_000 {
        assert_eq!(triangular(m + 1).unwrap() - triangular(m).unwrap(), m);
    }
}

#[test]
fn solutions_satisfy_invariants() {
    for n in 1u64..=5000 {
        let s = solve(n, None).unwrap();
        s.check_invariants().unwrap();
        let list = divisors(n, None).unwrap();
        assert!(list
            .iter()
            .filter(|&&d| d > s.n_max)
            .all(|&d| !feasible(d, n)));
        let counts = s.canonical.as_slice();
        assert_eq!(counts.len() as u64, s.n_max);
        assert!(counts.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(s.canonical.total(), Some(n));
    }
}

#[test]
fn exact_ties() {
    assert_eq!(solve(10u64, None).unwrap().n_max, 5);
    assert_eq!(solve(45u64, None).unwrap().n_max, 9);
    assert_eq!(solve(55u64, None).unwrap().n_max, 11);
}

#[test]
fn envelope() {
    for n in 1u64..=100_000 {
        let n_max = max_baskets(n, Some(sieve())).unwrap() as f64;
        let bound: f64 = pear_bound(n);
        assert!(n_max <= bound + 1e-9, "N = {n}");
        assert!(bound < (2.0 * n as f64).sqrt() + 1.0, "N = {n}");
    }
}

/// Depth-first search for `count` distinct values from `lowest..` summing to `total`.
fn distinct_sum_exists(count: u64, lowest: u64, total: u64) -> bool {
    if count == 0 {
        return total == 0;
    }
    (lowest..=total).any(|a| distinct_sum_exists(count - 1, a + 1, total - a))
}

#[test]
fn search_oracle_agrees_on_small_inputs() {
    for n in 1u64..=90 {
        let oracle = (1..=n)
            .rev()
            .find(|&d| n % d == 0 && distinct_sum_exists(d, 0, n))
            .unwrap();
        assert_eq!(max_baskets(n, None).unwrap(), oracle, "N = {n}");
        assert_eq!(
            baskets::oracle::brute_force_max_baskets(n),
            oracle,
            "N = {n}"
        );
    }
}

#[test]
fn count_is_monotone_in_n_input() {
    for baskets in 1u64..=12 {
        let start = triangular(baskets).unwrap().max(1);
        let mut previous = BigUint::from(0u32);
        for n in start..start + 60 {
            let c = count_distributions(baskets, n).unwrap().count;
            assert!(c >= previous, "({baskets}, {n})");
            previous = c;
        }
    }
}

#[test]
fn prime_floor_below_ten_thousand() {
    for p in 2u64..=10_000 {
        if !is_prime(p, None) {
            continue;
        }
        let expected = if p <= 3 { p } else { 1 };
        assert_eq!(solve(p, None).unwrap().n_max, expected, "p = {p}");
    }
}

#[test]
fn perfect_values_agree_with_classification() {
    let limit = 10_000u64;
    let listed: Vec<(u64, u64)> = perfect_values(limit);
    let mut classified = Vec::new();
    for n in 1..=limit {
        let s = solve(n, Some(sieve())).unwrap();
        let flags = classify(&s, sieve()).unwrap();
        if flags.perfect {
            assert_eq!(s.surplus, 0);
            assert_eq!(
                count_distributions(s.n_max, n).unwrap().count,
                BigUint::from(1u32)
            );
            assert_eq!(flags.display_class, DisplayClass::Perfect);
            classified.push((n, s.n_max));
        }
        if flags.near_perfect {
            assert!(s.efficiency > 0.9 && !flags.perfect);
        }
    }
    assert_eq!(classified, listed);
    for (n, baskets) in listed {
        // N is the triangular number with even index baskets - 1 in 1-based indexing
        let index = baskets - 1;
        assert_eq!(index % 2, 0);
        assert_eq!(n, index * (index + 1) / 2);
    }
}

#[test]
fn enumeration_matches_count() {
    for baskets in 1u64..=6 {
        for n in triangular(baskets).unwrap().max(1)..=30 {
            let all = enumerate_distributions(baskets, n, usize::MAX).unwrap();
            let count = count_distributions(baskets, n).unwrap().count;
            assert_eq!(BigUint::from(all.len()), count, "({baskets}, {n})");
            assert!(all.windows(2).all(|w| w[0].as_slice() < w[1].as_slice()));
            assert!(all
                .iter()
                .all(|d| d.total() == Some(n) && d.len() as u64 == baskets));
            assert!(all.contains(&canonical_distribution(baskets, n).unwrap()));
            let truncated = enumerate_distributions(baskets, n, 2).unwrap();
            assert_eq!(truncated[..], all[..all.len().min(2)]);
        }
    }
}

proptest! {
    #[test]
    fn sieve_route_matches_trial_route(n in 1u64..=1_000_000) {
        prop_assert_eq!(divisors(n, Some(sieve())).unwrap(), divisors(n, None).unwrap());
    }

    #[test]
    fn large_inputs_stay_consistent(n in 1u64..=4_000_000_000) {
        let s = solve(n, None).unwrap();
        s.check_invariants().unwrap();
        let narrow = solve(n as u32, None).unwrap();
        prop_assert_eq!(narrow.n_max as u64, s.n_max);
        let single = solve_as::<u64, f32>(n, None).unwrap();
        prop_assert_eq!(single.n_max, s.n_max);
    }

    #[test]
    fn solution_json_round_trip(n in 1u64..=100_000) {
        let s = solve(n, None).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        let back: Solution64 = serde_json::from_str(&text).unwrap();
        back.check_invariants().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn distribution_json_rejects_repeats(v in proptest::collection::vec(0u32..20, 2..8)) {
        let text = serde_json::to_string(&v).unwrap();
        let parsed: Result<PearDistribution<u32>, _> = serde_json::from_str(&text);
        let increasing = v.windows(2).all(|w| w[0] < w[1]);
        prop_assert_eq!(parsed.is_ok(), increasing);
    }
}
