use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use baskets::arith::build_sieve;
use baskets::census::classify;
use baskets::solver::solve;
use baskets::sweep::compute_records;

#[test]
fn records_match_single_queries() {
    let limit = 100_000;
    let sieve = build_sieve(limit).unwrap();
    let records = compute_records(limit, &sieve, Some(3)).unwrap();
    assert_eq!(records.len() as u64, limit);

    let fresh = build_sieve(limit).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=limit);
        let r = &records[n as usize - 1];
        let s = solve(n, None).unwrap();
        assert_eq!(r.n_input, n);
        assert_eq!(r.n_max, s.n_max);
        assert_eq!(r.flags, classify(&s, &fresh).unwrap());
    }
}

/// Plain boolean Eratosthenes, independent of the factor sieve.
fn prime_count(limit: usize) -> usize {
    let mut composite = vec![false; limit + 1];
    let mut count = 0;
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        count += 1;
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    count
}

#[test]
fn single_basket_values_are_one_and_primes_from_five() {
    let limit = 1_000_000u64;
    let sieve = build_sieve(limit).unwrap();
    let records = compute_records(limit, &sieve, None).unwrap();
    let floor = records.iter().filter(|r| r.n_max == 1).count();
    // every prime except 2 and 3, plus N = 1
    assert_eq!(floor, 1 + prime_count(limit as usize) - 2);
    assert_eq!(records.iter().filter(|r| r.flags.perfect).count(), 706);
}

#[test]
fn limit_beyond_sieve_is_rejected() {
    let sieve = build_sieve(100).unwrap();
    assert!(compute_records(101, &sieve, None).is_err());
}
