//! Integer substrate: smallest-prime-factor sieve, divisor enumeration,
//! primality, triangular numbers and divisor-count records.
//!
//! Every function here is generic over the unsigned integer type through
//! [`Natural`]; the sieve itself is indexed by `u64` and stores `u32`
//! factors, which caps it at [`MAX_SIEVE_LIMIT`].

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::sync::OnceLock;

use num_traits::{FromPrimitive, PrimInt, ToPrimitive, Unsigned};

use crate::error::{Error, Result};

/// Unsigned machine integers usable as the puzzle's `N`.
pub trait Natural:
    PrimInt + Unsigned + FromPrimitive + ToPrimitive + Debug + Display + Hash + Send + Sync + 'static
{
    /// Widening for sieve lookups and error reports; saturates past `u64::MAX`.
    fn as_u64(self) -> u64 {
        self.to_u64().unwrap_or(u64::MAX)
    }
}

impl<T> Natural for T where
    T: PrimInt
        + Unsigned
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + Hash
        + Send
        + Sync
        + 'static
{
}

/// Largest limit accepted by [`DivisorSieve::new`].
pub const MAX_SIEVE_LIMIT: u64 = (1 << 31) - 1;

/// Smallest-prime-factor table for every integer in `[2, limit]`.
///
/// Immutable after construction. The highly-composite record list is built
/// lazily on first use and cached, so a shared `&DivisorSieve` is enough for
/// concurrent readers.
#[derive(Debug)]
pub struct DivisorSieve {
    spf: Vec<u32>,
    records: OnceLock<Vec<u32>>,
}

impl DivisorSieve {
    pub fn new(limit: u64) -> Result<Self> {
        if !(2..=MAX_SIEVE_LIMIT).contains(&limit) {
            return Err(Error::Capacity {
                limit,
                max: MAX_SIEVE_LIMIT,
            });
        }
        let len = limit as usize + 1;
        let mut spf = vec![0u32; len];
        for i in 2..len {
            if spf[i] != 0 {
                continue;
            }
            spf[i] = i as u32;
            let mut j = i.saturating_mul(i);
            while j < len {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        Ok(DivisorSieve {
            spf,
            records: OnceLock::new(),
        })
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn contains(&self, n: u64) -> bool {
        n <= self.limit()
    }

    /// `None` for 0, 1 and anything past the limit.
    pub fn smallest_prime_factor(&self, n: u64) -> Option<u64> {
        if n < 2 || !self.contains(n) {
            return None;
        }
        Some(self.spf[n as usize] as u64)
    }

    /// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
    pub fn factorize(&self, n: u64) -> Result<Vec<(u64, u32)>> {
        self.check(n)?;
        let mut out: Vec<(u64, u32)> = Vec::new();
        let mut rest = n;
        while rest > 1 {
            let p = self.spf[rest as usize] as u64;
            rest /= p;
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
        Ok(out)
    }

    pub fn divisor_count(&self, n: u64) -> Result<u64> {
        Ok(self
            .factorize(n)?
            .iter()
            .map(|&(_, e)| e as u64 + 1)
            .product())
    }

    /// Ascending list of highly composite numbers up to the limit.
    pub fn highly_composite_numbers(&self) -> &[u32] {
        self.records.get_or_init(|| {
            let mut best = 0;
            let mut out = Vec::new();
            for n in 1..=self.limit() {
                let count = self.divisor_count(n).expect("n within sieve");
                if count > best {
                    best = count;
                    out.push(n as u32);
                }
            }
            out
        })
    }

    fn check(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::ZeroInput);
        }
        if !self.contains(n) {
            return Err(Error::OutOfSieveRange {
                value: n,
                limit: self.limit(),
            });
        }
        Ok(())
    }
}

pub fn build_sieve(limit: u64) -> Result<DivisorSieve> {
    DivisorSieve::new(limit)
}

/// All positive divisors of a value, strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorList<T> {
    value: T,
    divisors: Vec<T>,
}

impl<T: Natural> DivisorList<T> {
    pub fn value(&self) -> T {
        self.value
    }

    pub fn as_slice(&self) -> &[T] {
        &self.divisors
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.divisors.iter()
    }

    pub fn into_vec(self) -> Vec<T> {
        self.divisors
    }
}

impl<'a, T> IntoIterator for &'a DivisorList<T> {
    type Item = &'a T;
    type IntoIter = std::slice::Iter<'a, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.divisors.iter()
    }
}

/// Sorted divisors of `n`.
///
/// With a sieve, `n` is factored through the smallest-prime-factor table and
/// the divisors expanded from the factorization; without one, trial division
/// up to `sqrt(n)` is used. Both routes return the same list.
pub fn divisors<T: Natural>(n: T, sieve: Option<&DivisorSieve>) -> Result<DivisorList<T>> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let divisors = match sieve {
        Some(sieve) => divisors_from_sieve(n, sieve)?,
        None => divisors_by_trial(n),
    };
    Ok(DivisorList { value: n, divisors })
}

fn divisors_by_trial<T: Natural>(n: T) -> Vec<T> {
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut i = T::one();
    while i <= n / i {
        if (n % i).is_zero() {
            low.push(i);
            let pair = n / i;
            if pair != i {
                high.push(pair);
            }
        }
        i = i + T::one();
    }
    low.extend(high.into_iter().rev());
    low
}

fn divisors_from_sieve<T: Natural>(n: T, sieve: &DivisorSieve) -> Result<Vec<T>> {
    let factors = sieve.factorize(n.as_u64())?;
    let mut out: Vec<u64> = vec![1];
    for (p, e) in factors {
        let base = out.len();
        let mut power = 1u64;
        for _ in 0..e {
            power *= p;
            for i in 0..base {
                out.push(out[i] * power);
            }
        }
    }
    out.sort_unstable();
    // every divisor is <= n, so the conversion back cannot fail
    Ok(out
        .into_iter()
        .map(|d| T::from_u64(d).expect("divisor fits the input type"))
        .collect())
}

/// Primality of `n`. A sieve is consulted when it covers `n`; otherwise
/// trial division decides.
pub fn is_prime<T: Natural>(n: T, sieve: Option<&DivisorSieve>) -> bool {
    if let Some(sieve) = sieve {
        let m = n.as_u64();
        if m < 2 {
            return false;
        }
        if sieve.contains(m) {
            return sieve.smallest_prime_factor(m) == Some(m);
        }
    }
    let two = T::one() + T::one();
    let three = two + T::one();
    if n < two {
        return false;
    }
    if n <= three {
        return true;
    }
    if (n % two).is_zero() || (n % three).is_zero() {
        return false;
    }
    let six = three + three;
    let mut i = three + two;
    while i <= n / i {
        if (n % i).is_zero() || (n % (i + two)).is_zero() {
            return false;
        }
        i = i + six;
    }
    true
}

/// `m(m-1)/2`, the least sum of `m` distinct non-negative integers.
pub fn triangular<T: Natural>(m: T) -> Result<T> {
    if m.is_zero() {
        return Ok(T::zero());
    }
    let two = T::one() + T::one();
    let prev = m - T::one();
    let (a, b) = if (m % two).is_zero() {
        (m / two, prev)
    } else {
        (m, prev / two)
    };
    a.checked_mul(&b)
        .ok_or(Error::Overflow("triangular number"))
}

/// Whether `n` has strictly more divisors than every smaller positive integer.
pub fn is_highly_composite<T: Natural>(n: T, sieve: &DivisorSieve) -> Result<bool> {
    let m = n.as_u64();
    sieve.check(m)?;
    let records = sieve.highly_composite_numbers();
    Ok(records.binary_search(&(m as u32)).is_ok())
}
