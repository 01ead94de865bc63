//! Factorization, primality, divisor enumeration and the divisor sum σ.
//!
//! Everything here is exact 64-bit arithmetic. Products and sums that would
//! overflow are reported as [`Error::Range`] instead of wrapping.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::config::DEFAULT_MAX_DIVISORS;
use crate::error::{Error, Result};

/// Largest accepted input.
pub const MAX_N: u64 = i64::MAX as u64;

pub const DEFAULT_SIEVE_LIMIT: u32 = 1 << 16;

static SIEVE: OnceLock<Vec<u32>> = OnceLock::new();

/// Builds the shared prime table up to `limit`.
///
/// Must be called before the first factorization to have any effect; returns
/// `false` if the table already exists.
pub fn init_sieve(limit: u32) -> bool {
    SIEVE.set(sieve_primes(limit)).is_ok()
}

/// The shared read-only prime table, built on first use.
pub fn small_primes() -> &'static [u32] {
    SIEVE.get_or_init(|| sieve_primes(DEFAULT_SIEVE_LIMIT))
}

/// Sieve of Eratosthenes over odd numbers.
pub fn sieve_primes(limit: u32) -> Vec<u32> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    // composite[i] describes 2i + 1
    let mut composite = vec![false; limit / 2 + 1];
    let mut primes = vec![2u32];
    let mut i = 1;
    while 2 * i < limit {
        if !composite[i] {
            let p = 2 * i + 1;
            primes.push(p as u32);
            let mut j = p * p;
            while j <= limit {
                composite[j / 2] = true;
                j += 2 * p;
            }
        }
        i += 1;
    }
    primes
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `base^exp` or a range error.
pub fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp)
        .ok_or_else(|| Error::range(format!("{base}^{exp} overflows 64 bits")))
}

/// Prime factorization `n = Π pᵢ^kᵢ` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds a factorization from explicit prime powers, validating every invariant.
    pub fn from_factors(factors: Vec<(u64, u32)>) -> Result<Self> {
        let mut n: u64 = 1;
        let mut prev = 1;
        for &(p, k) in &factors {
            if p <= prev {
                return Err(Error::domain("primes must be strictly increasing"));
            }
            if k == 0 {
                return Err(Error::domain(format!("exponent of {p} must be positive")));
            }
            if !is_prime(p) {
                return Err(Error::domain(format!("{p} is not prime")));
            }
            n = n
                .checked_mul(checked_pow(p, k)?)
                .filter(|&v| v <= MAX_N)
                .ok_or_else(|| Error::range("product of prime powers exceeds 2^63-1"))?;
            prev = p;
        }
        Ok(Factorization { n, factors })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_even(&self) -> bool {
        self.n.is_multiple_of(2)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, k)| k)
    }

    /// `Π (kᵢ + 1)`; saturates, which only matters for the capacity check.
    pub fn divisor_count(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(_, k)| acc.saturating_mul(k as u64 + 1))
    }

    /// True when every exponent is even.
    pub fn is_square(&self) -> bool {
        self.factors.iter().all(|&(_, k)| k % 2 == 0)
    }

    /// The factorization of `n · p^l`; `p` may or may not already divide `n`.
    pub fn times_prime_power(&self, p: u64, l: u32) -> Result<Self> {
        let mut factors = self.factors.clone();
        match factors.iter_mut().find(|(q, _)| *q == p) {
            Some(entry) => entry.1 += l,
            None => {
                factors.push((p, l));
                factors.sort_unstable();
            }
        }
        Factorization::from_factors(factors)
    }

    /// Factorization of the leading prefix `p₁^k₁ ⋯ p_len^k_len`.
    pub fn prefix(&self, len: usize) -> Factorization {
        let factors = self.factors[..len].to_vec();
        let n = factors.iter().map(|&(p, k)| p.pow(k)).product::<u64>();
        Factorization { n, factors }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, k)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if k == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{k}")?;
            }
        }
        Ok(())
    }
}

/// Factorizes `n` by trial division against the shared prime table.
///
/// Cofactors left after the table is exhausted are tested for primality and,
/// if composite, trial-divided further by odd candidates.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("cannot factorize 0"));
    }
    if n > MAX_N {
        return Err(Error::domain(format!("{n} exceeds 2^63-1")));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let primes = small_primes();
    for &p in primes {
        let p = p as u64;
        if p * p > rest {
            break;
        }
        if rest.is_multiple_of(p) {
            let mut k = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                k += 1;
            }
            factors.push((p, k));
        }
    }
    if rest > 1 {
        let last = *primes.last().unwrap_or(&2) as u64;
        if last * last >= rest || is_prime(rest) {
            factors.push((rest, 1));
        } else {
            let mut d = last + 2;
            while d * d <= rest {
                if rest.is_multiple_of(d) {
                    let mut k = 0;
                    while rest.is_multiple_of(d) {
                        rest /= d;
                        k += 1;
                    }
                    factors.push((d, k));
                    if rest > 1 && is_prime(rest) {
                        break;
                    }
                }
                d += 2;
            }
            if rest > 1 {
                factors.push((rest, 1));
            }
        }
    }
    Ok(Factorization { n, factors })
}

/// `1 + p + … + p^k`.
pub fn prime_power_sigma(p: u64, k: u32) -> Result<u64> {
    let mut term: u64 = 1;
    let mut sum: u64 = 1;
    for _ in 0..k {
        term = term
            .checked_mul(p)
            .ok_or_else(|| Error::range(format!("sigma({p}^{k}) overflows 64 bits")))?;
        sum = sum
            .checked_add(term)
            .ok_or_else(|| Error::range(format!("sigma({p}^{k}) overflows 64 bits")))?;
    }
    Ok(sum)
}

/// σ(n) by the product formula over the prime powers.
pub fn sigma(f: &Factorization) -> Result<u64> {
    f.factors.iter().try_fold(1u64, |acc, &(p, k)| {
        acc.checked_mul(prime_power_sigma(p, k)?)
            .ok_or_else(|| Error::range(format!("sigma({}) overflows 64 bits", f.n)))
    })
}

/// Sorted divisors of `n` with their sum cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorSet {
    n: u64,
    divisors: Vec<u64>,
    sigma: u64,
}

impl DivisorSet {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// All divisors, strictly increasing, `1` first and `n` last.
    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    /// Divisors excluding `n` itself.
    pub fn proper(&self) -> &[u64] {
        &self.divisors[..self.divisors.len() - 1]
    }

    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn contains(&self, d: u64) -> bool {
        self.divisors.binary_search(&d).is_ok()
    }

    /// True when consecutive divisors never more than double.
    pub fn has_doubling_chain(&self) -> bool {
        self.divisors.windows(2).all(|w| w[1] <= 2 * w[0])
    }
}

/// Divisors with the default cap of 2^20.
pub fn divisors(f: &Factorization) -> Result<DivisorSet> {
    divisors_capped(f, DEFAULT_MAX_DIVISORS)
}

/// Enumerates the divisors by mixed-radix expansion over the exponent
/// vectors, then sorts once.
pub fn divisors_capped(f: &Factorization, cap: usize) -> Result<DivisorSet> {
    let count = f.divisor_count();
    if count > cap as u64 {
        return Err(Error::capacity(
            format!("{} has {count} divisors", f.n),
            cap as u64,
        ));
    }
    let sigma = sigma(f)?;
    let mut divisors = Vec::with_capacity(count as usize);
    divisors.push(1u64);
    for &(p, k) in &f.factors {
        let len = divisors.len();
        let mut power = 1u64;
        for _ in 0..k {
            power *= p;
            for i in 0..len {
                divisors.push(divisors[i] * power);
            }
        }
    }
    divisors.sort_unstable();
    Ok(DivisorSet {
        n: f.n,
        divisors,
        sigma,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Abundance {
    Deficient,
    Perfect,
    Abundant,
}

impl Abundance {
    pub fn as_str(self) -> &'static str {
        match self {
            Abundance::Deficient => "deficient",
            Abundance::Perfect => "perfect",
            Abundance::Abundant => "abundant",
        }
    }

    pub fn of(n: u64, sigma: u64) -> Self {
        let twice = 2 * n as u128;
        match (sigma as u128).cmp(&twice) {
            std::cmp::Ordering::Less => Abundance::Deficient,
            std::cmp::Ordering::Equal => Abundance::Perfect,
            std::cmp::Ordering::Greater => Abundance::Abundant,
        }
    }
}

impl fmt::Display for Abundance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn abundance_class(f: &Factorization) -> Result<Abundance> {
    Ok(Abundance::of(f.n, sigma(f)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_divisors(n: u64) -> Vec<u64> {
        (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(945).unwrap().factors(), &[(3, 3), (5, 1), (7, 1)]);
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(
            factorize(2450).unwrap().factors(),
            &[(2, 1), (5, 2), (7, 2)]
        );
        assert!(matches!(factorize(0), Err(Error::Domain(_))));
        assert!(matches!(factorize(MAX_N + 1), Err(Error::Domain(_))));
    }

    #[test]
    fn factorize_large_cofactors() {
        let p = 4_294_967_291u64; // largest prime below 2^32
        let f = factorize(2 * p).unwrap();
        assert_eq!(f.factors(), &[(2, 1), (p, 1)]);
        let q = 65_537u64;
        let f = factorize(q * 65_539).unwrap();
        assert_eq!(f.factors(), &[(q, 1), (65_539, 1)]);
        let f = factorize(7_233_498_900).unwrap();
        assert_eq!(f.factors(), &[(2, 2), (3, 2), (5, 2), (2833, 1), (2837, 1)]);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&factorize(70).unwrap()).unwrap(), 144);
        assert_eq!(sigma(&factorize(945).unwrap()).unwrap(), 1920);
        assert_eq!(sigma(&factorize(1).unwrap()).unwrap(), 1);
    }

    #[test]
    fn sigma_overflow_is_reported() {
        let f = Factorization::from_factors(vec![(2, 59), (3, 1), (5, 1)]).unwrap();
        assert!(matches!(sigma(&f), Err(Error::Range(_))));
    }

    #[test]
    fn divisors_examples() {
        let d = divisors(&factorize(6).unwrap()).unwrap();
        assert_eq!(d.divisors(), &[1, 2, 3, 6]);
        assert_eq!(d.sigma(), 12);
        let d = divisors(&factorize(70).unwrap()).unwrap();
        assert_eq!(d.divisors(), &[1, 2, 5, 7, 10, 14, 35, 70]);
        assert_eq!(d.sigma(), 144);
        let d = divisors(&factorize(1).unwrap()).unwrap();
        assert_eq!(d.divisors(), &[1]);
        assert_eq!(d.sigma(), 1);
    }

    #[test]
    fn divisor_cap_names_the_cap() {
        let f = factorize(720).unwrap();
        match divisors_capped(&f, 10) {
            Err(Error::Capacity { cap, .. }) => assert_eq!(cap, 10),
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn abundance_examples() {
        let class = |n| abundance_class(&factorize(n).unwrap()).unwrap();
        assert_eq!(class(6), Abundance::Perfect);
        assert_eq!(class(70), Abundance::Abundant);
        assert_eq!(class(10), Abundance::Deficient);
    }

    #[test]
    fn from_factors_validates() {
        assert!(Factorization::from_factors(vec![(3, 1), (2, 1)]).is_err());
        assert!(Factorization::from_factors(vec![(4, 1)]).is_err());
        assert!(Factorization::from_factors(vec![(2, 0)]).is_err());
        assert_eq!(
            Factorization::from_factors(vec![(2, 1), (3, 1)])
                .unwrap()
                .n(),
            6
        );
    }

    #[test]
    fn primality_agrees_with_sieve() {
        let primes = sieve_primes(10_000);
        for n in 0..10_000u64 {
            assert_eq!(
                is_prime(n),
                primes.binary_search(&(n as u32)).is_ok(),
                "{n}"
            );
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    #[test]
    fn small_range_matches_naive() {
        for n in 1..=500u64 {
            let f = factorize(n).unwrap();
            let d = divisors(&f).unwrap();
            assert_eq!(d.divisors(), naive_divisors(n).as_slice());
        }
    }

    #[test]
    fn product_and_sum_laws_to_1e5() {
        for n in 1..=100_000u64 {
            let f = factorize(n).unwrap();
            let back: u64 = f.factors().iter().map(|&(p, k)| p.pow(k)).product();
            assert_eq!(back, n);
            assert!(f.primes().all(is_prime));
            let d = divisors(&f).unwrap();
            assert_eq!(d.divisors().iter().sum::<u64>(), sigma(&f).unwrap());
            assert_eq!(d.len() as u64, f.divisor_count());
            let odd = d.divisors().iter().filter(|&&x| x % 2 == 1).count();
            assert_eq!(odd % 2 == 1, d.sigma() % 2 == 1, "parity law at {n}");
        }
    }
}
