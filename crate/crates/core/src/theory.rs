//! Finer results turned into executable checks: digit representability with
//! bounded digits, the four equivalent conditions for `np` to be Zumkeller,
//! predictions for practical `n` times a prime power, and the necessary
//! conditions on an even Zumkeller number that is not half-Zumkeller.

use std::collections::HashSet;

use serde::Serialize;

use crate::arith::{self, DivisorSet, Factorization};
use crate::classify;
use crate::error::{Error, Result};

/// A prime base `p` with per-digit caps `A₀..A_l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DigitBounds {
    pub p: u64,
    pub caps: Vec<u64>,
}

impl DigitBounds {
    pub fn new(p: u64, caps: Vec<u64>) -> Result<Self> {
        if p < 2 {
            return Err(Error::domain(format!("base {p} is below 2")));
        }
        if caps.is_empty() {
            return Err(Error::domain("at least one digit cap is required"));
        }
        Ok(DigitBounds { p, caps })
    }

    /// `l`, the index of the top digit.
    pub fn top(&self) -> usize {
        self.caps.len() - 1
    }

    fn powers(&self) -> Result<Vec<u128>> {
        let mut out = Vec::with_capacity(self.caps.len() + 1);
        let mut pw: u128 = 1;
        for _ in 0..=self.caps.len() {
            out.push(pw);
            pw = pw
                .checked_mul(self.p as u128)
                .ok_or_else(|| Error::range(format!("{}^{} overflows", self.p, out.len())))?;
        }
        Ok(out)
    }

    /// `Σ Aᵢ pⁱ`, the largest representable value.
    pub fn max_value(&self) -> Result<u128> {
        let pw = self.powers()?;
        self.caps.iter().zip(&pw).try_fold(0u128, |acc, (&a, &q)| {
            (a as u128)
                .checked_mul(q)
                .and_then(|t| acc.checked_add(t))
                .ok_or_else(|| Error::range("digit total overflows"))
        })
    }
}

/// Whether `A₀ + A₁p + … + Aᵢpⁱ + 1 ≥ p^{i+1}` for every `0 ≤ i < l`.
pub fn digit_conditions_hold(b: &DigitBounds) -> Result<bool> {
    let pw = b.powers()?;
    let mut acc: u128 = 0;
    for i in 0..b.top() {
        acc = (b.caps[i] as u128)
            .checked_mul(pw[i])
            .and_then(|t| acc.checked_add(t))
            .ok_or_else(|| Error::range("digit total overflows"))?;
        if acc + 1 < pw[i + 1] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Writes `m = Σ Cᵢpⁱ` with `Cᵢ ≤ Aᵢ`, choosing the largest admissible
/// top digit first and recursing on the remainder.
///
/// Always succeeds when [`digit_conditions_hold`]; may return `None`
/// otherwise. `m` above `Σ Aᵢpⁱ` is a domain error.
pub fn digit_decompose(m: u128, b: &DigitBounds) -> Result<Option<Vec<u64>>> {
    let max = b.max_value()?;
    if m > max {
        return Err(Error::domain(format!(
            "{m} exceeds the digit maximum {max}"
        )));
    }
    let pw = b.powers()?;
    let mut digits = vec![0u64; b.caps.len()];
    let mut rest = m;
    for i in (0..b.caps.len()).rev() {
        let c = (b.caps[i] as u128).min(rest / pw[i]);
        digits[i] = c as u64;
        rest -= c * pw[i];
    }
    Ok((rest == 0).then_some(digits))
}

/// Brute-force check that every `m ≤ Σ Aᵢpⁱ` is `Σ Cᵢpⁱ` with `Cᵢ ≤ Aᵢ`.
pub fn all_values_representable(b: &DigitBounds) -> Result<bool> {
    let pw = b.powers()?;
    let max = b.max_value()?;
    if max > 1 << 24 {
        return Err(Error::capacity("digit brute force", 1 << 24));
    }
    let mut reach = vec![false; max as usize + 1];
    reach[0] = true;
    for (i, &cap) in b.caps.iter().enumerate() {
        let step = pw[i] as usize;
        // bounded multiplicity: unroll the digit into `cap` single copies
        for _ in 0..cap {
            for v in (step..reach.len()).rev() {
                if reach[v - step] {
                    reach[v] = true;
                }
            }
        }
    }
    Ok(reach.iter().all(|&r| r))
}

/// The four conditions for `np` with `p ∤ n`, each decided on its own by
/// exhaustive search over the divisors of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MultiplyzReport {
    pub n: u64,
    pub p: u64,
    /// `np` is Zumkeller.
    pub zumkeller: bool,
    /// Some split `D₁ ∪ D₂` has `p(ΣD₂ − ΣD₁)` equal to a signed sum of all divisors.
    pub signed_sum: bool,
    /// Some split has `(p+1)(ΣD₂ − ΣD₁)/2` equal to a subset sum of `D₂` minus one of `D₁`.
    pub half_difference: bool,
    /// Some four-way split has `(p+1)ΣA₁ + (p−1)ΣA₂ = (p+1)ΣA₃ + (p−1)ΣA₄`.
    pub weighted: bool,
}

impl MultiplyzReport {
    pub fn agree(&self) -> bool {
        self.zumkeller == self.signed_sum
            && self.zumkeller == self.half_difference
            && self.zumkeller == self.weighted
    }
}

/// Default cap on the number of divisors of `n` for [`multiplyz_equivalence`].
pub const MULTIPLYZ_DIVISOR_CAP: usize = 16;

fn subset_sums(values: &[u64]) -> Vec<i128> {
    let mut sums = vec![0i128];
    for &v in values {
        let shifted: Vec<i128> = sums.iter().map(|&s| s + v as i128).collect();
        sums = merge_sorted(&sums, &shifted);
    }
    sums
}

fn merge_sorted(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Every value `Σ cᵢ vᵢ` with each `cᵢ` drawn from `coeffs`.
fn weighted_sums(values: &[u64], coeffs: &[i128]) -> HashSet<i128> {
    let mut sums = HashSet::from([0i128]);
    for &v in values {
        sums = sums
            .iter()
            .flat_map(|&s| coeffs.iter().map(move |&c| s + c * v as i128))
            .collect();
    }
    sums
}

/// Whether some choice of one coefficient per value makes the total zero,
/// by meeting in the middle.
fn weighted_zero(values: &[u64], coeffs: &[i128]) -> bool {
    let (lo, hi) = values.split_at(values.len() / 2);
    let left = weighted_sums(lo, coeffs);
    weighted_sums(hi, coeffs).iter().any(|s| left.contains(&-s))
}

fn split_by_mask(values: &[u64], mask: u32) -> (Vec<u64>, Vec<u64>) {
    let mut d1 = Vec::new();
    let mut d2 = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        if mask >> i & 1 == 1 {
            d1.push(v);
        } else {
            d2.push(v);
        }
    }
    (d1, d2)
}

fn sum_i128(v: &[u64]) -> i128 {
    v.iter().map(|&d| d as i128).sum()
}

/// Whether `np` is Zumkeller, by splitting the divisors of `np` in two
/// halves and matching subset sums.
fn np_is_zumkeller(d: &DivisorSet, p: u64) -> bool {
    let mut all: Vec<u64> = d.divisors().to_vec();
    all.extend(d.divisors().iter().map(|&x| x * p));
    let total = sum_i128(&all);
    if total % 2 != 0 {
        return false;
    }
    // signed sums: ±1 per divisor reaching zero
    weighted_zero(&all, &[1, -1])
}

fn signed_sum_condition(d: &DivisorSet, p: u64) -> bool {
    let divs = d.divisors();
    let sigma = sum_i128(divs);
    // Σ ±d = σ − 2s over subset sums s
    let sums: HashSet<i128> = subset_sums(divs).into_iter().collect();
    (0..1u32 << divs.len()).any(|mask| {
        let (d1, d2) = split_by_mask(divs, mask);
        let lhs = p as i128 * (sum_i128(&d2) - sum_i128(&d1));
        let twice_s = sigma - lhs;
        twice_s % 2 == 0 && sums.contains(&(twice_s / 2))
    })
}

fn half_difference_condition(d: &DivisorSet, p: u64) -> bool {
    let divs = d.divisors();
    (0..1u32 << divs.len()).any(|mask| {
        let (d1, d2) = split_by_mask(divs, mask);
        let scaled = (p as i128 + 1) * (sum_i128(&d2) - sum_i128(&d1));
        if scaled % 2 != 0 {
            return false;
        }
        half_difference_witness_exists(&d1, &d2, scaled / 2)
    })
}

/// Whether `target = ΣX − ΣY` for some `X ⊆ d2`, `Y ⊆ d1`.
fn half_difference_witness_exists(d1: &[u64], d2: &[u64], target: i128) -> bool {
    let plus = subset_sums(d2);
    let minus: Vec<i128> = subset_sums(d1).into_iter().map(|s| s + target).collect();
    // sorted intersection of `plus` and `minus`
    let (mut i, mut j) = (0, 0);
    while i < plus.len() && j < minus.len() {
        match plus[i].cmp(&minus[j]) {
            std::cmp::Ordering::Equal => return true,
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
        }
    }
    false
}

fn weighted_condition(d: &DivisorSet, p: u64) -> bool {
    let p = p as i128;
    weighted_zero(d.divisors(), &[p + 1, p - 1, -(p + 1), -(p - 1)])
}

/// Evaluates the four conditions for `np`. Requires `p` prime, `p ∤ n` and
/// at most `cap` divisors of `n`; `cap` is clamped to
/// [`MULTIPLYZ_DIVISOR_CAP`] since the split enumeration grows as `3^d`.
pub fn multiplyz_equivalence(n: u64, p: u64, cap: usize) -> Result<MultiplyzReport> {
    if !arith::is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if n.is_multiple_of(p) {
        return Err(Error::domain(format!("{p} divides {n}")));
    }
    let cap = cap.min(MULTIPLYZ_DIVISOR_CAP);
    let f = arith::factorize(n)?;
    if f.divisor_count() > cap as u64 {
        return Err(Error::capacity(
            format!("{n} has {} divisors", f.divisor_count()),
            cap as u64,
        ));
    }
    arith::sigma(&f)?
        .checked_mul(p + 1)
        .ok_or_else(|| Error::range(format!("sigma({n} * {p}) overflows")))?;
    let d = arith::divisors(&f)?;
    Ok(MultiplyzReport {
        n,
        p,
        zumkeller: np_is_zumkeller(&d, p),
        signed_sum: signed_sum_condition(&d, p),
        half_difference: half_difference_condition(&d, p),
        weighted: weighted_condition(&d, p),
    })
}

/// Checks a given instance of the half-difference condition: `d1` and its
/// complement `D₂` split the divisors of `n`, `plus ⊆ D₂`, `minus ⊆ d1`, and
/// `(p+1)(ΣD₂ − ΣD₁)/2 = Σplus − Σminus`.
pub fn check_half_difference_witness(
    n: u64,
    p: u64,
    d1: &[u64],
    plus: &[u64],
    minus: &[u64],
) -> Result<bool> {
    let f = arith::factorize(n)?;
    let d = arith::divisors(&f)?;
    let d1_set: HashSet<u64> = d1.iter().copied().collect();
    if d1_set.len() != d1.len() || d1.iter().any(|x| !d.contains(*x)) {
        return Ok(false);
    }
    let d2: Vec<u64> = d
        .divisors()
        .iter()
        .copied()
        .filter(|x| !d1_set.contains(x))
        .collect();
    let plus_set: HashSet<u64> = plus.iter().copied().collect();
    let minus_set: HashSet<u64> = minus.iter().copied().collect();
    if plus_set.len() != plus.len()
        || minus_set.len() != minus.len()
        || plus.iter().any(|x| d1_set.contains(x) || !d.contains(*x))
        || minus.iter().any(|x| !d1_set.contains(x))
    {
        return Ok(false);
    }
    let scaled = (p as i128 + 1) * (sum_i128(&d2) - sum_i128(d1));
    Ok(scaled % 2 == 0 && scaled / 2 == sum_i128(plus) - sum_i128(minus))
}

/// Verdicts for `n·p^l` predicted from practical `n` alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub zumkeller: bool,
    pub half_zumkeller: bool,
}

/// For practical `n` and prime `p ∤ n`: with σ(n) even, `n·p^l` is both
/// Zumkeller and half-Zumkeller; with σ(n) odd, each holds exactly when
/// `p ≤ σ(n)` and `l` is odd.
pub fn practical_times_prime_power(f: &Factorization, p: u64, l: u32) -> Result<Prediction> {
    if !classify::is_practical(f) {
        return Err(Error::domain(format!("{} is not practical", f.n())));
    }
    if !arith::is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if f.n().is_multiple_of(p) {
        return Err(Error::domain(format!("{p} divides {}", f.n())));
    }
    if l == 0 {
        return Err(Error::domain("exponent l must be positive"));
    }
    let sigma = arith::sigma(f)?;
    let yes = sigma % 2 == 0 || (p <= sigma && l % 2 == 1);
    Ok(Prediction {
        zumkeller: yes,
        half_zumkeller: yes,
    })
}

/// An even `n = 2^k·p₁^k₁⋯p_m^k_m` with the σ values of its prime-power
/// prefixes, for testing the necessary conditions on an even Zumkeller
/// number that is not half-Zumkeller.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleCandidate {
    pub n: u64,
    /// `(p, k)` pairs, starting with `(2, k)`.
    pub factors: Vec<(u64, u32)>,
    /// `prefix_sigma[i]` is σ of the product of the first `i + 1` prime
    /// powers (saturating).
    pub prefix_sigma: Vec<u64>,
    /// Smallest index `j ≥ 1` into the odd primes `p₁..p_m` with
    /// `p_j > σ(2^k⋯p_{j−1}^{k_{j−1}}) + 1`.
    pub j: Option<usize>,
}

impl CounterexampleCandidate {
    pub fn new(f: &Factorization) -> Result<Self> {
        if !f.is_even() {
            return Err(Error::domain(format!("{} is odd", f.n())));
        }
        let factors = f.factors().to_vec();
        let mut prefix_sigma = Vec::with_capacity(factors.len());
        let mut acc = 1u64;
        for &(p, k) in &factors {
            let s = arith::prime_power_sigma(p, k).unwrap_or(u64::MAX);
            acc = acc.saturating_mul(s);
            prefix_sigma.push(acc);
        }
        let j = (1..factors.len()).find(|&i| factors[i].0 > prefix_sigma[i - 1].saturating_add(1));
        Ok(CounterexampleCandidate {
            n: f.n(),
            factors,
            prefix_sigma,
            j,
        })
    }

    /// Number of odd primes `m`.
    pub fn m(&self) -> usize {
        self.factors.len() - 1
    }
}

/// `true` when `n` survives every necessary condition for an even
/// Zumkeller number that is not half-Zumkeller: the index `j` exists, the
/// odd-prime exponents before it are even, `j ≤ m − 1`, and σ(n) ≥ 3n.
pub fn znoth_prefilter(c: &CounterexampleCandidate) -> Result<bool> {
    let Some(j) = c.j else {
        return Ok(false);
    };
    if c.factors[1..j].iter().any(|&(_, k)| k % 2 != 0) {
        return Ok(false);
    }
    if j > c.m() - 1 {
        return Ok(false);
    }
    let sigma = *c.prefix_sigma.last().expect("n even");
    if sigma == u64::MAX {
        return Err(Error::range(format!("sigma({}) overflows", c.n)));
    }
    Ok(sigma as u128 >= 3 * c.n as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn db(p: u64, caps: &[u64]) -> DigitBounds {
        DigitBounds::new(p, caps.to_vec()).unwrap()
    }

    #[test]
    fn digit_condition_examples() {
        assert!(digit_conditions_hold(&db(2, &[1, 1])).unwrap());
        assert!(!digit_conditions_hold(&db(3, &[1, 1])).unwrap());
        assert!(digit_conditions_hold(&db(3, &[2, 1])).unwrap());
        assert!(digit_conditions_hold(&db(7, &[0])).unwrap());
    }

    #[test]
    fn digit_decompose_examples() {
        assert_eq!(
            digit_decompose(5, &db(2, &[1, 1, 1])).unwrap(),
            Some(vec![1, 0, 1])
        );
        assert_eq!(digit_decompose(2, &db(3, &[1, 1])).unwrap(), None);
        assert_eq!(
            digit_decompose(4, &db(3, &[2, 1])).unwrap(),
            Some(vec![1, 1])
        );
        assert!(matches!(
            digit_decompose(9, &db(3, &[2, 1])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn multiplyz_examples() {
        let r = multiplyz_equivalence(4, 7, MULTIPLYZ_DIVISOR_CAP).unwrap();
        assert!(r.zumkeller && r.agree());
        let r = multiplyz_equivalence(3, 5, MULTIPLYZ_DIVISOR_CAP).unwrap();
        assert!(!r.zumkeller && r.agree());
        assert!(multiplyz_equivalence(6, 3, 16).is_err());
        assert!(matches!(
            multiplyz_equivalence(2450, 11, MULTIPLYZ_DIVISOR_CAP),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn half_difference_golden() {
        let d1 = [2450, 98, 50, 35, 10, 5, 2];
        assert!(check_half_difference_witness(2450, 11, &d1, &[7, 1], &[2]).unwrap());
        assert!(check_half_difference_witness(2450, 13, &d1, &[7], &[]).unwrap());
        assert!(!check_half_difference_witness(2450, 11, &d1, &[7], &[]).unwrap());
        assert!(!check_half_difference_witness(2450, 11, &d1, &[7, 2], &[]).unwrap());
    }

    #[test]
    fn prediction_examples() {
        let two = arith::factorize(2).unwrap();
        assert!(practical_times_prime_power(&two, 3, 1).unwrap().zumkeller);
        assert!(!practical_times_prime_power(&two, 5, 1).unwrap().zumkeller);
        assert!(!practical_times_prime_power(&two, 3, 2).unwrap().zumkeller);
        let ten = arith::factorize(10).unwrap();
        assert!(matches!(
            practical_times_prime_power(&ten, 3, 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn prefilter_golden() {
        let n = 4 * 9 * 25 * 2833 * 2837;
        assert_eq!(n, 7_233_498_900);
        let c = CounterexampleCandidate::new(&arith::factorize(n).unwrap()).unwrap();
        assert_eq!(c.prefix_sigma[1] + 1, 92);
        assert_eq!(c.prefix_sigma[2] + 1, 2822);
        assert_eq!(c.j, Some(3));
        assert!(znoth_prefilter(&c).unwrap());

        // practical: no j
        let c = CounterexampleCandidate::new(&arith::factorize(24).unwrap()).unwrap();
        assert_eq!(c.j, None);
        assert!(!znoth_prefilter(&c).unwrap());
        // σ(70) = 144 < 210
        let c = CounterexampleCandidate::new(&arith::factorize(70).unwrap()).unwrap();
        assert!(!znoth_prefilter(&c).unwrap());
        assert!(CounterexampleCandidate::new(&arith::factorize(945).unwrap()).is_err());
    }
}
