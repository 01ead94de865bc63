//! Decision procedures for Zumkeller, half-Zumkeller, practical and
//! quasi-practical numbers.
//!
//! Zumkeller and half-Zumkeller decisions are tri-state. Cheap necessary or
//! sufficient conditions are tried first; the witness search only runs when
//! none of them applies. A search that exhausts its engines yields
//! [`Verdict::Unknown`], never [`Verdict::No`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, Abundance, Factorization};
use crate::config::SearchConfig;
use crate::construct;
use crate::error::{Error, Result};
use crate::partition::{self, Bits, PartitionWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The fact that settled a predicate without a witness search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shortcut {
    /// σ(n) is odd, so no equal split exists.
    SigmaOdd,
    /// Even n whose odd-prime exponents are all even: the odd divisors are odd in number.
    OddDivisorCountOdd,
    /// σ(n) < 2n.
    Deficient,
    /// Practical with even σ(n).
    PracticalSigmaEven,
    /// Odd n whose prime signature cannot reach σ(n) ≥ 2n.
    OddPrimeSignature,
    /// Doubling divisor chain with even σ(n).
    DivisorChain,
    /// Odd n that is not a perfect square (half-Zumkeller only).
    OddNonSquare,
    /// Even n that is not Zumkeller (half-Zumkeller only).
    EvenNotZumkeller,
    /// Even Zumkeller n with σ(n) < 3n.
    SigmaBelowThreeN,
    /// Zumkeller n divisible by 6 with σ(n) < 10n/3.
    SixDividesSigmaBelowTenThirds,
    /// n = 2m with m Zumkeller.
    DoubleOfZumkeller,
    /// n = 1.
    Unit,
}

impl Shortcut {
    pub fn as_str(self) -> &'static str {
        match self {
            Shortcut::SigmaOdd => "sigma_odd",
            Shortcut::OddDivisorCountOdd => "odd_divisor_count_odd",
            Shortcut::Deficient => "deficient",
            Shortcut::PracticalSigmaEven => "practical_sigma_even",
            Shortcut::OddPrimeSignature => "odd_prime_signature",
            Shortcut::DivisorChain => "divisor_chain",
            Shortcut::OddNonSquare => "odd_non_square",
            Shortcut::EvenNotZumkeller => "even_not_zumkeller",
            Shortcut::SigmaBelowThreeN => "sigma_below_3n",
            Shortcut::SixDividesSigmaBelowTenThirds => "six_divides_sigma_below_10n_over_3",
            Shortcut::DoubleOfZumkeller => "double_of_zumkeller",
            Shortcut::Unit => "unit",
        }
    }
}

impl fmt::Display for Shortcut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of a tri-state predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    /// Set when a shortcut decided instead of a search.
    pub shortcut: Option<Shortcut>,
    /// Set exactly when the verdict is `Unknown`.
    pub cause: Option<Error>,
}

impl Decision {
    fn by(verdict: Verdict, shortcut: Shortcut) -> Self {
        Decision {
            verdict,
            shortcut: Some(shortcut),
            cause: None,
        }
    }

    fn searched(found: bool) -> Self {
        Decision {
            verdict: if found { Verdict::Yes } else { Verdict::No },
            shortcut: None,
            cause: None,
        }
    }

    fn unknown(cause: Error) -> Self {
        Decision {
            verdict: Verdict::Unknown,
            shortcut: None,
            cause: Some(cause),
        }
    }
}

/// Stewart's criterion: the smallest prime is 2 and every further prime is at
/// most one more than σ of the product of the prime powers below it.
/// `1` counts as practical.
pub fn is_practical(f: &Factorization) -> bool {
    let mut factors = f.factors().iter();
    let Some(&(first, k)) = factors.next() else {
        return true;
    };
    if first != 2 {
        return false;
    }
    // σ of the prefix; saturation only ever makes the bound looser than any u64 prime
    let mut prefix_sigma = arith::prime_power_sigma(2, k).unwrap_or(u64::MAX);
    for &(p, k) in factors {
        if p > prefix_sigma.saturating_add(1) {
            return false;
        }
        let s = arith::prime_power_sigma(p, k).unwrap_or(u64::MAX);
        prefix_sigma = prefix_sigma.saturating_mul(s);
    }
    true
}

/// Largest σ(n) the reachability bitset will allocate.
pub const REACHABILITY_CAP: u64 = 1 << 26;

/// Whether every integer up to σ(n) is a sum of distinct divisors of `n`,
/// decided by filling a reachable-sum bitset.
pub fn sigma_reachability_check(f: &Factorization, cfg: &SearchConfig) -> Result<bool> {
    let sigma = arith::sigma(f)?;
    if sigma > REACHABILITY_CAP {
        return Err(Error::capacity(
            format!("sigma({}) = {sigma} for the reachability bitset", f.n()),
            REACHABILITY_CAP,
        ));
    }
    let d = arith::divisors_capped(f, cfg.max_divisors)?;
    let mut reach = Bits::with_zero(sigma as usize + 1);
    for &v in d.divisors() {
        reach.or_shifted_self(v as usize);
    }
    Ok(reach.all())
}

/// Whether every integer up to σ(n) − n is a sum of distinct divisors of `n`
/// other than `n`.
///
/// Uses the complete-sequence criterion: sorted values cover every total up
/// to their sum iff each value is at most one more than the sum of those
/// before it.
pub fn is_quasi_practical(f: &Factorization, cfg: &SearchConfig) -> Result<bool> {
    let d = arith::divisors_capped(f, cfg.max_divisors)?;
    let mut covered: u128 = 0;
    for &v in d.proper() {
        if v as u128 > covered + 1 {
            return Ok(false);
        }
        covered += v as u128;
    }
    Ok(true)
}

/// Necessary conditions on the primes of an odd Zumkeller number
/// `p₁^k₁ ⋯ p_m^k_m`. Returns `false` when `n` certainly is not Zumkeller.
///
/// The conditions: `m ≥ 3`; `Π pᵢ/(pᵢ−1) ≥ 2`; for `m ≤ 6`, `p₁ = 3` and
/// `p₂ ∈ {5, 7, 11}`; for `m ≤ 4`, `p₂ ∈ {5, 7}`; for `m = 3`, `p₂ = 5` and
/// `p₃ ∈ {7, 11, 13}`.
pub fn odd_zumkeller_signature_filter(f: &Factorization) -> Result<bool> {
    if f.is_even() {
        return Err(Error::domain(format!(
            "{} is even; the signature filter applies to odd numbers",
            f.n()
        )));
    }
    let primes: Vec<u64> = f.primes().collect();
    let m = primes.len();
    if m < 3 {
        return Ok(false);
    }
    // Π p ≥ 2 Π (p - 1); at most 15 distinct primes fit below 2^63
    let num: u128 = primes.iter().map(|&p| p as u128).product();
    let den: u128 = primes.iter().map(|&p| (p - 1) as u128).product();
    if num < 2 * den {
        return Ok(false);
    }
    if m <= 6 && (primes[0] != 3 || ![5, 7, 11].contains(&primes[1])) {
        return Ok(false);
    }
    if m <= 4 && ![5, 7].contains(&primes[1]) {
        return Ok(false);
    }
    if m == 3 && (primes[1] != 5 || ![7, 11, 13].contains(&primes[2])) {
        return Ok(false);
    }
    Ok(true)
}

/// Even `n` whose odd part is a perfect square.
fn odd_part_is_square(f: &Factorization) -> bool {
    f.factors()
        .iter()
        .filter(|&&(p, _)| p != 2)
        .all(|&(_, k)| k % 2 == 0)
}

pub fn is_zumkeller(f: &Factorization, cfg: &SearchConfig) -> Decision {
    let n = f.n();
    if n == 1 {
        return Decision::by(Verdict::No, Shortcut::SigmaOdd);
    }
    let sigma = match arith::sigma(f) {
        Ok(s) => s,
        Err(e) => return Decision::unknown(e),
    };
    if f.is_even() && odd_part_is_square(f) {
        return Decision::by(Verdict::No, Shortcut::OddDivisorCountOdd);
    }
    if sigma % 2 != 0 {
        return Decision::by(Verdict::No, Shortcut::SigmaOdd);
    }
    if (sigma as u128) < 2 * n as u128 {
        return Decision::by(Verdict::No, Shortcut::Deficient);
    }
    if is_practical(f) {
        return Decision::by(Verdict::Yes, Shortcut::PracticalSigmaEven);
    }
    if !f.is_even() && odd_zumkeller_signature_filter(f) == Ok(false) {
        return Decision::by(Verdict::No, Shortcut::OddPrimeSignature);
    }
    let d = match arith::divisors_capped(f, cfg.max_divisors) {
        Ok(d) => d,
        Err(e) => return Decision::unknown(e),
    };
    if d.has_doubling_chain() {
        return Decision::by(Verdict::Yes, Shortcut::DivisorChain);
    }
    match partition::find_zumkeller_witness(&d, cfg) {
        Ok(w) => Decision::searched(w.is_some()),
        Err(e) => Decision::unknown(e),
    }
}

pub fn is_half_zumkeller(f: &Factorization, cfg: &SearchConfig) -> Decision {
    let n = f.n();
    if n == 1 {
        return Decision::by(Verdict::No, Shortcut::Unit);
    }
    let sigma = match arith::sigma(f) {
        Ok(s) => s,
        Err(e) => return Decision::unknown(e),
    };
    if !f.is_even() {
        if sigma % 2 == 0 {
            return Decision::by(Verdict::No, Shortcut::OddNonSquare);
        }
        return search_half(f, cfg);
    }
    if sigma % 2 != 0 {
        return Decision::by(Verdict::No, Shortcut::SigmaOdd);
    }
    if (sigma as u128) < 2 * n as u128 {
        return Decision::by(Verdict::No, Shortcut::Deficient);
    }
    if is_practical(f) {
        return Decision::by(Verdict::Yes, Shortcut::PracticalSigmaEven);
    }
    match is_zumkeller(f, cfg).verdict {
        Verdict::No => return Decision::by(Verdict::No, Shortcut::EvenNotZumkeller),
        Verdict::Yes => {
            if (sigma as u128) < 3 * n as u128 {
                return Decision::by(Verdict::Yes, Shortcut::SigmaBelowThreeN);
            }
            if n.is_multiple_of(3) && 3 * (sigma as u128) < 10 * n as u128 {
                return Decision::by(Verdict::Yes, Shortcut::SixDividesSigmaBelowTenThirds);
            }
        }
        Verdict::Unknown => {}
    }
    if let Ok(half) = arith::factorize(n / 2) {
        if is_zumkeller(&half, cfg).verdict == Verdict::Yes {
            return Decision::by(Verdict::Yes, Shortcut::DoubleOfZumkeller);
        }
    }
    search_half(f, cfg)
}

fn search_half(f: &Factorization, cfg: &SearchConfig) -> Decision {
    let d = match arith::divisors_capped(f, cfg.max_divisors) {
        Ok(d) => d,
        Err(e) => return Decision::unknown(e),
    };
    if f.is_even() && d.sigma() % 2 == 0 && d.has_doubling_chain() {
        return Decision::by(Verdict::Yes, Shortcut::DivisorChain);
    }
    match partition::find_half_zumkeller_witness(&d, cfg) {
        Ok(w) => Decision::searched(w.is_some()),
        Err(e) => Decision::unknown(e),
    }
}

/// A Zumkeller witness for `n`, or `None` when `n` is not Zumkeller.
pub fn zumkeller_witness(
    f: &Factorization,
    cfg: &SearchConfig,
) -> Result<Option<PartitionWitness>> {
    let sigma = arith::sigma(f)?;
    if sigma % 2 != 0 || (sigma as u128) < 2 * f.n() as u128 {
        return Ok(None);
    }
    let d = arith::divisors_capped(f, cfg.max_divisors)?;
    partition::find_zumkeller_witness(&d, cfg)
}

/// A half-Zumkeller witness for `n`, or `None` when there is none.
///
/// When the direct search gives up on an even `n = 2m`, a witness for `m`
/// is doubled instead.
pub fn half_zumkeller_witness(
    f: &Factorization,
    cfg: &SearchConfig,
) -> Result<Option<PartitionWitness>> {
    let d = arith::divisors_capped(f, cfg.max_divisors)?;
    match partition::find_half_zumkeller_witness(&d, cfg) {
        Err(e) if e.is_capacity() && f.is_even() => {
            let half = arith::factorize(f.n() / 2)?;
            match zumkeller_witness(&half, cfg) {
                Ok(Some(w)) => construct::double_to_half(&w).map(Some),
                _ => Err(e),
            }
        }
        other => other,
    }
}

/// Every predicate for one integer, as emitted by `classify` and the scanner.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub n: u64,
    pub sigma: u64,
    pub abundance: Abundance,
    pub zumkeller: Verdict,
    pub half_zumkeller: Verdict,
    pub practical: bool,
    pub quasi_practical: bool,
    /// `zumkeller:<tag>` and/or `half_zumkeller:<tag>`, comma separated.
    pub shortcut: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zumkeller_witness: Option<PartitionWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_zumkeller_witness: Option<PartitionWitness>,
}

impl ClassificationRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

/// Joins the shortcut tags of both tri-state predicates.
pub fn shortcut_label(z: Option<Shortcut>, h: Option<Shortcut>) -> Option<String> {
    let parts: Vec<String> = [("zumkeller", z), ("half_zumkeller", h)]
        .into_iter()
        .filter_map(|(name, s)| s.map(|s| format!("{name}:{s}")))
        .collect();
    (!parts.is_empty()).then(|| parts.join(","))
}

/// Classifies `n`; `with_witnesses` attaches certificates for every `yes`.
pub fn classify(n: u64, cfg: &SearchConfig, with_witnesses: bool) -> Result<ClassificationRecord> {
    let f = arith::factorize(n)?;
    classify_factored(&f, cfg, with_witnesses)
}

pub fn classify_factored(
    f: &Factorization,
    cfg: &SearchConfig,
    with_witnesses: bool,
) -> Result<ClassificationRecord> {
    let sigma = arith::sigma(f)?;
    let z = is_zumkeller(f, cfg);
    let h = is_half_zumkeller(f, cfg);
    let mut record = ClassificationRecord {
        n: f.n(),
        sigma,
        abundance: Abundance::of(f.n(), sigma),
        zumkeller: z.verdict,
        half_zumkeller: h.verdict,
        practical: is_practical(f),
        quasi_practical: is_quasi_practical(f, cfg)?,
        shortcut: shortcut_label(z.shortcut, h.shortcut),
        zumkeller_witness: None,
        half_zumkeller_witness: None,
    };
    if with_witnesses {
        if z.verdict.is_yes() {
            record.zumkeller_witness = zumkeller_witness(f, cfg).ok().flatten();
        }
        if h.verdict.is_yes() {
            record.half_zumkeller_witness = half_zumkeller_witness(f, cfg).ok().flatten();
        }
    }
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    fn fz(n: u64) -> Factorization {
        factorize(n).unwrap()
    }

    #[test]
    fn practical_examples() {
        for k in 1..=10 {
            assert!(is_practical(&fz(1 << k)));
        }
        assert!(!is_practical(&fz(70)));
        assert!(!is_practical(&fz(945)));
        assert!(is_practical(&fz(1)));
    }

    #[test]
    fn reachability_examples() {
        assert!(sigma_reachability_check(&fz(6), &cfg()).unwrap());
        assert!(!sigma_reachability_check(&fz(10), &cfg()).unwrap());
        assert!(sigma_reachability_check(&fz(1), &cfg()).unwrap());
        let big = fz(1 << 26);
        assert!(matches!(
            sigma_reachability_check(&big, &cfg()),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn quasi_practical_examples() {
        for p in [2u64, 3, 5, 7, 97, 7919] {
            assert!(is_quasi_practical(&fz(p), &cfg()).unwrap());
        }
        for k in 0..=20 {
            assert!(is_quasi_practical(&fz(1 << k), &cfg()).unwrap());
        }
        assert!(!is_quasi_practical(&fz(70), &cfg()).unwrap());
    }

    #[test]
    fn zumkeller_examples() {
        for n in [6, 12, 20, 24, 28, 30, 40, 945] {
            assert_eq!(is_zumkeller(&fz(n), &cfg()).verdict, Verdict::Yes, "{n}");
        }
        let d = is_zumkeller(&fz(36), &cfg());
        assert_eq!(d.verdict, Verdict::No);
        assert_eq!(d.shortcut, Some(Shortcut::OddDivisorCountOdd));
        assert_eq!(is_zumkeller(&fz(1), &cfg()).verdict, Verdict::No);
    }

    #[test]
    fn half_zumkeller_examples() {
        for n in [70, 350, 490, 225] {
            assert_eq!(
                is_half_zumkeller(&fz(n), &cfg()).verdict,
                Verdict::Yes,
                "{n}"
            );
        }
        assert_eq!(is_half_zumkeller(&fz(1575), &cfg()).verdict, Verdict::No);
        let d = is_half_zumkeller(&fz(945), &cfg());
        assert_eq!(
            (d.verdict, d.shortcut),
            (Verdict::No, Some(Shortcut::OddNonSquare))
        );
    }

    #[test]
    fn signature_filter_examples() {
        assert!(odd_zumkeller_signature_filter(&fz(3 * 5 * 7)).unwrap());
        assert!(odd_zumkeller_signature_filter(&fz(945)).unwrap());
        assert!(!odd_zumkeller_signature_filter(&fz(3 * 3 * 5)).unwrap());
        assert!(!odd_zumkeller_signature_filter(&fz(5 * 7 * 11)).unwrap());
        assert!(odd_zumkeller_signature_filter(&fz(6)).is_err());
        // four primes with p₂ = 7 survive: 3³·7²·11·13 is an odd Zumkeller number
        let n = 27 * 49 * 11 * 13;
        assert!(odd_zumkeller_signature_filter(&fz(n)).unwrap());
        assert_eq!(is_zumkeller(&fz(n), &cfg()).verdict, Verdict::Yes);
    }

    #[test]
    fn record_json_shape() {
        let r = classify(6, &cfg(), false).unwrap();
        assert_eq!(
            r.to_json(),
            r#"{"n":6,"sigma":12,"abundance":"perfect","zumkeller":"yes","half_zumkeller":"yes","practical":true,"quasi_practical":true,"shortcut":"zumkeller:practical_sigma_even,half_zumkeller:practical_sigma_even"}"#
        );
        let r = classify(945, &cfg(), true).unwrap();
        assert_eq!(r.zumkeller, Verdict::Yes);
        assert_eq!(r.half_zumkeller, Verdict::No);
        assert!(r.zumkeller_witness.is_some());
        assert!(r.half_zumkeller_witness.is_none());
    }

    #[test]
    fn record_invariants_to_3000() {
        for n in 1..=3000u64 {
            let r = classify(n, &cfg(), false).unwrap();
            if r.half_zumkeller == Verdict::Yes && n % 2 == 0 {
                assert_eq!(r.zumkeller, Verdict::Yes, "{n}");
            }
            if r.practical {
                assert!(n % 2 == 0 || n == 1);
            }
            if r.zumkeller == Verdict::Yes {
                assert!(r.sigma.is_multiple_of(2) && r.sigma >= 2 * n);
            }
            assert_ne!(r.zumkeller, Verdict::Unknown);
            assert_ne!(r.half_zumkeller, Verdict::Unknown);
        }
    }
}
