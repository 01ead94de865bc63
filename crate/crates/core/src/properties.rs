//! Bulk property checks behind the `verify` command. Each returns a report
//! listing every failure it met.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith;
use crate::classify;
use crate::error::{Error, Result};
use crate::scan::{self, ScanOptions};
use crate::theory::{self, DigitBounds};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// Every even Zumkeller number is half-Zumkeller.
    Conjecture2,
    /// Mixed-radix digit bounds represent every value up to their maximum.
    Lemma1,
    /// The four equivalent conditions for `n·p` being Zumkeller agree.
    Multiplyz,
    /// Predicted verdicts for products with new primes match classification.
    Prediction,
    /// Stewart's criterion matches σ-reachability.
    Practical,
    /// The counterexample prefilter passes a known candidate and no number with σ(n) < 3n.
    Prefilter,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::Conjecture2,
        Property::Lemma1,
        Property::Multiplyz,
        Property::Prediction,
        Property::Practical,
        Property::Prefilter,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Property::Conjecture2 => "conjecture2",
            Property::Lemma1 => "lemma1",
            Property::Multiplyz => "multiplyz",
            Property::Prediction => "prediction",
            Property::Practical => "practical",
            Property::Prefilter => "prefilter",
        }
    }

    /// Range used when none is given.
    pub fn default_to(self) -> u64 {
        match self {
            Property::Conjecture2 => 10_000,
            Property::Lemma1 => 0,
            Property::Multiplyz => 200,
            Property::Prediction => 500,
            Property::Practical => 100_000,
            Property::Prefilter => 100_000,
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown property {s:?}")))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub property: Property,
    pub to: u64,
    pub checked: u64,
    pub pass: bool,
    /// Numbers left undecided for lack of capacity.
    pub unknowns: Vec<u64>,
    pub failures: Vec<Value>,
}

impl PropertyReport {
    fn new(
        property: Property,
        to: u64,
        checked: u64,
        failures: Vec<Value>,
        unknowns: Vec<u64>,
    ) -> Self {
        PropertyReport {
            property,
            to,
            checked,
            pass: failures.is_empty() && unknowns.is_empty(),
            unknowns,
            failures,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

pub fn verify(property: Property, to: Option<u64>, opts: &ScanOptions) -> Result<PropertyReport> {
    let to = to.unwrap_or(property.default_to());
    match property {
        Property::Conjecture2 => {
            let r = scan::verify_conjecture2(to, opts)?;
            let mut failures: Vec<Value> = r
                .counterexamples
                .iter()
                .map(|n| json!({"counterexample": n}))
                .collect();
            failures.extend(
                r.prefilter_misses
                    .iter()
                    .map(|n| json!({"prefilter_miss": n})),
            );
            failures.extend(
                r.prefilter_sigma_conflicts
                    .iter()
                    .map(|n| json!({"prefilter_sigma_conflict": n})),
            );
            Ok(PropertyReport::new(
                property,
                to,
                to / 2,
                failures,
                r.unknowns,
            ))
        }
        Property::Lemma1 => {
            let (checked, failures) = lemma1_sweep(&[2, 3, 5], 3, 4)?;
            Ok(PropertyReport::new(property, to, checked, failures, vec![]))
        }
        Property::Multiplyz => {
            let (checked, failures) = multiplyz_sweep(to, 12, &[3, 5, 7, 11, 13])?;
            Ok(PropertyReport::new(property, to, checked, failures, vec![]))
        }
        Property::Prediction => prediction_sweep(to, 50, 3, opts),
        Property::Practical => practical_sweep(to, opts),
        Property::Prefilter => prefilter_check(to, opts),
    }
}

/// Every bound set with base in `primes`, top index up to `max_l` and caps
/// up to `max_cap`: when the top cap is positive, the digit conditions hold
/// exactly when every value is representable; whenever they hold, the greedy
/// decomposition never fails.
pub fn lemma1_sweep(primes: &[u64], max_l: usize, max_cap: u64) -> Result<(u64, Vec<Value>)> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for &p in primes {
        for len in 1..=max_l + 1 {
            let combos = (max_cap + 1).pow(len as u32);
            for code in 0..combos {
                let caps: Vec<u64> = (0..len)
                    .map(|i| code / (max_cap + 1).pow(i as u32) % (max_cap + 1))
                    .collect();
                let b = DigitBounds::new(p, caps.clone())?;
                checked += 1;
                let holds = theory::digit_conditions_hold(&b)?;
                // with a zero top digit the top condition constrains nothing real
                let top_positive = caps[len - 1] > 0;
                if top_positive && holds != theory::all_values_representable(&b)? {
                    failures.push(json!({"p": p, "caps": caps, "conditions": holds}));
                    continue;
                }
                if holds {
                    for m in 0..=b.max_value()? {
                        let ok = theory::digit_decompose(m, &b)?.is_some_and(|c| {
                            c.iter().zip(&caps).all(|(x, a)| x <= a)
                                && c.iter()
                                    .enumerate()
                                    .map(|(i, &x)| x as u128 * (p as u128).pow(i as u32))
                                    .sum::<u128>()
                                    == m
                        });
                        if !ok {
                            failures
                                .push(json!({"p": p, "caps": caps, "greedy_failed_at": m as u64}));
                            break;
                        }
                    }
                }
            }
        }
    }
    Ok((checked, failures))
}

/// The four conditions agree for every `n ≤ to` with at most `max_divisors`
/// divisors and every listed prime not dividing `n`, plus the worked
/// instance for `2·5²·7²` and `p = 11`.
pub fn multiplyz_sweep(to: u64, max_divisors: u64, primes: &[u64]) -> Result<(u64, Vec<Value>)> {
    let cases: Vec<(u64, u64)> = (1..=to)
        .filter(|&n| arith::factorize(n).is_ok_and(|f| f.divisor_count() <= max_divisors))
        .flat_map(|n| {
            primes
                .iter()
                .filter(move |&&p| n % p != 0)
                .map(move |&p| (n, p))
        })
        .collect();
    let reports: Vec<Result<theory::MultiplyzReport>> = cases
        .par_iter()
        .map(|&(n, p)| theory::multiplyz_equivalence(n, p, theory::MULTIPLYZ_DIVISOR_CAP))
        .collect();
    let mut failures = Vec::new();
    for r in reports {
        let r = r?;
        if !r.agree() {
            failures.push(serde_json::to_value(r).expect("report serializes"));
        }
    }
    let d1 = [2450, 98, 50, 35, 10, 5, 2];
    if !theory::check_half_difference_witness(2450, 11, &d1, &[7, 1], &[2])? {
        failures.push(json!({"n": 2450, "p": 11, "golden": "6 = (7 + 1) - 2"}));
    }
    Ok((cases.len() as u64 + 1, failures))
}

fn with_pool<T: Send>(opts: &ScanOptions, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::capacity(format!("worker pool: {e}"), opts.workers as u64))?;
    Ok(pool.install(f))
}

/// Predictions for practical `n ≤ to` times `p^l` (`p ≤ max_p` prime,
/// `p ∤ n`, `l ≤ max_l`) against witness search on `n·p^l`.
pub fn prediction_sweep(
    to: u64,
    max_p: u64,
    max_l: u32,
    opts: &ScanOptions,
) -> Result<PropertyReport> {
    let cfg = &opts.search;
    let mut cases = Vec::new();
    for n in 1..=to {
        let f = arith::factorize(n)?;
        if !classify::is_practical(&f) {
            continue;
        }
        for p in (2..=max_p).filter(|&p| arith::is_prime(p) && n % p != 0) {
            for l in 1..=max_l {
                cases.push((f.clone(), p, l));
            }
        }
    }
    let outcomes = with_pool(opts, || {
        cases
            .par_iter()
            .map(|(f, p, l)| -> Result<Option<Value>> {
                let predicted = theory::practical_times_prime_power(f, *p, *l)?;
                let g = f.times_prime_power(*p, *l)?;
                let z = classify::zumkeller_witness(&g, cfg)?.is_some();
                let h = classify::half_zumkeller_witness(&g, cfg)?.is_some();
                Ok((predicted.zumkeller != z || predicted.half_zumkeller != h).then(|| {
                    json!({"n": f.n(), "p": p, "l": l, "predicted": predicted.zumkeller, "zumkeller": z, "half_zumkeller": h})
                }))
            })
            .collect::<Vec<_>>()
    })?;
    let mut failures = Vec::new();
    let mut unknowns = Vec::new();
    for ((f, p, l), o) in cases.iter().zip(outcomes) {
        match o {
            Ok(Some(v)) => failures.push(v),
            Ok(None) => {}
            Err(e) if e.is_capacity() => unknowns.push(f.n() * p.pow(*l)),
            Err(e) => return Err(e),
        }
    }
    Ok(PropertyReport::new(
        Property::Prediction,
        to,
        cases.len() as u64,
        failures,
        unknowns,
    ))
}

/// For every `n ≤ to`: Stewart's criterion matches σ-reachability, and a
/// practical `n` has Zumkeller and half-Zumkeller witnesses exactly when
/// σ(n) is even.
pub fn practical_sweep(to: u64, opts: &ScanOptions) -> Result<PropertyReport> {
    let cfg = &opts.search;
    let outcomes = with_pool(opts, || {
        (1..=to)
            .into_par_iter()
            .map(|n| -> Result<Option<Value>> {
                let f = arith::factorize(n)?;
                let stewart = classify::is_practical(&f);
                let reach = classify::sigma_reachability_check(&f, cfg)?;
                if stewart != reach {
                    return Ok(Some(json!({"n": n, "stewart": stewart, "reachability": reach})));
                }
                if stewart {
                    let even = arith::sigma(&f)? % 2 == 0;
                    let z = classify::zumkeller_witness(&f, cfg)?.is_some();
                    let h = classify::half_zumkeller_witness(&f, cfg)?.is_some();
                    if z != even || h != even {
                        return Ok(Some(json!({"n": n, "sigma_even": even, "zumkeller": z, "half_zumkeller": h})));
                    }
                }
                Ok(None)
            })
            .collect::<Vec<_>>()
    })?;
    let mut failures = Vec::new();
    let mut unknowns = Vec::new();
    for (n, o) in (1..=to).zip(outcomes) {
        match o {
            Ok(Some(v)) => failures.push(v),
            Ok(None) => {}
            Err(e) if e.is_capacity() => unknowns.push(n),
            Err(e) => return Err(e),
        }
    }
    Ok(PropertyReport::new(
        Property::Practical,
        to,
        to,
        failures,
        unknowns,
    ))
}

/// The worked candidate `2²·3²·5²·2833·2837` passes the prefilter with
/// prefix constants 92 and 2822, and no even Zumkeller `n ≤ to` with
/// σ(n) < 3n passes it.
pub fn prefilter_check(to: u64, opts: &ScanOptions) -> Result<PropertyReport> {
    let mut failures = Vec::new();
    let n = 4 * 9 * 25 * 2833 * 2837;
    let c = theory::CounterexampleCandidate::new(&arith::factorize(n)?)?;
    let golden = (
        c.prefix_sigma[1] + 1,
        c.prefix_sigma[2] + 1,
        theory::znoth_prefilter(&c)?,
    );
    if golden != (92, 2822, true) {
        failures.push(
            json!({"n": n, "prefix_92": golden.0, "prefix_2822": golden.1, "passes": golden.2}),
        );
    }
    let r = scan::verify_conjecture2(to, opts)?;
    failures.extend(
        r.prefilter_sigma_conflicts
            .iter()
            .map(|n| json!({"prefilter_sigma_conflict": n})),
    );
    Ok(PropertyReport::new(
        Property::Prefilter,
        to,
        r.even_zumkeller + 1,
        failures,
        r.unknowns,
    ))
}
