use proptest::prelude::*;
use rayon::prelude::*;

use zumkeller::arith::{self, divisors, factorize, sigma, Abundance};
use zumkeller::classify::{
    self, is_half_zumkeller, is_practical, is_quasi_practical, is_zumkeller,
};
use zumkeller::construct::lift_coprime_prime_power;
use zumkeller::partition::{self, Bits};
use zumkeller::scan::{density_report, scan_range, Predicate, ScanOptions};
use zumkeller::{verify_witness, PartitionWitness, SearchConfig, Verdict};

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

/// Every total up to `limit` reachable from distinct `values`, by bitset.
fn covers(values: &[u64], limit: u64) -> bool {
    let mut reach = Bits::with_zero(limit as usize + 1);
    for &v in values.iter().filter(|&&v| v <= limit) {
        reach.or_shifted_self(v as usize);
    }
    reach.all()
}

#[test]
fn quasi_practical_is_practical_or_prime_to_10k() {
    for n in 1..=10_000u64 {
        let f = factorize(n).unwrap();
        let d = divisors(&f).unwrap();
        let brute = covers(d.proper(), d.sigma() - n);
        assert_eq!(is_quasi_practical(&f, &cfg()).unwrap(), brute, "{n}");
        assert_eq!(
            brute,
            is_practical(&f) || arith::is_prime(n) || n == 1,
            "{n}"
        );
    }
}

#[test]
fn zumkeller_numbers_are_not_deficient_to_100k() {
    let bad: Vec<u64> = (1..=100_000u64)
        .into_par_iter()
        .filter(|&n| {
            let f = factorize(n).unwrap();
            let z = is_zumkeller(&f, &cfg()).verdict;
            let class = arith::abundance_class(&f).unwrap();
            z == Verdict::Unknown || (z == Verdict::Yes && class == Abundance::Deficient)
        })
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn record_invariants_to_20k() {
    for n in 1..=20_000u64 {
        let r = classify::classify(n, &cfg(), false).unwrap();
        if r.half_zumkeller == Verdict::Yes && n % 2 == 0 {
            assert_eq!(r.zumkeller, Verdict::Yes, "{n}");
        }
        if r.practical {
            assert!(n % 2 == 0 || n == 1, "{n}");
        }
        if r.zumkeller == Verdict::Yes {
            assert!(r.sigma.is_multiple_of(2) && r.sigma >= 2 * n, "{n}");
        }
        assert_ne!(r.zumkeller, Verdict::Unknown, "{n}");
        assert_ne!(r.half_zumkeller, Verdict::Unknown, "{n}");
    }
}

#[test]
fn odd_zumkeller_to_1m_pass_signature_filter() {
    let r = scan_range(
        Predicate::OddZumkeller,
        1,
        1_000_000,
        &ScanOptions::default(),
    )
    .unwrap();
    assert!(r.is_complete(), "{:?}", r.unknowns);
    assert_eq!(r.matches[0], 945);
    for &n in &r.matches {
        let f = factorize(n).unwrap();
        assert!(classify::odd_zumkeller_signature_filter(&f).unwrap(), "{n}");
    }
    // an odd Zumkeller number with four primes and p₂ = 7
    assert!(r.matches.contains(&189_189));
}

#[test]
fn even_zumkeller_iff_half_or_three_n_gap_to_100k() {
    let c = cfg();
    let bad: Vec<u64> = (1..=50_000u64)
        .into_par_iter()
        .map(|k| 2 * k)
        .filter(|&n| {
            let f = factorize(n).unwrap();
            let d = divisors(&f).unwrap();
            let z = is_zumkeller(&f, &c).verdict == Verdict::Yes;
            let h = is_half_zumkeller(&f, &c).verdict == Verdict::Yes;
            let s = d.sigma();
            let gap = s >= 3 * n && (s - 3 * n).is_multiple_of(2) && {
                let rest: Vec<u64> = d.proper().iter().copied().filter(|&x| x != n / 2).collect();
                partition::subset_with_sum(&rest, (s - 3 * n) / 2, &[], &c)
                    .unwrap()
                    .is_some()
            };
            z != (h || gap)
        })
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn non_zumkeller_base_constraints() {
    let c = cfg();
    for n in 1..=300u64 {
        let f = factorize(n).unwrap();
        if is_zumkeller(&f, &c).verdict != Verdict::No {
            continue;
        }
        let s = sigma(&f).unwrap();
        for p in (2..=30u64).filter(|&p| arith::is_prime(p) && n % p != 0) {
            for l in 1..=2u32 {
                let g = f.times_prime_power(p, l).unwrap();
                if is_zumkeller(&g, &c).verdict == Verdict::Yes {
                    assert!(p <= s, "{n} * {p}^{l}");
                    if s % 2 == 1 {
                        assert_eq!(l % 2, 1, "{n} * {p}^{l}");
                    }
                }
            }
        }
    }
}

#[test]
fn repeated_coprime_lifts_match_classification() {
    let c = cfg();
    let primes = [3u64, 5, 7, 11, 13];
    for n in 1..=100u64 {
        let f = factorize(n).unwrap();
        let Some(w) = classify::zumkeller_witness(&f, &c).unwrap() else {
            continue;
        };
        for &p in primes.iter().filter(|&&p| n % p != 0) {
            for &q in primes.iter().filter(|&&q| q > p && n % q != 0) {
                if n * p * q > 10_000 {
                    continue;
                }
                let lifted =
                    lift_coprime_prime_power(&lift_coprime_prime_power(&w, p, 1).unwrap(), q, 1)
                        .unwrap();
                assert!(verify_witness(&lifted));
                let direct = is_zumkeller(&factorize(n * p * q).unwrap(), &c).verdict;
                assert_eq!(direct, Verdict::Yes, "{n} * {p} * {q}");
            }
        }
    }
}

#[test]
fn coprime_products_of_half_zumkeller_with_even_factor() {
    let c = cfg();
    let half = |n: u64| is_half_zumkeller(&factorize(n).unwrap(), &c).verdict == Verdict::Yes;
    let evens: Vec<u64> = (2..=200).step_by(2).filter(|&m| half(m)).collect();
    let odds: Vec<u64> = (3..=3000).step_by(2).filter(|&m| half(m)).collect();
    assert!(odds.contains(&225));
    let mut checked = 0;
    for &m in &evens {
        for &k in odds
            .iter()
            .filter(|&&k| arith::factorize(m).unwrap().primes().all(|p| k % p != 0))
        {
            assert!(half(m * k), "{m} * {k}");
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn scans_are_prefixes_and_witnesses_verify() {
    let opts = ScanOptions {
        witnesses: true,
        ..ScanOptions::default()
    };
    let small = scan_range(Predicate::HalfZumkeller, 1, 3_000, &opts).unwrap();
    let big = scan_range(Predicate::HalfZumkeller, 1, 30_000, &opts).unwrap();
    assert_eq!(big.matches[..small.matches.len()], small.matches[..]);
    for rec in big.records.iter().step_by(100) {
        let w = rec
            .half_zumkeller_witness
            .as_ref()
            .expect("witness attached");
        assert!(verify_witness(w), "{}", rec.n);
        if let Some(z) = &rec.zumkeller_witness {
            assert!(verify_witness(z), "{}", rec.n);
        }
    }
}

#[test]
fn abundant_density_at_one_million() {
    let r = density_report(1_000_000, 100_000, &ScanOptions::default()).unwrap();
    let last = r.last();
    assert!(
        (0.24..=0.26).contains(&last.cumulative_abundant),
        "{}",
        last.cumulative_abundant
    );
    assert!(last.cumulative_zumkeller > 0.0);
    assert!(last.cumulative_zumkeller <= last.cumulative_abundant);
    assert_eq!(r.unknowns(), 0);
}

#[test]
fn worker_count_and_chunk_size_do_not_change_matches() {
    let base = scan_range(
        Predicate::Zumkeller,
        1,
        20_000,
        &ScanOptions::default().with_workers(1),
    )
    .unwrap();
    for (workers, chunk) in [(3, 1000), (8, 4096), (16, 777)] {
        let mut o = ScanOptions::default().with_workers(workers);
        o.chunk_size = chunk;
        let r = scan_range(Predicate::Zumkeller, 1, 20_000, &o).unwrap();
        assert_eq!(r.matches, base.matches);
        assert_eq!(r.records, base.records);
    }
}

#[test]
fn seed_and_restarts_do_not_change_verdicts() {
    let other = SearchConfig::default().with_seed(0x1234).with_restarts(3);
    for n in (2..=5_000u64).step_by(7) {
        let f = factorize(n).unwrap();
        assert_eq!(
            is_zumkeller(&f, &cfg()).verdict,
            is_zumkeller(&f, &other).verdict,
            "{n}"
        );
        assert_eq!(
            is_half_zumkeller(&f, &cfg()).verdict,
            is_half_zumkeller(&f, &other).verdict,
            "{n}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn witnesses_survive_json(n in 1u64..200_000) {
        let f = factorize(n).unwrap();
        for w in [classify::zumkeller_witness(&f, &cfg()).unwrap(), classify::half_zumkeller_witness(&f, &cfg()).unwrap()]
            .into_iter()
            .flatten()
        {
            prop_assert!(verify_witness(&w));
            let back = PartitionWitness::from_json(&w.to_json()).unwrap();
            prop_assert_eq!(&back, &w);
        }
    }

    #[test]
    fn moving_one_divisor_breaks_a_witness(n in 2u64..50_000, pick in any::<prop::sample::Index>()) {
        let f = factorize(n).unwrap();
        if let Some(mut w) = classify::zumkeller_witness(&f, &cfg()).unwrap() {
            let i = pick.index(w.part_a.len());
            let d = w.part_a.remove(i);
            w.part_b.push(d);
            w.part_b.sort_unstable();
            prop_assert!(!verify_witness(&w));
        }
    }

    #[test]
    fn sigma_is_multiplicative(a in 1u64..100_000, b in 1u64..100_000) {
        prop_assume!(num_gcd(a, b) == 1);
        let s = |n| sigma(&factorize(n).unwrap()).unwrap();
        prop_assert_eq!(s(a * b), s(a) * s(b));
    }
}

fn num_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
