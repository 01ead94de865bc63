//! Bounded-digit representations, the four equivalent conditions for `np`,
//! predictions for practical `n` times a prime power, and the prefilter on
//! even Zumkeller numbers that are not half-Zumkeller.
//!
//!     cargo run --example theory

use zumkeller::theory::*;
use zumkeller::{classify, factorize, SearchConfig};

fn main() -> anyhow::Result<()> {
    for (p, caps, m) in [
        (2, vec![1, 1, 1], 5u128),
        (3, vec![2, 1], 4),
        (3, vec![1, 1], 2),
    ] {
        let b = DigitBounds::new(p, caps.clone())?;
        println!(
            "p = {p} caps {caps:?}: conditions {}, {m} -> {:?}",
            digit_conditions_hold(&b)?,
            digit_decompose(m, &b)?
        );
    }

    for (n, p) in [(4, 7), (3, 5), (20, 3), (70, 3)] {
        let r = multiplyz_equivalence(n, p, MULTIPLYZ_DIVISOR_CAP)?;
        println!(
            "n = {n}, p = {p}: ({}, {}, {}, {})",
            r.zumkeller, r.signed_sum, r.half_difference, r.weighted
        );
    }
    let d1 = [2450, 98, 50, 35, 10, 5, 2];
    println!(
        "2450, p = 11, 6 = (7 + 1) - 2: {}",
        check_half_difference_witness(2450, 11, &d1, &[7, 1], &[2])?
    );

    let cfg = SearchConfig::default();
    for (n, p, l) in [(2, 3, 1), (2, 5, 1), (2, 3, 2), (12, 5, 2)] {
        let pred = practical_times_prime_power(&factorize(n)?, p, l)?;
        let m = n * p.pow(l);
        let z = classify::is_zumkeller(&factorize(m)?, &cfg).verdict;
        println!(
            "{n} * {p}^{l} = {m}: predicted {}, classified {z}",
            pred.zumkeller
        );
    }

    let c = CounterexampleCandidate::new(&factorize(4 * 9 * 25 * 2833 * 2837)?)?;
    println!(
        "{}: prefix sigma + 1 = {:?}, j = {:?}, survives prefilter: {}",
        c.n,
        c.prefix_sigma.iter().map(|s| s + 1).collect::<Vec<_>>(),
        c.j,
        znoth_prefilter(&c)?
    );
    Ok(())
}
