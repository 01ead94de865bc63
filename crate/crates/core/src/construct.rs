//! Witness lifting: new certificates built from old ones by replaying the
//! constructive proofs, with no search involved.

use crate::arith::{self, Factorization, MAX_N};
use crate::error::{Error, Result};
use crate::partition::{self, check_witness, PartitionWitness, WitnessKind};

fn checked_n(n: u64, mult: u64) -> Result<u64> {
    match n.checked_mul(mult) {
        Some(m) if m <= MAX_N => Ok(m),
        _ => Err(Error::range(format!("{n} * {mult} exceeds {MAX_N}"))),
    }
}

/// Copies the two parts of a full partition of the divisors of `n` into
/// every block `mult · D₀`, ascending by multiplier.
fn replicate(part_a: &[u64], part_b: &[u64], mults: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut a = Vec::with_capacity(part_a.len() * mults.len());
    let mut b = Vec::with_capacity(part_b.len() * mults.len());
    for &m in mults {
        a.extend(part_a.iter().map(|&d| d * m));
        b.extend(part_b.iter().map(|&d| d * m));
    }
    (a, b)
}

/// Replicates `w` over the blocks `D₀·mᵢ`. Half witnesses go through the
/// full partition that separates `n` from `n/2`, which the replication keeps
/// separated at the top block.
fn lift_by_blocks(w: &PartitionWitness, new_n: u64, mults: &[u64]) -> Result<PartitionWitness> {
    let lifted = match w.kind {
        WitnessKind::Zumkeller => {
            let (a, b) = replicate(&w.part_a, &w.part_b, mults);
            PartitionWitness::new(new_n, WitnessKind::Zumkeller, a, b)
        }
        WitnessKind::HalfZumkeller => {
            let (with_n, with_half) = w.separated_parts().ok_or_else(|| {
                Error::domain(format!("half witness for odd {} cannot be lifted", w.n))
            })?;
            let (a, b) = replicate(&with_n, &with_half, mults);
            PartitionWitness::from_separated(new_n, a, b)
        }
    };
    debug_assert!(partition::verify_witness(&lifted));
    Ok(lifted)
}

fn require_valid(w: &PartitionWitness) -> Result<()> {
    check_witness(w).map_err(|e| Error::domain(format!("input witness for {} rejected: {e}", w.n)))
}

/// Witness for `n·p^l` from a witness for `n`, where `p ∤ n`.
pub fn lift_coprime_prime_power(w: &PartitionWitness, p: u64, l: u32) -> Result<PartitionWitness> {
    require_valid(w)?;
    if l == 0 {
        return Err(Error::domain("exponent l must be positive"));
    }
    if !arith::is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if w.n.is_multiple_of(p) {
        return Err(Error::domain(format!("{p} divides {}", w.n)));
    }
    let new_n = checked_n(w.n, arith::checked_pow(p, l)?)?;
    let mults: Vec<u64> = (0..=l).map(|i| p.pow(i)).collect();
    lift_by_blocks(w, new_n, &mults)
}

/// Witness for `n·p^{l(k+1)}` where `p^k ∥ n` is the prime at position
/// `index` (zero based, ascending) of the factorization of `n`.
pub fn lift_same_prime(w: &PartitionWitness, index: usize, l: u32) -> Result<PartitionWitness> {
    require_valid(w)?;
    if l == 0 {
        return Err(Error::domain("exponent l must be positive"));
    }
    let f = arith::factorize(w.n)?;
    let &(p, k) = f.factors().get(index).ok_or_else(|| {
        Error::domain(format!(
            "{} has {} distinct primes, index {index} is out of range",
            w.n,
            f.factors().len()
        ))
    })?;
    let step = arith::checked_pow(p, k + 1)?;
    let total = l
        .checked_mul(k + 1)
        .ok_or_else(|| Error::range("exponent overflow"))?;
    let new_n = checked_n(w.n, arith::checked_pow(p, total)?)?;
    let mults: Vec<u64> = (0..=l).map(|i| step.pow(i)).collect();
    lift_by_blocks(w, new_n, &mults)
}

/// Half-Zumkeller witness for `2n` from a Zumkeller witness for `n`.
///
/// With `n = 2^k·L`, `L` odd: for every `l | L` other than `L`, the divisor
/// `2^k·l` moves to the other part and `2^{k+1}·l` takes its old place.
pub fn double_to_half(w: &PartitionWitness) -> Result<PartitionWitness> {
    if w.kind != WitnessKind::Zumkeller {
        return Err(Error::domain("doubling needs a Zumkeller witness"));
    }
    require_valid(w)?;
    let n = w.n;
    let doubled = checked_n(n, 2)?;
    let two_k = 1u64 << n.trailing_zeros();
    let odd = n / two_k;
    let mut a = w.part_a.clone();
    let mut b = w.part_b.clone();
    let odd_divisors = arith::divisors(&arith::factorize(odd)?)?;
    for &l in odd_divisors.divisors().iter().filter(|&&l| l != odd) {
        let low = two_k * l;
        let (from, to) = if a.binary_search(&low).is_ok() {
            (&mut a, &mut b)
        } else {
            (&mut b, &mut a)
        };
        let pos = from
            .binary_search(&low)
            .expect("divisor present in one part");
        from[pos] = 2 * low;
        from.sort_unstable();
        let ins = to.binary_search(&low).unwrap_err();
        to.insert(ins, low);
    }
    let out = PartitionWitness::new(doubled, WitnessKind::HalfZumkeller, a, b);
    debug_assert!(partition::verify_witness(&out));
    Ok(out)
}

pub const MAX_FACTORIAL: u64 = 20;

pub fn factorial(n: u64) -> Result<u64> {
    (1..=n).try_fold(1u64, |acc, i| {
        acc.checked_mul(i)
            .filter(|&v| v <= MAX_N)
            .ok_or_else(|| Error::range(format!("{n}! exceeds {MAX_N}")))
    })
}

/// Zumkeller witness for `n!` from the signed divisor chain: consecutive
/// divisors of a factorial never more than double.
pub fn factorial_witness(n: u64) -> Result<PartitionWitness> {
    if n < 3 {
        return Err(Error::domain(format!("{n}! is not Zumkeller; need n >= 3")));
    }
    if n > MAX_FACTORIAL {
        return Err(Error::capacity(
            format!("{n}! for 64-bit divisors"),
            MAX_FACTORIAL,
        ));
    }
    let f = arith::factorize(factorial(n)?)?;
    debug_assert_eq!(largest_prime_exponent(&f), 1);
    let d = arith::divisors(&f)?;
    partition::chain_sign_partition(&d)
        .ok_or_else(|| Error::domain(format!("divisors of {n}! fail the chain condition")))
}

/// Exponent of the largest prime `≤ n` in `n!`.
pub fn largest_prime_exponent(f: &Factorization) -> u32 {
    f.factors().last().map_or(0, |&(_, k)| k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify;
    use crate::config::SearchConfig;
    use crate::partition::verify_witness;

    fn zw(n: u64) -> PartitionWitness {
        let f = arith::factorize(n).unwrap();
        classify::zumkeller_witness(&f, &SearchConfig::default())
            .unwrap()
            .unwrap()
    }

    fn hw(n: u64) -> PartitionWitness {
        let f = arith::factorize(n).unwrap();
        classify::half_zumkeller_witness(&f, &SearchConfig::default())
            .unwrap()
            .unwrap()
    }

    #[test]
    fn coprime_lifts() {
        let w = lift_coprime_prime_power(&zw(6), 5, 1).unwrap();
        assert_eq!(w.n, 30);
        assert!(verify_witness(&w));

        let w = lift_coprime_prime_power(&hw(70), 3, 2).unwrap();
        assert_eq!((w.n, w.kind), (630, WitnessKind::HalfZumkeller));
        assert!(verify_witness(&w));

        assert!(matches!(
            lift_coprime_prime_power(&zw(6), 3, 1),
            Err(Error::Domain(_))
        ));
        assert!(lift_coprime_prime_power(&zw(6), 9, 1).is_err());
    }

    #[test]
    fn same_prime_lifts() {
        let w = lift_same_prime(&zw(6), 0, 1).unwrap();
        assert_eq!(w.n, 24);
        assert!(verify_witness(&w));
        let w = lift_same_prime(&zw(6), 1, 1).unwrap();
        assert_eq!(w.n, 54);
        assert!(verify_witness(&w));
        let w = lift_same_prime(&zw(945), 0, 1).unwrap();
        assert_eq!(w.n, 945 * 81);
        assert!(verify_witness(&w));
        let w = lift_same_prime(&hw(70), 2, 2).unwrap();
        assert_eq!(w.n, 70 * 7u64.pow(4));
        assert!(verify_witness(&w));
        assert!(matches!(
            lift_same_prime(&zw(6), 2, 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn doubling() {
        for (n, expect) in [(6u64, 12u64), (945, 1890), (20, 40)] {
            let w = double_to_half(&zw(n)).unwrap();
            assert_eq!(w.n, expect);
            assert!(verify_witness(&w), "{n}");
        }
        let w = double_to_half(&zw(6)).unwrap();
        assert_eq!(w.half_sum(), 8);
        assert!(double_to_half(&hw(70)).is_err());
    }

    #[test]
    fn bad_input_witness_is_rejected() {
        let mut w = zw(6);
        w.part_b.push(4);
        assert!(lift_coprime_prime_power(&w, 5, 1).is_err());
        assert!(double_to_half(&w).is_err());
    }

    #[test]
    fn factorials() {
        for n in 3..=12 {
            let w = factorial_witness(n).unwrap();
            assert!(verify_witness(&w), "{n}!");
            let f = arith::factorize(factorial(n).unwrap()).unwrap();
            assert_eq!(largest_prime_exponent(&f), 1);
        }
        assert_eq!(
            arith::divisors(&arith::factorize(720).unwrap())
                .unwrap()
                .len(),
            30
        );
        assert_eq!(
            factorial_witness(12).unwrap().part_a.len()
                + factorial_witness(12).unwrap().part_b.len(),
            792
        );
        assert!(factorial_witness(2).is_err());
        assert!(matches!(factorial_witness(21), Err(Error::Capacity { .. })));
    }
}
