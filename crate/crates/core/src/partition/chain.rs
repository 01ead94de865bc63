use crate::arith::DivisorSet;

use super::witness::{PartitionWitness, WitnessKind};

/// Signs assigned to the divisors `a₁ < … < a_k` from the top down: `a_k`
/// gets `+`, and every next smaller divisor gets the sign opposite to the
/// running sum of everything above it (`-` when that sum is zero).
///
/// When each divisor is at most twice its predecessor the running sum `s_i`
/// over `a_i..a_k` never exceeds `a_i` in absolute value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedChain {
    pub divisors: Vec<u64>,
    /// `+1` or `-1`, aligned with `divisors`.
    pub signs: Vec<i8>,
    /// `running_sums[i]` is the signed sum of `divisors[i..]`.
    pub running_sums: Vec<i128>,
}

impl SignedChain {
    /// Builds the chain, or `None` when some gap `a_{i+1} > 2a_i` breaks the
    /// doubling condition.
    pub fn build(d: &DivisorSet) -> Option<Self> {
        if !d.has_doubling_chain() {
            return None;
        }
        let divisors = d.divisors().to_vec();
        let k = divisors.len();
        let mut signs = vec![0i8; k];
        let mut running_sums = vec![0i128; k];
        let mut s: i128 = 0;
        for i in (0..k).rev() {
            let a = divisors[i] as i128;
            let sign = if i == k - 1 || s < 0 { 1 } else { -1 };
            s += sign as i128 * a;
            debug_assert!(s.abs() <= a, "|s_i| <= a_i violated at a_i = {a}");
            signs[i] = sign;
            running_sums[i] = s;
        }
        Some(SignedChain {
            divisors,
            signs,
            running_sums,
        })
    }

    /// The final signed sum `s₁`.
    pub fn total(&self) -> i128 {
        self.running_sums.first().copied().unwrap_or(0)
    }

    /// `(positive divisors, negative divisors)`.
    pub fn split(&self) -> (Vec<u64>, Vec<u64>) {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (&d, &s) in self.divisors.iter().zip(&self.signs) {
            if s > 0 {
                pos.push(d);
            } else {
                neg.push(d);
            }
        }
        (pos, neg)
    }
}

/// Zumkeller partition from the signed chain; requires the doubling
/// condition on all divisors and an even σ(n). `n` always lands in `part_a`.
pub fn chain_sign_partition(d: &DivisorSet) -> Option<PartitionWitness> {
    if !d.sigma().is_multiple_of(2) {
        return None;
    }
    let chain = SignedChain::build(d)?;
    debug_assert_eq!(chain.total(), 0);
    if chain.total() != 0 {
        return None;
    }
    let (pos, neg) = chain.split();
    Some(PartitionWitness::new(
        d.n(),
        WitnessKind::Zumkeller,
        pos,
        neg,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{divisors, factorize};
    use crate::partition::verify_witness;

    fn ds(n: u64) -> DivisorSet {
        divisors(&factorize(n).unwrap()).unwrap()
    }

    #[test]
    fn six_traces_plus_six_minus_rest() {
        let chain = SignedChain::build(&ds(6)).unwrap();
        assert_eq!(chain.signs, vec![-1, -1, -1, 1]);
        assert_eq!(chain.running_sums, vec![0, 1, 3, 6]);
        let w = chain_sign_partition(&ds(6)).unwrap();
        assert_eq!(w.part_a, vec![6]);
        assert_eq!(w.part_b, vec![1, 2, 3]);
    }

    #[test]
    fn seventy_breaks_the_chain() {
        assert!(SignedChain::build(&ds(70)).is_none());
        assert!(chain_sign_partition(&ds(70)).is_none());
    }

    #[test]
    fn twenty_four_splits_sixty_in_half() {
        let w = chain_sign_partition(&ds(24)).unwrap();
        assert_eq!(w.part_a.iter().sum::<u64>(), 30);
        assert_eq!(w.part_b.iter().sum::<u64>(), 30);
        assert!(verify_witness(&w));
    }

    #[test]
    fn odd_sigma_gives_nothing() {
        // 2^k chains double exactly but σ = 2^{k+1} - 1 is odd
        assert!(chain_sign_partition(&ds(16)).is_none());
        assert!(chain_sign_partition(&ds(1)).is_none());
    }

    #[test]
    fn loop_invariant_holds_on_all_chains_to_5000() {
        for n in 1..=5000 {
            let d = ds(n);
            if let Some(chain) = SignedChain::build(&d) {
                for (a, s) in chain.divisors.iter().zip(&chain.running_sums) {
                    assert!(s.abs() <= *a as i128, "n = {n}");
                }
                assert!(chain.total().abs() <= 1);
                assert_eq!(chain.total() == 0, d.sigma().is_multiple_of(2));
                if n % 2 == 0 && n > 2 {
                    // n and n/2 are adjacent at the top and get opposite signs
                    let k = chain.signs.len();
                    assert_eq!(chain.signs[k - 1], 1);
                    assert_eq!(chain.signs[k - 2], -1);
                }
            }
        }
    }
}
