//! Equal-sum splits of divisor sets and their certificates.

mod bits;
mod chain;
mod subset;
mod witness;

pub use bits::Bits;
pub use chain::{chain_sign_partition, SignedChain};
pub use subset::{subset_with_sum, subset_with_sum_traced, Engine};
pub use witness::{check_witness, verify_witness, PartitionWitness, WitnessKind};

use crate::arith::DivisorSet;
use crate::config::SearchConfig;
use crate::error::Result;

/// Builds the witness `{n} ∪ S | rest` from a subset `S` of the proper
/// divisors summing to `(σ(n) - 2n) / 2`.
///
/// Returns `None` when σ(n) is odd or below 2n; those numbers have no
/// Zumkeller partition at all.
pub fn find_zumkeller_witness(
    d: &DivisorSet,
    cfg: &SearchConfig,
) -> Result<Option<PartitionWitness>> {
    let n = d.n();
    let sigma = d.sigma();
    if !sigma.is_multiple_of(2) || (sigma as u128) < 2 * n as u128 {
        return Ok(None);
    }
    if let Some(w) = chain_sign_partition(d) {
        return Ok(Some(w));
    }
    let target = (sigma - 2 * n) / 2;
    let Some(subset) = subset_with_sum(d.proper(), target, &[], cfg)? else {
        return Ok(None);
    };
    let mut part_a = subset;
    part_a.push(n);
    Ok(Some(split_off(
        d.divisors(),
        n,
        WitnessKind::Zumkeller,
        part_a,
    )))
}

/// Half-Zumkeller witness search.
///
/// Even `n`: looks for a subset of the divisors other than `n` and `n/2`
/// summing to `(σ(n) - 2n) / 2`; `n/2` joins that subset. Odd `n`: only
/// perfect squares qualify, and the proper divisors are searched for
/// `(σ(n) - n) / 2` directly.
pub fn find_half_zumkeller_witness(
    d: &DivisorSet,
    cfg: &SearchConfig,
) -> Result<Option<PartitionWitness>> {
    let n = d.n();
    let sigma = d.sigma();
    if n == 1 {
        return Ok(None);
    }
    let proper = d.proper();
    if n.is_multiple_of(2) {
        if !sigma.is_multiple_of(2) || (sigma as u128) < 2 * n as u128 {
            return Ok(None);
        }
        let half = n / 2;
        if let Some(w) = chain_sign_partition(d) {
            if let Some((with_n, with_half)) = w.separated_parts() {
                return Ok(Some(PartitionWitness::from_separated(n, with_n, with_half)));
            }
        }
        let target = (sigma - 2 * n) / 2;
        let Some(mut part_a) = subset_with_sum(proper, target, &[half], cfg)? else {
            return Ok(None);
        };
        part_a.push(half);
        Ok(Some(split_off(
            proper,
            n,
            WitnessKind::HalfZumkeller,
            part_a,
        )))
    } else {
        // σ(n) - n must be even, which for odd n means σ(n) odd, i.e. n a square
        if sigma.is_multiple_of(2) {
            return Ok(None);
        }
        let target = (sigma - n) / 2;
        let Some(part_a) = subset_with_sum(proper, target, &[], cfg)? else {
            return Ok(None);
        };
        Ok(Some(split_off(
            proper,
            n,
            WitnessKind::HalfZumkeller,
            part_a,
        )))
    }
}

/// Witness with `part_a` as given and `part_b = universe \ part_a`.
fn split_off(
    universe: &[u64],
    n: u64,
    kind: WitnessKind,
    mut part_a: Vec<u64>,
) -> PartitionWitness {
    part_a.sort_unstable();
    let part_b = universe
        .iter()
        .copied()
        .filter(|d| part_a.binary_search(d).is_err())
        .collect();
    PartitionWitness::new(n, kind, part_a, part_b)
}
