use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, Factorization};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// Both parts together hold every divisor of `n`.
    Zumkeller,
    /// Both parts together hold every divisor of `n` except `n`.
    HalfZumkeller,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessKind::Zumkeller => "zumkeller",
            WitnessKind::HalfZumkeller => "half_zumkeller",
        })
    }
}

/// Two disjoint sets of divisors with equal sums.
///
/// Parts are kept sorted ascending, which is also their JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionWitness {
    pub n: u64,
    pub kind: WitnessKind,
    pub part_a: Vec<u64>,
    pub part_b: Vec<u64>,
}

impl PartitionWitness {
    pub fn new(n: u64, kind: WitnessKind, mut part_a: Vec<u64>, mut part_b: Vec<u64>) -> Self {
        part_a.sort_unstable();
        part_b.sort_unstable();
        PartitionWitness {
            n,
            kind,
            part_a,
            part_b,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let w: PartitionWitness = serde_json::from_str(text)
            .map_err(|e| Error::domain(format!("malformed witness JSON: {e}")))?;
        Ok(PartitionWitness::new(w.n, w.kind, w.part_a, w.part_b))
    }

    /// Sum of one part.
    pub fn half_sum(&self) -> u128 {
        self.part_a.iter().map(|&d| d as u128).sum()
    }

    /// For an even `n`, the full Zumkeller partition in which `n` and `n/2`
    /// sit in different parts, as `(part with n, part with n/2)`.
    ///
    /// A half-Zumkeller witness is converted by adding `n` to the part that
    /// holds `n/2` and moving `n/2` across. A Zumkeller witness is returned as
    /// is when it already separates the two, and `None` otherwise.
    pub fn separated_parts(&self) -> Option<(Vec<u64>, Vec<u64>)> {
        let n = self.n;
        if !n.is_multiple_of(2) {
            return None;
        }
        let half = n / 2;
        match self.kind {
            WitnessKind::HalfZumkeller => {
                let (with_half, other) = if self.part_a.contains(&half) {
                    (&self.part_a, &self.part_b)
                } else {
                    (&self.part_b, &self.part_a)
                };
                let mut x: Vec<u64> = with_half.iter().copied().filter(|&d| d != half).collect();
                x.push(n);
                let mut y = other.clone();
                y.push(half);
                x.sort_unstable();
                y.sort_unstable();
                Some((x, y))
            }
            WitnessKind::Zumkeller => {
                let a_has_n = self.part_a.contains(&n);
                let a_has_half = self.part_a.contains(&half);
                if a_has_n == a_has_half {
                    return None;
                }
                if a_has_n {
                    Some((self.part_a.clone(), self.part_b.clone()))
                } else {
                    Some((self.part_b.clone(), self.part_a.clone()))
                }
            }
        }
    }

    /// Inverse of [`separated_parts`](Self::separated_parts) for the half kind:
    /// drop `n` and move `n/2` into its part.
    pub fn from_separated(n: u64, with_n: Vec<u64>, with_half: Vec<u64>) -> Self {
        let half = n / 2;
        let mut a: Vec<u64> = with_n.into_iter().filter(|&d| d != n).collect();
        a.push(half);
        let b: Vec<u64> = with_half.into_iter().filter(|&d| d != half).collect();
        PartitionWitness::new(n, WitnessKind::HalfZumkeller, a, b)
    }
}

/// Checks a witness from scratch: every element is a (proper, for the half
/// kind) divisor of `n`, the parts are disjoint, together they contain all
/// such divisors, and their sums agree.
pub fn verify_witness(w: &PartitionWitness) -> bool {
    check_witness(w).is_ok()
}

/// Like [`verify_witness`], with the reason for rejection.
pub fn check_witness(w: &PartitionWitness) -> Result<()> {
    let n = w.n;
    let f: Factorization = arith::factorize(n)?;
    let sigma = arith::sigma(&f)? as u128;
    if w.kind == WitnessKind::HalfZumkeller && n == 1 {
        return Err(Error::domain("1 has no proper divisors to split"));
    }
    let mut seen = HashSet::with_capacity(w.part_a.len() + w.part_b.len());
    for &d in w.part_a.iter().chain(&w.part_b) {
        if d == 0 || !n.is_multiple_of(d) {
            return Err(Error::domain(format!("{d} does not divide {n}")));
        }
        if w.kind == WitnessKind::HalfZumkeller && d == n {
            return Err(Error::domain(format!("{n} itself is not a proper divisor")));
        }
        if !seen.insert(d) {
            return Err(Error::domain(format!("{d} appears twice")));
        }
    }
    let expected_count = match w.kind {
        WitnessKind::Zumkeller => f.divisor_count(),
        WitnessKind::HalfZumkeller => f.divisor_count() - 1,
    };
    if seen.len() as u64 != expected_count {
        return Err(Error::domain(format!(
            "{} divisors listed, {expected_count} expected",
            seen.len()
        )));
    }
    let sum_a: u128 = w.part_a.iter().map(|&d| d as u128).sum();
    let sum_b: u128 = w.part_b.iter().map(|&d| d as u128).sum();
    if sum_a != sum_b {
        return Err(Error::domain(format!(
            "part sums differ: {sum_a} vs {sum_b}"
        )));
    }
    let total = match w.kind {
        WitnessKind::Zumkeller => sigma,
        WitnessKind::HalfZumkeller => sigma - n as u128,
    };
    debug_assert_eq!(sum_a + sum_b, total);
    Ok(())
}
