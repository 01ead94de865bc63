//! Subset-sum over distinct positive values.
//!
//! Engines, tried in order:
//!
//! 1. a single deterministic greedy pass (descending, exact finish on a small residual),
//!    skipped when [`SearchConfig::greedy_probe`] is off;
//! 2. bitset dynamic programming when the target, or its complement, is at most
//!    [`SearchConfig::bitset_limit`];
//! 3. meet-in-the-middle when at most [`SearchConfig::mitm_limit`] values remain;
//! 4. seeded randomized restarts of the greedy pass.
//!
//! Engines 2 and 3 are complete. Engine 4 can only ever answer "present", so
//! when it is the last resort and finds nothing the result is a capacity error.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bits::Bits;
use crate::config::SearchConfig;
use crate::error::{Error, Result};

/// Which engine produced an answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Trivial,
    Greedy,
    Bitset,
    MeetInTheMiddle,
    Randomized,
}

/// Searches `values \ excluded` for a subset summing to `target`.
///
/// `values` must be strictly increasing. Values listed in `excluded` but
/// missing from `values` are ignored. The returned subset is ascending.
pub fn subset_with_sum(
    values: &[u64],
    target: u64,
    excluded: &[u64],
    cfg: &SearchConfig,
) -> Result<Option<Vec<u64>>> {
    subset_with_sum_traced(values, target, excluded, cfg).map(|r| r.map(|(s, _)| s))
}

/// Same as [`subset_with_sum`], also reporting the deciding engine.
pub fn subset_with_sum_traced(
    values: &[u64],
    target: u64,
    excluded: &[u64],
    cfg: &SearchConfig,
) -> Result<Option<(Vec<u64>, Engine)>> {
    if values.windows(2).any(|w| w[0] >= w[1]) || values.first() == Some(&0) {
        return Err(Error::domain(
            "subset values must be positive and strictly increasing",
        ));
    }
    if target == 0 {
        return Ok(Some((Vec::new(), Engine::Trivial)));
    }
    let avail: Vec<u64> = values
        .iter()
        .copied()
        .filter(|v| *v <= target && !excluded.contains(v))
        .collect();
    let total: u128 = avail.iter().map(|&v| v as u128).sum();
    let target128 = target as u128;
    if total < target128 {
        return Ok(None);
    }
    if total == target128 {
        return Ok(Some((avail, Engine::Trivial)));
    }
    if cfg.greedy_probe {
        if let Some(s) = greedy_attempt(&avail, target, &descending(avail.len()), cfg) {
            return Ok(Some((s, Engine::Greedy)));
        }
    }

    let complement = total - target128;
    if target <= cfg.bitset_limit || complement <= cfg.bitset_limit as u128 {
        let (goal, flip) = if target128 <= complement {
            (target, false)
        } else {
            (complement as u64, true)
        };
        let found = bitset_solve(&avail, goal).map(|picked| {
            let mut take = vec![flip; avail.len()];
            for i in picked {
                take[i] = !flip;
            }
            avail
                .iter()
                .zip(take)
                .filter_map(|(&v, t)| t.then_some(v))
                .collect::<Vec<_>>()
        });
        return Ok(found.map(|s| (s, Engine::Bitset)));
    }

    if avail.len() <= cfg.mitm_limit {
        return Ok(mitm_solve(&avail, target).map(|s| (s, Engine::MeetInTheMiddle)));
    }

    match randomized_solve(&avail, target, cfg) {
        Some(s) => Ok(Some((s, Engine::Randomized))),
        None => Err(Error::capacity(
            format!(
                "subset sum with {} values and target {target} undecided after {} randomized restarts",
                avail.len(),
                cfg.restarts
            ),
            cfg.restarts as u64,
        )),
    }
}

fn descending(len: usize) -> Vec<usize> {
    (0..len).rev().collect()
}

/// Greedy fill over `order`, switching to an exact bitset pass over the unused
/// values once the residual drops to `cfg.finish_limit`.
fn greedy_attempt(
    values: &[u64],
    target: u64,
    order: &[usize],
    cfg: &SearchConfig,
) -> Option<Vec<u64>> {
    let mut rest = target;
    let mut used = vec![false; values.len()];
    for &i in order {
        if rest <= cfg.finish_limit {
            break;
        }
        if values[i] <= rest {
            used[i] = true;
            rest -= values[i];
        }
    }
    if rest > 0 {
        if rest > cfg.finish_limit {
            return None;
        }
        let pool: Vec<usize> = (0..values.len())
            .filter(|&i| !used[i] && values[i] <= rest)
            .collect();
        let pool_values: Vec<u64> = pool.iter().map(|&i| values[i]).collect();
        if pool_values.iter().map(|&v| v as u128).sum::<u128>() < rest as u128 {
            return None;
        }
        for j in bitset_solve(&pool_values, rest)? {
            used[pool[j]] = true;
        }
    }
    Some(
        values
            .iter()
            .zip(&used)
            .filter_map(|(&v, &u)| u.then_some(v))
            .collect(),
    )
}

/// Reachable-sum DP. Returns indices of a subset summing to `target`.
///
/// Only one bitset per block of about √k items is kept; reconstruction
/// recomputes the per-item sets of one block at a time and walks backwards.
pub(crate) fn bitset_solve(values: &[u64], target: u64) -> Option<Vec<usize>> {
    if target == 0 {
        return Some(Vec::new());
    }
    let len = usize::try_from(target).ok()?.checked_add(1)?;
    let t = target as usize;
    let items: Vec<usize> = (0..values.len()).filter(|&i| values[i] <= target).collect();
    if items.is_empty() {
        return None;
    }
    let block = ((items.len() as f64).sqrt().ceil() as usize).max(1);

    let mut reach = Bits::with_zero(len);
    let mut checkpoints = Vec::new();
    let mut used_items = 0;
    for (pos, &i) in items.iter().enumerate() {
        if pos % block == 0 {
            checkpoints.push(reach.clone());
        }
        reach.or_shifted_self(values[i] as usize);
        used_items = pos + 1;
        if reach.get(t) {
            break;
        }
    }
    if !reach.get(t) {
        return None;
    }
    drop(reach);

    let mut picked = Vec::new();
    let mut rest = t;
    for b in (0..checkpoints.len()).rev() {
        let start = b * block;
        let end = ((b + 1) * block).min(used_items);
        if start >= end {
            continue;
        }
        // states[j] = reachable set before items[start + j]
        let mut states = Vec::with_capacity(end - start);
        let mut cur = checkpoints[b].clone();
        for &i in &items[start..end] {
            states.push(cur.clone());
            cur.or_shifted_self(values[i] as usize);
        }
        debug_assert!(cur.get(rest));
        for pos in (start..end).rev() {
            let v = values[items[pos]] as usize;
            let before = &states[pos - start];
            if v <= rest && before.get(rest - v) {
                picked.push(items[pos]);
                rest -= v;
            } else {
                debug_assert!(before.get(rest));
            }
        }
        checkpoints.truncate(b);
    }
    debug_assert_eq!(rest, 0);
    picked.reverse();
    Some(picked)
}

fn half_sums(values: &[u64], target: u64) -> Vec<(u64, u32)> {
    let mut sums = vec![(0u64, 0u32)];
    for (bit, &v) in values.iter().enumerate() {
        let len = sums.len();
        for j in 0..len {
            let (s, mask) = sums[j];
            if let Some(ns) = s.checked_add(v).filter(|&ns| ns <= target) {
                sums.push((ns, mask | (1 << bit)));
            }
        }
    }
    sums
}

/// Meet in the middle over at most 64 values (two halves of ≤ 32).
pub(crate) fn mitm_solve(values: &[u64], target: u64) -> Option<Vec<u64>> {
    assert!(
        values.len() <= 64,
        "meet in the middle is limited to 64 values"
    );
    let mid = values.len() / 2;
    let (left, right) = values.split_at(mid);
    let mut left_sums = half_sums(left, target);
    left_sums.sort_unstable();
    left_sums.dedup_by_key(|e| e.0);
    let right_sums = half_sums(right, target);
    for (s, rmask) in right_sums {
        let need = target - s;
        if let Ok(pos) = left_sums.binary_search_by_key(&need, |e| e.0) {
            let lmask = left_sums[pos].1;
            let mut out: Vec<u64> = (0..left.len())
                .filter(|&b| lmask >> b & 1 == 1)
                .map(|b| left[b])
                .collect();
            out.extend(
                (0..right.len())
                    .filter(|&b| rmask >> b & 1 == 1)
                    .map(|b| right[b]),
            );
            return Some(out);
        }
    }
    None
}

/// Randomized restarts: each restart perturbs the descending order by
/// deferring a random subset of the values, then runs a greedy attempt.
fn randomized_solve(values: &[u64], target: u64, cfg: &SearchConfig) -> Option<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for restart in 0..cfg.restarts {
        let order = if restart == 0 {
            descending(values.len())
        } else {
            let skip_prob = rng.gen_range(0.05..0.5);
            let (mut front, mut back): (Vec<usize>, Vec<usize>) = descending(values.len())
                .into_iter()
                .partition(|_| !rng.gen_bool(skip_prob));
            back.shuffle(&mut rng);
            front.append(&mut back);
            front
        };
        if let Some(s) = greedy_attempt(values, target, &order, cfg) {
            let mut s = s;
            s.sort_unstable();
            return Some(s);
        }
    }
    None
}
