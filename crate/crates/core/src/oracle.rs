//! Exhaustive reference solvers for small instances.
//!
//! These share no code with the production solvers beyond the input types,
//! and are meant for certifying optimality in tests.

use std::collections::BTreeMap;

use num_rational::Ratio;
use thiserror::Error;

use crate::personnel::{AvailabilityMatrix, DemandVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmallInstanceLimits {
    pub max_rooms: usize,
    pub max_tas: usize,
    pub max_tests: usize,
}

impl Default for SmallInstanceLimits {
    fn default() -> Self {
        SmallInstanceLimits {
            max_rooms: 14,
            max_tas: 8,
            max_tests: 4,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large for enumeration: {what} = {got}, limit {limit}")]
    InstanceTooLarge {
        what: &'static str,
        got: usize,
        limit: usize,
    },
}

fn check(what: &'static str, got: usize, limit: usize) -> Result<(), OracleError> {
    if got > limit {
        return Err(OracleError::InstanceTooLarge { what, got, limit });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoomOracle {
    /// Σ ⌈c_i/r⌉ over the chosen rooms, before slack is redistributed.
    pub objective: u64,
    pub witness: Vec<bool>,
}

/// Cheapest set of rooms seating `demand`; `Ok(None)` when even all rooms fall short.
pub fn brute_force_rooms(
    capacities: &[u32],
    demand: u32,
    rate: u32,
) -> Result<Option<RoomOracle>, OracleError> {
    let limits = SmallInstanceLimits::default();
    check("rooms", capacities.len(), limits.max_rooms)?;
    assert!(rate > 0);
    let n = capacities.len();
    let mut best: Option<(u64, u32)> = None;
    for mask in 0u32..1 << n {
        let (mut seats, mut cost) = (0u64, 0u64);
        for (i, &c) in capacities.iter().enumerate() {
            if mask >> i & 1 == 1 {
                seats += u64::from(c);
                cost += u64::from(c).div_ceil(u64::from(rate));
            }
        }
        if seats >= u64::from(demand) && best.is_none_or(|(b, _)| cost < b) {
            best = Some((cost, mask));
        }
    }
    Ok(best.map(|(objective, mask)| RoomOracle {
        objective,
        witness: (0..n).map(|i| mask >> i & 1 == 1).collect(),
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquityOracle {
    pub bound: u64,
    /// P×T assignment reaching `bound`.
    pub witness: Vec<Vec<bool>>,
}

/// Least z such that every TA ends the round with ⌊α⌋ − z ≤ L + n, and every
/// TA given at least one shift ends with L + n ≤ ⌈α⌉ + z.
fn refined_bound(loads: &[u32], shifts: &[u8], floor: i64, ceil: i64) -> u64 {
    loads
        .iter()
        .zip(shifts)
        .map(|(&l, &n)| {
            let total = i64::from(l) + i64::from(n);
            let under = floor - total;
            let over = if n > 0 { total - ceil } else { 0 };
            under.max(over).max(0) as u64
        })
        .max()
        .unwrap_or(0)
}

/// Minimum equity bound over all assignments that respect availability,
/// meet every demand exactly and give no TA two tests of one slot group.
pub fn brute_force_equity(
    avail: &AvailabilityMatrix,
    demands: &DemandVector,
    loads: &[u32],
) -> Result<Option<EquityOracle>, OracleError> {
    let limits = SmallInstanceLimits::default();
    let p_count = avail.tas.len();
    let t_count = avail.tests.len();
    check("tas", p_count, limits.max_tas)?;
    check("tests", t_count, limits.max_tests)?;
    assert_eq!(loads.len(), p_count);
    assert_eq!(demands.per_test.len(), t_count);

    let shifts_total: u64 = demands.per_test.iter().map(|&d| u64::from(d)).sum();
    if p_count == 0 {
        return Ok((shifts_total == 0).then(|| EquityOracle {
            bound: 0,
            witness: Vec::new(),
        }));
    }
    let load_total: u64 = loads.iter().map(|&l| u64::from(l)).sum();
    let alpha = Ratio::new(load_total + shifts_total, p_count as u64);
    let floor = alpha.floor().to_integer() as i64;
    let ceil = alpha.ceil().to_integer() as i64;

    // Tests visited group by group so a single mask tracks who is busy.
    let mut group_of = vec![usize::MAX; t_count];
    let mut order = Vec::with_capacity(t_count);
    for (g, sg) in avail.slot_groups.iter().enumerate() {
        for &t in &sg.tests {
            group_of[t] = g;
            order.push(t);
        }
    }
    assert_eq!(order.len(), t_count, "every test belongs to one slot group");

    // (shift counts, busy mask in current group) → one witness reaching it.
    let mut states: BTreeMap<(Vec<u8>, u32), Vec<u32>> = BTreeMap::new();
    states.insert((vec![0; p_count], 0), Vec::new());
    for (k, &t) in order.iter().enumerate() {
        let new_group = k > 0 && group_of[order[k - 1]] != group_of[t];
        let available: Vec<usize> = (0..p_count).filter(|&p| avail.cells[p][t]).collect();
        let d = demands.per_test[t] as usize;
        let mut next: BTreeMap<(Vec<u8>, u32), Vec<u32>> = BTreeMap::new();
        for ((counts, busy), picks) in states {
            let busy = if new_group { 0 } else { busy };
            let free: Vec<usize> = available
                .iter()
                .copied()
                .filter(|&p| busy >> p & 1 == 0)
                .collect();
            for_each_subset(&free, d, &mut |chosen| {
                let mut counts = counts.clone();
                let mut mask = 0u32;
                for &p in chosen {
                    counts[p] += 1;
                    mask |= 1 << p;
                }
                let mut picks = picks.clone();
                picks.push(mask);
                next.entry((counts, busy | mask)).or_insert(picks);
            });
        }
        states = next;
    }

    let best = states
        .into_iter()
        .map(|((counts, _), picks)| (refined_bound(loads, &counts, floor, ceil), picks))
        .min_by_key(|(bound, _)| *bound);
    Ok(best.map(|(bound, picks)| {
        let mut witness = vec![vec![false; t_count]; p_count];
        for (&t, mask) in order.iter().zip(picks) {
            for (p, row) in witness.iter_mut().enumerate() {
                row[t] = mask >> p & 1 == 1;
            }
        }
        EquityOracle { bound, witness }
    }))
}

fn for_each_subset(items: &[usize], k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(
        items: &[usize],
        k: usize,
        start: usize,
        acc: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if acc.len() == k {
            f(acc);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - acc.len() {
                break;
            }
            acc.push(items[i]);
            go(items, k, i + 1, acc, f);
            acc.pop();
        }
    }
    go(items, k, 0, &mut Vec::with_capacity(k), f);
}
