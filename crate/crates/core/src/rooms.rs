//! Room selection for one test.
//!
//! Rooms are chosen to minimise the number of proctors needed, solved as a
//! 0-1 knapsack over the rooms that are *left out*. The seats left over after
//! selection are then taken away room by room, cheapest first, so that as
//! many rooms as possible drop below a multiple of the proctor rate.

use bitvec::prelude::*;
use thiserror::Error;

use crate::model::{RoomCatalog, RoomChoice, ScheduleConfig, ScheduledTest, TestSession};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RoomError {
    #[error("test {test}: candidate room {room} is not in the room catalog")]
    UnknownRoom { test: String, room: String },
    #[error("test {test}: {demand} students but only {capacity} seats among the candidate rooms")]
    InsufficientCapacity {
        test: String,
        demand: u64,
        capacity: u64,
    },
}

/// Proctors needed for `capacity` students: ⌈capacity / rate⌉.
pub fn room_weight(capacity: u32, rate: u32) -> u32 {
    assert!(rate >= 1, "rate must be positive");
    capacity.div_ceil(rate)
}

/// Students that must be removed from a full room to save one proctor.
pub fn slack_priority(capacity: u32, rate: u32) -> u32 {
    assert!(rate >= 1, "rate must be positive");
    capacity % rate
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackInstance {
    pub profits: Vec<u64>,
    pub weights: Vec<u64>,
    pub capacity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackSolution {
    pub selection: Vec<bool>,
    pub objective: u64,
}

/// Exact 0-1 knapsack by dynamic programming over capacities `0..=capacity`.
///
/// Among optimal selections the lexicographically smallest one (items left
/// out whenever possible, earliest first) is returned.
pub fn solve_knapsack_dp(instance: &KnapsackInstance) -> KnapsackSolution {
    let n = instance.profits.len();
    assert_eq!(
        n,
        instance.weights.len(),
        "profits and weights differ in length"
    );
    let cap = usize::try_from(instance.capacity).expect("knapsack capacity fits in memory");
    let width = cap + 1;

    // best[c] is the optimum over the items processed so far (a suffix of the
    // item list); take[i][c] records whether item i strictly improved it.
    let mut best = vec![0u64; width];
    let mut take = bitvec![0; n * width];
    for i in (0..n).rev() {
        let (p, w) = (instance.profits[i], instance.weights[i]);
        let Ok(w) = usize::try_from(w) else { continue };
        if w > cap || p == 0 {
            continue;
        }
        for c in (w..=cap).rev() {
            let candidate = best[c - w] + p;
            if candidate > best[c] {
                best[c] = candidate;
                take.set(i * width + c, true);
            }
        }
    }

    let mut selection = vec![false; n];
    let mut c = cap;
    for (i, chosen) in selection.iter_mut().enumerate() {
        if take[i * width + c] {
            *chosen = true;
            c -= instance.weights[i] as usize;
        }
    }
    KnapsackSolution {
        selection,
        objective: best[cap],
    }
}

/// Picks the rooms that minimise the total proctor weight while seating `demand`.
///
/// Builds the complementary knapsack (profit = weight = ⌈c/rate⌉ proctors,
/// size = seats, capacity = surplus seats) and returns its complement.
pub fn choose_rooms(capacities: &[u32], demand: u32, rate: u32) -> Option<Vec<bool>> {
    let total: u64 = capacities.iter().map(|&c| u64::from(c)).sum();
    let demand = u64::from(demand);
    if total < demand {
        return None;
    }
    let instance = KnapsackInstance {
        profits: capacities
            .iter()
            .map(|&c| u64::from(room_weight(c, rate)))
            .collect(),
        weights: capacities.iter().map(|&c| u64::from(c)).collect(),
        capacity: total - demand,
    };
    let left_out = solve_knapsack_dp(&instance).selection;
    Some(left_out.into_iter().map(|y| !y).collect())
}

/// Running state of the slack walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlackState {
    pub remaining: u64,
    pub priorities: Vec<u32>,
    /// Room indices by ascending priority, ties in input order.
    pub order: Vec<usize>,
}

impl SlackState {
    pub fn new(capacities: &[u32], demand: u32, rate: u32) -> Self {
        let total: u64 = capacities.iter().map(|&c| u64::from(c)).sum();
        let priorities: Vec<u32> = capacities
            .iter()
            .map(|&c| slack_priority(c, rate))
            .collect();
        let mut order: Vec<usize> = (0..capacities.len()).collect();
        order.sort_by_key(|&i| priorities[i]);
        SlackState {
            remaining: total.saturating_sub(u64::from(demand)),
            priorities,
            order,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlackDistribution {
    pub enrolled: Vec<u32>,
    pub proctors: Vec<u32>,
}

/// Seats `demand` students in the selected rooms, removing surplus seats from
/// the rooms whose remainder modulo `rate` is smallest first.
///
/// Students removed and slack consumed always move together. Slack left after
/// the walk is taken from the fullest room (earliest on ties) until none remains.
pub fn distribute_slack(capacities: &[u32], demand: u32, rate: u32) -> SlackDistribution {
    let mut state = SlackState::new(capacities, demand, rate);
    let mut enrolled = capacities.to_vec();

    for &i in &state.order {
        if state.remaining == 0 {
            break;
        }
        let s = u64::from(state.priorities[i]);
        let removed = state.remaining.min(s);
        enrolled[i] -= removed as u32;
        state.remaining -= removed;
    }
    if state.remaining > 0 {
        let mut fullest: Vec<usize> = (0..enrolled.len()).collect();
        fullest.sort_by_key(|&i| (std::cmp::Reverse(enrolled[i]), i));
        for i in fullest {
            if state.remaining == 0 {
                break;
            }
            let removed = state.remaining.min(u64::from(enrolled[i]));
            enrolled[i] -= removed as u32;
            state.remaining -= removed;
        }
    }

    let proctors = enrolled.iter().map(|&e| room_weight(e, rate)).collect();
    SlackDistribution { enrolled, proctors }
}

/// Supervisors for a test: one per `supervisor_rate` students, at least one.
pub fn supervisors_needed(demand: u32, supervisor_rate: u32) -> u32 {
    if demand == 0 {
        0
    } else {
        demand.div_ceil(supervisor_rate).max(1)
    }
}

/// Room selection plus slack distribution for one test.
pub fn schedule_test(
    test: &TestSession,
    catalog: &RoomCatalog,
    config: &ScheduleConfig,
) -> Result<ScheduledTest, RoomError> {
    let rooms = test
        .candidate_rooms
        .iter()
        .map(|label| {
            catalog.get(label).ok_or_else(|| RoomError::UnknownRoom {
                test: test.label.clone(),
                room: label.clone(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let capacities: Vec<u32> = rooms.iter().map(|r| r.capacity).collect();

    let selected = choose_rooms(&capacities, test.demand, config.rate).ok_or_else(|| {
        RoomError::InsufficientCapacity {
            test: test.label.clone(),
            demand: u64::from(test.demand),
            capacity: capacities.iter().map(|&c| u64::from(c)).sum(),
        }
    })?;
    let chosen: Vec<_> = rooms
        .iter()
        .zip(&selected)
        .filter(|(_, &x)| x)
        .map(|(r, _)| *r)
        .collect();
    let chosen_caps: Vec<u32> = chosen.iter().map(|r| r.capacity).collect();
    let dist = distribute_slack(&chosen_caps, test.demand, config.rate);

    let choices = chosen
        .into_iter()
        .enumerate()
        .map(|(k, room)| RoomChoice {
            room: room.clone(),
            selected: true,
            enrolled: dist.enrolled[k],
            proctors: dist.proctors[k],
            envelope: k as u32 + 1,
            slack: room.capacity - dist.enrolled[k],
        })
        .collect();

    Ok(ScheduledTest {
        test: test.clone(),
        choices,
        supervisors: supervisors_needed(test.demand, config.supervisor_rate),
    })
}
