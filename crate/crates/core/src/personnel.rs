//! Equitable assignment of TAs to the tests of a round.
//!
//! The objective is the smallest integer `z` such that every TA's service
//! after the round stays within `[⌊α⌋ − z, ⌈α⌉ + z]`, where `α` is the
//! average service after the round. For a fixed `z` the question "is there
//! an assignment?" is a flow feasibility problem with lower bounds;
//! feasibility only grows with `z`, so the minimum is found by bisection.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::flow::{feasible_flow_with_lower_bounds, max_flow, FlowNetwork};
use crate::model::{
    Assignee, LecturerProfile, ProctorLog, ProctorProfile, ScheduledTest, TimeSlot,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shortfall {
    pub test: String,
    pub missing: u32,
}

impl fmt::Display for Shortfall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} short by {}", self.test, self.missing)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PersonnelError {
    #[error("test {test}: {lecturers} lecturers assigned but only {demand} proctors needed")]
    LecturerOverflow {
        test: String,
        lecturers: u32,
        demand: u32,
    },
    #[error("test {test}: time slot \"{slot}\" is not a column of personnel_time.csv")]
    UnknownSlot { test: String, slot: TimeSlot },
    #[error("there are no TAs but {demand} proctoring shifts must be filled")]
    NoProctors { demand: u64 },
    #[error("not enough available TAs: {}", .shortfalls.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))]
    Infeasible { shortfalls: Vec<Shortfall> },
    #[error("{0} is assigned but has no row in the proctor log")]
    UnknownTa(String),
    #[error("the proctor log already has an event column \"{0}\"")]
    DuplicateEvent(String),
}

/// Lecturers pre-assigned to each test, keyed by test label.
pub type LecturerDuties = BTreeMap<String, Vec<String>>;

/// Non-coordinator lecturers go to the test of their (first) subject.
pub fn assign_lecturers(
    lecturers: &[LecturerProfile],
    scheduled: &[ScheduledTest],
) -> Result<LecturerDuties, PersonnelError> {
    let mut duties = LecturerDuties::new();
    for test in scheduled {
        let mut names: Vec<String> = Vec::new();
        for lec in lecturers {
            if !lec.coordinator && lec.subject == test.test.label && !names.contains(&lec.name) {
                names.push(lec.name.clone());
            }
        }
        if names.is_empty() {
            continue;
        }
        let demand = test.total_demand();
        if names.len() as u32 > demand {
            return Err(PersonnelError::LecturerOverflow {
                test: test.test.label.clone(),
                lecturers: names.len() as u32,
                demand,
            });
        }
        duties.insert(test.test.label.clone(), names);
    }
    Ok(duties)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotGroup {
    pub date: String,
    pub slot: TimeSlot,
    pub tests: Vec<usize>,
}

/// a_p^(t) over TAs (rows) and tests (columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvailabilityMatrix {
    pub tas: Vec<String>,
    pub tests: Vec<String>,
    pub cells: Vec<Vec<bool>>,
    /// Tests sharing a (date, slot), in order of first appearance.
    pub slot_groups: Vec<SlotGroup>,
}

impl AvailabilityMatrix {
    /// Index into `slot_groups` for every test.
    pub fn group_of_tests(&self) -> Vec<usize> {
        let mut group = vec![0; self.tests.len()];
        for (g, sg) in self.slot_groups.iter().enumerate() {
            for &t in &sg.tests {
                group[t] = g;
            }
        }
        group
    }
}

pub fn build_availability(
    personnel: &[ProctorProfile],
    scheduled: &[ScheduledTest],
) -> Result<AvailabilityMatrix, PersonnelError> {
    let columns: BTreeSet<&TimeSlot> = personnel
        .iter()
        .flat_map(|p| p.availability.keys())
        .collect();
    if !personnel.is_empty() {
        if let Some(bad) = scheduled.iter().find(|s| !columns.contains(&s.test.slot)) {
            return Err(PersonnelError::UnknownSlot {
                test: bad.test.label.clone(),
                slot: bad.test.slot.clone(),
            });
        }
    }

    let mut slot_groups: Vec<SlotGroup> = Vec::new();
    for (t, s) in scheduled.iter().enumerate() {
        let (date, slot) = s.test.simultaneity_key();
        match slot_groups
            .iter_mut()
            .find(|g| g.date == date && &g.slot == slot)
        {
            Some(g) => g.tests.push(t),
            None => slot_groups.push(SlotGroup {
                date: date.to_string(),
                slot: slot.clone(),
                tests: vec![t],
            }),
        }
    }

    Ok(AvailabilityMatrix {
        tas: personnel.iter().map(|p| p.name.clone()).collect(),
        tests: scheduled.iter().map(|s| s.test.label.clone()).collect(),
        cells: personnel
            .iter()
            .map(|p| {
                scheduled
                    .iter()
                    .map(|s| p.is_available(&s.test.slot))
                    .collect()
            })
            .collect(),
        slot_groups,
    })
}

/// TA shifts still to fill per test once lecturers are placed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemandVector {
    pub per_test: Vec<u32>,
}

impl DemandVector {
    pub fn from_schedule(scheduled: &[ScheduledTest], duties: &LecturerDuties) -> Self {
        DemandVector {
            per_test: scheduled
                .iter()
                .map(|s| {
                    let lecturers = duties.get(&s.test.label).map_or(0, Vec::len) as u32;
                    s.total_demand().saturating_sub(lecturers)
                })
                .collect(),
        }
    }

    pub fn total(&self) -> u64 {
        self.per_test.iter().map(|&d| u64::from(d)).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquityContext {
    pub loads: Vec<u32>,
    pub alpha: Ratio<u64>,
    pub floor_alpha: u64,
    pub ceil_alpha: u64,
}

impl EquityContext {
    /// Exact average service after the round, over TA-fillable shifts.
    pub fn new(loads: Vec<u32>, demands: &DemandVector) -> Result<Self, PersonnelError> {
        let shifts: u64 = loads.iter().map(|&l| u64::from(l)).sum::<u64>() + demands.total();
        let alpha = if loads.is_empty() {
            if demands.total() > 0 {
                return Err(PersonnelError::NoProctors {
                    demand: demands.total(),
                });
            }
            Ratio::from_integer(0)
        } else {
            Ratio::new(shifts, loads.len() as u64)
        };
        Ok(EquityContext {
            floor_alpha: alpha.floor().to_integer(),
            ceil_alpha: alpha.ceil().to_integer(),
            alpha,
            loads,
        })
    }

    /// Allowed number of new shifts for TA `p` under bound `z`.
    pub fn shift_bounds(&self, p: usize, z: u64) -> (u64, u64) {
        let load = u64::from(self.loads[p]);
        let lo = self.floor_alpha.saturating_sub(load + z);
        let hi = (self.ceil_alpha + z).saturating_sub(load);
        (lo, hi)
    }
}

pub fn compute_context(
    log: &ProctorLog,
    demands: &DemandVector,
    tas: &[String],
) -> Result<EquityContext, PersonnelError> {
    EquityContext::new(tas.iter().map(|n| log.total_for(n)).collect(), demands)
}

/// y_p^(t) plus the equity bound it was solved at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentMatrix {
    pub tas: Vec<String>,
    pub tests: Vec<String>,
    pub cells: Vec<Vec<bool>>,
    pub bound: u64,
}

impl AssignmentMatrix {
    /// New shifts per TA.
    pub fn shifts(&self) -> Vec<u32> {
        self.cells
            .iter()
            .map(|row| row.iter().filter(|&&y| y).count() as u32)
            .collect()
    }

    pub fn assigned_to(&self, t: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.tas.len()).filter(move |&p| self.cells[p][t])
    }
}

struct AssignmentNetwork {
    network: FlowNetwork,
    /// (ta, test, arc index) for every test → gate arc.
    choice_arcs: Vec<(usize, usize, usize)>,
    source_arcs: Vec<usize>,
}

/// source → test → (TA, slot group) gate → TA → sink.
///
/// `ta_bounds` gives the [lo, hi] range of the TA → sink arcs and
/// `exact_demand` pins the source → test arcs to their demand.
fn assignment_network(
    avail: &AvailabilityMatrix,
    demands: &DemandVector,
    ta_bounds: impl Fn(usize) -> (u64, u64),
    exact_demand: bool,
) -> AssignmentNetwork {
    let p_count = avail.tas.len();
    let t_count = avail.tests.len();
    let group_of = avail.group_of_tests();
    let test_node = |t: usize| 2 + t;
    let ta_node = |p: usize| 2 + t_count + p;
    let mut next = 2 + t_count + p_count;

    let mut gates: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (p, row) in avail.cells.iter().enumerate() {
        for (&open, &group) in row.iter().zip(&group_of) {
            if open {
                gates.entry((p, group)).or_insert_with(|| {
                    next += 1;
                    next - 1
                });
            }
        }
    }

    let mut network = FlowNetwork::new(next, 0, 1);
    let source_arcs = (0..t_count)
        .map(|t| {
            let d = u64::from(demands.per_test[t]);
            network.add_arc(0, test_node(t), if exact_demand { d } else { 0 }, d)
        })
        .collect();
    let mut choice_arcs = Vec::new();
    for t in 0..t_count {
        for p in 0..p_count {
            if avail.cells[p][t] {
                let gate = gates[&(p, group_of[t])];
                choice_arcs.push((p, t, network.add_arc(test_node(t), gate, 0, 1)));
            }
        }
    }
    for (&(p, _), &gate) in &gates {
        network.add_arc(gate, ta_node(p), 0, 1);
    }
    for p in 0..p_count {
        let (lo, hi) = ta_bounds(p);
        network.add_arc(ta_node(p), 1, lo, hi);
    }
    AssignmentNetwork {
        network,
        choice_arcs,
        source_arcs,
    }
}

/// An assignment whose equity bound is at most `z`, if one exists.
pub fn feasible_for_bound(
    z: u64,
    avail: &AvailabilityMatrix,
    demands: &DemandVector,
    ctx: &EquityContext,
) -> Option<AssignmentMatrix> {
    let built = assignment_network(avail, demands, |p| ctx.shift_bounds(p, z), true);
    let flows = feasible_flow_with_lower_bounds(&built.network)?;
    let mut cells = vec![vec![false; avail.tests.len()]; avail.tas.len()];
    for &(p, t, arc) in &built.choice_arcs {
        cells[p][t] = flows[arc] == 1;
    }
    Some(AssignmentMatrix {
        tas: avail.tas.clone(),
        tests: avail.tests.clone(),
        cells,
        bound: z,
    })
}

/// Largest bound ever needed: past it, only availability and demand constrain.
pub fn max_bound(avail: &AvailabilityMatrix, ctx: &EquityContext) -> u64 {
    avail.tests.len() as u64 + ctx.ceil_alpha + ctx.loads.iter().copied().max().map_or(0, u64::from)
}

/// Per-test unmet demand when demand cannot be covered at all.
fn shortfalls(avail: &AvailabilityMatrix, demands: &DemandVector) -> Vec<Shortfall> {
    let t_count = avail.tests.len() as u64;
    let built = assignment_network(avail, demands, |_| (0, t_count), false);
    let flow = max_flow(&built.network);
    built
        .source_arcs
        .iter()
        .enumerate()
        .filter_map(|(t, &arc)| {
            let missing = u64::from(demands.per_test[t]) - flow.arc_flows[arc];
            (missing > 0).then(|| Shortfall {
                test: avail.tests[t].clone(),
                missing: missing as u32,
            })
        })
        .collect()
}

/// Assignment at the smallest feasible equity bound.
pub fn solve_equity(
    avail: &AvailabilityMatrix,
    demands: &DemandVector,
    ctx: &EquityContext,
) -> Result<AssignmentMatrix, PersonnelError> {
    let mut hi = max_bound(avail, ctx);
    let mut best =
        feasible_for_bound(hi, avail, demands, ctx).ok_or_else(|| PersonnelError::Infeasible {
            shortfalls: shortfalls(avail, demands),
        })?;
    let mut lo = 0;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match feasible_for_bound(mid, avail, demands, ctx) {
            Some(found) => {
                best = found;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    if best.bound != lo {
        best =
            feasible_for_bound(lo, avail, demands, ctx).expect("feasible at the bisection bound");
    }
    Ok(best)
}

/// Appends one event column per test and recomputes totals. The input log is untouched.
pub fn update_log(
    log: &ProctorLog,
    assignment: &AssignmentMatrix,
    scheduled: &[ScheduledTest],
) -> Result<ProctorLog, PersonnelError> {
    let mut updated = log.clone();
    let mut rows: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, e) in log.entries.iter().enumerate() {
        rows.insert(&e.name, i);
    }
    for (p, name) in assignment.tas.iter().enumerate() {
        if assignment.cells[p].iter().any(|&y| y) && !rows.contains_key(name.as_str()) {
            return Err(PersonnelError::UnknownTa(name.clone()));
        }
    }

    for s in scheduled {
        let label = s.test.event_label();
        if updated.events.contains(&label) {
            return Err(PersonnelError::DuplicateEvent(label));
        }
        updated.events.push(label);
        for entry in &mut updated.entries {
            entry.marks.push(false);
        }
        if let Some(t) = assignment.tests.iter().position(|l| *l == s.test.label) {
            for p in assignment.assigned_to(t) {
                let row = rows[assignment.tas[p].as_str()];
                *updated.entries[row]
                    .marks
                    .last_mut()
                    .expect("column just pushed") = true;
            }
        }
    }
    Ok(updated)
}

/// Everything the personnel stage decides for a round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersonnelDecision {
    pub duties: LecturerDuties,
    pub availability: AvailabilityMatrix,
    pub demands: DemandVector,
    pub context: EquityContext,
    pub assignment: AssignmentMatrix,
    pub new_log: ProctorLog,
    /// Crew per test, lecturers first, then TAs in personnel order.
    pub crews: Vec<Vec<Assignee>>,
}

pub fn decide_personnel(
    scheduled: &[ScheduledTest],
    personnel: &[ProctorProfile],
    log: &ProctorLog,
    lecturers: &[LecturerProfile],
) -> Result<PersonnelDecision, PersonnelError> {
    let duties = assign_lecturers(lecturers, scheduled)?;
    let availability = build_availability(personnel, scheduled)?;
    let demands = DemandVector::from_schedule(scheduled, &duties);
    let context = compute_context(log, &demands, &availability.tas)?;
    let assignment = solve_equity(&availability, &demands, &context)?;
    let new_log = update_log(log, &assignment, scheduled)?;

    let crews = scheduled
        .iter()
        .enumerate()
        .map(|(t, s)| {
            let mut crew: Vec<Assignee> = duties
                .get(&s.test.label)
                .into_iter()
                .flatten()
                .filter_map(|name| {
                    lecturers
                        .iter()
                        .find(|l| &l.name == name && l.subject == s.test.label)
                        .map(Assignee::from)
                })
                .collect();
            crew.extend(
                assignment
                    .assigned_to(t)
                    .map(|p| Assignee::from(&personnel[p])),
            );
            crew
        })
        .collect();

    Ok(PersonnelDecision {
        duties,
        availability,
        demands,
        context,
        assignment,
        new_log,
        crews,
    })
}
