//! Pairing of a test's crew with room positions.
//!
//! Positions are read in the order (proctors ↑, position ↑, students ↓), so
//! single-proctor rooms come first, then the first seat of every shared
//! room. The crew is sorted by seniority and zipped onto that order.

use std::cmp::{Ordering, Reverse};

use thiserror::Error;

use crate::model::{Assignee, CrewLevel, ScheduledTest, SeniorityOrder};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CrewError {
    #[error(
        "test {test}: {needed} supervisors needed but only {available} undergraduates assigned"
    )]
    InsufficientUndergraduates {
        test: String,
        needed: u32,
        available: u32,
    },
    #[error("test {test}: crew of {actual} does not match the {expected} proctors required")]
    CrewSizeMismatch {
        test: String,
        expected: u32,
        actual: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionRow {
    /// Index into the test's room choices.
    pub choice: usize,
    pub room: String,
    pub proctors: u32,
    /// 1-based seat of the proctor within the room.
    pub position: u32,
    pub students: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionFrame {
    pub rows: Vec<PositionRow>,
}

pub fn expand_positions(scheduled: &ScheduledTest) -> PositionFrame {
    let mut rows: Vec<PositionRow> = scheduled
        .choices
        .iter()
        .enumerate()
        .flat_map(|(i, c)| {
            (1..=c.proctors).map(move |position| PositionRow {
                choice: i,
                room: c.room.label.clone(),
                proctors: c.proctors,
                position,
                students: c.enrolled,
            })
        })
        .collect();
    rows.sort_by(|a, b| {
        (a.proctors, a.position, Reverse(a.students), &a.room).cmp(&(
            b.proctors,
            b.position,
            Reverse(b.students),
            &b.room,
        ))
    });
    PositionFrame { rows }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeniorityRank {
    pub level_weight: u8,
    pub experience: u32,
}

impl SeniorityRank {
    pub fn of(a: &Assignee, order: SeniorityOrder) -> Self {
        let level_weight = match (order, a.level) {
            (SeniorityOrder::LecturersFirst, CrewLevel::Lecturer) => 3,
            (SeniorityOrder::LecturersFirst, CrewLevel::Postgraduate) => 2,
            (SeniorityOrder::LecturersFirst, CrewLevel::Undergraduate) => 1,
            (SeniorityOrder::LiteralNumLevel, CrewLevel::Undergraduate) => 3,
            (SeniorityOrder::LiteralNumLevel, CrewLevel::Postgraduate) => 2,
            (SeniorityOrder::LiteralNumLevel, CrewLevel::Lecturer) => 1,
        };
        SeniorityRank {
            level_weight,
            experience: a.experience,
        }
    }
}

/// Most senior first; names break ties.
pub fn seniority_cmp(a: &Assignee, b: &Assignee, order: SeniorityOrder) -> Ordering {
    let (ra, rb) = (SeniorityRank::of(a, order), SeniorityRank::of(b, order));
    rb.level_weight
        .cmp(&ra.level_weight)
        .then(rb.experience.cmp(&ra.experience))
        .then_with(|| a.name.cmp(&b.name))
}

/// The `ns` most experienced undergraduates, and everybody else in crew order.
pub fn select_supervisors(
    test: &str,
    crew: &[Assignee],
    ns: u32,
) -> Result<(Vec<Assignee>, Vec<Assignee>), CrewError> {
    let mut undergrads: Vec<usize> = (0..crew.len())
        .filter(|&i| crew[i].level == CrewLevel::Undergraduate)
        .collect();
    if (undergrads.len() as u32) < ns {
        return Err(CrewError::InsufficientUndergraduates {
            test: test.to_string(),
            needed: ns,
            available: undergrads.len() as u32,
        });
    }
    undergrads.sort_by(|&a, &b| {
        crew[b]
            .experience
            .cmp(&crew[a].experience)
            .then_with(|| crew[a].name.cmp(&crew[b].name))
    });
    let chosen = &undergrads[..ns as usize];
    let supervisors = chosen.iter().map(|&i| crew[i].clone()).collect();
    let remainder = (0..crew.len())
        .filter(|i| !chosen.contains(i))
        .map(|i| crew[i].clone())
        .collect();
    Ok((supervisors, remainder))
}

/// Where a programming row sits: a room seat or a supervisor slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Post {
    Room {
        label: String,
        envelope: u32,
        observations: String,
        capacity: u32,
        students: u32,
        slack: u32,
        proctors: u32,
        position: u32,
    },
    Supervisor(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgrammingRow {
    pub post: Post,
    pub test: String,
    pub date: String,
    pub assignee: Assignee,
}

/// Rows come out by envelope, then seat, then supervisors.
pub fn organize_crew(
    scheduled: &ScheduledTest,
    crew: &[Assignee],
    order: SeniorityOrder,
) -> Result<Vec<ProgrammingRow>, CrewError> {
    let test = &scheduled.test.label;
    let expected = scheduled.total_demand();
    if crew.len() as u32 != expected {
        return Err(CrewError::CrewSizeMismatch {
            test: test.clone(),
            expected,
            actual: crew.len() as u32,
        });
    }
    let (supervisors, mut rest) = select_supervisors(test, crew, scheduled.supervisors)?;
    rest.sort_by(|a, b| seniority_cmp(a, b, order));

    let date = scheduled.test.when();
    let frame = expand_positions(scheduled);
    let mut rows: Vec<ProgrammingRow> = frame
        .rows
        .iter()
        .zip(rest)
        .map(|(pos, assignee)| {
            let c = &scheduled.choices[pos.choice];
            ProgrammingRow {
                post: Post::Room {
                    label: c.room.label.clone(),
                    envelope: c.envelope,
                    observations: c.room.observations.clone(),
                    capacity: c.room.capacity,
                    students: c.enrolled,
                    slack: c.slack,
                    proctors: c.proctors,
                    position: pos.position,
                },
                test: test.clone(),
                date: date.clone(),
                assignee,
            }
        })
        .collect();
    rows.sort_by_key(|r| match r.post {
        Post::Room {
            envelope, position, ..
        } => (envelope, position),
        Post::Supervisor(_) => unreachable!(),
    });
    rows.extend(
        supervisors
            .into_iter()
            .zip(1..)
            .map(|(assignee, k)| ProgrammingRow {
                post: Post::Supervisor(k),
                test: test.clone(),
                date: date.clone(),
                assignee,
            }),
    );
    Ok(rows)
}
