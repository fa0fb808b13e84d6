//! Cross-dataset consistency checks run before any optimization.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::model::{
    LecturerProfile, ProctorLog, ProctorProfile, RoomCatalog, TestSession, TimeSlot,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Issue {
    UnknownRoom {
        test: String,
        room: String,
    },
    DuplicateTest {
        test: String,
    },
    MissingFromLog {
        name: String,
    },
    MissingFromPersonnel {
        name: String,
    },
    UnknownSlot {
        test: String,
        slot: TimeSlot,
    },
    MalformedSlot {
        source: &'static str,
        slot: TimeSlot,
    },
    DuplicateName {
        source: &'static str,
        name: String,
    },
    UnmatchedSubject {
        lecturer: String,
        subject: String,
    },
}

impl Issue {
    pub fn severity(&self) -> Severity {
        match self {
            Issue::UnmatchedSubject { .. } => Severity::Warning,
            _ => Severity::Error,
        }
    }
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::UnknownRoom { test, room } => {
                write!(f, "test {test}: room {room} is not in room_data.csv")
            }
            Issue::DuplicateTest { test } => write!(f, "test label {test} appears more than once"),
            Issue::MissingFromLog { name } => {
                write!(f, "{name} is in personnel_time.csv but not in proctor_log.csv")
            }
            Issue::MissingFromPersonnel { name } => {
                write!(f, "{name} is in proctor_log.csv but not in personnel_time.csv")
            }
            Issue::UnknownSlot { test, slot } => write!(
                f,
                "test {test}: time slot \"{slot}\" is not a column of personnel_time.csv"
            ),
            Issue::MalformedSlot { source, slot } => {
                write!(f, "{source}: time slot \"{slot}\" does not follow the \"dd TT-TT\" format")
            }
            Issue::DuplicateName { source, name } => write!(
                f,
                "{source}: name {name} is repeated; differentiate them artificially (e.g. {name} I, {name} II)"
            ),
            Issue::UnmatchedSubject { lecturer, subject } => write!(
                f,
                "lecturer {lecturer}: subject {subject} matches no test of this round and will not be scheduled"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn errors(&self) -> impl Iterator<Item = &Issue> {
        self.issues
            .iter()
            .filter(|i| i.severity() == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Issue> {
        self.issues
            .iter()
            .filter(|i| i.severity() == Severity::Warning)
    }

    pub fn has_errors(&self) -> bool {
        self.errors().next().is_some()
    }

    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }
}

fn duplicates<'a>(names: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut seen = BTreeSet::new();
    let mut dup = BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            dup.insert(n.to_string());
        }
    }
    dup.into_iter().collect()
}

/// Reports every inconsistency between the five datasets. Never fails.
pub fn validate_round(
    catalog: &RoomCatalog,
    tests: &[TestSession],
    personnel: &[ProctorProfile],
    log: &ProctorLog,
    lecturers: &[LecturerProfile],
) -> ValidationReport {
    let mut issues = Vec::new();

    for label in duplicates(tests.iter().map(|t| t.label.as_str())) {
        issues.push(Issue::DuplicateTest { test: label });
    }
    for test in tests {
        for room in &test.candidate_rooms {
            if !catalog.contains(room) {
                issues.push(Issue::UnknownRoom {
                    test: test.label.clone(),
                    room: room.clone(),
                });
            }
        }
    }

    for name in duplicates(personnel.iter().map(|p| p.name.as_str())) {
        issues.push(Issue::DuplicateName {
            source: "personnel_time.csv",
            name,
        });
    }
    for name in duplicates(log.entries.iter().map(|e| e.name.as_str())) {
        issues.push(Issue::DuplicateName {
            source: "proctor_log.csv",
            name,
        });
    }

    let log_names: BTreeSet<&str> = log.entries.iter().map(|e| e.name.as_str()).collect();
    let ta_names: BTreeSet<&str> = personnel.iter().map(|p| p.name.as_str()).collect();
    for p in personnel {
        if !log_names.contains(p.name.as_str()) {
            issues.push(Issue::MissingFromLog {
                name: p.name.clone(),
            });
        }
    }
    for e in &log.entries {
        if !ta_names.contains(e.name.as_str()) {
            issues.push(Issue::MissingFromPersonnel {
                name: e.name.clone(),
            });
        }
    }

    // Every TA carries the same columns after parsing; take the union anyway.
    let mut columns: BTreeMap<&TimeSlot, ()> = BTreeMap::new();
    for p in personnel {
        for slot in p.availability.keys() {
            columns.insert(slot, ());
        }
    }
    for slot in columns.keys() {
        if !slot.is_well_formed() {
            issues.push(Issue::MalformedSlot {
                source: "personnel_time.csv",
                slot: (*slot).clone(),
            });
        }
    }
    for test in tests {
        if !test.slot.is_well_formed() {
            issues.push(Issue::MalformedSlot {
                source: "available_rooms.csv",
                slot: test.slot.clone(),
            });
        }
        if !personnel.is_empty() && !columns.contains_key(&test.slot) {
            issues.push(Issue::UnknownSlot {
                test: test.label.clone(),
                slot: test.slot.clone(),
            });
        }
    }

    let labels: BTreeSet<&str> = tests.iter().map(|t| t.label.as_str()).collect();
    for lec in lecturers {
        if !lec.coordinator && !labels.contains(lec.subject.as_str()) {
            issues.push(Issue::UnmatchedSubject {
                lecturer: lec.name.clone(),
                subject: lec.subject.clone(),
            });
        }
    }

    ValidationReport { issues }
}
