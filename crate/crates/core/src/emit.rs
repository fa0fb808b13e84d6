//! Renderers for the four output artifacts.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::crew::{Post, ProgrammingRow};
use crate::ingest::{owned, write_proctor_log, write_table};
use crate::model::{Assignee, ProctorLog, ScheduledTest};

pub const SCHEDULED_ROOMS_DIR: &str = "scheduled_rooms";
pub const SCHEDULED_CREW_FILE: &str = "scheduled_crew.csv";
pub const NEW_PROCTOR_LOG_FILE: &str = "new_proctor_log.csv";
pub const PROPOSED_PROGRAMMING_DIR: &str = "proposed_programming";

const NA: &str = "na";

const ROOM_COLUMNS: [&str; 9] = [
    "Room",
    "Envelope",
    "Proctors",
    "Observations",
    "Capacity",
    "Students",
    "Slack",
    "Test",
    "Date",
];
const CREW_COLUMNS: [&str; 6] = ["Cell", "Experience", "Level", "Name", "Test", "email"];
const PROGRAMMING_COLUMNS: [&str; 12] = [
    "Room",
    "Envelope",
    "Observations",
    "Capacity",
    "Students",
    "Slack",
    "Test",
    "Date",
    "Proctors",
    "Name",
    "Cell",
    "email",
];

/// One row per selected room in envelope order, then one per supervisor.
pub fn render_scheduled_rooms(scheduled: &ScheduledTest) -> String {
    let test = &scheduled.test;
    let when = test.when();
    let mut rows: Vec<Vec<String>> = scheduled
        .choices
        .iter()
        .map(|c| {
            vec![
                c.room.label.clone(),
                c.envelope.to_string(),
                c.proctors.to_string(),
                c.room.observations.clone(),
                c.room.capacity.to_string(),
                c.enrolled.to_string(),
                c.slack.to_string(),
                test.label.clone(),
                when.clone(),
            ]
        })
        .collect();
    for k in 1..=scheduled.supervisors {
        rows.push(vec![
            format!("Supervisor {k}"),
            NA.into(),
            "1".into(),
            NA.into(),
            NA.into(),
            NA.into(),
            NA.into(),
            test.label.clone(),
            when.clone(),
        ]);
    }
    write_table(&owned(&ROOM_COLUMNS), &rows)
}

/// Crews listed test by test, in the order given.
pub fn render_scheduled_crew(crews: &[(&str, &[Assignee])]) -> String {
    let rows: Vec<Vec<String>> = crews
        .iter()
        .flat_map(|&(test, crew)| {
            crew.iter().map(move |a| {
                vec![
                    a.cell.clone(),
                    a.experience.to_string(),
                    a.level.as_str().to_string(),
                    a.name.clone(),
                    test.to_string(),
                    a.email.clone(),
                ]
            })
        })
        .collect();
    write_table(&owned(&CREW_COLUMNS), &rows)
}

pub fn render_proposed_programming(rows: &[ProgrammingRow]) -> String {
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut fields = match &r.post {
                Post::Room {
                    label,
                    envelope,
                    observations,
                    capacity,
                    students,
                    slack,
                    ..
                } => vec![
                    label.clone(),
                    envelope.to_string(),
                    observations.clone(),
                    capacity.to_string(),
                    students.to_string(),
                    slack.to_string(),
                ],
                Post::Supervisor(k) => {
                    let mut v = vec![format!("Supervisor {k}")];
                    v.extend(std::iter::repeat_n(NA.to_string(), 5));
                    v
                }
            };
            let proctors = match &r.post {
                Post::Room { proctors, .. } => *proctors,
                Post::Supervisor(_) => 1,
            };
            fields.extend([
                r.test.clone(),
                r.date.clone(),
                proctors.to_string(),
                r.assignee.name.clone(),
                r.assignee.cell.clone(),
                r.assignee.email.clone(),
            ]);
            fields
        })
        .collect();
    write_table(&owned(&PROGRAMMING_COLUMNS), &table)
}

pub fn render_new_log(log: &ProctorLog) -> String {
    write_proctor_log(log)
}

/// `<dir>/<test>.csv`, refusing labels that would escape `dir`.
pub fn per_test_path(dir: &Path, test: &str) -> io::Result<PathBuf> {
    let unsafe_label =
        test.is_empty() || test == "." || test == ".." || test.contains(['/', '\\', '\0']);
    if unsafe_label {
        return Err(io::Error::new(
            io::ErrorKind::InvalidInput,
            format!("test label {test:?} cannot be used as a file name"),
        ));
    }
    Ok(dir.join(format!("{test}.csv")))
}

/// Writes `contents` to `path`, creating parent directories.
pub fn write_file(path: &Path, contents: &str) -> io::Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, contents)
}
