//! Readers and writers for the five input tables.
//!
//! Every table is a UTF-8, comma separated file with a header row. Fields are
//! trimmed before interpretation.

use std::collections::BTreeSet;
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::model::{
    LecturerProfile, Level, LogEntry, ProctorLog, ProctorProfile, Room, RoomCatalog, TestSession,
    TimeSlot,
};

pub const AVAILABLE_ROOMS_FILE: &str = "available_rooms.csv";
pub const ROOM_DATA_FILE: &str = "room_data.csv";
pub const PERSONNEL_TIME_FILE: &str = "personnel_time.csv";
pub const PROCTOR_LOG_FILE: &str = "proctor_log.csv";
pub const PROFESSORS_FILE: &str = "professors.csv";

const ID_COLUMNS: [&str; 6] = ["Name", "Cell", "email", "ID", "Experience", "Level"];
const ROOM_DATA_COLUMNS: [&str; 3] = ["Room", "Capacity", "Observations"];
const PROFESSOR_COLUMNS: [&str; 6] = [
    "Name",
    "Coordinator",
    "Subject",
    "Subject_2",
    "Cell",
    "email",
];
const FOOTER: [&str; 3] = ["Students", "Date", "Time"];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IngestError {
    #[error("malformed CSV: {0}")]
    Csv(String),
    #[error("file is not valid UTF-8")]
    NotUtf8,
    #[error("required file {0} does not exist")]
    MissingFile(String),
    #[error("cannot read {file}: {message}")]
    Io { file: String, message: String },
    #[error("{file}: {source}")]
    InFile {
        file: String,
        #[source]
        source: Box<IngestError>,
    },
    #[error("unexpected header: expected {expected}, found {found:?}")]
    BadHeader {
        expected: String,
        found: Vec<String>,
    },
    #[error("row {row}: empty {column}")]
    EmptyField { row: usize, column: &'static str },
    #[error("footer row \"{0}\" is missing; the last three rows must be Students, Date, Time")]
    MissingFooter(&'static str),
    #[error("test {test}: time \"{value}\" does not follow the \"dd TT-TT\" format")]
    MalformedTime { test: String, value: String },
    #[error("test {test}: students \"{value}\" is not a non-negative integer")]
    NonIntegerDemand { test: String, value: String },
    #[error("test label {0} is repeated")]
    DuplicateTest(String),
    #[error("room {0} is repeated")]
    DuplicateRoom(String),
    #[error("room {room}: capacity \"{value}\" is not a positive integer")]
    NonPositiveCapacity { room: String, value: String },
    #[error("{name}: level \"{value}\" must be Undergraduate or Postgraduate")]
    UnknownLevel { name: String, value: String },
    #[error("{name}: experience \"{value}\" is not a non-negative integer")]
    NonIntegerExperience { name: String, value: String },
    #[error("name {0} is repeated; differentiate them artificially")]
    DuplicateName(String),
    #[error("{name}: event {event} has mark \"{value}\", expected 1, 0 or empty")]
    InvalidMark {
        name: String,
        event: String,
        value: String,
    },
    #[error("{name}: total \"{value}\" is not a non-negative integer")]
    InvalidTotal { name: String, value: String },
    #[error("{name}: stored Total {stored} but the event marks add up to {computed}")]
    TotalMismatch {
        name: String,
        stored: u32,
        computed: u32,
    },
}

impl IngestError {
    fn in_file(self, file: &str) -> IngestError {
        IngestError::InFile {
            file: file.to_string(),
            source: Box::new(self),
        }
    }
}

fn csv_err(e: csv::Error) -> IngestError {
    IngestError::Csv(e.to_string())
}

/// Header plus data rows, all fields trimmed.
fn read_table(text: &str) -> Result<(Vec<String>, Vec<Vec<String>>), IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(csv_err)?
        .iter()
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_err)?;
        rows.push(record.iter().map(str::to_string).collect());
    }
    Ok((header, rows))
}

fn check_prefix(header: &[String], expected: &[&str], exact: bool) -> Result<(), IngestError> {
    let ok = header.len() >= expected.len()
        && (!exact || header.len() == expected.len())
        && header.iter().zip(expected).all(|(h, e)| h == e);
    if ok {
        Ok(())
    } else {
        Err(IngestError::BadHeader {
            expected: expected.join(","),
            found: header.to_vec(),
        })
    }
}

pub(crate) fn write_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("in-memory write");
    for row in rows {
        writer.write_record(row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

pub(crate) fn owned(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|s| s.to_string()).collect()
}

fn parse_count(value: &str) -> Option<u32> {
    if value.is_empty() || !value.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    value.parse().ok()
}

/// Availability row of `available_rooms.csv`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvailabilityRow {
    pub room: String,
    /// One flag per test column.
    pub available: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestFooter {
    pub students: u32,
    pub date: String,
    pub slot: TimeSlot,
}

/// `available_rooms.csv`: rooms × tests, followed by the Students/Date/Time footer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvailableRoomsTable {
    pub tests: Vec<String>,
    pub rooms: Vec<AvailabilityRow>,
    pub footer: Vec<TestFooter>,
}

impl AvailableRoomsTable {
    /// One session per test column; candidate rooms keep file row order.
    pub fn sessions(&self) -> Vec<TestSession> {
        self.tests
            .iter()
            .zip(&self.footer)
            .enumerate()
            .map(|(t, (label, foot))| TestSession {
                label: label.clone(),
                demand: foot.students,
                date: foot.date.clone(),
                slot: foot.slot.clone(),
                candidate_rooms: self
                    .rooms
                    .iter()
                    .filter(|r| r.available[t])
                    .map(|r| r.room.clone())
                    .collect(),
            })
            .collect()
    }
}

pub fn parse_available_rooms(text: &str) -> Result<AvailableRoomsTable, IngestError> {
    let (header, rows) = read_table(text)?;
    if header.first().map(String::as_str) != Some("Room") {
        return Err(IngestError::BadHeader {
            expected: "Room,<test>,...".into(),
            found: header,
        });
    }
    let tests: Vec<String> = header[1..].to_vec();
    let mut seen = BTreeSet::new();
    for t in &tests {
        if t.is_empty() {
            return Err(IngestError::EmptyField {
                row: 0,
                column: "test label",
            });
        }
        if !seen.insert(t.as_str()) {
            return Err(IngestError::DuplicateTest(t.clone()));
        }
    }

    let n = rows.len();
    for (k, expected) in FOOTER.iter().enumerate() {
        let at_place = n >= 3 && rows[n - 3 + k][0] == *expected;
        if !at_place {
            return Err(IngestError::MissingFooter(expected));
        }
    }
    let (body, foot) = rows.split_at(n - 3);

    let mut footer = Vec::with_capacity(tests.len());
    for (t, label) in tests.iter().enumerate() {
        let students = &foot[0][t + 1];
        let students = parse_count(students).ok_or_else(|| IngestError::NonIntegerDemand {
            test: label.clone(),
            value: students.clone(),
        })?;
        let time = &foot[2][t + 1];
        let slot = TimeSlot::parse(time).ok_or_else(|| IngestError::MalformedTime {
            test: label.clone(),
            value: time.clone(),
        })?;
        footer.push(TestFooter {
            students,
            date: foot[1][t + 1].clone(),
            slot,
        });
    }

    let mut labels = BTreeSet::new();
    let mut rooms = Vec::with_capacity(body.len());
    for (i, row) in body.iter().enumerate() {
        let room = row[0].clone();
        if room.is_empty() {
            return Err(IngestError::EmptyField {
                row: i + 1,
                column: "Room",
            });
        }
        if !labels.insert(room.clone()) {
            return Err(IngestError::DuplicateRoom(room));
        }
        let available = row[1..].iter().map(|cell| !cell.is_empty()).collect();
        rooms.push(AvailabilityRow { room, available });
    }

    Ok(AvailableRoomsTable {
        tests,
        rooms,
        footer,
    })
}

pub fn write_available_rooms(table: &AvailableRoomsTable) -> String {
    let mut header = vec!["Room".to_string()];
    header.extend(table.tests.iter().cloned());
    let mut rows: Vec<Vec<String>> = table
        .rooms
        .iter()
        .map(|r| {
            std::iter::once(r.room.clone())
                .chain(
                    r.available
                        .iter()
                        .map(|&a| if a { "1" } else { "" }.to_string()),
                )
                .collect()
        })
        .collect();
    let footer_row = |label: &str, f: &dyn Fn(&TestFooter) -> String| -> Vec<String> {
        std::iter::once(label.to_string())
            .chain(table.footer.iter().map(f))
            .collect()
    };
    rows.push(footer_row("Students", &|f| f.students.to_string()));
    rows.push(footer_row("Date", &|f| f.date.clone()));
    rows.push(footer_row("Time", &|f| f.slot.to_string()));
    write_table(&header, &rows)
}

pub fn parse_room_data(text: &str) -> Result<RoomCatalog, IngestError> {
    let (header, rows) = read_table(text)?;
    check_prefix(&header, &ROOM_DATA_COLUMNS, true)?;
    let mut catalog = RoomCatalog::default();
    for (i, row) in rows.into_iter().enumerate() {
        let mut fields = row.into_iter();
        let (label, capacity, observations) = (
            fields.next().unwrap_or_default(),
            fields.next().unwrap_or_default(),
            fields.next().unwrap_or_default(),
        );
        if label.is_empty() {
            return Err(IngestError::EmptyField {
                row: i + 1,
                column: "Room",
            });
        }
        let capacity = match parse_count(&capacity) {
            Some(c) if c > 0 => c,
            _ => {
                return Err(IngestError::NonPositiveCapacity {
                    room: label,
                    value: capacity,
                })
            }
        };
        catalog
            .insert(Room {
                label,
                capacity,
                observations,
            })
            .map_err(|room| IngestError::DuplicateRoom(room.label))?;
    }
    Ok(catalog)
}

pub fn write_room_data(catalog: &RoomCatalog) -> String {
    let rows: Vec<Vec<String>> = catalog
        .rooms()
        .iter()
        .map(|r| {
            vec![
                r.label.clone(),
                r.capacity.to_string(),
                r.observations.clone(),
            ]
        })
        .collect();
    write_table(&owned(&ROOM_DATA_COLUMNS), &rows)
}

struct Identity {
    name: String,
    cell: String,
    email: String,
    id: String,
    experience: u32,
    level: Level,
}

fn parse_identity(row: &[String], index: usize) -> Result<Identity, IngestError> {
    let name = row[0].clone();
    if name.is_empty() {
        return Err(IngestError::EmptyField {
            row: index + 1,
            column: "Name",
        });
    }
    let experience = parse_count(&row[4]).ok_or_else(|| IngestError::NonIntegerExperience {
        name: name.clone(),
        value: row[4].clone(),
    })?;
    let level = Level::parse(&row[5]).ok_or_else(|| IngestError::UnknownLevel {
        name: name.clone(),
        value: row[5].clone(),
    })?;
    Ok(Identity {
        cell: row[1].clone(),
        email: row[2].clone(),
        id: row[3].clone(),
        name,
        experience,
        level,
    })
}

/// Availability is true only for a literal `1`; anything else means unavailable.
pub fn parse_personnel_time(text: &str) -> Result<Vec<ProctorProfile>, IngestError> {
    let (header, rows) = read_table(text)?;
    check_prefix(&header, &ID_COLUMNS, false)?;
    let slots: Vec<TimeSlot> = header[ID_COLUMNS.len()..]
        .iter()
        .map(|h| TimeSlot::new(h))
        .collect();
    let mut names = BTreeSet::new();
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let who = parse_identity(row, i)?;
        if !names.insert(who.name.clone()) {
            return Err(IngestError::DuplicateName(who.name));
        }
        let availability = slots
            .iter()
            .zip(&row[ID_COLUMNS.len()..])
            .map(|(slot, cell)| (slot.clone(), cell == "1"))
            .collect();
        out.push(ProctorProfile {
            name: who.name,
            cell: who.cell,
            email: who.email,
            id: who.id,
            experience: who.experience,
            level: who.level,
            availability,
        });
    }
    Ok(out)
}

pub fn write_personnel_time(personnel: &[ProctorProfile]) -> String {
    let slots: BTreeSet<&TimeSlot> = personnel
        .iter()
        .flat_map(|p| p.availability.keys())
        .collect();
    let mut header = owned(&ID_COLUMNS);
    header.extend(slots.iter().map(|s| s.to_string()));
    let rows: Vec<Vec<String>> = personnel
        .iter()
        .map(|p| {
            let mut row = vec![
                p.name.clone(),
                p.cell.clone(),
                p.email.clone(),
                p.id.clone(),
                p.experience.to_string(),
                p.level.as_str().to_string(),
            ];
            row.extend(
                slots
                    .iter()
                    .map(|s| if p.is_available(s) { "1" } else { "" }.to_string()),
            );
            row
        })
        .collect();
    write_table(&header, &rows)
}

pub fn parse_proctor_log(text: &str) -> Result<ProctorLog, IngestError> {
    let (header, rows) = read_table(text)?;
    check_prefix(&header, &ID_COLUMNS, false)?;
    if header.len() == ID_COLUMNS.len() || header.last().map(String::as_str) != Some("Total") {
        return Err(IngestError::BadHeader {
            expected: format!("{},<event>,...,Total", ID_COLUMNS.join(",")),
            found: header,
        });
    }
    let events: Vec<String> = header[ID_COLUMNS.len()..header.len() - 1].to_vec();
    let mut names = BTreeSet::new();
    let mut entries = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let who = parse_identity(row, i)?;
        if !names.insert(who.name.clone()) {
            return Err(IngestError::DuplicateName(who.name));
        }
        let marks = events
            .iter()
            .zip(&row[ID_COLUMNS.len()..row.len() - 1])
            .map(|(event, cell)| match cell.as_str() {
                "1" => Ok(true),
                "" | "0" => Ok(false),
                other => Err(IngestError::InvalidMark {
                    name: who.name.clone(),
                    event: event.clone(),
                    value: other.to_string(),
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let total_cell = &row[row.len() - 1];
        let stored = parse_count(total_cell).ok_or_else(|| IngestError::InvalidTotal {
            name: who.name.clone(),
            value: total_cell.clone(),
        })?;
        let entry = LogEntry {
            name: who.name,
            cell: who.cell,
            email: who.email,
            id: who.id,
            experience: who.experience,
            level: who.level,
            marks,
        };
        let computed = entry.total();
        if computed != stored {
            return Err(IngestError::TotalMismatch {
                name: entry.name,
                stored,
                computed,
            });
        }
        entries.push(entry);
    }
    Ok(ProctorLog { events, entries })
}

/// Marks are written as `1` or left blank.
pub fn write_proctor_log(log: &ProctorLog) -> String {
    let mut header = owned(&ID_COLUMNS);
    header.extend(log.events.iter().cloned());
    header.push("Total".into());
    let rows: Vec<Vec<String>> = log
        .entries
        .iter()
        .map(|e| {
            let mut row = vec![
                e.name.clone(),
                e.cell.clone(),
                e.email.clone(),
                e.id.clone(),
                e.experience.to_string(),
                e.level.as_str().to_string(),
            ];
            row.extend(
                e.marks
                    .iter()
                    .map(|&m| if m { "1" } else { "" }.to_string()),
            );
            row.push(e.total().to_string());
            row
        })
        .collect();
    write_table(&header, &rows)
}

/// Only the first subject is kept; only a literal `yes` marks a coordinator.
pub fn parse_professors(text: &str) -> Result<Vec<LecturerProfile>, IngestError> {
    let (header, rows) = read_table(text)?;
    check_prefix(&header, &PROFESSOR_COLUMNS, true)?;
    rows.into_iter()
        .enumerate()
        .map(|(i, row)| {
            if row[0].is_empty() {
                return Err(IngestError::EmptyField {
                    row: i + 1,
                    column: "Name",
                });
            }
            let mut f = row.into_iter();
            let name = f.next().unwrap_or_default();
            let coordinator = f.next().unwrap_or_default() == "yes";
            let subject = f.next().unwrap_or_default();
            let _subject_2 = f.next();
            Ok(LecturerProfile {
                name,
                coordinator,
                subject,
                cell: f.next().unwrap_or_default(),
                email: f.next().unwrap_or_default(),
            })
        })
        .collect()
}

pub fn write_professors(lecturers: &[LecturerProfile]) -> String {
    let rows: Vec<Vec<String>> = lecturers
        .iter()
        .map(|l| {
            vec![
                l.name.clone(),
                if l.coordinator { "yes" } else { "" }.to_string(),
                l.subject.clone(),
                String::new(),
                l.cell.clone(),
                l.email.clone(),
            ]
        })
        .collect();
    write_table(&owned(&PROFESSOR_COLUMNS), &rows)
}

/// The five parsed inputs of one round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputBundle {
    pub available_rooms: AvailableRoomsTable,
    pub catalog: RoomCatalog,
    pub personnel: Vec<ProctorProfile>,
    pub log: ProctorLog,
    pub lecturers: Vec<LecturerProfile>,
}

impl InputBundle {
    pub fn tests(&self) -> Vec<TestSession> {
        self.available_rooms.sessions()
    }
}

fn read_text(dir: &Path, file: &str) -> Result<String, IngestError> {
    let path = dir.join(file);
    let bytes = fs::read(&path).map_err(|e| match e.kind() {
        io::ErrorKind::NotFound => IngestError::MissingFile(file.to_string()),
        _ => IngestError::Io {
            file: file.to_string(),
            message: e.to_string(),
        },
    })?;
    String::from_utf8(bytes).map_err(|_| IngestError::NotUtf8.in_file(file))
}

fn load<T>(
    dir: &Path,
    file: &str,
    parse: impl FnOnce(&str) -> Result<T, IngestError>,
) -> Result<T, IngestError> {
    let text = read_text(dir, file)?;
    parse(&text).map_err(|e| e.in_file(file))
}

/// Reads all five tables from `dir`. Every file must exist, `professors.csv` included.
pub fn load_bundle(dir: &Path) -> Result<InputBundle, IngestError> {
    Ok(InputBundle {
        available_rooms: load(dir, AVAILABLE_ROOMS_FILE, parse_available_rooms)?,
        catalog: load(dir, ROOM_DATA_FILE, parse_room_data)?,
        personnel: load(dir, PERSONNEL_TIME_FILE, parse_personnel_time)?,
        log: load(dir, PROCTOR_LOG_FILE, parse_proctor_log)?,
        lecturers: load(dir, PROFESSORS_FILE, parse_professors)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const PERSONNEL: &str = "\
Name,Cell,email,ID,Experience,Level,Mo 10-12,Mo 12-14,Sa 08-10
TA 1,C 1,1@m.co,ID 1,1,Undergraduate,Day Off,,1
TA 2,C 2,2@m.co,ID 2,2,Undergraduate,Busy,1,1
TA 3,C 3,3@m.co,ID 3,1,Undergraduate,1,Class,1
TA 4,C 4,4@m.co,ID 4,1,Undergraduate,1,1,1
TA 5,C 5,5@m.co,ID 5,2,Undergraduate,1,NA,1
TA 6,C 6,6@m.co,ID 6,2,Postgraduate,1,0,1
";

    const LOG: &str = "\
Name,Cell,email,ID,Experience,Level,\"ODE, 04-II\",Total
TA 1,C 1,1@m.co,ID 1,1,Undergraduate,,0
TA 2,C 2,2@m.co,ID 2,2,Undergraduate,1,1
TA 3,C 3,3@m.co,ID 3,1,Undergraduate,1,1
TA 4,C 4,4@m.co,ID 4,1,Undergraduate,1,1
TA 5,C 5,5@m.co,ID 5,2,Undergraduate,1,1
TA 6,C 6,6@m.co,ID 6,2,Postgraduate,,0
";

    const PROFESSORS: &str = "\
Name,Coordinator,Subject,Subject_2,Cell,email
Lec 1,yes,VC,,C 100,Lec1@m.co
Lec 2,,NM,,C 200,Lec2@m.co
Lec 3,,DC,,C 300,Lec3@m.co
Lec 4,,ODE,AL,C 400,Lec4@m.co
Lec 5,,MD,,C 500,Lec5@m.co
Lec 6,,VAG,DC,C 600,Lec6@m.co
Lec 7,Yes,VC,,C 700,Lec7@m.co
";

    #[test]
    fn vc_column_of_available_rooms() {
        let text = "\
Room,DC,VC
16-223,63,63
16-224,60,60
21-307,52,52
21-314,79,79
21-320,64,64
21-328,,30
41-103,106,106
46-209,50,50
46-210,52,52
46-307,100,100
04-108,29,
Students,1300,608
Date,30-III,06-IV
Time,Sa 12-14,Sa 14-16
";
        let table = parse_available_rooms(text).unwrap();
        let sessions = table.sessions();
        let vc = &sessions[1];
        assert_eq!(vc.label, "VC");
        assert_eq!(vc.demand, 608);
        assert_eq!(vc.date, "06-IV");
        assert_eq!(vc.slot, TimeSlot::new("Sa 14-16"));
        assert_eq!(
            vc.candidate_rooms,
            [
                "16-223", "16-224", "21-307", "21-314", "21-320", "21-328", "41-103", "46-209",
                "46-210", "46-307"
            ]
        );
    }

    #[test]
    fn any_non_empty_cell_marks_available() {
        let text = "Room,A\nx,1\ny,63\nz,\nStudents,10\nDate,01-I\nTime,Mo 08-10\n";
        let table = parse_available_rooms(text).unwrap();
        assert_eq!(table.sessions()[0].candidate_rooms, ["x", "y"]);
    }

    #[test]
    fn empty_test_column_parses() {
        let text = "Room,A\nx,\nStudents,0\nDate,01-I\nTime,Mo 08-10\n";
        let table = parse_available_rooms(text).unwrap();
        assert!(table.sessions()[0].candidate_rooms.is_empty());
    }

    #[test]
    fn footer_errors() {
        let missing = "Room,A\nx,1\nStudents,10\nTime,Mo 08-10\n";
        assert!(matches!(
            parse_available_rooms(missing),
            Err(IngestError::MissingFooter(_))
        ));
        let bad_time = "Room,A\nx,1\nStudents,10\nDate,01-I\nTime,Mo 8-10\n";
        assert_eq!(
            parse_available_rooms(bad_time),
            Err(IngestError::MalformedTime {
                test: "A".into(),
                value: "Mo 8-10".into()
            })
        );
        let bad_demand = "Room,A\nx,1\nStudents,ten\nDate,01-I\nTime,Mo 08-10\n";
        assert!(matches!(
            parse_available_rooms(bad_demand),
            Err(IngestError::NonIntegerDemand { .. })
        ));
    }

    #[test]
    fn room_data_rows() {
        let catalog =
            parse_room_data("Room,Capacity,Observations\n03-210,32,Doorkeeper\n").unwrap();
        assert_eq!(
            catalog.get("03-210"),
            Some(&Room {
                label: "03-210".into(),
                capacity: 32,
                observations: "Doorkeeper".into()
            })
        );
        assert!(matches!(
            parse_room_data("Room,Capacity,Observations\n03-210,0,Key\n"),
            Err(IngestError::NonPositiveCapacity { .. })
        ));
        assert_eq!(
            parse_room_data("Room,Capacity,Observations\n04-108,28,Key\n04-108,28,Key\n"),
            Err(IngestError::DuplicateRoom("04-108".into()))
        );
    }

    #[test]
    fn personnel_availability_is_literal_one() {
        let tas = parse_personnel_time(PERSONNEL).unwrap();
        let ta1 = &tas[0];
        assert!(!ta1.is_available(&TimeSlot::new("Mo 10-12")));
        assert!(!ta1.is_available(&TimeSlot::new("Mo 12-14")));
        assert!(ta1.is_available(&TimeSlot::new("Sa 08-10")));
        assert!(!tas[4].is_available(&TimeSlot::new("Mo 12-14")));
        assert!(!tas[5].is_available(&TimeSlot::new("Mo 12-14")));
        assert_eq!(tas[5].level, Level::Postgraduate);

        let word =
            "Name,Cell,email,ID,Experience,Level,Mo 08-10\nA,c,e,i,0,Undergraduate,Available\n";
        assert!(!parse_personnel_time(word).unwrap()[0].is_available(&TimeSlot::new("Mo 08-10")));

        let all =
            "Name,Cell,email,ID,Experience,Level,Mo 08-10,Mo 10-12\nA,c,e,i,0,Undergraduate,1,1\n";
        assert!(parse_personnel_time(all).unwrap()[0]
            .availability
            .values()
            .all(|&a| a));
    }

    #[test]
    fn personnel_errors() {
        let level = "Name,Cell,email,ID,Experience,Level\nA,c,e,i,0,PhD\n";
        assert!(matches!(
            parse_personnel_time(level),
            Err(IngestError::UnknownLevel { .. })
        ));
        let exp = "Name,Cell,email,ID,Experience,Level\nA,c,e,i,two,Undergraduate\n";
        assert!(matches!(
            parse_personnel_time(exp),
            Err(IngestError::NonIntegerExperience { .. })
        ));
        let dup = "Name,Cell,email,ID,Experience,Level\nJohn,c,e,i,0,Undergraduate\nJohn,c,e,j,1,Undergraduate\n";
        assert_eq!(
            parse_personnel_time(dup),
            Err(IngestError::DuplicateName("John".into()))
        );
    }

    #[test]
    fn proctor_log_totals() {
        let log = parse_proctor_log(LOG).unwrap();
        assert_eq!(log.events, ["ODE, 04-II"]);
        let totals: Vec<u32> = log.entries.iter().map(LogEntry::total).collect();
        assert_eq!(totals, [0, 1, 1, 1, 1, 0]);

        let fresh =
            "Name,Cell,email,ID,Experience,Level,Total\nTA 1,C 1,1@m.co,ID 1,1,Undergraduate,0\n";
        let log = parse_proctor_log(fresh).unwrap();
        assert!(log.events.is_empty());
        assert_eq!(log.total_for("TA 1"), 0);

        let bad = "Name,Cell,email,ID,Experience,Level,a,b,Total\nTA 1,C 1,1@m.co,ID 1,1,Undergraduate,1,1,1\n";
        assert_eq!(
            parse_proctor_log(bad),
            Err(IngestError::TotalMismatch {
                name: "TA 1".into(),
                stored: 1,
                computed: 2
            })
        );
    }

    #[test]
    fn professors_rules() {
        let lecs = parse_professors(PROFESSORS).unwrap();
        assert!(lecs[0].coordinator);
        assert_eq!(lecs[3].subject, "ODE");
        assert!(!lecs[6].coordinator, "only lowercase yes counts");
        let empty = parse_professors("Name,Coordinator,Subject,Subject_2,Cell,email\n").unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn missing_professors_file() {
        let dir = tempfile::tempdir().unwrap();
        for (file, body) in [
            (
                AVAILABLE_ROOMS_FILE,
                "Room,A\nx,1\nStudents,1\nDate,01-I\nTime,Mo 08-10\n",
            ),
            (ROOM_DATA_FILE, "Room,Capacity,Observations\nx,10,\n"),
            (PERSONNEL_TIME_FILE, PERSONNEL),
            (PROCTOR_LOG_FILE, LOG),
        ] {
            fs::write(dir.path().join(file), body).unwrap();
        }
        assert_eq!(
            load_bundle(dir.path()),
            Err(IngestError::MissingFile(PROFESSORS_FILE.into()))
        );
        fs::write(dir.path().join(PROFESSORS_FILE), PROFESSORS).unwrap();
        assert!(load_bundle(dir.path()).is_ok());
    }

    #[test]
    fn writers_reparse_to_same_value() {
        let log = parse_proctor_log(LOG).unwrap();
        assert_eq!(parse_proctor_log(&write_proctor_log(&log)).unwrap(), log);
        let tas = parse_personnel_time(PERSONNEL).unwrap();
        assert_eq!(
            parse_personnel_time(&write_personnel_time(&tas)).unwrap(),
            tas
        );
        let lecs = parse_professors(PROFESSORS).unwrap();
        assert_eq!(parse_professors(&write_professors(&lecs)).unwrap(), lecs);
    }
}
