//! Domain types shared by every stage of the pipeline.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

/// Default number of students one proctor covers.
pub const DEFAULT_RATE: u32 = 54;
/// Default number of students per test supervisor.
pub const DEFAULT_SUPERVISOR_RATE: u32 = 650;

/// How crew members are ranked before they are paired with room positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeniorityOrder {
    /// Lecturer > Postgraduate > Undergraduate, then experience.
    #[default]
    LecturersFirst,
    /// The literal "Num_Level" numbering: Undergraduate 3, Graduate 2, PhD 1, sorted descending.
    LiteralNumLevel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleConfig {
    pub rate: u32,
    pub supervisor_rate: u32,
    pub input_dir: PathBuf,
    pub output_dir: PathBuf,
    pub seniority: SeniorityOrder,
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        Self {
            rate: DEFAULT_RATE,
            supervisor_rate: DEFAULT_SUPERVISOR_RATE,
            input_dir: PathBuf::from("."),
            output_dir: PathBuf::from("."),
            seniority: SeniorityOrder::default(),
        }
    }
}

/// A weekly time slot token such as `Mo 08-10`.
///
/// Equality is token equality after trimming. Whether the token has the
/// canonical `dd TT-TT` shape is a separate question answered by
/// [`TimeSlot::is_well_formed`]; [`TimeSlot::parse`] insists on it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimeSlot(String);

impl TimeSlot {
    /// Wraps a token without checking its shape.
    pub fn new(token: &str) -> Self {
        TimeSlot(token.trim().to_string())
    }

    /// Accepts only the `dd TT-TT` shape.
    pub fn parse(token: &str) -> Option<Self> {
        let slot = TimeSlot::new(token);
        slot.is_well_formed().then_some(slot)
    }

    pub fn is_well_formed(&self) -> bool {
        let b = self.0.as_bytes();
        b.len() == 8
            && b[0].is_ascii_alphabetic()
            && b[1].is_ascii_alphabetic()
            && b[2] == b' '
            && b[3].is_ascii_digit()
            && b[4].is_ascii_digit()
            && b[5] == b'-'
            && b[6].is_ascii_digit()
            && b[7].is_ascii_digit()
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn day(&self) -> Option<&str> {
        self.is_well_formed().then(|| &self.0[0..2])
    }

    pub fn start_hour(&self) -> Option<u8> {
        self.is_well_formed()
            .then(|| self.0[3..5].parse().ok())
            .flatten()
    }

    pub fn end_hour(&self) -> Option<u8> {
        self.is_well_formed()
            .then(|| self.0[6..8].parse().ok())
            .flatten()
    }
}

impl fmt::Display for TimeSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Room {
    pub label: String,
    pub capacity: u32,
    pub observations: String,
}

/// All known rooms, in file order, keyed by label.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RoomCatalog {
    rooms: Vec<Room>,
    index: BTreeMap<String, usize>,
}

impl RoomCatalog {
    /// Inserts a room; returns it back if the label is already present.
    pub fn insert(&mut self, room: Room) -> Result<(), Room> {
        if self.index.contains_key(&room.label) {
            return Err(room);
        }
        self.index.insert(room.label.clone(), self.rooms.len());
        self.rooms.push(room);
        Ok(())
    }

    pub fn get(&self, label: &str) -> Option<&Room> {
        self.index.get(label).map(|&i| &self.rooms[i])
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn rooms(&self) -> &[Room] {
        &self.rooms
    }

    pub fn len(&self) -> usize {
        self.rooms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rooms.is_empty()
    }
}

impl FromIterator<Room> for RoomCatalog {
    /// Later duplicates are dropped.
    fn from_iter<I: IntoIterator<Item = Room>>(iter: I) -> Self {
        let mut catalog = RoomCatalog::default();
        for room in iter {
            let _ = catalog.insert(room);
        }
        catalog
    }
}

/// One exam event of the round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestSession {
    pub label: String,
    pub demand: u32,
    pub date: String,
    pub slot: TimeSlot,
    pub candidate_rooms: Vec<String>,
}

impl TestSession {
    /// Two tests are simultaneous when they share this key.
    pub fn simultaneity_key(&self) -> (&str, &TimeSlot) {
        (&self.date, &self.slot)
    }

    /// The "Date" column of the output files, e.g. `Sa 14-16 06-IV`.
    pub fn when(&self) -> String {
        format!("{} {}", self.slot, self.date)
    }

    /// Proctor log column label, e.g. `VC, 06-IV`.
    pub fn event_label(&self) -> String {
        format!("{}, {}", self.label, self.date)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Undergraduate,
    Postgraduate,
}

impl Level {
    pub fn parse(s: &str) -> Option<Level> {
        match s.trim() {
            "Undergraduate" => Some(Level::Undergraduate),
            "Postgraduate" => Some(Level::Postgraduate),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Level::Undergraduate => "Undergraduate",
            Level::Postgraduate => "Postgraduate",
        }
    }
}

/// A teaching assistant and their weekly availability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProctorProfile {
    pub name: String,
    pub cell: String,
    pub email: String,
    pub id: String,
    pub experience: u32,
    pub level: Level,
    pub availability: BTreeMap<TimeSlot, bool>,
}

impl ProctorProfile {
    pub fn is_available(&self, slot: &TimeSlot) -> bool {
        self.availability.get(slot).copied().unwrap_or(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LecturerProfile {
    pub name: String,
    pub coordinator: bool,
    pub subject: String,
    pub cell: String,
    pub email: String,
}

/// One TA row of the service log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogEntry {
    pub name: String,
    pub cell: String,
    pub email: String,
    pub id: String,
    pub experience: u32,
    pub level: Level,
    /// One mark per event column of the owning log, same order.
    pub marks: Vec<bool>,
}

impl LogEntry {
    pub fn total(&self) -> u32 {
        self.marks.iter().filter(|&&m| m).count() as u32
    }
}

/// Historical service record: event columns plus one row per TA.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProctorLog {
    pub events: Vec<String>,
    pub entries: Vec<LogEntry>,
}

impl ProctorLog {
    pub fn entry(&self, name: &str) -> Option<&LogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// L_p for `name`, 0 when the TA has no row.
    pub fn total_for(&self, name: &str) -> u32 {
        self.entry(name).map(LogEntry::total).unwrap_or(0)
    }
}

/// The decision for one selected room.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoomChoice {
    pub room: Room,
    pub selected: bool,
    pub enrolled: u32,
    pub proctors: u32,
    pub envelope: u32,
    pub slack: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduledTest {
    pub test: TestSession,
    pub choices: Vec<RoomChoice>,
    pub supervisors: u32,
}

impl ScheduledTest {
    pub fn room_proctors(&self) -> u32 {
        self.choices.iter().map(|c| c.proctors).sum()
    }

    /// W: room proctors plus supervisors.
    pub fn total_demand(&self) -> u32 {
        self.room_proctors() + self.supervisors
    }

    pub fn enrolled(&self) -> u32 {
        self.choices.iter().map(|c| c.enrolled).sum()
    }
}

/// Experience credited to lecturers, whose file carries no experience column.
pub const LECTURER_EXPERIENCE: u32 = 10;

/// Rank of a crew member as written in the crew files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CrewLevel {
    Undergraduate,
    Postgraduate,
    Lecturer,
}

impl CrewLevel {
    pub fn as_str(self) -> &'static str {
        match self {
            CrewLevel::Undergraduate => "Undergraduate",
            CrewLevel::Postgraduate => "Postgraduate",
            CrewLevel::Lecturer => "PhD",
        }
    }
}

impl From<Level> for CrewLevel {
    fn from(level: Level) -> Self {
        match level {
            Level::Undergraduate => CrewLevel::Undergraduate,
            Level::Postgraduate => CrewLevel::Postgraduate,
        }
    }
}

/// A person assigned to proctor one test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignee {
    pub name: String,
    pub cell: String,
    pub email: String,
    pub experience: u32,
    pub level: CrewLevel,
}

impl From<&ProctorProfile> for Assignee {
    fn from(p: &ProctorProfile) -> Self {
        Assignee {
            name: p.name.clone(),
            cell: p.cell.clone(),
            email: p.email.clone(),
            experience: p.experience,
            level: p.level.into(),
        }
    }
}

impl From<&LecturerProfile> for Assignee {
    fn from(l: &LecturerProfile) -> Self {
        Assignee {
            name: l.name.clone(),
            cell: l.cell.clone(),
            email: l.email.clone(),
            experience: LECTURER_EXPERIENCE,
            level: CrewLevel::Lecturer,
        }
    }
}
