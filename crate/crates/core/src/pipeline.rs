//! End-to-end run: ingest, validate, rooms, personnel, crew.
//!
//! Each stage writes its artifacts before the next one starts, so a failure
//! leaves everything produced so far on disk. `proctor_log.csv` is only read.

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use num_rational::Ratio;
use thiserror::Error;

use crate::crew::{organize_crew, CrewError, ProgrammingRow};
use crate::emit::{
    per_test_path, render_new_log, render_proposed_programming, render_scheduled_crew,
    render_scheduled_rooms, write_file, NEW_PROCTOR_LOG_FILE, PROPOSED_PROGRAMMING_DIR,
    SCHEDULED_CREW_FILE, SCHEDULED_ROOMS_DIR,
};
use crate::ingest::{load_bundle, IngestError, InputBundle};
use crate::model::{ScheduleConfig, ScheduledTest};
use crate::personnel::{decide_personnel, PersonnelDecision, PersonnelError};
use crate::rooms::{schedule_test, RoomError};
use crate::validate::{validate_round, ValidationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Ingest,
    Validate,
    Rooms,
    Personnel,
    Crew,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Ingest => "ingest",
            Stage::Validate => "validate",
            Stage::Rooms => "room decision",
            Stage::Personnel => "personnel decision",
            Stage::Crew => "crew organization",
        })
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("[ingest] {0}")]
    Ingest(#[from] IngestError),
    #[error("[validate] {} error(s):\n{}", .0.errors().count(), render_issues(.0))]
    Validation(ValidationReport),
    #[error("[room decision] {0}")]
    Rooms(#[from] RoomError),
    #[error("[personnel decision] {0}")]
    Personnel(#[from] PersonnelError),
    #[error("[crew organization] {0}")]
    Crew(#[from] CrewError),
    #[error("[{stage}] cannot write {}: {message}", .path.display())]
    Io {
        stage: Stage,
        path: PathBuf,
        message: String,
    },
}

fn render_issues(report: &ValidationReport) -> String {
    report
        .errors()
        .map(|i| format!("  - {i}"))
        .collect::<Vec<_>>()
        .join("\n")
}

impl PipelineError {
    pub fn stage(&self) -> Stage {
        match self {
            PipelineError::Ingest(_) => Stage::Ingest,
            PipelineError::Validation(_) => Stage::Validate,
            PipelineError::Rooms(_) => Stage::Rooms,
            PipelineError::Personnel(_) => Stage::Personnel,
            PipelineError::Crew(_) => Stage::Crew,
            PipelineError::Io { stage, .. } => *stage,
        }
    }

    /// Process exit status for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Io { .. } => 1,
            PipelineError::Ingest(IngestError::Io { .. }) => 1,
            PipelineError::Ingest(_) | PipelineError::Validation(_) => 3,
            PipelineError::Rooms(_) => 4,
            PipelineError::Personnel(_) => 5,
            PipelineError::Crew(_) => 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestStats {
    pub test: String,
    pub rooms: usize,
    pub room_proctors: u32,
    pub supervisors: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunStats {
    pub tests: Vec<TestStats>,
    pub alpha: Ratio<u64>,
    pub equity_bound: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub config: ScheduleConfig,
    /// Every file written, in write order.
    pub outputs: Vec<PathBuf>,
    pub report: ValidationReport,
    pub stats: RunStats,
}

/// Reads and cross-checks the inputs; errors in the report become a failure.
pub fn check_inputs(
    config: &ScheduleConfig,
) -> Result<(InputBundle, ValidationReport), PipelineError> {
    let bundle = load_bundle(&config.input_dir)?;
    let report = validate_round(
        &bundle.catalog,
        &bundle.tests(),
        &bundle.personnel,
        &bundle.log,
        &bundle.lecturers,
    );
    if report.has_errors() {
        return Err(PipelineError::Validation(report));
    }
    Ok((bundle, report))
}

struct Emitter<'a> {
    root: &'a Path,
    written: Vec<PathBuf>,
}

impl Emitter<'_> {
    fn put(&mut self, stage: Stage, path: PathBuf, contents: &str) -> Result<(), PipelineError> {
        write_file(&path, contents).map_err(|e| PipelineError::Io {
            stage,
            path: path.clone(),
            message: e.to_string(),
        })?;
        self.written.push(path);
        Ok(())
    }

    fn per_test(&self, stage: Stage, dir: &str, test: &str) -> Result<PathBuf, PipelineError> {
        let dir = self.root.join(dir);
        per_test_path(&dir, test).map_err(|e| PipelineError::Io {
            stage,
            path: dir,
            message: e.to_string(),
        })
    }
}

pub fn run_pipeline(config: &ScheduleConfig) -> Result<PipelineRun, PipelineError> {
    let started = Instant::now();
    let (bundle, report) = check_inputs(config)?;
    let mut out = Emitter {
        root: &config.output_dir,
        written: Vec::new(),
    };

    let scheduled: Vec<ScheduledTest> = bundle
        .tests()
        .iter()
        .map(|t| schedule_test(t, &bundle.catalog, config))
        .collect::<Result<_, _>>()?;
    for s in &scheduled {
        let path = out.per_test(Stage::Rooms, SCHEDULED_ROOMS_DIR, &s.test.label)?;
        out.put(Stage::Rooms, path, &render_scheduled_rooms(s))?;
    }

    let decision: PersonnelDecision = decide_personnel(
        &scheduled,
        &bundle.personnel,
        &bundle.log,
        &bundle.lecturers,
    )?;
    let crews: Vec<(&str, &[_])> = scheduled
        .iter()
        .zip(&decision.crews)
        .map(|(s, c)| (s.test.label.as_str(), c.as_slice()))
        .collect();
    out.put(
        Stage::Personnel,
        config.output_dir.join(SCHEDULED_CREW_FILE),
        &render_scheduled_crew(&crews),
    )?;
    out.put(
        Stage::Personnel,
        config.output_dir.join(NEW_PROCTOR_LOG_FILE),
        &render_new_log(&decision.new_log),
    )?;

    let programs: Vec<Vec<ProgrammingRow>> = scheduled
        .iter()
        .zip(&decision.crews)
        .map(|(s, crew)| organize_crew(s, crew, config.seniority))
        .collect::<Result<_, _>>()?;
    for (s, rows) in scheduled.iter().zip(&programs) {
        let path = out.per_test(Stage::Crew, PROPOSED_PROGRAMMING_DIR, &s.test.label)?;
        out.put(Stage::Crew, path, &render_proposed_programming(rows))?;
    }

    Ok(PipelineRun {
        config: config.clone(),
        outputs: out.written,
        report,
        stats: RunStats {
            tests: scheduled
                .iter()
                .map(|s| TestStats {
                    test: s.test.label.clone(),
                    rooms: s.choices.len(),
                    room_proctors: s.room_proctors(),
                    supervisors: s.supervisors,
                })
                .collect(),
            alpha: decision.context.alpha,
            equity_bound: decision.assignment.bound,
            elapsed: started.elapsed(),
        },
    })
}
