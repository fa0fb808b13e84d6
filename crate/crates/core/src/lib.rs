//! Exam scheduling: room selection, equitable proctor assignment and crew organization.

pub mod crew;
pub mod emit;
pub mod flow;
pub mod ingest;
pub mod model;
pub mod oracle;
pub mod personnel;
pub mod pipeline;
pub mod rooms;
pub mod validate;

pub use model::{ScheduleConfig, SeniorityOrder, DEFAULT_RATE, DEFAULT_SUPERVISOR_RATE};
pub use pipeline::{check_inputs, run_pipeline, PipelineError, PipelineRun};
