use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use examsched_core::{
    check_inputs, run_pipeline, ScheduleConfig, SeniorityOrder, DEFAULT_RATE,
    DEFAULT_SUPERVISOR_RATE,
};

/// Plan rooms, proctors and crews for a round of simultaneous exams.
#[derive(Debug, Parser)]
#[command(name = "examsched", version)]
struct Args {
    /// Students covered by one proctor.
    #[arg(short = 't', long = "rate", default_value_t = DEFAULT_RATE,
          value_parser = clap::value_parser!(u32).range(1..))]
    rate: u32,

    /// Students per test supervisor.
    #[arg(long, default_value_t = DEFAULT_SUPERVISOR_RATE,
          value_parser = clap::value_parser!(u32).range(1..))]
    supervisor_rate: u32,

    /// Directory holding the five input tables.
    #[arg(long, default_value = ".")]
    input_dir: PathBuf,

    /// Directory receiving the outputs.
    #[arg(long, default_value = ".")]
    output_dir: PathBuf,

    /// Validate the inputs and stop.
    #[arg(long)]
    check: bool,

    /// Rank undergraduates above postgraduates and lecturers when pairing rooms.
    #[arg(long)]
    literal_num_level: bool,
}

impl Args {
    fn config(&self) -> ScheduleConfig {
        ScheduleConfig {
            rate: self.rate,
            supervisor_rate: self.supervisor_rate,
            input_dir: self.input_dir.clone(),
            output_dir: self.output_dir.clone(),
            seniority: if self.literal_num_level {
                SeniorityOrder::LiteralNumLevel
            } else {
                SeniorityOrder::LecturersFirst
            },
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = args.config();

    if args.check {
        return match check_inputs(&config) {
            Ok((bundle, report)) => {
                for w in report.warnings() {
                    eprintln!("warning: {w}");
                }
                println!(
                    "inputs OK: {} tests, {} rooms, {} TAs, {} lecturers",
                    bundle.tests().len(),
                    bundle.catalog.len(),
                    bundle.personnel.len(),
                    bundle.lecturers.len()
                );
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(e.exit_code() as u8)
            }
        };
    }

    match run_pipeline(&config) {
        Ok(run) => {
            for w in run.report.warnings() {
                eprintln!("warning: {w}");
            }
            for t in &run.stats.tests {
                println!(
                    "{}: {} rooms, {} room proctors, {} supervisors",
                    t.test, t.rooms, t.room_proctors, t.supervisors
                );
            }
            println!(
                "service average {}, equity bound {}",
                run.stats.alpha, run.stats.equity_bound
            );
            println!(
                "wrote {} files in {:.2?}",
                run.outputs.len(),
                run.stats.elapsed
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
