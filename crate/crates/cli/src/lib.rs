//! Command-line front end for `gable-core`: argument parsing, JSON input
//! loading, command dispatch, verification suites and report rendering.

pub mod args;
pub mod commands;
pub mod random;
pub mod report;
pub mod suites;

use std::time::Instant;

use args::{Cli, OutputFormat};
use commands::Context;
use report::Report;

/// Runs a parsed command line, returning the rendered report and the exit code.
pub fn run(cli: &Cli) -> (String, i32) {
    let ctx = Context {
        seed: cli.seed,
        jobs: cli.jobs,
    };
    let started = Instant::now();
    let outcome = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| gable_core::Error::Internal(format!("thread pool: {e}")))
        .and_then(|pool| pool.install(|| commands::execute(&cli.command, ctx)));
    let (mut report, code) = match outcome {
        Ok(r) => {
            let code = if r.passed { 0 } else { 1 };
            (r, code)
        }
        Err(e) => (Report::error(commands::name(&cli.command), &e), 2),
    };
    if cli.timing {
        report.timing_ms = Some(started.elapsed().as_millis());
    }
    let text = match cli.out {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Text => report.to_text(),
    };
    (text, code)
}
