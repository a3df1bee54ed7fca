//! Batch front-end for `gg-core`: JSON problem files in, JSON reports out.
//!
//! Exit codes: 0 when every check passes, 1 on a verification failure,
//! 2 on invalid input.

pub mod config;
pub mod report;
pub mod run;

pub use config::{ConfigError, Convention, Overrides, ProblemConfig, Task};
pub use report::Report;
pub use run::{run, RunError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Parses, applies overrides and runs; the error carries the exit code.
pub fn run_text(text: &str, overrides: &Overrides) -> Result<Report, (i32, String)> {
    let mut cfg = ProblemConfig::parse(text).map_err(|e| (EXIT_INVALID, format!("invalid config: {e}")))?;
    cfg.apply(overrides);
    run(&cfg).map_err(|e| match e {
        RunError::Invalid(_) => (EXIT_INVALID, e.to_string()),
        RunError::Failed(_) => (EXIT_FAIL, e.to_string()),
    })
}

pub fn exit_code(report: &Report) -> i32 {
    if report.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
