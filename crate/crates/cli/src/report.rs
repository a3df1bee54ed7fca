//! The JSON report. Key order is fixed and no wall-clock data is recorded,
//! so identical inputs give byte-identical output.

use gg_core::verify::ResidualReport;
use gg_core::C64;
use serde::Serialize;
use serde_json::Value;

use crate::config::{Pair, ProblemConfig, Task};

pub fn cx(z: C64) -> Pair {
    [z.re, z.im]
}

pub fn cxs(v: &[C64]) -> Vec<Pair> {
    v.iter().map(|&z| cx(z)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
    pub core_version: &'static str,
}

/// A residual report with the parameters of the computation behind it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub equation_id: String,
    pub max_abs_residual: f64,
    pub max_rel_residual: f64,
    pub sample_points: usize,
    pub tolerance: f64,
    pub pass: bool,
    pub parameters: Value,
}

impl Residual {
    pub fn new(r: &ResidualReport<f64>, parameters: Value) -> Self {
        Residual {
            equation_id: r.equation_id.clone(),
            max_abs_residual: r.max_abs_residual,
            max_rel_residual: r.max_rel_residual,
            sample_points: r.sample_points,
            tolerance: r.tolerance,
            pass: r.pass,
            parameters,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: Tool,
    pub task: Task,
    pub seed: Option<u64>,
    /// The config after command-line overrides.
    pub config: ProblemConfig,
    pub results: Value,
    pub residuals: Vec<Residual>,
    pub pass: bool,
    pub summary: String,
}

impl Report {
    /// `task_pass` covers task-specific checks that are not residuals.
    pub fn new(config: &ProblemConfig, results: Value, residuals: Vec<Residual>, task_pass: bool) -> Self {
        let failed: Vec<&str> = residuals
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.equation_id.as_str())
            .collect();
        let pass = task_pass && failed.is_empty();
        let summary = if pass {
            format!("{}: pass ({} residual checks)", config.task, residuals.len())
        } else if failed.is_empty() {
            format!("{}: fail (task check)", config.task)
        } else {
            format!("{}: fail ({})", config.task, failed.join(", "))
        };
        Report {
            tool: Tool {
                name: "gg",
                version: env!("CARGO_PKG_VERSION"),
                core_version: gg_core::VERSION,
            },
            task: config.task,
            seed: config.seed,
            config: config.clone(),
            results,
            residuals,
            pass,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
