use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gg_cli::{exit_code, run_text, Convention, Overrides, EXIT_INVALID};

/// Construct, evaluate and verify GG-systems from a JSON problem file.
#[derive(Parser, Debug)]
#[command(name = "gg", version)]
struct Args {
    /// Problem file (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for generated samples; overrides the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Relative residual tolerance; overrides the config.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Series truncation order M; overrides the config.
    #[arg(long)]
    truncation: Option<u32>,
    /// Sign convention of the omega rows; overrides the config.
    #[arg(long, value_enum)]
    convention: Option<Convention>,
    /// Print nothing on success; errors still go to standard error.
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", args.config.display());
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    let overrides = Overrides {
        seed: args.seed,
        tolerance: args.tolerance,
        truncation: args.truncation,
        convention: args.convention,
    };
    let report = match run_text(&text, &overrides) {
        Ok(r) => r,
        Err((code, msg)) => {
            eprintln!("{msg}");
            return ExitCode::from(code as u8);
        }
    };
    let json = report.to_json();
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INVALID as u8);
            }
        }
        None if !args.quiet => print!("{json}"),
        None => {}
    }
    if !args.quiet || !report.pass {
        eprintln!("{}", report.summary);
    }
    ExitCode::from(exit_code(&report) as u8)
}
