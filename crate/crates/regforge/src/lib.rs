//! JSON formats, commands and the experiment harness behind the `regforge`
//! binary.
//!
//! - [`format`]: the instance, complex and partition files.
//! - [`params`]: exact rationals, ranges and caps from the command line.
//! - [`report`]: JSON views of verdicts, witnesses and growth reports.
//! - [`commands`]: `check`, `gen` and `growth`.
//! - [`suite`]: seeded batches over a thread pool, with CSV export.

pub mod cli;
pub mod commands;
pub mod error;
pub mod format;
pub mod params;
pub mod report;
pub mod suite;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::Parser;

pub use cli::Cli;
pub use commands::Outcome;
pub use error::CliError;

use cli::Command;
use format::{read_json, to_json_string};
use params::caps_from_env;
use suite::{rows_csv, run_suite, SuiteConfig};

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Runs a parsed command, writing side files (`--csv`) but not the main output.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Check(a) => commands::check(a),
        Command::Gen(g) => commands::gen(g),
        Command::Growth(a) => commands::growth(a),
        Command::Suite(a) => {
            let config = match &a.config {
                Some(path) => read_json::<SuiteConfig>(path)?,
                None => SuiteConfig::builtin(),
            };
            let report = run_suite(config, a.jobs, &caps_from_env()?)?;
            if let Some(path) = &a.csv {
                write_file(path, &rows_csv(&report.rows)?)?;
            }
            Ok(Outcome { passed: report.verdict, text: to_json_string(&report) })
        }
    }
}

fn out_path(cli: &Cli) -> Option<&Path> {
    let out = match &cli.command {
        Command::Check(a) => &a.out,
        Command::Gen(g) => match g {
            cli::GenCommand::Counterexample(a) => &a.out,
            cli::GenCommand::Cycle(a) => &a.out,
            cli::GenCommand::Assemble(a) => &a.out,
            cli::GenCommand::Complex(a) => &a.out,
        },
        Command::Growth(a) => &a.out,
        Command::Suite(a) => &a.out,
    };
    out.as_deref()
}

/// Parses arguments, runs the command, prints or writes its output and
/// returns the exit code: 0 pass, 1 failed verdict, 2 input error,
/// 3 resource cap.
pub fn main_with(args: impl IntoIterator<Item = OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = run(&cli).and_then(|o| {
        match out_path(&cli) {
            Some(path) => write_file(path, &o.text)?,
            None => {
                let _ = std::io::stdout().write_all(o.text.as_bytes());
            }
        }
        Ok(o)
    });
    match outcome {
        Ok(o) => o.exit_code(),
        Err(e) => {
            eprintln!("regforge: {e}");
            e.exit_code()
        }
    }
}
