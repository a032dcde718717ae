//! Command-line front end for the `convexa` toolkit.

pub mod args;
pub mod commands;
pub mod report;
pub mod verify;

use std::ffi::OsString;

use clap::Parser;

pub use args::{Cli, Format};
pub use commands::{execute, CliError};
pub use report::{Entry, Overall, Record, Report, RunConfig, Status};
pub use verify::verify_paper;

/// Parse `argv`, run, write the report and return the process exit code.
///
/// Exit codes: 0 all checks hold, 1 a violation, 2 usage or parse error,
/// 3 numeric failure.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("{line}");
            return 2;
        }
    };
    let report = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return e.code;
        }
    };
    let rendered = report.render(report.config.format);
    match &report.config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {path}: {e}");
                return 2;
            }
        }
        None => print!("{rendered}"),
    }
    report.exit_code()
}
