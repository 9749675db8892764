//! The `tsmix` command line: runs experiments from flags or JSON configs and
//! prints results as CSV, markdown or JSON tables.

pub mod args;
pub mod commands;
pub mod error;
pub mod report;
pub mod reproduce;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use error::CliError;
pub use report::{emit_table, Format, ReportRow, CSV_HEADER};

use args::{Cli, Command};

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn cli_main<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    2
                }
            }
        }
    };
    let result = match cli.command {
        Command::Run(a) => commands::run(a, stdout),
        Command::Sweep(a) => commands::sweep_grid(a, stdout),
        Command::PhiCurve(a) => commands::phi(a, stdout),
        Command::PowerTable(a) => commands::power_table(a, stdout),
        Command::Reproduce(a) => commands::reproduce(a, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
