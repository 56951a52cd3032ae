//! Command-line front end: parses arguments, runs one computation, writes a
//! JSON artifact and a text table, and maps the outcome to an exit code.

pub mod args;
pub mod commands;
pub mod report;
pub mod suite;

use std::ffi::OsString;

use clap::Parser;
use hilb_core::HilbError;

/// Every check passed.
pub const EXIT_PASS: i32 = 0;
/// A mathematical claim was falsified.
pub const EXIT_FALSIFIED: i32 = 1;
/// The invocation or its inputs were invalid.
pub const EXIT_USAGE: i32 = 2;

/// Errors caused by what the caller asked for, as opposed to a computation
/// contradicting a claim.
pub fn is_usage_error(e: &HilbError) -> bool {
    matches!(
        e,
        HilbError::Dimension(_)
            | HilbError::Index(_)
            | HilbError::Domain(_)
            | HilbError::Parse(_)
            | HilbError::Json(_)
            | HilbError::Io(_)
            | HilbError::Capacity(_)
            | HilbError::Singular { .. }
            | HilbError::Substitution(_)
    )
}

/// Sizes the global thread pool from `HILB_WORKERS`; results never depend
/// on it because samples are merged by index.
fn configure_workers() -> Result<(), String> {
    let Ok(value) = std::env::var("HILB_WORKERS") else {
        return Ok(());
    };
    let n: usize = value.parse().map_err(|_| format!("HILB_WORKERS must be a positive integer, got {value:?}"))?;
    if n == 0 {
        return Err("HILB_WORKERS must be at least 1".into());
    }
    // a pool that already exists (a second run in one process) is kept
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    if let Err(msg) = configure_workers() {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    match commands::execute(cli.command) {
        Ok(report) if report.passed => EXIT_PASS,
        Ok(_) => EXIT_FALSIFIED,
        Err(e) => {
            eprintln!("error: {e}");
            if is_usage_error(&e) {
                EXIT_USAGE
            } else {
                EXIT_FALSIFIED
            }
        }
    }
}
