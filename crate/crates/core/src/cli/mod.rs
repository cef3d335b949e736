//! Command-line front end. [`run`] parses arguments, executes one command
//! inside a thread pool sized by `BLASCHKE_LAB_THREADS`, and returns the
//! process exit code.

mod args;
mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::Parser;

pub use args::{Cli, Command, Format};

use crate::bounds::OrderingViolation;
use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ORDERING: i32 = 3;

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "BLASCHKE_LAB_THREADS";

#[derive(Debug)]
pub(crate) enum CliError {
    Lib(Error),
    Io(String),
    Ordering(OrderingViolation),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Ordering(_) => EXIT_ORDERING,
            CliError::Io(_) => EXIT_INPUT,
            CliError::Lib(e) => match e {
                Error::Input(_) | Error::Domain(_) | Error::Unsupported(_) | Error::NotOuterSafe(_) => EXIT_INPUT,
                _ => EXIT_FAILURE,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "{m}"),
            CliError::Ordering(v) => write!(f, "ordering violation: {v}"),
        }
    }
}

fn thread_count() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(Some(k)),
            _ => Err(CliError::Io(format!("{THREADS_ENV} must be a positive integer, got {s:?}"))),
        },
    }
}

pub(crate) fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

pub(crate) fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let result = thread_count().and_then(|threads| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(k) = threads {
            builder = builder.num_threads(k);
        }
        let pool = builder.build().map_err(|e| CliError::Io(format!("thread pool: {e}")))?;
        pool.install(|| commands::execute(&cli.command))
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{BoundReport, Side};

    #[test]
    fn exit_codes_follow_the_contract() {
        let lo = BoundReport::new("a", Side::Lower, "h2", 1, 0.0, 2.0);
        let up = BoundReport::new("b", Side::Upper, "h2", 1, 0.0, 1.0);
        assert_eq!(CliError::Ordering(OrderingViolation { lower: lo, upper: up }).exit_code(), EXIT_ORDERING);
        assert_eq!(CliError::Lib(Error::input("x")).exit_code(), EXIT_INPUT);
        assert_eq!(CliError::Lib(Error::Unsupported("x".into())).exit_code(), EXIT_INPUT);
        assert_eq!(CliError::Lib(Error::Convergence("x".into())).exit_code(), EXIT_FAILURE);
        assert_eq!(CliError::Io("x".into()).exit_code(), EXIT_INPUT);
    }
}
