//! Command-line front end for `ordlab`.
//!
//! [`run`] executes one command in-process with its own thread pool, so the
//! binary and the test suites share a single entry point.

pub mod args;
pub mod commands;
pub mod error;
pub mod render;

use std::io::Write;
use std::path::Path;

use clap::Parser;

use crate::args::{Cli, Command, Format};
use crate::error::CliError;

/// Parses `ORDLAB_THREADS`; unset means automatic.
pub fn threads_from_env(value: Option<&str>) -> Result<usize, CliError> {
    match value.map(str::trim) {
        None | Some("") => Ok(0),
        Some(v) => v.parse().map_err(|_| CliError::Threads(v.to_string())),
    }
}

fn execute(cli: &Cli) -> Result<commands::Outcome, CliError> {
    let common = &cli.common;
    match &cli.command {
        Command::Ball => commands::ball(common),
        Command::Test { mode } => commands::test(common, *mode),
        Command::CheckCert => commands::check_cert(common),
        Command::Enumerate {
            mode,
            constraints,
            limit,
            list,
        } => commands::enumerate(common, *mode, constraints, *limit, *list),
        Command::VerifyCone { cone, mode } => commands::verify_cone(common, cone, *mode),
    }
}

fn write_atomically(path: &Path, contents: &str) -> Result<(), CliError> {
    let err = |source| CliError::Write {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(err)?;
    tmp.write_all(contents.as_bytes()).map_err(err)?;
    tmp.persist(path).map_err(|e| err(e.error))?;
    Ok(())
}

fn run_parsed(cli: &Cli, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let outcome = execute(cli)?;
    let report = match cli.common.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Human => render::human(&outcome.report),
    };
    for (path, contents) in &outcome.files {
        write_atomically(path, contents)?;
    }
    match &cli.common.out {
        Some(path) => write_atomically(path, &report)?,
        None => stdout
            .write_all(report.as_bytes())
            .map_err(|source| CliError::Write {
                path: "<stdout>".into(),
                source,
            })?,
    }
    Ok(outcome.code)
}

#[cfg(feature = "parallel")]
fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Threads(e.to_string()))?;
    Ok(pool.install(f))
}

#[cfg(not(feature = "parallel"))]
fn with_threads<T: Send>(_threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    Ok(f())
}

/// Runs one command line (`args[0]` is the program name) on a pool of
/// `threads` workers (0 = automatic) and returns the exit code.
pub fn run<I, S>(args: I, threads: usize, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut buffer = Vec::new();
    let result = with_threads(threads, || run_parsed(&cli, &mut buffer)).and_then(|r| r);
    let _ = stdout.write_all(&buffer);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
