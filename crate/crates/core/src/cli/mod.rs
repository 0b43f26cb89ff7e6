//! Command-line harness: configuration, subcommands and reports.

pub mod args;
pub mod commands;
pub mod config;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::Parser;

pub use args::Args;
pub use commands::run;
pub use config::{parse_config, Command, ExplicitGeometry, OutputFormat, RunConfig, DEFAULT_DEGREE};
pub use report::Report;

use crate::error::{Error, Result};

/// Default directory for reports when `--out` is absent.
pub const OUT_DIR_ENV: &str = "LOCALMIRROR_OUT_DIR";

/// Where the structured report goes, if anywhere.
pub fn report_path(c: &RunConfig) -> Option<PathBuf> {
    c.out.clone().or_else(|| std::env::var_os(OUT_DIR_ENV).map(|d| PathBuf::from(d).join(format!("{}.json", c.command))))
}

fn execute(c: &RunConfig, stdout: &mut dyn Write) -> Result<i32> {
    let report = run(c)?;
    if let Some(path) = report_path(c) {
        if let Some(dir) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(&path, report.to_json())?;
    }
    let body = match c.format {
        OutputFormat::JsonLike => report.to_json(),
        OutputFormat::Text => report.to_text(),
    };
    stdout.write_all(body.as_bytes()).map_err(|e| Error::Io(e.to_string()))?;
    Ok(report.exit_code())
}

/// Runs the CLI on `argv`, writing to the given streams; returns the exit code.
pub fn main_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
            } else {
                let _ = write!(stdout, "{}", e.render());
            }
            return code;
        }
    };
    match args.to_config().and_then(|c| execute(&c, stdout)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
