//! Command-line front end for `qwalk-core`.
//!
//! Every subcommand resolves an [`ExperimentConfig`] (JSON file plus flag
//! overrides) and dispatches to one of the `cmd_*` functions. Output is
//! plain text or CSV with LF line endings and twelve significant digits.

pub mod args;
pub mod commands;
pub mod config;
pub mod format;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use commands::{EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};
pub use config::ExperimentConfig;

use crate::args::{Cli, Command};

/// Parses `argv`, runs the command, and returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match dispatch(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<i32> {
    let cfg = command.resolve()?;
    if let Some(path) = command.common().and_then(|c| c.save_config.as_deref()) {
        let mut json = cfg.to_json();
        json.push('\n');
        std::fs::write(path, json)?;
    }
    match command {
        Command::Simulate(_) => commands::cmd_simulate(&cfg, out),
        Command::Sweep(_) => commands::cmd_sweep(&cfg, out, err),
        Command::Series(_) => commands::cmd_series(&cfg, out),
        Command::Verify(_) => commands::cmd_verify(&cfg, out),
        Command::Presets => commands::cmd_presets(out),
    }
}
