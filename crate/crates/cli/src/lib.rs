//! Command-line driver: dataset building, transliteration, alphabets,
//! training, evaluation, parameter counts and baselines.
//!
//! Results go to stdout as `key<TAB>value` lines (training also prints one
//! tab-separated line per epoch); diagnostics go to stderr. Exit codes are
//! 0 on success, 2 for input errors and 1 for internal failures.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod io;

use std::ffi::OsString;

use clap::Parser;

pub use args::{Cli, Command};
pub use error::{CliError, CliResult};

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> CliResult<()> {
    use commands::*;
    match &cli.command {
        Command::BuildDataset(a) => dataset::run(a),
        Command::Transliterate(a) => transliterate::run(a),
        Command::Alphabet(a) => alphabet::run(a),
        Command::Train(a) => train::run(a),
        Command::Eval(a) => eval::run(a),
        Command::Params(a) => params::run(a),
        Command::Baseline(a) => baseline::run(a),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let _ = env_logger::Builder::new()
        .parse_filters(&cli.log_level)
        .format_timestamp(None)
        .try_init();
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
