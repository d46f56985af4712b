//! Command-line surface for `gini-core`: point evaluation, property scans,
//! and plot-ready samples.

pub mod args;
pub mod commands;
pub mod config;
pub mod format;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::{run_eval, run_samples, run_scan, Failure, Rendered};

pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const VIOLATION: u8 = 1;
    pub const USAGE: u8 = 2;
}

pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => exit::SUCCESS,
                _ => exit::USAGE,
            };
        }
    };

    let outcome = match &cli.command {
        Command::Eval { point, t, quantity } => run_eval(cli.format, point, *t, *quantity),
        Command::Scan(args) => run_scan(cli.format, args),
        Command::Samples {
            curve,
            point,
            t_range,
            points,
        } => run_samples(cli.format, *curve, point, t_range, *points),
    };

    match outcome {
        Ok(Rendered { text, code }) => match emit(cli.output.as_deref(), &text) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("gini: cannot write output: {e}");
                exit::USAGE
            }
        },
        Err(Failure { code, message }) => {
            eprintln!("gini: {message}");
            code
        }
    }
}

fn emit(path: Option<&std::path::Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}
