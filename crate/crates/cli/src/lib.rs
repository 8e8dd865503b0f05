//! Command implementations behind the `circuitq` binary.
//!
//! Every sweep command returns a [`SweepTable`] whose metadata echoes the
//! resolved inputs, the unit system and the tool version.

pub mod args;
mod commands;
mod validate;

use std::fs;
use std::process::ExitCode;

use circuitq::{SweepTable, UnitSystem};
use thiserror::Error;

pub use args::{parse_with_config, Cli, Command, Format};
pub use commands::{
    calibrate, dirac_dispersion, dirac_roots, landauer_staircase, schrodinger_band,
    schrodinger_levels,
};
pub use validate::{validate, CheckResult, ValidationReport};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] circuitq::Error),

    #[error("{0}")]
    Usage(String),

    #[error("config: {0}")]
    Config(String),

    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

/// Rendered command output plus the process status it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub success: bool,
}

pub fn render(table: &SweepTable, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    }
}

/// Runs a parsed command line and renders its output.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let units = UnitSystem::new(cli.units);
    let table_outcome = |mut t: SweepTable, success: bool| {
        t.set_meta("command", cli.command.name());
        t.set_meta("units", cli.units);
        t.set_meta("version", VERSION);
        Outcome {
            body: render(&t, cli.format),
            success,
        }
    };
    Ok(match &cli.command {
        Command::SchrodingerLevels(a) => table_outcome(schrodinger_levels(a, &units)?, true),
        Command::SchrodingerBand(a) => {
            let (t, passed) = schrodinger_band(a, &units)?;
            table_outcome(t, passed)
        }
        Command::DiracDispersion(a) => table_outcome(dirac_dispersion(a, &units)?, true),
        Command::DiracRoots(a) => table_outcome(dirac_roots(a, &units)?, true),
        Command::LandauerStaircase(a) => table_outcome(landauer_staircase(a, &units)?, true),
        Command::Calibrate(a) => table_outcome(calibrate(a, &units)?, true),
        Command::Validate(a) => {
            let report = validate(a, cli.units)?;
            Outcome {
                body: match cli.format {
                    Format::Csv => report.to_text(),
                    Format::Json => report.to_json(),
                },
                success: report.all_passed(),
            }
        }
    })
}

/// Parses, executes and writes output. Exit codes: 0 success, 1 failed
/// validation, 2 usage or parameter error.
pub fn main_with_args<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match parse_with_config(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &outcome.body),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(outcome.body.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {}", CliError::Io(e));
        return ExitCode::from(2);
    }
    if outcome.success {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
