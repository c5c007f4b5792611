//! The `eliashberg-tc` command line.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, ErrorKind};
use crate::measure::SpectralMeasure;

mod bounds;
pub mod format;
mod gamma;
mod sweep;
mod tc;
mod verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "eliashberg-tc", version, about = "Rigorous bounds on the Eliashberg critical coupling and T_c")]
pub struct Cli {
    /// More log output on standard error (repeat for debug)
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Table of bounds on the top eigenvalue k and on Lambda = 1/k at one temperature
    Bounds(bounds::Args),
    /// Bounds on T_c at one coupling
    Tc(tc::Args),
    /// T_c bounds over a logarithmic grid of couplings, written as CSV
    Sweep(sweep::Args),
    /// Top eigenvalue of the gamma-model operator
    Gamma(gamma::Args),
    /// Run the invariant suite
    Verify(verify::Args),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fault {
    K3Sign,
}

/// Parses `args` (program name first), runs the subcommand and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .format_target(false)
        .try_init();

    let result = match cli.command {
        Command::Bounds(a) => bounds::run(&a),
        Command::Tc(a) => tc::run(&a),
        Command::Sweep(a) => sweep::run(&a),
        Command::Gamma(a) => gamma::run(&a),
        Command::Verify(a) => return verify::run(&a),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::Validation => EXIT_VALIDATION,
        ErrorKind::Numerical => EXIT_NUMERICAL,
        ErrorKind::Io => EXIT_IO,
    }
}

fn load_measure(path: &PathBuf) -> crate::Result<SpectralMeasure> {
    let m = SpectralMeasure::from_file(path)?;
    for w in m.warnings() {
        log::warn!("{}: {w}", path.display());
    }
    Ok(m)
}

fn describe(m: &SpectralMeasure) -> String {
    use crate::measure::RawMeasure;
    let kind = match m.to_raw() {
        RawMeasure::Einstein { .. } => "einstein".to_string(),
        RawMeasure::Discrete { atoms } => format!("discrete, {} atoms", atoms.len()),
        RawMeasure::Tabulated { nodes } => format!("tabulated, {} nodes", nodes.len()),
    };
    format!(
        "measure: {kind}, Ω̄ = {}, ⟨ω²⟩ = {}",
        format::sig12(m.omega_bar()),
        format::sig12(m.moment(2))
    )
}
