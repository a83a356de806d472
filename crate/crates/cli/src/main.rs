//! Command-line front end: tabulates spectra, density and kinetic-energy
//! profiles, and integrated error scans as CSV or JSON plot data.

mod commands;
mod config;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use semidens::profile::Observable;
use semidens::Error;
use table::Format;

#[derive(Parser)]
#[command(
    name = "semidens",
    version,
    about = "Semiclassical density and kinetic-energy profiles for N fermions in a 1D well"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quantized levels j = 0..N-1 next to the reference spectrum
    Spectrum(SpectrumArgs),
    /// Particle-density profiles, one column per method
    Density(ProfileArgs),
    /// Kinetic-energy-density profiles, one column per method
    Ked(ProfileArgs),
    /// Integrated error vs particle number, against the grid solver
    Scan(ScanArgs),
}

/// What system to solve.
#[derive(Args)]
struct SystemArgs {
    /// Potential family: morse, harmonic, quartic, or rosen_morse
    #[arg(long, conflicts_with = "table")]
    potential: Option<String>,

    /// Family parameters, e.g. D=15,a=0.25 (keys are case-sensitive)
    #[arg(long, default_value = "")]
    params: String,

    /// Two-column file (x v per line) defining a tabulated potential
    #[arg(long)]
    table: Option<PathBuf>,

    /// Planck constant
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
}

/// Where and how to write the table.
#[derive(Args)]
struct OutputArgs {
    /// Output file; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    sys: SystemArgs,

    /// Number of levels to tabulate
    #[arg(long)]
    n: usize,

    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ProfileArgs {
    #[command(flatten)]
    sys: SystemArgs,

    /// Particle number
    #[arg(long)]
    n: usize,

    /// Evaluation grid lo,hi,npts; auto spans the well plus both tails
    #[arg(long, default_value = "auto", allow_hyphen_values = true)]
    grid: String,

    /// Comma-separated subset of tf, uniform, allowed_limit,
    /// evanescent_limit, exact, langer_sum, local_functional
    #[arg(long)]
    methods: Option<String>,

    /// density or ked; overrides the subcommand's observable, and the
    /// default method set follows the effective choice
    #[arg(long)]
    observable: Option<String>,

    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    sys: SystemArgs,

    /// Particle-number range lo..hi, both ends included
    #[arg(long)]
    scan: String,

    #[command(flatten)]
    out: OutputArgs,
}

/// 0 success, 2 bad configuration or out-of-domain request, 3 numerical
/// failure, 4 more particles than the well holds.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::Domain(_) => 2,
        Error::NonConvergence(_) => 3,
        Error::Capacity { .. } => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Spectrum(args) => commands::cmd_spectrum(args),
        Command::Density(args) => commands::cmd_profile(args, Observable::Number),
        Command::Ked(args) => commands::cmd_profile(args, Observable::Kinetic),
        Command::Scan(args) => commands::cmd_scan(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_kinds_map_to_documented_exit_codes() {
        assert_eq!(exit_code(&Error::config("x".to_string())), 2);
        assert_eq!(exit_code(&Error::domain("x".to_string())), 2);
        assert_eq!(exit_code(&Error::no_convergence("x".to_string())), 3);
        assert_eq!(exit_code(&Error::Capacity { requested: 5, available: 3 }), 4);
    }

    #[test]
    fn cli_definition_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
