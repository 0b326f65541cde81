//! `hh` — exact and numerical spectral checks for functions on the binary
//! hypercube: integer level-function tables, inequality scan suites,
//! operator-norm searches, and density-ratio sweeps.
//!
//! Exit status: 0 when every check in the invocation passed, 1 when at
//! least one inequality was violated, 2 on usage or parameter errors.
//!
//! Reproducibility: for a fixed command line (including `--seed`), output
//! bytes are identical across runs. Floats are printed with 17 significant
//! digits, which round-trips binary64 exactly.

mod addcomb_cmd;
mod figure;
mod norms;
mod nrange;
mod output;
mod table;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Output format selector shared by the subcommands. Each subcommand has a
/// native format (reports are JSON, data series are CSV); asking for the
/// other one is a usage error unless the subcommand supports both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "hh",
    version,
    about = "Spectral checks for convolution operators on the binary hypercube",
    long_about = "Exact and numerical spectral checks for symmetric convolution \
operators on the binary hypercube: exact integer level-function tables, \
exhaustive inequality scans, operator-norm searches with reproducible \
witnesses, and density-ratio sweeps over set families.\n\n\
Exit status: 0 all checks passed, 1 at least one violation found, 2 usage \
or parameter error.\n\n\
The environment variable HH_MAX_N caps both the table dimension (default \
64) and the in-memory cube dimension (default 24)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run inequality scan suites and write one JSON report.
    Verify(verify::VerifyArgs),
    /// Emit a CSV data series for one of the built-in plots.
    Figure(figure::FigureArgs),
    /// Emit the exact integer level-function table as CSV.
    Table(table::TableArgs),
    /// Operator-norm searches and certificates (point, grid, or growth).
    Norms(norms::NormsArgs),
    /// Density-ratio corollary sweep over generated set families.
    Addcomb(addcomb_cmd::AddcombArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        // clap prints help/version with status 0 and usage errors with 2.
        Err(e) => e.exit(),
    };
    let result = match &cli.command {
        Command::Verify(a) => verify::run(a),
        Command::Figure(a) => figure::run(a),
        Command::Table(a) => table::run(a),
        Command::Norms(a) => norms::run(a),
        Command::Addcomb(a) => addcomb_cmd::run(a),
    };
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
