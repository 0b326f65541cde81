//! `hh verify` — run the inequality scan suites and emit one JSON report.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use serde::Serialize;

use hh_core::exponents::{check_exponent_properties, check_magnitude_bound, check_strip_bounds};
use hh_core::krawtchouk::{
    check_geometric_ratio_bound, check_theta_ratio_bound, check_uniform_ratio_bound_default,
};
use hh_core::operators::check_sphere_noise_comparison;
use hh_core::report::format_f64;
use hh_core::{max_table_dimension, ExactDecimal, SetFamily, VerificationReport};

use crate::addcomb_cmd::rows_to_report;
use crate::output::{emit, to_json_bytes};
use crate::FormatArg;

/// Default grid step of the two-parameter strip scan.
const STRIP_STEP_DEFAULT: f64 = 0.001;
/// Default grid step of the exponent property suite.
const PROPERTIES_STEP_DEFAULT: f64 = 0.005;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    /// Every suite below, in the listed order.
    All,
    /// Exact integer-table ratio scans (geometric, theta-window, uniform).
    Krawtchouk,
    /// Magnitude bound and growth-exponent property scans.
    Exponents,
    /// Two-parameter sign scan of the strip inequalities.
    Strip,
    /// Spherical-average versus noise-operator comparison.
    Operators,
    /// Density-ratio corollary over generated set families.
    Addcomb,
}

impl SuiteArg {
    fn label(self) -> &'static str {
        match self {
            SuiteArg::All => "all",
            SuiteArg::Krawtchouk => "krawtchouk",
            SuiteArg::Exponents => "exponents",
            SuiteArg::Strip => "strip",
            SuiteArg::Operators => "operators",
            SuiteArg::Addcomb => "addcomb",
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Which suite to run.
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,

    /// Largest dimension included in the per-dimension sweeps
    /// (default: the table cap, 64 unless HH_MAX_N lowers it).
    #[arg(long = "n-max")]
    pub n_max: Option<u32>,

    /// Lower end of the radius-fraction interval for the strip scan.
    #[arg(long, default_value_t = 0.05)]
    pub delta0: f64,

    /// Upper end of the radius-fraction interval for the strip scan.
    #[arg(long = "Delta", default_value_t = 0.45)]
    pub delta_upper: f64,

    /// Grid step override. When set, it applies to both real-grid scans
    /// (strip scan, default 0.001; property suite, default 0.005).
    #[arg(long = "grid-step")]
    pub grid_step: Option<f64>,

    /// Seed for the randomized set families.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Sparsity parameter for the density-ratio corollary sweep.
    #[arg(long, default_value_t = 0.25)]
    pub eps: f64,

    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Output format; `verify` reports are always JSON.
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
}

#[derive(Serialize)]
struct VerifyOutput {
    command: &'static str,
    n_max: u32,
    seed: u64,
    suites: Vec<&'static str>,
    params: BTreeMap<&'static str, String>,
    cells_checked: u64,
    violations: u64,
    passed: bool,
    reports: Vec<VerificationReport>,
}

/// Dimensions of the theta-window scan grid, as exact decimal literals.
const THETA_GRID: [&str; 9] = [
    "0.05", "0.10", "0.15", "0.20", "0.25", "0.30", "0.35", "0.40", "0.45",
];

pub fn run(args: &VerifyArgs) -> Result<bool> {
    if args.format != FormatArg::Json {
        bail!("verify reports are JSON; --format csv is not supported here");
    }
    let cap = max_table_dimension();
    let n_max = args.n_max.unwrap_or(cap);
    if n_max == 0 || n_max > cap {
        bail!("--n-max must be in 1..={cap}, got {n_max}");
    }
    let strip_step = args.grid_step.unwrap_or(STRIP_STEP_DEFAULT);
    let properties_step = args.grid_step.unwrap_or(PROPERTIES_STEP_DEFAULT);

    let suites: Vec<SuiteArg> = match args.suite {
        SuiteArg::All => vec![
            SuiteArg::Krawtchouk,
            SuiteArg::Exponents,
            SuiteArg::Strip,
            SuiteArg::Operators,
            SuiteArg::Addcomb,
        ],
        s => vec![s],
    };

    let mut reports: Vec<VerificationReport> = Vec::new();
    for &suite in &suites {
        match suite {
            SuiteArg::All => unreachable!("expanded above"),
            SuiteArg::Krawtchouk => {
                for n in 1..=n_max {
                    reports.push(check_geometric_ratio_bound(n)?);
                }
                for n in 1..=n_max {
                    reports.push(check_uniform_ratio_bound_default(n)?);
                }
                for theta in THETA_GRID {
                    let theta: ExactDecimal = theta.parse()?;
                    for n in 1..=n_max {
                        reports.push(check_theta_ratio_bound(n, &theta)?);
                    }
                }
            }
            SuiteArg::Exponents => {
                for n in 1..=n_max {
                    reports.push(check_magnitude_bound(n)?);
                }
                reports.push(check_exponent_properties(properties_step)?);
            }
            SuiteArg::Strip => {
                reports.push(check_strip_bounds(
                    args.delta0,
                    args.delta_upper,
                    strip_step,
                )?);
            }
            SuiteArg::Operators => {
                // Radius fractions j/n in [0.1, 0.9]; for n <= 12 the check
                // also compares the operators pointwise on sampled inputs.
                for n in 1..=n_max {
                    for j in 1..n {
                        if 10 * j >= n && 10 * j <= 9 * n {
                            reports.push(check_sphere_noise_comparison(n, j as f64 / n as f64)?);
                        }
                    }
                }
            }
            SuiteArg::Addcomb => {
                let n = n_max.min(12);
                for family in SetFamily::ALL {
                    let rows = hh_core::addcomb::check_corollary(n, family, args.eps, args.seed)?;
                    reports.push(rows_to_report(
                        family.label(),
                        n,
                        args.eps,
                        args.seed,
                        &rows,
                    ));
                }
            }
        }
    }

    let cells_checked: u64 = reports.iter().map(|r| r.cells_checked).sum();
    let violations: u64 = reports.iter().map(|r| r.violations.len() as u64).sum();
    let passed = violations == 0;

    let mut params: BTreeMap<&'static str, String> = BTreeMap::new();
    params.insert("delta0", format_f64(args.delta0));
    params.insert("delta_upper", format_f64(args.delta_upper));
    params.insert("grid_step_strip", format_f64(strip_step));
    params.insert("grid_step_properties", format_f64(properties_step));
    params.insert("eps", format_f64(args.eps));

    let output = VerifyOutput {
        command: "verify",
        n_max,
        seed: args.seed,
        suites: suites.iter().map(|s| s.label()).collect(),
        params,
        cells_checked,
        violations,
        passed,
        reports,
    };
    let bytes = to_json_bytes(&output)?;
    emit(args.out.as_deref(), &bytes)?;
    eprintln!(
        "verify: {} reports, {} cells, {} violations -> {}",
        output.reports.len(),
        cells_checked,
        violations,
        if passed { "PASS" } else { "FAIL" }
    );
    Ok(!passed)
}
