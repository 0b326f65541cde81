//! `hh norms` — operator-norm searches: single point, standard grid, or
//! growth of the product-function witness ratio.

use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use serde::Serialize;

use hh_core::operators::{
    counterexample_growth, norm_1_to_2_exact, norm_lower_search, norm_upper_certificate,
};
use hh_core::{max_cube_dimension, MultiplierProfile, SearchConfig};

use crate::nrange::{parse_n_list, parse_single_n};
use crate::output::{emit, to_json_bytes};
use crate::FormatArg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridName {
    /// delta in {0.05, 0.10, ..., 0.95} with p = max(1 + (1-2*delta)^2, 1.02).
    Standard,
}

#[derive(Debug, Args)]
pub struct NormsArgs {
    /// Dimension (single value; a list only with --growth).
    #[arg(long)]
    pub n: Option<String>,

    /// Radius fraction of the spherical average.
    #[arg(long)]
    pub delta: Option<f64>,

    /// Source norm exponent p (target norm is always 2).
    #[arg(long)]
    pub p: Option<f64>,

    /// Product-function bias for --growth.
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,

    /// Run a named (delta, p) grid instead of a single point.
    #[arg(long, value_enum, conflicts_with = "growth")]
    pub grid: Option<GridName>,

    /// Evaluate the product-function witness ratio over a dimension list.
    #[arg(long)]
    pub growth: bool,

    /// Exit with status 1 when the reported maximum exceeds this threshold.
    #[arg(long = "check-le")]
    pub check_le: Option<f64>,

    /// Seed for the randomized restarts of the search.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Write the JSON here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Output format; norm reports are always JSON.
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
}

#[derive(Serialize)]
struct PointOutput {
    command: &'static str,
    mode: &'static str,
    n: u32,
    delta: f64,
    p: f64,
    seed: u64,
    lower: f64,
    upper: Option<f64>,
    method: String,
    iterations: u64,
    check_le: Option<f64>,
    passed: bool,
}

#[derive(Serialize)]
struct GridPoint {
    delta: f64,
    p: f64,
    lower: f64,
    upper: Option<f64>,
}

#[derive(Serialize)]
struct GridOutput {
    command: &'static str,
    mode: &'static str,
    grid: &'static str,
    n: u32,
    seed: u64,
    points: Vec<GridPoint>,
    max_lower: f64,
    check_le: Option<f64>,
    passed: bool,
}

#[derive(Serialize)]
struct GrowthPoint {
    n: u32,
    ratio: f64,
}

#[derive(Serialize)]
struct GrowthOutput {
    command: &'static str,
    mode: &'static str,
    delta: f64,
    p: f64,
    eps: f64,
    points: Vec<GrowthPoint>,
    max_ratio: f64,
    check_le: Option<f64>,
    passed: bool,
}

fn against(check_le: Option<f64>, value: f64) -> bool {
    match check_le {
        Some(t) => value <= t,
        None => true,
    }
}

pub fn run(args: &NormsArgs) -> Result<bool> {
    if args.format != FormatArg::Json {
        bail!("norm reports are JSON; --format csv is not supported here");
    }
    let config = SearchConfig {
        seed: args.seed,
        ..SearchConfig::default()
    };

    if args.growth {
        let delta = args.delta.unwrap_or(0.1);
        let Some(p) = args.p else {
            bail!("--growth needs --p");
        };
        let n_list = match &args.n {
            Some(s) => parse_n_list(s)?,
            None => parse_n_list("8..64")?,
        };
        let rows = counterexample_growth(delta, p, args.eps, &n_list)?;
        let max_ratio = rows
            .iter()
            .map(|&(_, r)| r)
            .fold(f64::NEG_INFINITY, f64::max);
        let passed = against(args.check_le, max_ratio);
        let out = GrowthOutput {
            command: "norms",
            mode: "growth",
            delta,
            p,
            eps: args.eps,
            points: rows
                .into_iter()
                .map(|(n, ratio)| GrowthPoint { n, ratio })
                .collect(),
            max_ratio,
            check_le: args.check_le,
            passed,
        };
        emit(args.out.as_deref(), &to_json_bytes(&out)?)?;
        return Ok(!passed);
    }

    if let Some(grid) = args.grid {
        let GridName::Standard = grid;
        let Some(n_text) = &args.n else {
            bail!("--grid needs --n");
        };
        let n = parse_single_n(n_text)?;
        let cap = max_cube_dimension();
        if n == 0 || n > cap {
            bail!("--n must be in 1..={cap} for searches, got {n}");
        }
        let mut points = Vec::with_capacity(19);
        let mut max_lower = f64::NEG_INFINITY;
        for k in 1..=19u32 {
            let delta = k as f64 / 20.0;
            let t = 1.0 - 2.0 * delta;
            let p = (1.0 + t * t).max(1.02);
            let profile = MultiplierProfile::spherical(n, delta)?;
            let est = norm_lower_search(&profile, p, &config)?;
            let upper = norm_upper_certificate(&profile, p).ok();
            max_lower = max_lower.max(est.lower);
            points.push(GridPoint {
                delta,
                p,
                lower: est.lower,
                upper,
            });
        }
        let passed = against(args.check_le, max_lower);
        let out = GridOutput {
            command: "norms",
            mode: "grid",
            grid: "standard",
            n,
            seed: args.seed,
            points,
            max_lower,
            check_le: args.check_le,
            passed,
        };
        emit(args.out.as_deref(), &to_json_bytes(&out)?)?;
        return Ok(!passed);
    }

    // Single-point mode.
    let Some(n_text) = &args.n else {
        bail!("norms needs --n");
    };
    let n = parse_single_n(n_text)?;
    let cap = max_cube_dimension();
    if n == 0 || n > cap {
        bail!("--n must be in 1..={cap} for searches, got {n}");
    }
    let Some(delta) = args.delta else {
        bail!("point mode needs --delta");
    };
    let Some(p) = args.p else {
        bail!("point mode needs --p");
    };
    let profile = MultiplierProfile::spherical(n, delta)?;
    let est = norm_lower_search(&profile, p, &config)?;
    let upper = if p == 1.0 {
        Some(norm_1_to_2_exact(&profile))
    } else {
        norm_upper_certificate(&profile, p).ok()
    };
    let passed = against(args.check_le, est.lower);
    let out = PointOutput {
        command: "norms",
        mode: "point",
        n,
        delta,
        p,
        seed: args.seed,
        lower: est.lower,
        upper,
        method: est.method,
        iterations: est.iterations,
        check_le: args.check_le,
        passed,
    };
    emit(args.out.as_deref(), &to_json_bytes(&out)?)?;
    Ok(!passed)
}
