//! `hh figure` — CSV data series for the three built-in plots.

use std::f64::consts::LN_2;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};

use hh_core::exponents::{binary_entropy, krawtchouk_exponent};
use hh_core::krawtchouk::xi_crit;
use hh_core::max_table_dimension;
use hh_core::operators::{counterexample_growth, pi_norm_lower, pi_norm_upper};

use crate::nrange::{parse_n_list, parse_single_n};
use crate::output::{csv_f64, emit};
use crate::FormatArg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    /// Growth exponent of the level functions against the half-space bound,
    /// per radius fraction delta. Columns:
    /// `delta,xi,exponent,arc_bound,in_critical_strip`.
    Exponents,
    /// Finite-dimension level-projection norm exponents (hypercontractive,
    /// combined upper, lower witness). Columns:
    /// `n,a,xi,hypercontractive_exponent,upper_exponent,lower_exponent,in_critical_strip`.
    PiNorms,
    /// Ratio of the product-function witness to the norm bound as the
    /// dimension grows. Columns: `n,ratio`.
    TVsN,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Which data series to emit.
    #[arg(value_enum)]
    pub id: FigureId,

    /// Radius fraction(s): a comma list for `exponents`, a single value for
    /// `t-vs-n`.
    #[arg(long)]
    pub delta: Option<String>,

    /// Norm exponent. Accepts a number or `auto` (= 1 + (1-2*delta)^2).
    #[arg(long)]
    pub p: Option<String>,

    /// Dual exponent for the lower-bound column of `pi-norms`.
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,

    /// Dimension (`pi-norms`) or dimension list (`t-vs-n`).
    #[arg(long)]
    pub n: Option<String>,

    /// Product-function bias for `t-vs-n`.
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,

    /// Grid step for the `exponents` curve.
    #[arg(long = "grid-step", default_value_t = 0.005)]
    pub grid_step: f64,

    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Output format; figures are always CSV.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

fn parse_delta_list(s: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let v: f64 = part
            .trim()
            .parse()
            .with_context(|| format!("bad delta {part:?}"))?;
        if !(v > 0.0 && v < 1.0) {
            bail!("delta must lie in (0, 1), got {v}");
        }
        out.push(v);
    }
    Ok(out)
}

fn resolve_p(arg: &Option<String>, delta: f64, default: f64) -> Result<f64> {
    match arg.as_deref() {
        None => Ok(default),
        Some("auto") => {
            let t = 1.0 - 2.0 * delta;
            Ok(1.0 + t * t)
        }
        Some(text) => text
            .parse::<f64>()
            .with_context(|| format!("bad --p value {text:?} (number or `auto`)")),
    }
}

/// Critical-strip interval for a norm exponent `p`, through the radius
/// fraction `delta(p) = (1 - sqrt(p-1)) / 2` it is matched to.
fn strip_for_p(p: f64) -> Result<(f64, f64)> {
    let delta = ((1.0 - (p - 1.0).max(0.0).sqrt()) / 2.0).clamp(1e-9, 0.5);
    let xc = xi_crit(delta)?;
    Ok((xc, 1.0 - xc))
}

pub fn run(args: &FigureArgs) -> Result<bool> {
    if args.format != FormatArg::Csv {
        bail!("figures are CSV; --format json is not supported here");
    }
    let mut lines: Vec<String> = Vec::new();
    match args.id {
        FigureId::Exponents => {
            let deltas = match &args.delta {
                Some(s) => parse_delta_list(s)?,
                None => vec![0.1, 0.3],
            };
            let step = args.grid_step;
            if !(step > 0.0 && step < 0.5) {
                bail!("--grid-step must lie in (0, 0.5), got {step}");
            }
            let cells = (1.0 / step).round() as u64;
            lines.push("delta,xi,exponent,arc_bound,in_critical_strip".to_string());
            for &d in &deltas {
                let (lo, hi) = {
                    let xc = xi_crit(d.min(1.0 - d))?;
                    (xc, 1.0 - xc)
                };
                let hd = binary_entropy(d)?;
                for k in 1..cells {
                    let xi = k as f64 * step;
                    if xi >= 1.0 {
                        break;
                    }
                    let e = krawtchouk_exponent(d, xi)?.e_value;
                    let arc = 0.5 * (hd + LN_2 - binary_entropy(xi)?);
                    let in_strip = xi >= lo && xi <= hi;
                    lines.push(format!(
                        "{},{},{},{},{}",
                        csv_f64(d),
                        csv_f64(xi),
                        csv_f64(e),
                        csv_f64(arc),
                        in_strip
                    ));
                }
            }
        }
        FigureId::PiNorms => {
            let n = match &args.n {
                Some(s) => parse_single_n(s)?,
                None => max_table_dimension(),
            };
            let cap = max_table_dimension();
            if n == 0 || n > cap {
                bail!("--n must be in 1..={cap}, got {n}");
            }
            let p = resolve_p(&args.p, 0.5, 1.3)?;
            if !(p > 1.0 && p <= 2.0) {
                bail!("pi-norms needs p in (1, 2], got {p}");
            }
            if args.q.is_nan() || args.q < 1.0 {
                bail!("--q must be at least 1, got {}", args.q);
            }
            let (lo, hi) = strip_for_p(p)?;
            lines.push(
                "n,a,xi,hypercontractive_exponent,upper_exponent,lower_exponent,in_critical_strip"
                    .to_string(),
            );
            let nf = n as f64;
            for a in 0..=n / 2 {
                let xi = a as f64 / nf;
                let hyper = -(xi / 2.0) * (p - 1.0).ln();
                let upper = pi_norm_upper(n, a, p)?.ln() / nf;
                let lower = pi_norm_lower(n, a, p, args.q)?.ln() / nf;
                let in_strip = xi >= lo && xi <= hi;
                lines.push(format!(
                    "{},{},{},{},{},{},{}",
                    n,
                    a,
                    csv_f64(xi),
                    csv_f64(hyper),
                    csv_f64(upper),
                    csv_f64(lower),
                    in_strip
                ));
            }
        }
        FigureId::TVsN => {
            let delta = match &args.delta {
                Some(s) => {
                    let list = parse_delta_list(s)?;
                    if list.len() != 1 {
                        bail!("t-vs-n takes a single delta, got {s:?}");
                    }
                    list[0]
                }
                None => 0.3,
            };
            let p = resolve_p(&args.p, delta, {
                let t = 1.0 - 2.0 * delta;
                1.0 + t * t
            })?;
            let n_list = match &args.n {
                Some(s) => parse_n_list(s)?,
                None => parse_n_list("8..64")?,
            };
            let rows = counterexample_growth(delta, p, args.eps, &n_list)?;
            lines.push("n,ratio".to_string());
            for (n, ratio) in rows {
                lines.push(format!("{},{}", n, csv_f64(ratio)));
            }
        }
    }
    let mut text = lines.join("\n");
    text.push('\n');
    emit(args.out.as_deref(), text.as_bytes())?;
    Ok(false)
}
