//! Saddle-point growth exponents for the sphere-transform polynomials and
//! grid verification of their analytic property suite.
//!
//! The central object is `E(delta, xi)`: the exponential growth rate of
//! `|K_{delta n}(xi n)|` in `n`. Inside the oscillation window the rate has
//! the closed arc form `(h(delta) + ln 2 - h(xi)) / 2`; outside it the rate
//! is the stationary-point value of `phi` at the smallest real root of the
//! defining quadratic.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::krawtchouk::{ln_big, xi_crit, KrawtchoukTable};
use crate::report::{format_f64, MarginTracker, VerificationReport, Violation};

const LN2: f64 = std::f64::consts::LN_2;

/// `-x ln x - (1-x) ln(1-x)` on a trusted domain; endpoints give 0.
pub(crate) fn h_raw(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.ln() - (1.0 - x) * (1.0 - x).ln()
}

/// Binary entropy in nats, `0 ln 0 := 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::ParamOutOfRange {
            name: "x",
            value: x,
            range: "[0, 1]",
        });
    }
    Ok(h_raw(x))
}

/// The stationary-phase integrand exponent
/// `phi(xi, omega) = xi ln|1-w| + (1-xi) ln|1+w| - delta ln|w|`,
/// where `delta = Re[w (1 - 2 xi - w) / (1 - w^2)]` is implied by `(xi, w)`.
pub fn phi(xi: f64, omega: Complex64) -> Result<f64> {
    let one = Complex64::new(1.0, 0.0);
    if omega.norm() == 0.0 {
        return Err(Error::Singular { what: "omega = 0" });
    }
    if (one - omega).norm() == 0.0 {
        return Err(Error::Singular { what: "omega = 1" });
    }
    if (one + omega).norm() == 0.0 {
        return Err(Error::Singular { what: "omega = -1" });
    }
    let delta = (omega * (Complex64::new(1.0 - 2.0 * xi, 0.0) - omega) / (one - omega * omega)).re;
    Ok(
        xi * (one - omega).norm().ln() + (1.0 - xi) * (one + omega).norm().ln()
            - delta * omega.norm().ln(),
    )
}

/// One evaluation of the growth exponent together with its saddle point.
#[derive(Debug, Clone, Copy)]
pub struct ExponentEval {
    pub delta: f64,
    pub xi: f64,
    /// Saddle point: real off the oscillation window, on the circle
    /// `|w| = sqrt(delta/(1-delta))` inside it.
    pub omega: Complex64,
    /// Exponent in nats, normalized by dimension; always in `[0, ln 2]`.
    pub e_value: f64,
}

fn arc_value(d: f64, x: f64) -> f64 {
    0.5 * (h_raw(d) + LN2 - h_raw(x))
}

fn off_arc_omega(d: f64, x: f64) -> f64 {
    let t = 1.0 - 2.0 * x;
    let disc = (t * t - 4.0 * d * (1.0 - d)).max(0.0);
    (t - disc.sqrt()) / (2.0 * (1.0 - d))
}

fn off_arc_value(d: f64, x: f64) -> f64 {
    let w = off_arc_omega(d, x);
    x * (1.0 - w).ln() + (1.0 - x) * (1.0 + w).ln() - d * w.ln()
}

/// Growth exponent `E(delta, xi)` of `|K_{delta n}(xi n)|`, reduced through
/// the symmetries `E(delta, xi) = E(1-delta, xi) = E(delta, 1-xi)`.
pub fn krawtchouk_exponent(delta: f64, xi: f64) -> Result<ExponentEval> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::ParamOutOfRange {
            name: "delta",
            value: delta,
            range: "[0, 1]",
        });
    }
    if !(0.0..=1.0).contains(&xi) {
        return Err(Error::ParamOutOfRange {
            name: "xi",
            value: xi,
            range: "[0, 1]",
        });
    }
    let d = delta.min(1.0 - delta);
    let x = xi.min(1.0 - xi);
    if d == 0.0 {
        // K_0 == 1: zero growth at every weight.
        return Ok(ExponentEval {
            delta,
            xi,
            omega: Complex64::new(0.0, 0.0),
            e_value: 0.0,
        });
    }
    let root = (d * (1.0 - d)).sqrt();
    if x >= 0.5 - root {
        // Oscillation window: saddle on the circle |w| = sqrt(d/(1-d)).
        let r = (d / (1.0 - d)).sqrt();
        let c = ((1.0 - 2.0 * x) / (2.0 * root)).clamp(-1.0, 1.0);
        let s = (1.0 - c * c).max(0.0).sqrt();
        Ok(ExponentEval {
            delta,
            xi,
            omega: Complex64::new(r * c, r * s),
            e_value: arc_value(d, x),
        })
    } else {
        let w = off_arc_omega(d, x);
        Ok(ExponentEval {
            delta,
            xi,
            omega: Complex64::new(w, 0.0),
            e_value: off_arc_value(d, x),
        })
    }
}

// ---------------------------------------------------------------------------
// Magnitude bound: |K_j(x)| <= e^{n E(j/n, x/n)}.
// ---------------------------------------------------------------------------

struct FRow {
    cells: u64,
    violations: Vec<Violation>,
    best: MarginTracker<f64>,
}

impl FRow {
    fn new() -> Self {
        FRow {
            cells: 0,
            violations: Vec::new(),
            best: MarginTracker::new(),
        }
    }
}

fn merge_f_rows(mut report: VerificationReport, rows: Vec<FRow>) -> VerificationReport {
    let mut best = MarginTracker::new();
    for row in rows {
        report.cells_checked += row.cells;
        report.violations.extend(row.violations);
        if let Some((m, c)) = row.best.into_best() {
            best.observe(m, &c);
        }
    }
    if let Some((m, c)) = best.into_best() {
        report.set_worst_margin_f64(m, c);
    }
    report
}

/// Exhaustive check of `ln|K_j(x)| <= n E(j/n, x/n) + 1e-9 n` over every
/// `(j, x)` cell; zero polynomial values pass vacuously.
pub fn check_magnitude_bound(n: u32) -> Result<VerificationReport> {
    let table = KrawtchoukTable::build(n)?;
    Ok(check_magnitude_bound_with(&table))
}

/// Same check against a prebuilt table.
pub fn check_magnitude_bound_with(table: &KrawtchoukTable) -> VerificationReport {
    use num_traits::{Signed, Zero};
    let n = table.n();
    let tol = 1e-9 * n as f64;
    let mut report = VerificationReport::new("magnitude_exponent", Some(n));
    report.set_param("tol", format_f64(tol));
    let rows: Vec<FRow> = (0..=n)
        .into_par_iter()
        .map(|j| {
            let mut out = FRow::new();
            for x in 0..=n {
                out.cells += 1;
                let k = table.value(j, x);
                if k.is_zero() {
                    continue;
                }
                let lnk = ln_big(&k.abs());
                let e = krawtchouk_exponent(j as f64 / n as f64, x as f64 / n as f64)
                    .expect("grid fractions lie in [0,1]")
                    .e_value;
                let margin = n as f64 * e - lnk;
                let cell = vec![j as i64, x as i64];
                if margin < -tol {
                    out.violations.push(Violation {
                        cell: cell.clone(),
                        detail: format!(
                            "ln|K_{j}({x})| = {lnk} exceeds n E = {} by {}",
                            n as f64 * e,
                            -margin
                        ),
                    });
                }
                out.best.observe(margin, &cell);
            }
            out
        })
        .collect();
    merge_f_rows(report, rows)
}

// ---------------------------------------------------------------------------
// Property suite of E on a grid.
// ---------------------------------------------------------------------------

fn grid(step: f64, upper: f64) -> Vec<f64> {
    let count = ((upper + 1e-9) / step).floor() as usize;
    (0..=count).map(|k| (k as f64 * step).min(upper)).collect()
}

fn e_val(delta: f64, xi: f64) -> f64 {
    krawtchouk_exponent(delta, xi)
        .expect("grid points lie in [0,1]")
        .e_value
}

/// Grid verification of the analytic properties of `E(delta, xi)`:
/// continuity across the oscillation-window seam (item 0), the two mirror
/// symmetries (1), endpoint and midpoint values (2), the closed form at
/// `delta = 1/2` (3), the reciprocity identity (4), monotonicity in `xi`
/// (5) and in `delta` (6, plain and entropy-shifted 7), and the tangent-line
/// upper bound below the window (8). Tolerance is `1e-8` throughout.
pub fn check_exponent_properties(grid_step: f64) -> Result<VerificationReport> {
    if !(grid_step > 0.0 && grid_step < 1.0) {
        return Err(Error::ParamOutOfRange {
            name: "grid_step",
            value: grid_step,
            range: "(0, 1)",
        });
    }
    const TOL: f64 = 1e-8;
    let mut report = VerificationReport::new("exponent_properties", None);
    report.set_param("grid_step", format_f64(grid_step));
    report.set_param("tol", format_f64(TOL));
    let full = grid(grid_step, 1.0);
    let half = grid(grid_step, 0.5);
    let mut best = MarginTracker::new();
    let mut record = |cell: Vec<i64>, margin: f64, what: &str, report: &mut VerificationReport| {
        report.cells_checked += 1;
        if margin < -TOL {
            report.violations.push(Violation {
                cell: cell.clone(),
                detail: format!("{what}: margin {margin}"),
            });
        }
        best.observe(margin, &cell);
    };

    // Item 0: seam continuity at the window edge, interior delta only.
    for (i, &d) in half.iter().enumerate() {
        if d == 0.0 || d == 0.5 {
            continue;
        }
        let x = xi_crit(d)?;
        let margin = -(arc_value(d, x) - off_arc_value(d, x)).abs();
        record(
            vec![0, i as i64, -1],
            margin,
            "seam continuity",
            &mut report,
        );
    }

    for (i, &d) in full.iter().enumerate() {
        // Item 2: endpoint and midpoint closed forms.
        let r2 = (e_val(d, 0.0) - h_raw(d))
            .abs()
            .max((e_val(d, 1.0) - h_raw(d)).abs())
            .max((e_val(d, 0.5) - h_raw(d) / 2.0).abs());
        record(vec![2, i as i64, -1], -r2, "endpoint values", &mut report);
        for (k, &xi) in full.iter().enumerate() {
            let e = e_val(d, xi);
            // Item 1: mirror symmetries.
            let r1 = (e - e_val(1.0 - d, xi))
                .abs()
                .max((e - e_val(d, 1.0 - xi)).abs());
            record(
                vec![1, i as i64, k as i64],
                -r1,
                "mirror symmetry",
                &mut report,
            );
            // Item 4: reciprocity.
            let r4 = (e - (h_raw(d) - h_raw(xi) + e_val(xi, d))).abs();
            record(vec![4, i as i64, k as i64], -r4, "reciprocity", &mut report);
        }
    }

    // Item 3: closed form at delta = 1/2.
    for (k, &xi) in full.iter().enumerate() {
        let r3 = (e_val(0.5, xi) - (LN2 - h_raw(xi) / 2.0)).abs();
        record(
            vec![3, -1, k as i64],
            -r3,
            "delta = 1/2 closed form",
            &mut report,
        );
    }

    // Item 5: non-increasing in xi on [0, 1/2].
    for (i, &d) in full.iter().enumerate() {
        for k in 0..half.len() - 1 {
            let margin = e_val(d, half[k]) - e_val(d, half[k + 1]);
            record(
                vec![5, i as i64, k as i64],
                margin,
                "monotone non-increasing in xi",
                &mut report,
            );
        }
    }

    // Items 6 and 7: monotone in delta on [0, 1/2], plain and shifted.
    for (k, &xi) in full.iter().enumerate() {
        for i in 0..half.len() - 1 {
            let lo = e_val(half[i], xi);
            let hi = e_val(half[i + 1], xi);
            record(
                vec![6, i as i64, k as i64],
                hi - lo,
                "monotone non-decreasing in delta",
                &mut report,
            );
            let margin = (lo - h_raw(half[i])) - (hi - h_raw(half[i + 1]));
            record(
                vec![7, i as i64, k as i64],
                margin,
                "entropy gap non-increasing in delta",
                &mut report,
            );
        }
    }

    // Item 8: tangent-line bound below the oscillation window.
    for (i, &d) in half.iter().enumerate() {
        let xc = xi_crit(d)?;
        for (k, &xi) in half.iter().enumerate() {
            if xi > xc + 1e-12 {
                break;
            }
            let rhs = if xi == 0.0 {
                h_raw(d)
            } else {
                xi * (1.0 - 2.0 * d).ln() + h_raw(d)
            };
            record(
                vec![8, i as i64, k as i64],
                rhs - e_val(d, xi),
                "tangent-line bound",
                &mut report,
            );
        }
    }

    if let Some((m, c)) = best.into_best() {
        report.set_worst_margin_f64(m, c);
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Strip scan: the interpolation-gain objective must stay strictly negative.
// ---------------------------------------------------------------------------

/// Resolution of the lower convex envelope grid (number of segments).
const ENVELOPE_SEGMENTS: usize = 2048;

/// Lower convex envelope, in the variable `u = 1/p` over `[1/2, 1]`, of
/// `u -> min{ -(xi/2) ln((1-u)/u), (u - 1/2) h(xi) }` — the smaller of the
/// two level-projection norm exponents, convexified as interpolation allows.
struct LowerEnvelope {
    hull: Vec<(f64, f64)>,
}

impl LowerEnvelope {
    fn pointwise(u: f64, xi: f64, h: f64) -> f64 {
        let b2 = (u - 0.5) * h;
        if xi == 0.0 {
            return 0.0;
        }
        if u >= 1.0 {
            return b2; // first branch diverges to +inf
        }
        let b1 = -(xi / 2.0) * ((1.0 - u) / u).ln();
        b1.min(b2)
    }

    fn build(xi: f64) -> Self {
        let m = ENVELOPE_SEGMENTS;
        let h = h_raw(xi);
        let mut hull: Vec<(f64, f64)> = Vec::with_capacity(64);
        for k in 0..=m {
            let u = 0.5 + 0.5 * k as f64 / m as f64;
            let p = (u, Self::pointwise(u, xi, h));
            while hull.len() >= 2 {
                let (ax, ay) = hull[hull.len() - 2];
                let (bx, by) = hull[hull.len() - 1];
                if (bx - ax) * (p.1 - ay) - (by - ay) * (p.0 - ax) <= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        LowerEnvelope { hull }
    }

    fn eval(&self, u: f64) -> f64 {
        let h = &self.hull;
        if u <= h[0].0 {
            return h[0].1;
        }
        if u >= h[h.len() - 1].0 {
            return h[h.len() - 1].1;
        }
        let (mut lo, mut hi) = (0usize, h.len() - 1);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if h[mid].0 <= u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (x0, y0) = h[lo];
        let (x1, y1) = h[hi];
        y0 + (u - x0) / (x1 - x0) * (y1 - y0)
    }
}

/// Gain at exponent `p`: envelope value minus the entropy of the weight
/// fraction whose oscillation window opens exactly at `p`.
fn eta(env: &LowerEnvelope, p: f64) -> f64 {
    env.eval(1.0 / p) - 0.5 * h_raw((1.0 - (p - 1.0).sqrt()) / 2.0)
}

/// The window-boundary gap function: must be non-positive on `[0, 1/2]`,
/// vanishing only at `0` and `1/2` (and, by its closed form, at `1`).
fn boundary_gap(xi: f64) -> f64 {
    let s = (1.0 - 2.0 * xi) * (1.0 - 2.0 * xi);
    let first = s / (2.0 - s) * h_raw(xi);
    let arg = 4.0 * xi * (1.0 - xi);
    let second = if xi == 0.0 {
        0.0
    } else if arg <= 0.0 {
        f64::INFINITY
    } else {
        -xi * arg.ln()
    };
    first.min(second) + LN2 - h_raw(xi) - h_raw(0.5 - (xi * (1.0 - xi)).sqrt())
}

const FAMILY_NAMES: [&str; 4] = [
    "main_strip",
    "p_low_endpoint",
    "p_high_endpoint",
    "p_matched_curve",
];

struct StripRow {
    cells: u64,
    violations: Vec<Violation>,
    /// Per-family `(max objective, xi, delta)`.
    family_max: [Option<(f64, f64, f64)>; 4],
    best: MarginTracker<f64>,
}

/// Grid scan of the four strictly-negative interpolation-gain objectives
/// over `delta in [delta0, delta_max]`, plus a survey of the
/// window-boundary gap function on `[0, 1]`.
///
/// This is a sampled check with a reported margin, not a certified bound.
/// The report carries per-family maxima and their argmax points in
/// `params`; the worst margin is the smallest slack `-objective` over the
/// four families (the gap-function survey is reported separately and does
/// not enter the margin).
pub fn check_strip_bounds(
    delta0: f64,
    delta_max: f64,
    grid_step: f64,
) -> Result<VerificationReport> {
    if !(delta0 > 0.0 && delta0 < delta_max && delta_max < 0.5) {
        return Err(Error::ParamOutOfRange {
            name: "delta0..delta_max",
            value: delta0,
            range: "0 < delta0 < delta_max < 1/2",
        });
    }
    if !(grid_step > 0.0 && grid_step < 0.5) {
        return Err(Error::ParamOutOfRange {
            name: "grid_step",
            value: grid_step,
            range: "(0, 1/2)",
        });
    }
    let p0 = 1.0 + (1.0 - 2.0 * delta_max) * (1.0 - 2.0 * delta_max);
    let p1 = 1.0 + (1.0 - 2.0 * delta0) * (1.0 - 2.0 * delta0);
    let mut report = VerificationReport::new("strip_bounds", None);
    report.set_param("delta0", format_f64(delta0));
    report.set_param("delta_max", format_f64(delta_max));
    report.set_param("grid_step", format_f64(grid_step));
    report.set_param("p0", format_f64(p0));
    report.set_param("p1", format_f64(p1));
    report.set_param("envelope_points", (ENVELOPE_SEGMENTS + 1).to_string());

    let n_xi = ((0.5 + 1e-9) / grid_step).floor() as usize;
    let n_d = ((delta_max - delta0 + 1e-9) / grid_step).floor() as usize;

    let rows: Vec<StripRow> = (0..=n_xi)
        .into_par_iter()
        .map(|kx| {
            let xi = (kx as f64 * grid_step).min(0.5);
            let env = LowerEnvelope::build(xi);
            let mut row = StripRow {
                cells: 0,
                violations: Vec::new(),
                family_max: [None; 4],
                best: MarginTracker::new(),
            };
            let tail = 0.5 * (LN2 - h_raw(xi));
            let sx = (1.0 - 2.0 * xi) * (1.0 - 2.0 * xi);
            let push = |row: &mut StripRow, fam: usize, cell: Vec<i64>, obj: f64, d: f64| {
                row.cells += 1;
                if row.family_max[fam].is_none_or(|(m, _, _)| obj > m) {
                    row.family_max[fam] = Some((obj, xi, d));
                }
                if obj >= 0.0 {
                    row.violations.push(Violation {
                        cell: cell.clone(),
                        detail: format!(
                            "{} objective {obj} is not strictly negative at xi={xi}, delta={d}",
                            FAMILY_NAMES[fam]
                        ),
                    });
                }
                row.best.observe(-obj, &cell);
            };
            // Family 0: joint objective over the admissible (delta, xi) strip.
            for kd in 0..=n_d {
                let d = delta0 + kd as f64 * grid_step;
                if sx + (1.0 - 2.0 * d) * (1.0 - 2.0 * d) <= 1.0 + 1e-12 {
                    let p = 1.0 + (1.0 - 2.0 * d) * (1.0 - 2.0 * d);
                    let obj = 0.5 * (LN2 - h_raw(xi) - h_raw(d)) + env.eval(1.0 / p);
                    push(&mut row, 0, vec![0, kx as i64, kd as i64], obj, d);
                }
            }
            // Families 1-3: the three single-variable reductions.
            if sx <= 2.0 - p0 + 1e-12 {
                push(
                    &mut row,
                    1,
                    vec![1, kx as i64, -1],
                    eta(&env, p0) + tail,
                    f64::NAN,
                );
            }
            if sx <= 2.0 - p1 + 1e-12 {
                push(
                    &mut row,
                    2,
                    vec![2, kx as i64, -1],
                    eta(&env, p1) + tail,
                    f64::NAN,
                );
            }
            if (2.0 - p1 - 1e-12..=2.0 - p0 + 1e-12).contains(&sx) {
                push(
                    &mut row,
                    3,
                    vec![3, kx as i64, -1],
                    eta(&env, 2.0 - sx) + tail,
                    f64::NAN,
                );
            }
            row
        })
        .collect();

    let mut family_max: [Option<(f64, f64, f64)>; 4] = [None; 4];
    let mut best = MarginTracker::new();
    for row in rows {
        report.cells_checked += row.cells;
        report.violations.extend(row.violations);
        for (slot, found) in family_max.iter_mut().zip(row.family_max) {
            if let Some((m, xi, d)) = found {
                if slot.is_none_or(|(cur, _, _)| m > cur) {
                    *slot = Some((m, xi, d));
                }
            }
        }
        if let Some((m, c)) = row.best.into_best() {
            best.observe(m, &c);
        }
    }
    for fam in 0..4 {
        if let Some((m, xi, d)) = family_max[fam] {
            report.set_param(&format!("{}_max", FAMILY_NAMES[fam]), format_f64(m));
            report.set_param(&format!("{}_argmax_xi", FAMILY_NAMES[fam]), format_f64(xi));
            if !d.is_nan() {
                report.set_param(
                    &format!("{}_argmax_delta", FAMILY_NAMES[fam]),
                    format_f64(d),
                );
            }
        }
    }
    if let Some((m, c)) = best.into_best() {
        report.set_worst_margin_f64(m, c);
    }

    // Survey of the boundary-gap function on [0, 1]; its non-positivity on
    // [0, 1/2] and exact zeros are reported, not enforced.
    let n_gap = ((1.0 + 1e-9) / grid_step).floor() as usize;
    let mut gap_min = (f64::INFINITY, 0.0);
    let mut gap_max = (f64::NEG_INFINITY, 0.0);
    for k in 0..=n_gap {
        let xi = (k as f64 * grid_step).min(1.0);
        report.cells_checked += 1;
        let v = boundary_gap(xi);
        if v < gap_min.0 {
            gap_min = (v, xi);
        }
        if v > gap_max.0 {
            gap_max = (v, xi);
        }
    }
    report.set_param("gap_min", format_f64(gap_min.0));
    report.set_param("gap_min_xi", format_f64(gap_min.1));
    report.set_param("gap_max", format_f64(gap_max.0));
    report.set_param("gap_max_xi", format_f64(gap_max.1));
    report.set_param("gap_at_0", format_f64(boundary_gap(0.0)));
    report.set_param("gap_at_half", format_f64(boundary_gap(0.5)));
    report.set_param("gap_at_1", format_f64(boundary_gap(1.0)));
    Ok(report)
}
