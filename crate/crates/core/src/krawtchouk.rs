//! Exact integer tables of the sphere-transform polynomials `K_j` and
//! exhaustive rational-arithmetic verification of their magnitude bounds.
//!
//! `K_j(x) = sum_k (-1)^k C(x,k) C(n-x,j-k)` is the value the unnormalized
//! Walsh–Hadamard transform of a radius-`j` Hamming sphere indicator takes at
//! every frequency of weight `x`. All scan verdicts here are computed in
//! exact integer/rational arithmetic: floating point never decides pass/fail.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{binomial_row, ExactDecimal};
use crate::max_table_dimension;
use crate::report::{VerificationReport, Violation};

/// Dense exact value table `k[j][x] = K_j(x)` for one dimension `n`,
/// validated against its defining identities at construction.
#[derive(Debug, Clone)]
pub struct KrawtchoukTable {
    n: u32,
    k: Vec<Vec<BigInt>>,
    binom: Vec<BigInt>,
}

/// Pascal triangle rows `0..=n` (row `m` holds `C(m, 0..=m)`).
fn pascal_rows(n: u32) -> Vec<Vec<BigInt>> {
    (0..=n).map(binomial_row).collect()
}

/// One polynomial value from the defining alternating sum.
fn value_from_sum(pascal: &[Vec<BigInt>], n: u32, j: u32, x: u32) -> BigInt {
    let lo = j.saturating_sub(n - x);
    let hi = j.min(x);
    let mut acc = BigInt::zero();
    let row_x = &pascal[x as usize];
    let row_nx = &pascal[(n - x) as usize];
    for t in lo..=hi {
        let term = &row_x[t as usize] * &row_nx[(j - t) as usize];
        if t % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

pub(crate) fn check_dimension(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::ParamOutOfRange {
            name: "n",
            value: 0.0,
            range: "1..=configured table cap",
        });
    }
    let max = max_table_dimension();
    if n > max {
        return Err(Error::DimensionTooLarge { n, max });
    }
    Ok(())
}

impl KrawtchoukTable {
    /// Build and fully validate the `(n+1) x (n+1)` table.
    ///
    /// Validated identities (any failure is an internal error):
    /// - `K_j(0) = C(n,j)`;
    /// - reflection `K_j(n-x) = (-1)^j K_j(x)`;
    /// - index exchange `K_{n-j}(x) = (-1)^x K_j(x)`;
    /// - weight exchange `K_j(x) C(n,x) = K_x(j) C(n,j)`;
    /// - the three-term recurrence
    ///   `(n-x) K_j(x+1) - (n-2j) K_j(x) + x K_j(x-1) = 0`.
    ///
    /// For `n <= 14` the table is additionally cross-checked, entry by entry,
    /// against the floating-point transform of the sphere indicators.
    pub fn build(n: u32) -> Result<Self> {
        check_dimension(n)?;
        let pascal = pascal_rows(n);
        let k: Vec<Vec<BigInt>> = (0..=n)
            .map(|j| (0..=n).map(|x| value_from_sum(&pascal, n, j, x)).collect())
            .collect();
        let table = KrawtchoukTable {
            n,
            k,
            binom: pascal[n as usize].clone(),
        };
        table.verify_identities()?;
        if n <= 14 && n <= crate::max_cube_dimension() {
            table.cross_check_against_transform()?;
        }
        Ok(table)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `K_j(x)`.
    pub fn value(&self, j: u32, x: u32) -> &BigInt {
        &self.k[j as usize][x as usize]
    }

    /// The row `x -> K_j(x)`.
    pub fn row(&self, j: u32) -> &[BigInt] {
        &self.k[j as usize]
    }

    /// `C(n, m)`.
    pub fn binom(&self, m: u32) -> &BigInt {
        &self.binom[m as usize]
    }

    fn verify_identities(&self) -> Result<()> {
        let n = self.n as usize;
        let fail = |what: String| Err(Error::Internal(what));
        for j in 0..=n {
            if self.k[j][0] != self.binom[j] {
                return fail(format!("K_{j}(0) != C({n},{j})"));
            }
            for x in 0..=n {
                let refl = &self.k[j][n - x];
                let want = if j % 2 == 0 { refl.clone() } else { -refl };
                if self.k[j][x] != want {
                    return fail(format!("reflection identity fails at j={j}, x={x}"));
                }
                let exch = &self.k[n - j][x];
                let want = if x % 2 == 0 { exch.clone() } else { -exch };
                if self.k[j][x] != want {
                    return fail(format!("index-exchange identity fails at j={j}, x={x}"));
                }
                if &self.k[j][x] * &self.binom[x] != &self.k[x][j] * &self.binom[j] {
                    return fail(format!("weight-exchange identity fails at j={j}, x={x}"));
                }
            }
            for x in 1..n {
                let lhs = BigInt::from((n - x) as i64) * &self.k[j][x + 1]
                    - BigInt::from(n as i64 - 2 * j as i64) * &self.k[j][x]
                    + BigInt::from(x as i64) * &self.k[j][x - 1];
                if !lhs.is_zero() {
                    return fail(format!("three-term recurrence fails at j={j}, x={x}"));
                }
            }
        }
        Ok(())
    }

    fn cross_check_against_transform(&self) -> Result<()> {
        let n = self.n;
        for j in 0..=n {
            let spec = crate::cube::CubeFunction::sphere_indicator(n, j)?.wht();
            for (w, v) in spec.values().iter().enumerate() {
                let r = v.round();
                let x = (w as u64).count_ones();
                if (v - r).abs() > 1e-6 || BigInt::from(r as i64) != self.k[j as usize][x as usize]
                {
                    return Err(Error::Internal(format!(
                        "transform cross-check fails at j={j}, frequency weight {x}: \
                         transform gives {v}, table holds {}",
                        self.k[j as usize][x as usize]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Single row `x -> K_j(x)` without building the full table.
pub fn krawtchouk_row(n: u32, j: u32) -> Result<Vec<BigInt>> {
    check_dimension(n)?;
    if j > n {
        return Err(Error::ParamOutOfRange {
            name: "j",
            value: j as f64,
            range: "0..=n",
        });
    }
    let pascal = pascal_rows(n);
    Ok((0..=n).map(|x| value_from_sum(&pascal, n, j, x)).collect())
}

/// Weight fraction of the first sign change: `1/2 - sqrt(delta(1-delta))`.
/// All oscillation of `K_{delta n}` happens at weights between this fraction
/// and its mirror image.
pub fn xi_crit(delta: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&delta) {
        return Err(Error::ParamOutOfRange {
            name: "delta",
            value: delta,
            range: "[0, 1/2]",
        });
    }
    Ok(0.5 - (delta * (1.0 - delta)).sqrt())
}

// ---------------------------------------------------------------------------
// Exhaustive exact scans.
// ---------------------------------------------------------------------------

/// Per-row partial result of a scan, merged in row order.
struct RowOut {
    cells: u64,
    violations: Vec<Violation>,
    best: Option<(BigRational, Vec<i64>)>,
}

impl RowOut {
    fn new() -> Self {
        RowOut {
            cells: 0,
            violations: Vec::new(),
            best: None,
        }
    }

    /// Record one comparison `lhs <= rhs` with margin `(rhs-lhs)/scale`.
    fn record(&mut self, cell: &[i64], lhs: BigInt, rhs: BigInt, scale: BigInt) {
        self.cells += 1;
        let margin = BigRational::new(&rhs - &lhs, scale);
        let better = match &self.best {
            None => true,
            Some((m, _)) => margin < *m,
        };
        if better {
            self.best = Some((margin.clone(), cell.to_vec()));
        }
        if lhs > rhs {
            let ratio = BigRational::new(lhs.clone(), rhs.clone());
            self.violations.push(Violation {
                cell: cell.to_vec(),
                detail: format!(
                    "scaled magnitude {lhs} exceeds scaled bound {rhs} \
                     (ratio {ratio}, margin {margin})"
                ),
            });
        }
    }
}

fn merge_rows(mut report: VerificationReport, rows: Vec<RowOut>) -> VerificationReport {
    let mut best: Option<(BigRational, Vec<i64>)> = None;
    for row in rows {
        report.cells_checked += row.cells;
        report.violations.extend(row.violations);
        if let Some((m, c)) = row.best {
            let better = match &best {
                None => true,
                Some((bm, _)) => m < *bm,
            };
            if better {
                best = Some((m, c));
            }
        }
    }
    if let Some((m, c)) = best {
        report.set_worst_margin_rational(&m, c);
    }
    report
}

/// Scan of the pre-oscillation geometric ratio bound
/// `K_j(x) / K_j(0) <= (1 - 2j/n)^x`, valid for `j <= n/2` at weights below
/// the first sign change: `n - 2x >= 0` and `(n-2x)^2 >= 4 j (n-j)`.
///
/// Comparisons are cross-multiplied to integers:
/// `K_j(x) n^x <= (n-2j)^x K_j(0)`; the recorded margin is the difference
/// normalized by `n^x K_j(0)`.
pub fn check_geometric_ratio_bound(n: u32) -> Result<VerificationReport> {
    let table = KrawtchoukTable::build(n)?;
    Ok(check_geometric_ratio_bound_with(&table))
}

/// Same scan against a prebuilt table.
pub fn check_geometric_ratio_bound_with(table: &KrawtchoukTable) -> VerificationReport {
    let n = table.n();
    let report = VerificationReport::new("geometric_ratio", Some(n));
    let rows: Vec<RowOut> = (0..=n / 2)
        .into_par_iter()
        .map(|j| {
            let mut out = RowOut::new();
            let nbig = BigInt::from(n);
            let sbig = BigInt::from(n - 2 * j);
            let k0 = table.value(j, 0);
            let mut npow = BigInt::one();
            let mut spow = BigInt::one();
            for x in 0..=n {
                let t = n as i64 - 2 * x as i64;
                if t >= 0 && t * t >= 4 * j as i64 * (n - j) as i64 {
                    let lhs = table.value(j, x) * &npow;
                    let rhs = &spow * k0;
                    let scale = &npow * k0;
                    out.record(&[j as i64, x as i64], lhs, rhs, scale);
                }
                npow *= &nbig;
                spow *= &sbig;
            }
            out
        })
        .collect();
    merge_rows(report, rows)
}

/// Scan of the fixed-base ratio bound `|K_j(x) / K_j(0)| <= theta1^x` for
/// radii near `n/2`: rows with `0 <= n - 2j <= n theta1`, weights
/// `x <= 1 + theta1 (n theta1 - (n-2j)) / (1 + theta1^2)` (capped at `n`).
pub fn check_theta_ratio_bound(n: u32, theta1: &ExactDecimal) -> Result<VerificationReport> {
    let table = KrawtchoukTable::build(n)?;
    check_theta_ratio_bound_with(&table, theta1)
}

/// Largest admissible weight of the fixed-base ratio scan for row `j`.
fn theta_scan_xmax(n: u32, j: u32, a: &BigInt, b: &BigInt) -> u32 {
    let s = BigInt::from(n as i64 - 2 * j as i64);
    let a2b2 = a * a + b * b;
    let num = &a2b2 + a * (BigInt::from(n) * a - s * b);
    let xmax = num / a2b2; // floor: numerator and denominator are positive
    xmax.to_u32().map_or(n, |v| v.min(n))
}

/// Same scan against a prebuilt table.
pub fn check_theta_ratio_bound_with(
    table: &KrawtchoukTable,
    theta1: &ExactDecimal,
) -> Result<VerificationReport> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if !(theta1.ratio() > &BigRational::zero() && theta1.ratio() < &half) {
        return Err(Error::ParamOutOfRange {
            name: "theta1",
            value: theta1.to_f64(),
            range: "(0, 1/2)",
        });
    }
    let n = table.n();
    let a = theta1.ratio().numer().clone();
    let b = theta1.ratio().denom().clone();
    let mut report = VerificationReport::new("theta_ratio", Some(n));
    report.set_param("theta1", theta1.literal());
    let js: Vec<u32> = (0..=n)
        .filter(|&j| {
            let s = n as i64 - 2 * j as i64;
            s >= 0 && BigInt::from(s) * &b <= BigInt::from(n) * &a
        })
        .collect();
    let rows: Vec<RowOut> = js
        .into_par_iter()
        .map(|j| {
            let mut out = RowOut::new();
            let k0 = table.value(j, 0);
            let xmax = theta_scan_xmax(n, j, &a, &b);
            let mut apow = BigInt::one();
            let mut bpow = BigInt::one();
            for x in 0..=xmax {
                let lhs = table.value(j, x).abs() * &bpow;
                let rhs = &apow * k0;
                let scale = &bpow * k0;
                out.record(&[j as i64, x as i64], lhs, rhs, scale);
                apow *= &a;
                bpow *= &b;
            }
            out
        })
        .collect();
    Ok(merge_rows(report, rows))
}

/// Scan of the uniform-constant geometric bound
/// `|K_j(x) / K_j(0)| <= c1 (1 - 2j/n)^x` over low radii `j <= delta0 n`
/// and the full low half of weights `x <= n/2`.
pub fn check_uniform_ratio_bound(
    n: u32,
    c1: &ExactDecimal,
    delta0: &ExactDecimal,
) -> Result<VerificationReport> {
    let table = KrawtchoukTable::build(n)?;
    check_uniform_ratio_bound_with(&table, c1, delta0)
}

/// Same scan against a prebuilt table.
pub fn check_uniform_ratio_bound_with(
    table: &KrawtchoukTable,
    c1: &ExactDecimal,
    delta0: &ExactDecimal,
) -> Result<VerificationReport> {
    if c1.ratio() <= &BigRational::zero() {
        return Err(Error::ParamOutOfRange {
            name: "c1",
            value: c1.to_f64(),
            range: "(0, inf)",
        });
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if !(delta0.ratio() > &BigRational::zero() && delta0.ratio() < &half) {
        return Err(Error::ParamOutOfRange {
            name: "delta0",
            value: delta0.to_f64(),
            range: "(0, 1/2)",
        });
    }
    let n = table.n();
    let c_num = c1.ratio().numer().clone();
    let c_den = c1.ratio().denom().clone();
    let d_num = delta0.ratio().numer().clone();
    let d_den = delta0.ratio().denom().clone();
    let mut report = VerificationReport::new("uniform_ratio", Some(n));
    report.set_param("c1", c1.literal());
    report.set_param("delta0", delta0.literal());
    let js: Vec<u32> = (0..=n)
        .filter(|&j| BigInt::from(j) * &d_den <= &d_num * BigInt::from(n))
        .collect();
    let rows: Vec<RowOut> = js
        .into_par_iter()
        .map(|j| {
            let mut out = RowOut::new();
            let k0 = table.value(j, 0);
            let nbig = BigInt::from(n);
            let sbig = BigInt::from(n - 2 * j); // positive: j < n/2
            let mut npow = BigInt::one();
            let mut spow = BigInt::one();
            for x in 0..=n / 2 {
                let lhs = table.value(j, x).abs() * &npow * &c_den;
                let rhs = &c_num * &spow * k0;
                let scale = &c_den * &npow * k0;
                out.record(&[j as i64, x as i64], lhs, rhs, scale);
                npow *= &nbig;
                spow *= &sbig;
            }
            out
        })
        .collect();
    Ok(merge_rows(report, rows))
}

/// Uniform-constant scan at the canonical parameters `c1 = 1`,
/// `delta0 = 0.174`.
pub fn check_uniform_ratio_bound_default(n: u32) -> Result<VerificationReport> {
    let c1: ExactDecimal = "1".parse()?;
    let delta0: ExactDecimal = "0.174".parse()?;
    check_uniform_ratio_bound(n, &c1, &delta0)
}

// ---------------------------------------------------------------------------
// L_p norms of the polynomial rows.
// ---------------------------------------------------------------------------

/// Natural log of a positive big integer, stable for any magnitude.
pub(crate) fn ln_big(x: &BigInt) -> f64 {
    debug_assert!(x.is_positive());
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Averaged norm `||K_j||_p = (2^-n sum_a C(n,a) |K_j(a)|^p)^(1/p)` computed
/// from exact integer magnitudes; `p = inf` gives `max_a |K_j(a)|`.
///
/// Integer `p` accumulates the sum exactly in big integers; fractional `p`
/// accumulates `exp(ln C + p ln|K| - T)` terms in ascending order.
pub fn krawtchouk_lp_exact(n: u32, j: u32, p: f64) -> Result<f64> {
    let row = krawtchouk_row(n, j)?;
    let binom = binomial_row(n);
    if p.is_infinite() && p > 0.0 {
        let m = row.iter().map(|v| v.abs()).max().unwrap();
        return Ok(m.to_f64().unwrap_or(f64::INFINITY));
    }
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::ParamOutOfRange {
            name: "p",
            value: p,
            range: "[1, inf]",
        });
    }
    let n_ln2 = n as f64 * std::f64::consts::LN_2;
    if p.fract() == 0.0 && p <= 4096.0 {
        let e = p as u32;
        let mut sum = BigInt::zero();
        for (a, v) in row.iter().enumerate() {
            sum += &binom[a] * v.abs().pow(e);
        }
        // sum >= C(n,j)^p >= 1, so it is positive.
        if sum.bits() <= 1000 {
            let ratio = sum.to_f64().unwrap() / 2f64.powi(n as i32);
            return Ok(ratio.powf(1.0 / p));
        }
        return Ok(((ln_big(&sum) - n_ln2) / p).exp());
    }
    let mut terms: Vec<f64> = Vec::with_capacity(row.len());
    for (a, v) in row.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        terms.push(ln_big(&binom[a]) + p * ln_big(&v.abs()));
    }
    terms.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let top = *terms.last().unwrap();
    let mut acc = 0.0f64;
    for t in &terms {
        acc += (t - top).exp();
    }
    Ok(((top + acc.ln() - n_ln2) / p).exp())
}

/// Large-`n` growth exponent of the averaged norm `||K_{delta n}||_p`:
/// `h(delta)/2` for `p <= 2`, otherwise the stationary-point value of the
/// parametric system in `omega` on `(0,1)`.
///
/// The finite-`n` quantity `(1/n) ln ||K_{delta n}||_p` approaches this from
/// below with an `O(log n / n)` gap.
pub fn krawtchouk_lp_exponent(delta: f64, p: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::ParamOutOfRange {
            name: "delta",
            value: delta,
            range: "(0, 1/2)",
        });
    }
    if !(p >= 1.0) {
        return Err(Error::ParamOutOfRange {
            name: "p",
            value: p,
            range: "[1, inf]",
        });
    }
    let h = crate::exponents::h_raw;
    if p <= 2.0 {
        return Ok(h(delta) / 2.0);
    }
    if p.is_infinite() {
        return Ok(h(delta));
    }
    // c(w) = ((1+w)^p - (1-w)^p) / ((1+w)^p + (1-w)^p), computed through the
    // bounded ratio r = ((1-w)/(1+w))^p to stay finite for large p.
    let c_of = |w: f64| {
        let r = ((1.0 - w) / (1.0 + w)).powf(p);
        (1.0 - r) / (1.0 + r)
    };
    // delta(w) = (c w - w^2) / (1 - w^2), increasing from 0 to 1/2 on (0,1).
    let delta_of = |w: f64| {
        let c = c_of(w);
        (c * w - w * w) / (1.0 - w * w)
    };
    let mut lo = 0.0f64;
    let mut hi = 1.0 - 1e-12;
    if !(delta_of(hi) > delta) {
        return Err(Error::NoBracket {
            what: "stationary omega for the norm exponent",
        });
    }
    for _ in 0..200 {
        if hi - lo <= 1e-15 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if delta_of(mid) < delta {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let w = 0.5 * (lo + hi);
    let c = c_of(w);
    let xi = 0.5 * (1.0 - c);
    Ok(
        (h(xi) - std::f64::consts::LN_2) / p + xi * (1.0 - w).ln() + (1.0 - xi) * (1.0 + w).ln()
            - delta * w.ln(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponents::h_raw;

    #[test]
    fn small_tables_match_hand_values() {
        let t4 = KrawtchoukTable::build(4).unwrap();
        let row1: Vec<i64> = t4.row(1).iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(row1, vec![4, 2, 0, -2, -4]);
        let t6 = KrawtchoukTable::build(6).unwrap();
        assert_eq!(t6.value(3, 0), &BigInt::from(20));
        let t2 = KrawtchoukTable::build(2).unwrap();
        let row2: Vec<i64> = t2.row(2).iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(row2, vec![1, -1, 1]);
    }

    #[test]
    fn build_rejects_out_of_range_dimensions() {
        assert!(matches!(
            KrawtchoukTable::build(0),
            Err(Error::ParamOutOfRange { name: "n", .. })
        ));
        assert!(matches!(
            KrawtchoukTable::build(65),
            Err(Error::DimensionTooLarge { n: 65, max: 64 })
        ));
    }

    #[test]
    fn sum_formula_matches_weight_recurrence() {
        for n in 1u32..=20 {
            let table = KrawtchoukTable::build(n).unwrap();
            for j in 0..=n {
                // Seed K_j(0), K_j(1) and extend with
                // K_j(x+1) = ((n-2j) K_j(x) - x K_j(x-1)) / (n-x).
                let mut rec = vec![table.binom(j).clone()];
                rec.push(if j == 0 {
                    BigInt::one()
                } else {
                    crate::exact::binomial(n - 1, j) - crate::exact::binomial(n - 1, j - 1)
                });
                for x in 1..n as usize {
                    let num = BigInt::from(n as i64 - 2 * j as i64) * &rec[x]
                        - BigInt::from(x as i64) * &rec[x - 1];
                    let den = BigInt::from((n as usize - x) as i64);
                    let (q, r) = num_integer::Integer::div_rem(&num, &den);
                    assert!(r.is_zero(), "recurrence division not exact");
                    rec.push(q);
                }
                assert_eq!(&rec[..], table.row(j), "n={n}, j={j}");
            }
        }
    }

    #[test]
    fn full_range_builds_cleanly() {
        // Identity verification happens inside build; n=64 covers the top.
        KrawtchoukTable::build(64).unwrap();
        KrawtchoukTable::build(14).unwrap(); // includes transform cross-check
    }

    #[test]
    fn first_root_fraction() {
        assert_eq!(xi_crit(0.5).unwrap(), 0.0);
        assert_eq!(xi_crit(0.0).unwrap(), 0.5);
        assert!((xi_crit(0.1).unwrap() - 0.2).abs() < 1e-15);
        assert!(xi_crit(0.6).is_err());
        assert!(xi_crit(-0.1).is_err());
    }

    #[test]
    fn geometric_ratio_scan_small() {
        let r = check_geometric_ratio_bound(4).unwrap();
        assert!(r.passed());
        // j=0 admits x in {0,1,2}; j=1 and j=2 only x=0.
        assert_eq!(r.cells_checked, 5);
        assert_eq!(r.worst_margin_num, "0");
        assert_eq!(r.worst_cell, Some(vec![0, 0]));
    }

    #[test]
    fn geometric_ratio_scan_passes_through_40() {
        for n in 1u32..=40 {
            let r = check_geometric_ratio_bound(n).unwrap();
            assert!(r.passed(), "violation at n={n}: {:?}", r.violations);
            assert!(r.worst_margin_f64() >= 0.0);
        }
    }

    #[test]
    fn theta_scan_weight_cap_matches_hand_computation() {
        // n=20, theta1=3/10, j=9: 1 + (3/10)/(1+9/100)*(6-2) = 1 + 120/109,
        // so weights {0,1,2}.
        assert_eq!(
            theta_scan_xmax(20, 9, &BigInt::from(3), &BigInt::from(10)),
            2
        );
    }

    #[test]
    fn theta_ratio_scan_examples() {
        let theta: ExactDecimal = "0.3".parse().unwrap();
        let r = check_theta_ratio_bound(20, &theta).unwrap();
        assert!(r.passed());
        let theta: ExactDecimal = "0.45".parse().unwrap();
        let r = check_theta_ratio_bound(64, &theta).unwrap();
        assert!(r.passed());
        // Domain guards.
        let bad: ExactDecimal = "0.5".parse().unwrap();
        assert!(check_theta_ratio_bound(8, &bad).is_err());
        let bad: ExactDecimal = "0".parse().unwrap();
        assert!(check_theta_ratio_bound(8, &bad).is_err());
    }

    #[test]
    fn uniform_ratio_scan_has_one_known_failure() {
        // The single failing cell in 1..=64 at the canonical parameters.
        let r = check_uniform_ratio_bound_default(12).unwrap();
        assert!(!r.passed());
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].cell, vec![2, 6]);
        assert!(r.violations[0].detail.contains("729/704"));
        assert_eq!(r.worst_margin_num, "-25");
        assert_eq!(r.worst_margin_den, "8019");
        // Neighbouring dimensions are clean.
        assert!(check_uniform_ratio_bound_default(11).unwrap().passed());
        assert!(check_uniform_ratio_bound_default(13).unwrap().passed());
        assert!(check_uniform_ratio_bound_default(64).unwrap().passed());
    }

    #[test]
    fn lp_norms_match_exact_values() {
        // ||K_3||_2 at n=8 equals sqrt(C(8,3)) = sqrt(56).
        let v = krawtchouk_lp_exact(8, 3, 2.0).unwrap();
        assert!((v - 56f64.sqrt()).abs() < 1e-12);
        // Independent direct-summation values.
        let v = krawtchouk_lp_exact(10, 2, 4.0).unwrap();
        assert!((v - 12.053032819736243).abs() < 1e-9);
        let v = krawtchouk_lp_exact(10, 2, 1.0).unwrap();
        assert!((v - 4.921875).abs() < 1e-12);
        let v = krawtchouk_lp_exact(10, 2, 3.5).unwrap();
        assert!((v - 10.684266549545232).abs() < 1e-9);
        // K_0 == 1 has unit norm for every p.
        for p in [1.0, 2.0, 2.5, 7.0, f64::INFINITY] {
            assert!((krawtchouk_lp_exact(9, 0, p).unwrap() - 1.0).abs() < 1e-12);
        }
        // Sup norm is the value at weight zero.
        let v = krawtchouk_lp_exact(10, 2, f64::INFINITY).unwrap();
        assert_eq!(v, 45.0);
        assert!(krawtchouk_lp_exact(10, 2, 0.5).is_err());
    }

    #[test]
    fn lp_exponent_values_and_limits() {
        // p <= 2 branch.
        let v = krawtchouk_lp_exponent(0.3, 2.0).unwrap();
        assert!((v - h_raw(0.3) / 2.0).abs() < 1e-15);
        assert!((v - 0.30543215102744675).abs() < 1e-12);
        // Stationary-point branch, frozen against an independent solver.
        let v = krawtchouk_lp_exponent(0.25, 4.0).unwrap();
        assert!((v - 0.40051397886468165).abs() < 1e-9);
        let v = krawtchouk_lp_exponent(0.3, 3.0).unwrap();
        assert!((v - 0.3941714478714126).abs() < 1e-9);
        let v = krawtchouk_lp_exponent(0.1, 4.0).unwrap();
        assert!((v - 0.21503080270666697).abs() < 1e-9);
        // Continuity at p = 2 and monotone growth in p.
        let near = krawtchouk_lp_exponent(0.25, 2.0 + 1e-9).unwrap();
        assert!((near - h_raw(0.25) / 2.0).abs() < 1e-4);
        let a = krawtchouk_lp_exponent(0.25, 3.0).unwrap();
        let b = krawtchouk_lp_exponent(0.25, 4.0).unwrap();
        let c = krawtchouk_lp_exponent(0.25, 8.0).unwrap();
        assert!(a < b && b < c);
        // Large p approaches the entropy of delta.
        let v = krawtchouk_lp_exponent(0.25, 1000.0).unwrap();
        assert!((v - h_raw(0.25)).abs() < 1e-3);
        assert_eq!(
            krawtchouk_lp_exponent(0.25, f64::INFINITY).unwrap(),
            h_raw(0.25)
        );
        // Domain guards.
        assert!(krawtchouk_lp_exponent(0.0, 3.0).is_err());
        assert!(krawtchouk_lp_exponent(0.5, 3.0).is_err());
        assert!(krawtchouk_lp_exponent(0.25, 0.5).is_err());
    }

    #[test]
    fn finite_dimension_norm_approaches_exponent() {
        // (1/n) ln ||K_{n/4}||_4 at n=64 sits within 0.05 of the limit.
        let exact = krawtchouk_lp_exact(64, 16, 4.0).unwrap();
        let finite = exact.ln() / 64.0;
        let limit = krawtchouk_lp_exponent(0.25, 4.0).unwrap();
        assert!((limit - finite).abs() < 0.05, "gap {}", limit - finite);
        assert!(limit > finite, "finite-n value should approach from below");
    }
}
