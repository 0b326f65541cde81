//! Deconvolution ratios for nonnegative functions and the two resulting
//! upper bounds on the density ratio `|f|_2^2 / |f|_1^2`: the
//! hypercontractive cardinality bound and the spectral-gap comparison.
//!
//! The empirical harness [`check_corollary`] sweeps structured and random
//! set indicators, records the achieved spherical-average correlation, and
//! pairs it with both bounds so callers can confirm that the bounds hold
//! row by row.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cube::CubeFunction;
use crate::error::{Error, Result};
use crate::exact::binomial;
use crate::operators::{MultiplierProfile, FINITE_N_CONSTANT};

use num_traits::ToPrimitive;

/// One row of the empirical sweep: a set, a sphere radius, the achieved
/// correlation, and the bounds evaluated at it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeconvReport {
    /// Label of the generated set (family plus parameter).
    pub family: String,
    /// Dimension.
    pub n: u32,
    /// Sphere radius used for the deconvolution.
    pub j: u32,
    /// Achieved correlation `<f, T f> / |f|_2^2` with the radius-`j`
    /// spherical average.
    pub lambda_achieved: f64,
    /// Density ratio `|f|_2^2 / |f|_1^2` (equals `2^n / |A|` for a set
    /// indicator).
    pub ratio: f64,
    /// Hypercontractive bound at the achieved correlation; absent when the
    /// correlation is not positive (premise vacuous) or overflows.
    pub bound: Option<f64>,
    /// Spectral-gap bound fed with the noise-operator correlation at the
    /// matched flip rate `j / n`; absent when vacuous or out of domain.
    pub sg_bound: Option<f64>,
}

/// Correlation of `phi` with its own radius-`j` spherical average:
/// `<phi, T phi> / |phi|_2^2`.
///
/// For `n <= 12` the value is recomputed through an explicit convolution
/// against the sphere indicator and the two paths must agree to `1e-9`
/// relative (an internal error otherwise).
pub fn deconvolution_ratio(phi: &CubeFunction, j: u32) -> Result<f64> {
    let n = phi.n();
    if j > n {
        return Err(Error::ParamOutOfRange {
            name: "j",
            value: j as f64,
            range: "0..=n",
        });
    }
    if let Some(bad) = phi.values().iter().find(|v| **v < 0.0) {
        return Err(Error::ParamOutOfRange {
            name: "phi",
            value: *bad,
            range: "pointwise nonnegative",
        });
    }
    let l2sq = phi.inner_product(phi)?;
    if l2sq == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let profile = MultiplierProfile::spherical_radius(n, j)?;
    let value = phi.inner_product(&profile.apply(phi)?)? / l2sq;

    if n <= 12 {
        // Independent path: correlate the self-convolution with the
        // normalized sphere indicator.
        let conv = phi.convolve(phi)?;
        let sphere = CubeFunction::sphere_indicator(n, j)?;
        let size = binomial(n, j)
            .to_f64()
            .expect("binomial fits in f64 for supported dimensions");
        let direct = conv.inner_product(&sphere)? / (size * l2sq);
        if (direct - value).abs() > 1e-9 * (1.0 + value.abs()) {
            return Err(Error::Internal(format!(
                "deconvolution paths disagree: multiplier {value}, direct {direct}"
            )));
        }
    }
    Ok(value)
}

/// The hypercontractive cardinality bound `(c / lambda)^(2p / (2 - p))`
/// with `p = 1 + (1 - 2 eps)^2`, valid for any nonnegative function whose
/// radius-`j` correlation reaches `lambda` with `eps n <= j <= (1 - eps) n`.
pub fn corollary_bound(lambda: f64, eps: f64, c: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::ParamOutOfRange {
            name: "lambda",
            value: lambda,
            range: "(0, 1]",
        });
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::ParamOutOfRange {
            name: "eps",
            value: eps,
            range: "(0, 1)",
        });
    }
    if !(c > 0.0) {
        return Err(Error::ParamOutOfRange {
            name: "c",
            value: c,
            range: "(0, inf)",
        });
    }
    let p = 1.0 + (1.0 - 2.0 * eps) * (1.0 - 2.0 * eps);
    let exponent = 2.0 * p / (2.0 - p);
    Ok((c / lambda).powf(exponent))
}

/// Spectral-gap bound `2 delta / (lambda - (1 - 2 delta))` on the density
/// ratio, for a nonnegative function whose noise correlation at flip rate
/// `delta` reaches `lambda`. Returns `None` when `lambda <= 1 - 2 delta`
/// (the bound is vacuous there).
pub fn spectral_gap_bound(lambda: f64, delta: f64) -> Result<Option<f64>> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::ParamOutOfRange {
            name: "delta",
            value: delta,
            range: "(0, 1/2)",
        });
    }
    if !lambda.is_finite() {
        return Err(Error::ParamOutOfRange {
            name: "lambda",
            value: lambda,
            range: "finite",
        });
    }
    let gap = 1.0 - 2.0 * delta;
    if lambda > gap {
        Ok(Some(2.0 * delta / (lambda - gap)))
    } else {
        Ok(None)
    }
}

/// Families of subsets swept by [`check_corollary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetFamily {
    /// Subcubes of every codimension `0..=n`.
    Subcubes,
    /// Hamming balls of every radius `0..=n`.
    Balls,
    /// Hamming spheres of every radius `0..=n`.
    Spheres,
    /// One seeded random set for each density in {1/2, 1/4, 1/8, 1/16}.
    RandomDensity,
    /// The single point set (one representative; all are equivalent).
    Singletons,
}

impl SetFamily {
    /// All families, in sweep order.
    pub const ALL: [SetFamily; 5] = [
        SetFamily::Subcubes,
        SetFamily::Balls,
        SetFamily::Spheres,
        SetFamily::RandomDensity,
        SetFamily::Singletons,
    ];

    /// Stable label used in reports and command-line arguments.
    pub fn label(&self) -> &'static str {
        match self {
            SetFamily::Subcubes => "subcubes",
            SetFamily::Balls => "balls",
            SetFamily::Spheres => "spheres",
            SetFamily::RandomDensity => "random-density",
            SetFamily::Singletons => "singletons",
        }
    }

    /// Generate the family's labeled indicator functions at dimension `n`.
    /// `seed` feeds only the random-density family.
    pub fn generate(&self, n: u32, seed: u64) -> Result<Vec<(String, CubeFunction)>> {
        match self {
            SetFamily::Subcubes => (0..=n)
                .map(|c| {
                    Ok((
                        format!("subcube_codim{c}"),
                        CubeFunction::subcube_indicator(n, c)?,
                    ))
                })
                .collect(),
            SetFamily::Balls => (0..=n)
                .map(|r| Ok((format!("ball_{r}"), CubeFunction::ball_indicator(n, r)?)))
                .collect(),
            SetFamily::Spheres => (0..=n)
                .map(|r| Ok((format!("sphere_{r}"), CubeFunction::sphere_indicator(n, r)?)))
                .collect(),
            SetFamily::RandomDensity => {
                let mut out = Vec::new();
                for (i, den) in [2u32, 4, 8, 16].into_iter().enumerate() {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
                    let threshold = 1.0 / den as f64;
                    let mut vals = vec![0.0f64; 1usize << n];
                    for v in vals.iter_mut() {
                        if rng.gen::<f64>() < threshold {
                            *v = 1.0;
                        }
                    }
                    out.push((format!("random_1_{den}"), CubeFunction::new(n, vals)?));
                }
                Ok(out)
            }
            SetFamily::Singletons => {
                Ok(vec![("singleton".to_string(), CubeFunction::delta(n, 0)?)])
            }
        }
    }
}

/// Sweep one family at dimension `n`: for every generated nonempty set `A`
/// and every radius `j` in `[ceil(eps n), floor((1 - eps) n)]`, record the
/// achieved spherical correlation, the density ratio `2^n / |A|`, the
/// hypercontractive bound at the configured constant
/// [`FINITE_N_CONSTANT`], and the spectral-gap bound fed with the noise
/// correlation at flip rate `j / n`.
pub fn check_corollary(
    n: u32,
    family: SetFamily,
    eps: f64,
    seed: u64,
) -> Result<Vec<DeconvReport>> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::ParamOutOfRange {
            name: "eps",
            value: eps,
            range: "(0, 1)",
        });
    }
    let lo = (eps * n as f64).ceil() as u32;
    let hi = ((1.0 - eps) * n as f64).floor() as u32;
    let sets = family.generate(n, seed)?;
    let radii: Vec<u32> = (lo..=hi.min(n)).collect();
    let profiles: Vec<MultiplierProfile> = radii
        .iter()
        .map(|&j| MultiplierProfile::spherical_radius(n, j))
        .collect::<Result<Vec<_>>>()?;

    let rows: Vec<Vec<DeconvReport>> = sets
        .par_iter()
        .map(|(label, phi)| -> Result<Vec<DeconvReport>> {
            let l1 = phi.lp_norm(1.0)?;
            if l1 == 0.0 {
                return Ok(Vec::new()); // empty set: nothing to report
            }
            let l2sq = phi.inner_product(phi)?;
            let ratio = l2sq / (l1 * l1);
            let energies = phi.level_energies();
            let total: f64 = energies.iter().sum();
            let mut out = Vec::with_capacity(radii.len());
            for (j, profile) in radii.iter().zip(&profiles) {
                let lambda = profile
                    .lambdas()
                    .iter()
                    .zip(&energies)
                    .map(|(l, e)| l * e)
                    .sum::<f64>()
                    / total;
                // Guard eigenvalue-scale rounding: the correlation cannot
                // exceed 1 in exact arithmetic.
                let clamped = lambda.min(1.0);
                let bound = if clamped > 0.0 {
                    Some(corollary_bound(clamped, eps, FINITE_N_CONSTANT)?)
                } else {
                    None
                };
                let delta = *j as f64 / n as f64;
                let sg_bound = if delta > 0.0 && delta < 0.5 {
                    let noise_lambda = energies
                        .iter()
                        .enumerate()
                        .map(|(a, e)| (1.0 - 2.0 * delta).powi(a as i32) * e)
                        .sum::<f64>()
                        / total;
                    spectral_gap_bound(noise_lambda, delta)?
                } else {
                    None
                };
                out.push(DeconvReport {
                    family: label.clone(),
                    n,
                    j: *j,
                    lambda_achieved: lambda,
                    ratio,
                    bound,
                    sg_bound,
                });
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(rows.into_iter().flatten().collect())
}
