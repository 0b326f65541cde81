//! Dense real-valued functions on the binary hypercube `{0,1}^n` and their
//! Walsh–Hadamard analysis.
//!
//! Conventions used throughout the crate:
//! - the transform is unnormalized: `F(w) = sum_x (-1)^<w,x> f(x)`, so
//!   applying it twice multiplies by `2^n`;
//! - norms and inner products are averaged over the cube:
//!   `||f||_p = (2^-n sum |f|^p)^(1/p)` and `<f,g> = 2^-n sum f g`;
//! - convolution is the plain (unaveraged) sum `f*g(x) = sum_y f(x^y) g(y)`.

use crate::error::{Error, Result};
use crate::max_cube_dimension;

/// A function `{0,1}^n -> R`, stored densely with point `x` at index `x`
/// (bit `i` of the index is coordinate `i`).
#[derive(Debug, Clone, PartialEq)]
pub struct CubeFunction {
    n: u32,
    values: Vec<f64>,
}

fn check_dimension(n: u32) -> Result<()> {
    let max = max_cube_dimension();
    if n > max {
        return Err(Error::DimensionTooLarge { n, max });
    }
    Ok(())
}

impl CubeFunction {
    /// Wrap an explicit table of `2^n` values.
    pub fn new(n: u32, values: Vec<f64>) -> Result<Self> {
        check_dimension(n)?;
        let want = 1usize << n;
        if values.len() != want {
            return Err(Error::Internal(format!(
                "value table has {} entries, dimension {} needs {}",
                values.len(),
                n,
                want
            )));
        }
        Ok(CubeFunction { n, values })
    }

    /// The constant function `c`.
    pub fn constant(n: u32, c: f64) -> Result<Self> {
        check_dimension(n)?;
        Ok(CubeFunction {
            n,
            values: vec![c; 1usize << n],
        })
    }

    /// Indicator of the single point `x` (value 1 there, 0 elsewhere).
    pub fn delta(n: u32, x: u64) -> Result<Self> {
        check_dimension(n)?;
        if x >= (1u64 << n) {
            return Err(Error::ParamOutOfRange {
                name: "x",
                value: x as f64,
                range: "a point of {0,1}^n, i.e. below 2^n",
            });
        }
        let mut values = vec![0.0; 1usize << n];
        values[x as usize] = 1.0;
        Ok(CubeFunction { n, values })
    }

    /// Tabulate `f` over all points.
    pub fn from_fn(n: u32, f: impl FnMut(u64) -> f64) -> Result<Self> {
        check_dimension(n)?;
        let values = (0..(1u64 << n)).map(f).collect();
        Ok(CubeFunction { n, values })
    }

    /// Indicator of the Hamming sphere `{ x : |x| = r }`.
    pub fn sphere_indicator(n: u32, r: u32) -> Result<Self> {
        Self::from_fn(n, |x| if x.count_ones() == r { 1.0 } else { 0.0 })
    }

    /// Indicator of the Hamming ball `{ x : |x| <= r }`.
    pub fn ball_indicator(n: u32, r: u32) -> Result<Self> {
        Self::from_fn(n, |x| if x.count_ones() <= r { 1.0 } else { 0.0 })
    }

    /// Indicator of the subcube fixing the lowest `codim` coordinates to 0.
    pub fn subcube_indicator(n: u32, codim: u32) -> Result<Self> {
        if codim > n {
            return Err(Error::ParamOutOfRange {
                name: "codim",
                value: codim as f64,
                range: "0..=n",
            });
        }
        let mask: u64 = if codim == 0 { 0 } else { (1u64 << codim) - 1 };
        Self::from_fn(n, move |x| if x & mask == 0 { 1.0 } else { 0.0 })
    }

    /// Indicator of the even-weight half of the cube.
    pub fn even_indicator(n: u32) -> Result<Self> {
        Self::from_fn(n, |x| if x.count_ones() % 2 == 0 { 1.0 } else { 0.0 })
    }

    /// The product function `prod_i (1 + eps * (-1)^{x_i})`, i.e.
    /// `(1+eps)^(n-|x|) (1-eps)^|x|`. Its transform is `2^n eps^|w|`.
    pub fn eps_product(n: u32, eps: f64) -> Result<Self> {
        check_dimension(n)?;
        // Precompute powers to keep the tabulation O(2^n).
        let mut plus = vec![1.0f64; n as usize + 1];
        let mut minus = vec![1.0f64; n as usize + 1];
        for i in 1..=n as usize {
            plus[i] = plus[i - 1] * (1.0 + eps);
            minus[i] = minus[i - 1] * (1.0 - eps);
        }
        Self::from_fn(n, move |x| {
            let w = x.count_ones() as usize;
            plus[n as usize - w] * minus[w]
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// In-place unnormalized Walsh–Hadamard transform (butterfly, O(n 2^n)).
    pub fn wht_in_place(&mut self) {
        wht_slice(&mut self.values);
    }

    /// Unnormalized Walsh–Hadamard transform of `self`.
    pub fn wht(&self) -> CubeFunction {
        let mut out = self.clone();
        out.wht_in_place();
        out
    }

    /// Averaged p-norm `(2^-n sum |f|^p)^(1/p)`; `p = inf` gives `max |f|`.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if p.is_infinite() && p > 0.0 {
            return Ok(self.values.iter().fold(0.0f64, |m, v| m.max(v.abs())));
        }
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::ParamOutOfRange {
                name: "p",
                value: p,
                range: "[1, inf]",
            });
        }
        let scale = 1.0 / self.values.len() as f64;
        if p == 1.0 {
            return Ok(self.values.iter().map(|v| v.abs()).sum::<f64>() * scale);
        }
        if p == 2.0 {
            return Ok((self.values.iter().map(|v| v * v).sum::<f64>() * scale).sqrt());
        }
        let s: f64 = self.values.iter().map(|v| v.abs().powf(p)).sum();
        Ok((s * scale).powf(1.0 / p))
    }

    /// Averaged inner product `2^-n sum f g`.
    pub fn inner_product(&self, other: &CubeFunction) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let s: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum();
        Ok(s / self.values.len() as f64)
    }

    /// Unaveraged convolution `f*g(x) = sum_y f(x^y) g(y)`, computed through
    /// the transform: pointwise product in the spectral domain, then inverse.
    pub fn convolve(&self, other: &CubeFunction) -> Result<CubeFunction> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut fa = self.values.clone();
        let mut fb = other.values.clone();
        wht_slice(&mut fa);
        wht_slice(&mut fb);
        let scale = 1.0 / fa.len() as f64;
        for (a, b) in fa.iter_mut().zip(&fb) {
            *a *= b * scale;
        }
        wht_slice(&mut fa);
        Ok(CubeFunction {
            n: self.n,
            values: fa,
        })
    }

    /// Split into spectral even and odd parts: the components supported on
    /// even-weight and odd-weight frequencies. Computed pointwise from the
    /// antipodal map, without a transform.
    pub fn even_odd_split(&self) -> (CubeFunction, CubeFunction) {
        let full = self.values.len();
        let flip = (full - 1) as u64; // all-ones point
        let mut even = Vec::with_capacity(full);
        let mut odd = Vec::with_capacity(full);
        for x in 0..full {
            let v = self.values[x];
            let w = self.values[(x as u64 ^ flip) as usize];
            even.push(0.5 * (v + w));
            odd.push(0.5 * (v - w));
        }
        (
            CubeFunction {
                n: self.n,
                values: even,
            },
            CubeFunction {
                n: self.n,
                values: odd,
            },
        )
    }

    /// Energy per frequency level: entry `a` is `2^-2n sum_{|w|=a} F(w)^2`,
    /// so the entries sum to `||f||_2^2`.
    pub fn level_energies(&self) -> Vec<f64> {
        let spec = self.wht();
        let scale = 1.0 / (spec.values.len() as f64 * spec.values.len() as f64);
        let mut out = vec![0.0f64; self.n as usize + 1];
        for (w, v) in spec.values.iter().enumerate() {
            out[(w as u64).count_ones() as usize] += v * v * scale;
        }
        out
    }
}

/// Unnormalized Walsh–Hadamard butterfly over a power-of-two slice.
pub fn wht_slice(values: &mut [f64]) {
    let len = values.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for block in (0..len).step_by(h * 2) {
            for i in block..block + h {
                let a = values[i];
                let b = values[i + h];
                values[i] = a + b;
                values[i + h] = a - b;
            }
        }
        h *= 2;
    }
}
