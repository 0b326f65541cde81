//! Exact integer and rational helpers used by the lemma scans.
//!
//! Every pass/fail decision in the scan routines is made with arbitrary-
//! precision integer cross-multiplication; floating point appears only in
//! reported convenience values, never in comparisons.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact binomial coefficient `C(n, k)` as a big integer.
///
/// Returns zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Full row `[C(m, 0), …, C(m, m)]` of Pascal's triangle.
pub fn binomial_row(m: u32) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(m as usize + 1);
    row.push(BigInt::one());
    for k in 1..=m {
        let next = &row[k as usize - 1] * BigInt::from(m - k + 1) / BigInt::from(k);
        row.push(next);
    }
    row
}

/// A nonnegative rational parsed exactly from a decimal literal.
///
/// `"0.174"` parses to `174/1000` (reduced to `87/500`), so a threshold
/// written with three decimals means precisely that rational — the scans
/// never see a rounded binary float. Integer literals (`"1"`, `"2"`) are
/// accepted as well.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactDecimal {
    ratio: BigRational,
    literal: String,
}

impl ExactDecimal {
    /// The reduced exact value.
    pub fn ratio(&self) -> &BigRational {
        &self.ratio
    }

    /// Reduced numerator.
    pub fn numer(&self) -> &BigInt {
        self.ratio.numer()
    }

    /// Reduced denominator (always positive).
    pub fn denom(&self) -> &BigInt {
        self.ratio.denom()
    }

    /// The literal this value was parsed from.
    pub fn literal(&self) -> &str {
        &self.literal
    }

    /// Nearest double, for display only.
    pub fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.ratio).unwrap_or(f64::NAN)
    }

    /// Construct from an integer.
    pub fn from_u32(v: u32) -> Self {
        ExactDecimal {
            ratio: BigRational::from_integer(BigInt::from(v)),
            literal: v.to_string(),
        }
    }
}

impl std::str::FromStr for ExactDecimal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadDecimal {
            literal: s.to_string(),
        };
        let t = s.trim();
        if t.is_empty() || t.starts_with('+') || t.starts_with('-') {
            return Err(bad());
        }
        let (int_part, frac_part) = match t.split_once('.') {
            Some((i, f)) => (i, f),
            None => (t, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        let digits_ok = |d: &str| d.chars().all(|c| c.is_ascii_digit());
        if !digits_ok(int_part) || !digits_ok(frac_part) {
            return Err(bad());
        }
        let joined = format!("{int_part}{frac_part}");
        let num: BigInt = joined.parse().map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        Ok(ExactDecimal {
            ratio: BigRational::new(num, den),
            literal: t.to_string(),
        })
    }
}

/// Signed margin of the inequality `lhs ≤ rhs`, normalized by `scale`:
/// `(rhs − lhs) / scale`. Negative means the inequality is violated.
pub fn rational_margin(lhs: &BigInt, rhs: &BigInt, scale: &BigInt) -> BigRational {
    debug_assert!(scale.is_positive());
    BigRational::new(rhs - lhs, scale.clone())
}
