//! Exact and floating-point spectral analysis of symmetric convolution
//! operators on the binary hypercube `{0,1}^n`.
//!
//! The crate provides four layers:
//!
//! * [`cube`] — dense functions on the cube with the fast parity transform,
//!   averaged norms, convolution, and level energies (`2^n` storage).
//! * [`krawtchouk`] — the exact integer table of level polynomials, exact
//!   rational inequality scans over it, and exact/evaluated norms of the
//!   level polynomials (dimension up to the table cap, no `2^n` storage).
//! * [`exponents`] — the asymptotic magnitude exponent of the level
//!   polynomials, its property suite, and the global strip scan for the
//!   norm-comparison objective.
//! * [`operators`] / [`addcomb`] — multiplier operators (spherical average,
//!   noise, projections), norm search and certificates, and the downstream
//!   density-ratio bounds.
//!
//! Inequality scans return a [`VerificationReport`] rather than erroring on
//! mathematical violations: a violation is data. Errors are reserved for
//! misuse and internal defects.
//!
//! # Dimension caps
//!
//! Routines that materialize `2^n` values are capped by
//! [`max_cube_dimension`] (default 24); routines that only need the
//! `(n+1) x (n+1)` integer table are capped by [`max_table_dimension`]
//! (default 64). Setting the environment variable `HH_MAX_N` overrides both
//! caps with one value; unparsable values are ignored.

// Validation guards use negated comparisons (`!(x > 0.0)`) on purpose: the
// negated form rejects NaN, which the "simpler" `x <= 0.0` would accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod addcomb;
pub mod cube;
pub mod error;
pub mod exact;
pub mod exponents;
pub mod krawtchouk;
pub mod operators;
pub mod report;

pub use addcomb::{DeconvReport, SetFamily};
pub use cube::CubeFunction;
pub use error::{Error, Result};
pub use exact::ExactDecimal;
pub use krawtchouk::KrawtchoukTable;
pub use operators::{MultiplierProfile, NormEstimate, ProfileKind, SearchConfig};
pub use report::{VerificationReport, Violation};

fn env_cap() -> Option<u32> {
    std::env::var("HH_MAX_N").ok()?.trim().parse().ok()
}

/// Largest dimension for which `2^n`-sized values may be materialized
/// (functions on the cube, transforms, searches). Default 24; overridden by
/// `HH_MAX_N`.
pub fn max_cube_dimension() -> u32 {
    env_cap().unwrap_or(24)
}

/// Largest dimension for which the `(n+1) x (n+1)` integer level table may
/// be built (exact scans, eigenvalue profiles, polynomial norms). Default
/// 64; overridden by `HH_MAX_N`.
pub fn max_table_dimension() -> u32 {
    env_cap().unwrap_or(64)
}
