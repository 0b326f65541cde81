//! Error type shared by all modules of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by library operations.
///
/// Scan routines never report inequality violations through this type:
/// violations are data, collected in
/// [`VerificationReport`](crate::report::VerificationReport). Errors are
/// reserved for misuse (out-of-range parameters, dimension mismatches) and
/// for internal failures that indicate a bug.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Dimension exceeds the configured cap for the requested storage mode.
    #[error("dimension n={n} exceeds the configured maximum {max}")]
    DimensionTooLarge { n: u32, max: u32 },

    /// Two cube functions (or a profile and a function) differ in dimension.
    #[error("dimension mismatch: expected n={expected}, got n={got}")]
    DimensionMismatch { expected: u32, got: u32 },

    /// A scalar parameter lies outside its documented domain.
    #[error("parameter {name}={value} outside valid range {range}")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// A string could not be parsed as an exact decimal number.
    #[error("invalid exact decimal literal {literal:?}")]
    BadDecimal { literal: String },

    /// Evaluation requested at a singular point of a formula.
    #[error("singular evaluation point: {what}")]
    Singular { what: &'static str },

    /// A scalar root-finding routine could not bracket a root.
    #[error("root bracketing failed: {what}")]
    NoBracket { what: &'static str },

    /// The input function is identically zero where a nonzero one is required.
    #[error("function is identically zero")]
    ZeroFunction,

    /// An internal consistency check failed; this indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
