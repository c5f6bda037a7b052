//! Error type shared by the symbolic and numeric layers.

use alloc::string::String;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in this crate.
///
/// The variants are grouped so that a front end can map them onto distinct
/// exit codes: input mistakes, degenerate multiplicities, domain violations
/// and unmet accuracy budgets.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Two polynomials or a polynomial and a point disagree on the rank.
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableMismatch { expected: usize, found: usize },
    /// Malformed input such as an unparsable polynomial or an axis out of range.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The joint Cherednik spectrum does not separate two compositions.
    #[error("degenerate multiplicity: {0}")]
    Degenerate(String),
    /// A gamma factor or a series denominator hits a pole.
    #[error("pole: {0}")]
    Pole(String),
    /// Arguments outside the region where the object is defined.
    #[error("domain violation: {0}")]
    Domain(String),
    /// A point lies too close to a reflecting hyperplane for finite differences.
    #[error("point within {distance:e} of a mirror (step {step:e})")]
    MirrorProximity { distance: f64, step: f64 },
    /// A series or quadrature could not reach the requested accuracy.
    #[error("accuracy budget unmet: {0}")]
    Accuracy(String),
    /// An internal consistency check failed; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}
