use thiserror::Error;

/// Errors produced by the algebra, kernel and quadrature routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Inversion of an element whose norm is at or below the singular threshold.
    #[error("element with norm {norm:e} is not invertible (threshold {threshold:e})")]
    SingularElement { norm: f64, threshold: f64 },

    /// A kernel was evaluated on (or numerically at) its singular set.
    #[error("kernel is singular: {set} (denominator magnitude {magnitude:e})")]
    Singularity { set: &'static str, magnitude: f64 },

    /// A point that must be interior to the domain is not.
    #[error("point {point} is not interior to {domain}")]
    OutsideDomain { domain: String, point: String },

    /// The requested operation is not available on this domain.
    #[error("{operation} is not supported on {domain}")]
    UnsupportedDomain { operation: &'static str, domain: String },

    /// A value that must be a unit imaginary octonion is not.
    #[error("not a unit imaginary octonion: real part {real:e}, norm {norm}")]
    NotImaginaryUnit { real: f64, norm: f64 },

    /// Non-finite component supplied to the algebra.
    #[error("octonion component {index} is not finite")]
    NonFinite { index: usize },

    /// Failure to parse an octonion or series literal.
    #[error("invalid literal {literal:?}: {reason}")]
    InvalidLiteral { literal: String, reason: String },

    #[error("component index {0} out of range 0..8")]
    IndexOutOfRange(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
