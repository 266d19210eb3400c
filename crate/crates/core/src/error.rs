use thiserror::Error;

/// Errors produced by the model, correlation, and design routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A configuration or position field is outside its valid range.
    #[error("invalid {field}: {reason}")]
    InvalidInput { field: &'static str, reason: String },

    /// The two points share (up to the phase-curvature term) the same
    /// geometry, so the Fresnel correlation approximation is inapplicable.
    /// The exact correlation of coincident points is 1 by definition.
    #[error("coincident focus geometry: {0}")]
    CoincidentPoint(String),

    /// A correlation entered a denominator below the meaningful threshold.
    #[error("degenerate correlation: {0} below 1e-12")]
    DegenerateCorrelation(&'static str),

    /// The alpha polynomial has `f2 >= 0`, so the secrecy ratio is not
    /// concave in alpha; callers should fall back to a grid search.
    #[error("non-concave power-allocation regime (f2 = {f2:e})")]
    NonConcaveAlpha { f2: f64 },

    /// Every point of a 1-D search domain evaluated as degenerate.
    #[error("no valid radius: objective degenerate on the whole domain")]
    NoValidRadius,

    /// Scheme identifier not in the closed benchmark enumeration.
    #[error("unknown scheme: {0}")]
    UnknownScheme(String),
}

pub type Result<T> = std::result::Result<T, Error>;
