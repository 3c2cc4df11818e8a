//! Crate-wide error type.

/// Maximum |skewness| representable by a skew-normal distribution
/// (the delta -> 1 limit of the third standardized cumulant).
pub const MAX_ABS_SKEWNESS: f64 = 0.995_271_746_431_156_0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason} (got {value})")]
    InvalidParam {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("skewness {0} is not representable by a skew-normal (|skewness| must be < {MAX_ABS_SKEWNESS})")]
    UnrepresentableSkewness(f64),

    #[error("correlation factor too close to singular: |delta[{index}]| = {value}")]
    NearSingular { index: usize, value: f64 },

    #[error("truncation region is numerically empty: {0}")]
    InfeasibleTruncation(String),

    #[error("posterior construction failed: {0}")]
    Construction(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("need at least 3 observations, got {0}")]
    TooFewObservations(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
