use thiserror::Error;

/// Errors raised by the estimation library.
///
/// Variants split into two families: malformed inputs (bad shapes, labels,
/// probability vectors) and domain violations (parameters outside the range
/// where a bound or solver is defined). [`Error::is_domain`] tells them apart.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("negative probability {value} at index {index}")]
    NegativeProbability { index: usize, value: f64 },

    #[error("probability {value} at index {index} is not finite or exceeds 1")]
    ProbabilityOutOfRange { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, expected 1 within {tolerance:e}")]
    NotNormalized { sum: f64, tolerance: f64 },

    #[error("empty probability vector")]
    Empty,

    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: String, right: String },

    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(usize),

    #[error("sample {index}: label ({x}, {y}) outside alphabet {mx}x{my} (labels are 1-based)")]
    LabelOutOfRange {
        index: usize,
        x: usize,
        y: usize,
        mx: usize,
        my: usize,
    },

    #[error("count table has no samples (n = 0)")]
    NoSamples,

    #[error("{name} = {value} is outside its domain: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: String,
    },
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, reason: impl Into<String>) -> Self {
        Error::Domain {
            name,
            value,
            reason: reason.into(),
        }
    }

    /// True for parameter-range violations, false for malformed inputs.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
