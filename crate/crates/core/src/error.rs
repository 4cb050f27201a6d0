use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed token `{0}`")]
    MalformedToken(String),

    #[error("color {color} out of range 1..={colors}")]
    ColorOutOfRange { color: u32, colors: u8 },

    #[error("walk has odd length {0}")]
    OddLength(usize),

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("cut {z} out of range 1..={max}")]
    CutOutOfRange { z: usize, max: usize },

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: String,
        cap: String,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("invalid tiling: {0}")]
    InvalidTiling(String),

    #[error("contracted amplitude for {walk} is not a monomial in x: {poly}")]
    NonMonomial { walk: String, poly: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("eigensolver did not converge: {0}")]
    NoConvergence(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn cap(what: &'static str, size: impl ToString, cap: impl ToString) -> Self {
        Error::CapExceeded {
            what,
            size: size.to_string(),
            cap: cap.to_string(),
        }
    }

    /// True for resource-guard failures (distinct exit code in the CLI).
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
