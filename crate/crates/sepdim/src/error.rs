use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("invalid edge #{index}: {reason}")]
    InvalidEdge { index: usize, reason: String },

    #[error("duplicate edge {0:?} (1-based)")]
    DuplicateEdge(Vec<usize>),

    #[error("expected a graph (every edge of size 2)")]
    NotAGraph,

    #[error("vertex sets must be nonempty and disjoint")]
    OverlappingSets,

    #[error("ground set mismatch: expected {expected} elements, found {found}")]
    GroundSetMismatch { expected: usize, found: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("blocks do not partition the ground set: {0}")]
    NotAPartition(String),

    #[error("no verified family after {attempts} attempts of size {size}")]
    RetriesExhausted { attempts: usize, size: usize },

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("outside supported regime: {0}")]
    Regime(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("invalid interval representation: {0}")]
    InvalidRepresentation(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Coarse classification used for process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    Verification,
    Budget,
    Input,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Verification(_) => ErrorClass::Verification,
            Error::RetriesExhausted { .. } | Error::TooLarge(_) | Error::Regime(_) => {
                ErrorClass::Budget
            }
            _ => ErrorClass::Input,
        }
    }

    pub(crate) fn param(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
