use thiserror::Error;

/// Errors raised by surface, homology, curve and mapping-class computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("finite-type surface: no arm ends accumulated by genus")]
    FiniteType,

    #[error("unknown end identifier `{0}`")]
    UnknownEnd(String),

    #[error("class has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("class not simple")]
    NotSimple,

    #[error("zero class")]
    ZeroClass,

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("curve exceeds truncation: level {level} on arm {arm} is deeper than {depth}")]
    CurveExceedsTruncation { arm: usize, level: u64, depth: u64 },

    #[error("different partitions")]
    DifferentPartitions,

    #[error("basepoint end {0} is not on the negative side of the class")]
    BasepointSide(usize),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("general position violated: arm {arm} would reach level {level}")]
    GeneralPosition { arm: usize, level: i64 },

    #[error("fewer than two ends accumulated by genus")]
    TooFewGenusEnds,

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("parse error at {position}: expected {expected}, found {found}")]
    Parse {
        position: usize,
        expected: String,
        found: String,
    },

    #[error("internal check failed: {0}")]
    InternalCheck(String),
}

impl Error {
    /// Process exit code used by the command-line front end for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::InvalidSurface(_)
            | Error::InvalidCurve(_)
            | Error::InvalidGenerator(_)
            | Error::GeneralPosition { .. }
            | Error::CurveExceedsTruncation { .. }
            | Error::DifferentPartitions
            | Error::BasepointSide(_) => 3,
            Error::HypothesisViolated(_) | Error::TooFewGenusEnds | Error::FiniteType => 4,
            Error::UnknownEnd(_) | Error::DimensionMismatch { .. } | Error::NotSimple | Error::ZeroClass => 5,
            Error::InternalCheck(_) => 6,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
