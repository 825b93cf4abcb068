use thiserror::Error;

use crate::textio::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("unsupported dimension {0}: the engine handles 1..=32 phase-space coordinates")]
    UnsupportedDimension(usize),

    #[error("{0} must depend on phi only")]
    NotPhiOnly(&'static str),

    #[error("grade mismatch: {0}")]
    GradeMismatch(String),

    #[error("decode failure: {0}")]
    DecodeFailure(String),

    #[error("expected {expected} components, got {got}")]
    ComponentCount { expected: usize, got: usize },

    #[error("invalid rank: {0}")]
    InvalidRank(String),

    #[error("inconsistent calibration of {bracket}: {detail}")]
    InconsistentCalibration { bracket: &'static str, detail: String },

    #[error("no vector-valued form satisfies the defining relation: {0}")]
    NoSolution(String),

    #[error("defining relation does not determine a unique solution: {0}")]
    NonUniqueSolution(String),

    #[error("malformed omega: {0}")]
    MalformedOmega(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("duplicate binding `{0}`")]
    DuplicateName(String),

    #[error("`{name}` is a {actual}, expected a {expected}")]
    WrongKind { name: String, expected: &'static str, actual: &'static str },
}

impl Error {
    /// True for errors that indicate a broken engine invariant rather than
    /// bad user input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::InconsistentCalibration { .. }
                | Error::NoSolution(_)
                | Error::NonUniqueSolution(_)
                | Error::DecodeFailure(_)
        )
    }
}
