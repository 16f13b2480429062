use thiserror::Error;

use crate::equations::EquationTag;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeninvError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("full-rank factorization of the zero matrix")]
    ZeroMatrix,
    #[error("weight matrix is not Hermitian")]
    NotHermitian,
    #[error("missing context: {0}")]
    MissingContext(&'static str),
    #[error("equation {0} is not linear in X")]
    UnsupportedTag(EquationTag),
    #[error("inverse does not exist: {0}")]
    InverseNotExists(String),
    #[error("index of A exceeds 1")]
    IndexTooHigh,
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("malformed inputs: {0}")]
    MalformedInputs(String),
    #[error("invalid sample spec: {0}")]
    InvalidSpec(String),
    #[error("hypothesis sampling exhausted after {attempts} attempts")]
    HypothesisSamplingExhausted { attempts: usize },
    #[error("postcondition violated: {0}")]
    PostconditionViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = GeninvError> = std::result::Result<T, E>;
