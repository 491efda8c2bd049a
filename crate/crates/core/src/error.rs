use thiserror::Error;

use crate::algebra::VertexId;

/// A parse failure tied to a 1-based source line.
#[derive(Debug, Clone, PartialEq, Eq, Error, serde::Serialize)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown arrow id {0}")]
    UnknownArrow(u32),
    #[error("algebra has not been validated as a string algebra")]
    NotValidated,
    #[error("invalid string: {0}")]
    InvalidString(String),
    #[error("string is not directed")]
    NotDirected,
    #[error("vertex {vertex} has type {found}, expected one of {expected}")]
    WrongVertexType {
        vertex: VertexId,
        found: String,
        expected: &'static str,
    },
    #[error("projective at vertex {0} is injective")]
    InjectiveProjective(VertexId),
    #[error("distance precondition violated: {0}")]
    DistancePrecondition(String),
    #[error("occurrences do not share a window")]
    UnrelatedWindows,
    #[error("state budget of {0} exhausted")]
    BudgetExhausted(usize),
    #[error("internal invariant failure: {0}")]
    Invariant(String),
    #[error("generation failed after {0} attempts")]
    GenerationFailed(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
