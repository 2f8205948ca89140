//! Error type shared by every module of the engine.

use thiserror::Error;

/// Errors raised when an operation receives input it cannot accept.
///
/// Mathematical failures (a continuity violation, a nonzero Stokes defect)
/// are never errors: they are reported as data by the checking routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    /// Two operands live on differently shaped simplex products.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    /// A face index is outside the simplex.
    #[error("face out of range: {0}")]
    FaceOutOfRange(String),
    /// A label or generator is not part of the presentation.
    #[error("unknown label: {0}")]
    UnknownLabel(String),
    /// Two operands belong to different presentations or label sets.
    #[error("presentation mismatch: {0}")]
    PresentationMismatch(String),
    /// The collapse set of a cocomposition is not admissible.
    #[error("invalid collapse set: {0}")]
    InvalidCollapse(String),
    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// A structural precondition on a graph was violated.
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    /// A numeric argument is outside its admissible range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, EngineError>;
