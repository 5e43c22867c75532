//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Graph document failed to parse or validate. The location names the
    /// offending entry, e.g. `edges[3]`.
    #[error("{location}: {message}")]
    Parse { location: String, message: String },

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("unknown edge {0:?}")]
    UnknownEdge(String),

    /// Values built over different graphs were mixed in one operation.
    #[error("operands belong to different graphs")]
    MixedGraphs,

    #[error("path {0:?} is not a loop")]
    NotALoop(String),

    #[error(
        "edge {0:?} is a loop; a two-dimensional nest representation needs distinct endpoints"
    )]
    LoopEdge(String),

    #[error("vertex pair must be distinct, got {0:?} twice")]
    SameVertex(String),

    #[error("element degree {degree} exceeds truncation level {level}")]
    DegreeExceedsLevel { degree: usize, level: usize },

    #[error("truncation level must be at least 1")]
    InvalidLevel,

    #[error("parameter vector has {got} entries, vertex carries {want} loop edges")]
    DimensionMismatch { got: usize, want: usize },

    #[error("parameter norm {0} violates the unit-ball constraint")]
    NormViolation(String),

    /// An internal cross-check failed; carries a description of the probe.
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
