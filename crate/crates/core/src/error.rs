use thiserror::Error;

use crate::graph::Violation;

/// Errors produced by the genus pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid star graph: {}", join_violations(.0))]
    Invalid(Vec<Violation>),

    /// The graph admits no alternating orientation; take its double cover first.
    #[error("graph does not satisfy the source-sink condition")]
    NotSourceSink,

    #[error("{n} vertices exceed the exhaustive enumeration limit of {limit}")]
    TooManyVertices { n: usize, limit: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("index {0} listed more than once")]
    DuplicateIndex(usize),

    #[error("vertex or edge id {0} is too large to lift to the double cover")]
    IdOverflow(u64),

    #[error("malformed input: {0}")]
    Malformed(String),

    /// An internal invariant failed. Reaching this is a bug.
    #[error("broken invariant: {0}")]
    BrokenInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
