//! Error type shared by all modules.

use thiserror::Error;

/// Errors raised by complex construction, moves, surgery, subdivision,
/// deduplication, encodings, and the dataset pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// No top faces were supplied.
    #[error("empty input: no top faces given")]
    EmptyInput,

    /// A top face does not have exactly `dimension + 1` distinct vertices.
    #[error("wrong face arity: face {face:?} must have exactly {expected} distinct vertices")]
    WrongFaceArity { face: Vec<u32>, expected: usize },

    /// A simplex required by the operation is not a face of the complex.
    #[error("face not present: {face:?}")]
    FaceNotPresent { face: Vec<u32> },

    /// The complex dimension is outside the supported range for the operation.
    #[error("unsupported dimension {dimension} (expected {expected})")]
    UnsupportedDimension { dimension: usize, expected: &'static str },

    /// The operation requires a combinatorial manifold and the input is not one.
    #[error("not a combinatorial manifold: {reason}")]
    NotAManifold { reason: String },

    /// An orientable surface reported an odd Euler characteristic; the input
    /// data is corrupt upstream.
    #[error("parity violation: orientable surface with odd Euler characteristic {chi}")]
    ParityViolation { chi: i64 },

    /// A Pachner move precondition failed; `blocking` names the face whose
    /// presence (or absence) invalidates the move.
    #[error("invalid move {kind} at {anchor:?}: {reason} (blocking face {blocking:?})")]
    InvalidMove {
        kind: &'static str,
        anchor: Vec<u32>,
        reason: &'static str,
        blocking: Vec<u32>,
    },

    /// Stellar subdivision was asked to split a non-maximal face.
    #[error("not a maximal face: {face:?}")]
    NotMaximal { face: Vec<u32> },

    /// A parameter is out of range for the operation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A graph node has degree zero, which makes the random-walk matrix
    /// undefined; signals malformed input.
    #[error("isolated node {node} has degree 0")]
    IsolatedNode { node: usize },

    /// The baseline was trained on an empty record set.
    #[error("empty training set")]
    EmptyTrain,

    /// A serialized record failed to parse; `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    ParseError { line: usize, message: String },

    /// A parsed record fails manifold or label verification.
    #[error("validation error for record {id:?}: {message}")]
    ValidationError { id: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
