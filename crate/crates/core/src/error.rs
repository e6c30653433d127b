use thiserror::Error;

/// Errors raised by the library. Variants are grouped by the kind of
/// contract that was violated rather than by module.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {what} (expected {expected}, got {got})")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid stabilizer group: {0}")]
    InvalidGroup(String),

    #[error("{what}: requested {requested} qubits but the cutoff is {cutoff}")]
    CutoffExceeded {
        what: &'static str,
        requested: usize,
        cutoff: usize,
    },

    #[error("odd-weight transform impossible: every row has even weight")]
    TransformImpossible,

    #[error("term {index} is neither X-type nor Z-type")]
    NotCss { index: usize },

    #[error("CSS condition violated: H_X * H_Z^T has {violations} nonzero entries")]
    CssViolation { violations: usize },

    #[error("state is not normalized (norm^2 = {norm_sq})")]
    Unnormalized { norm_sq: f64 },

    #[error("stabilizer group has {rank} generators on {n} qubits; a pure state is required")]
    RankDeficient { rank: usize, n: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
