use thiserror::Error;

/// Errors produced by graph construction and the counting methods.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: usize },

    #[error("line {line}: invalid token `{token}`")]
    InvalidToken { line: usize, token: String },

    #[error("line {line}: malformed line `{content}`")]
    MalformedLine { line: usize, content: String },

    #[error("line {line}: node id {id} out of range for n = {n}")]
    NodeOutOfRange { line: usize, id: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The enumeration would visit more sequences than the configured limit.
    #[error("enumeration guard exceeded: estimated {estimate} sequences, limit {limit}")]
    GuardExceeded { estimate: String, limit: u64 },

    /// A count matrix evaluated to a negative entry. For a correct formula this
    /// cannot happen, so it is reported instead of clamped.
    #[error("negative entry {value} at ({row}, {col}) in {context}")]
    NegativeEntry {
        context: String,
        row: usize,
        col: usize,
        value: String,
    },

    #[error("malformed matrix JSON: {0}")]
    Json(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
