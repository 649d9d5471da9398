use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("graph is disconnected: `{0}` and `{1}` lie in different components")]
    Disconnected(String, String),
    #[error("size guard exceeded: {what} is {actual}, limit is {limit}")]
    SizeGuard {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("invalid group label `{0}`")]
    BadGroupSpec(String),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("element does not belong to group {0}")]
    ForeignElement(String),
    #[error("group mismatch: {0} vs {1}")]
    GroupMismatch(String, String),
    #[error("groups {0} and {1} have different orders")]
    OrderMismatch(String, String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not a cut: {0}")]
    NotACut(String),
    #[error("assignment is missing a value for edge `{0}`")]
    PartialAssignment(String),
    #[error("edge `{edge}`: {reason}")]
    BadEdge { edge: String, reason: String },
    #[error("vertex `{vertex}`: {reason}")]
    BadVertex { vertex: String, reason: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),
    #[error("arithmetic overflow guard: {0}")]
    Overflow(String),
    #[error("{0}")]
    Io(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
