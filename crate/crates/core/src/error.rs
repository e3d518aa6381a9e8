use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// A configured bound was hit. Never reported as an empty result.
    #[error("resource limit: {what} exceeds bound {bound} (needed {needed})")]
    ResourceLimit {
        what: &'static str,
        bound: u64,
        needed: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// The relation would be symmetric: `h * g * h2 == g^-1`.
    #[error("not a digraph: g^-1 lies in HgH (h = {h}, h' = {h2})")]
    NotADigraph { h: String, h2: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn limit(what: &'static str, bound: u64, needed: impl ToString) -> Self {
        Error::ResourceLimit {
            what,
            bound,
            needed: needed.to_string(),
        }
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
