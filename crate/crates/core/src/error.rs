use thiserror::Error;

/// Errors raised by the polytope toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A configured size cap was exceeded. `cap` names the limit.
    #[error("instance too large: {what} needs {needed}, exceeding cap `{cap}` = {limit}")]
    TooLarge {
        cap: &'static str,
        what: String,
        needed: u128,
        limit: u128,
    },

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("measure is not locally invariant: {0}")]
    NotLocallyInvariant(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("pattern does not fit: {0}")]
    DoesNotFit(String),

    #[error("chain not descending: {0}")]
    ChainNotDescending(String),

    #[error("matrix is not primitive")]
    NotPrimitive,

    #[error("Perron root has degree above 2; exact mode unavailable")]
    DegreeTooHigh,

    #[error("point is not in the convex hull")]
    NotInHull,

    #[error("internal verification failed: {0}")]
    Verification(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn too_large(cap: &'static str, what: impl Into<String>, needed: u128, limit: u128) -> Self {
        Error::TooLarge {
            cap,
            what: what.into(),
            needed,
            limit,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
