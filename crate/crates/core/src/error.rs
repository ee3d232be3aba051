use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input (unknown vertex, loop, bad literal, ...).
    #[error("input error: {0}")]
    Input(String),

    /// A configured size bound would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A requested operation's mathematical precondition does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("vertex set is not convex: {z} lies on a geodesic from {x} to {y} but is missing")]
    NotConvex { x: String, z: String, y: String },

    #[error("vertex set does not contain the identity")]
    MissingIdentity,

    #[error("vertex set is not connected: {0} cannot be reached from the identity")]
    Disconnected(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("verification failed ({check}): {witness}")]
    Verification { check: &'static str, witness: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
