use std::io;

/// Errors produced by the engines and file codecs.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed input: bad interval, bad region, invalid spec or config.
    #[error("validation error: {0}")]
    Validation(String),
    /// A set was passed that does not lie inside the map's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Two grid objects that must share a geometry do not.
    #[error("geometry mismatch: {0}")]
    Geometry(String),
    /// Distances to or from the empty set are undefined.
    #[error("empty set: {0}")]
    EmptySet(&'static str),
    /// An internal invariant failed; indicates a bug in the engine.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("malformed image: {0}")]
    Image(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn validation(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}
