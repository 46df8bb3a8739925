use thiserror::Error;

use crate::poly::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("the ring is not Gorenstein: {0}")]
    NotGorenstein(String),

    /// A computation needed a term of a left- or right-infinite complex outside
    /// the part that has been computed.
    #[error("window exhausted: cohomological degree {index} lies outside the computed window [{lo}, {hi}]")]
    WindowExhausted { index: i32, lo: i32, hi: i32 },

    /// A windowed verification (quasi-isomorphism, vanishing bound) failed.
    #[error("window check failed: {0}")]
    WindowCheck(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
