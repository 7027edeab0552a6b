use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The requested dimension is outside the range an operation supports.
    #[error("unsupported dimension {p}: {detail}")]
    UnsupportedDimension { p: usize, detail: &'static str },
    /// A documented work or memory bound would be exceeded.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    /// Integer arithmetic overflowed while counting.
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    /// A linear system was too ill conditioned to solve reliably.
    #[error("numerical conditioning failure: {0}")]
    IllConditioned(String),
}

pub type Result<T> = std::result::Result<T, Error>;
