//! Crate-wide error type.

use thiserror::Error;

use crate::parser::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    /// A value fell outside its domain: unknown argument, argument not in the
    /// fixed part, constraint mentioning forbidden variables, and the like.
    #[error("{0}")]
    Domain(String),

    /// A structure violated one of its construction invariants.
    #[error("{0}")]
    Invariant(String),

    /// A configurable size bound was exceeded.
    #[error("{0}")]
    Resource(String),

    #[error("{0}")]
    Parse(#[from] ParseError),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}
