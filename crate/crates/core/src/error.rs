use thiserror::Error;

use crate::tcd::{Fatness, TreeCutDecomposition, Violation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(#[from] Violation),
    #[error("undecided at configured bound: adhesion of link {link} has {size} edges, enumeration bound is {bound}")]
    Undecided { link: usize, size: usize, bound: usize },
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("iteration guard of {limit} improvement steps exceeded")]
    IterationLimit { limit: usize, partial: Box<TreeCutDecomposition>, trace: Vec<Fatness> },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
