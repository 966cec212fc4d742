use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("inconsistent complex: boundary rank {rank} exceeds cocycle dimension {cocycles}")]
    InconsistentComplex { cocycles: usize, rank: usize },

    #[error("variety mismatch: {left} vs {right}")]
    VarietyMismatch { left: String, right: String },

    #[error("invalid variety: {0}")]
    InvalidVariety(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("module action is not a representation: {0}")]
    NotARepresentation(String),

    #[error("differential does not square to zero in {context}")]
    NotAComplex { context: String },

    #[error("empty weight window [{lo}, {hi}]")]
    EmptyWindow { lo: i64, hi: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
