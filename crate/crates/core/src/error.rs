//! Error type shared by the engine.

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution creates a pole (bindings: {bindings})")]
    Pole { bindings: String },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("degree limit exceeded: {0}")]
    DegreeLimit(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("degenerate map: {0}")]
    Degenerate(String),
    #[error("not on the integer lattice: {0}")]
    OffLattice(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = core::result::Result<T, Error>;
