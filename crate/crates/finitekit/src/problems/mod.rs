//! Desk-scale problem packs: verifiers, instance generators, golden data,
//! and the problem-specific procedures for 3CNF-SAT, bounded string
//! compression, and budgeted integer factorization.

pub mod factor;
pub mod kc;
pub mod packs;
pub mod sat;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("assignment length {got} does not match {want} variables")]
    LengthMismatch { got: usize, want: usize },
    #[error("infeasible generator parameters: {0}")]
    Infeasible(String),
    #[error("universe size needs n >= 3, got {0}")]
    UniverseTooSmall(u32),
    #[error("atom table does not cover the input at bit {0}")]
    IncompressibleSpan(usize),
    #[error("empty prime range")]
    EmptyRange,
    #[error("bad file format: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
