//! The hinted-program substrate: a bit-valued stack machine with fuel
//! metering, a canonical program enumerator over its opcode alphabet, and
//! a structured mini-language that validates candidate source against the
//! family limits and compiles down to the bytecode.
//!
//! Bytecode is the canonical search space; the structured language exists
//! to validate family membership and to author hand-written candidates.

mod ast;
mod bytecode;
mod enumerate;
mod exec;

pub use ast::{
    agree_on, compile, validate_family, walk, Ast, BinOp, Expr, FamilyLimits, Procedure, Stmt,
    Violation, WalkOutcome, WalkStatus,
};
pub use bytecode::{Bytecode, Op};
pub use enumerate::{enumerate_programs, program_count, Cursor, EnumConfig, ProgramEnumerator};
pub use exec::{digest, run, Hint, RunDigest, RunOutcome, RunStatus, StateDigest, TrapKind};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("bad program text at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("jump target out of bounds at instruction {index}")]
    JumpOutOfBounds { index: usize },
    #[error("enumeration exhausted")]
    Exhausted,
    #[error("enumeration space too large: {0}")]
    SpaceTooLarge(String),
    #[error("compile error: {0}")]
    Compile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
