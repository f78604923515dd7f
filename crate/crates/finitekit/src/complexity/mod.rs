//! The finite complexity calculus: bounded-constant bounds over an explicit
//! size interval, minimal constants, the midpoint growth test, the three
//! rank functions, and classification into the seven-level hierarchy
//! Const / PolyLog / Linear / Poly / SemiPoly / Exp / Intr.
//!
//! All quantifiers range over the points actually present in a
//! [`RuntimeTrace`]; a trace may be sampled densely or on a declared grid
//! (e.g. powers of two), and every result reports the grid it was computed
//! on. Costs are exact operation counts (`BigUint`), ratios are exact
//! rationals, and the only floating-point step is the base-2 logarithm
//! inside [`GrowthFormula`] evaluation, rounded to 12 significant digits.

mod bound;
mod classify;
mod growth;
mod rank;
mod trace;

pub use bound::{apparent_bound, bound_holds, min_const, oc_bound, BoundWitness};
pub use classify::{classify, ClassLabel, Level, RankEvidence};
pub use growth::GrowthFormula;
pub use rank::{exp_rank, log_rank, poly_rank, ExpRank, LogRank, POLY_RANK_MAX};
pub use trace::{Range, RuntimeTrace};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("trace `{label}` does not cover n={missing} in the queried range")]
    Coverage { label: String, missing: u64 },
    #[error("invalid range: need {requirement}, got {n1}..{n0}")]
    InvalidRange {
        n1: u64,
        n0: u64,
        requirement: &'static str,
    },
    #[error("polynomial rank exceeds the search cap {cap}")]
    RankOverflow { cap: u32 },
    #[error("invalid trace: {0}")]
    InvalidTrace(String),
}

pub type Result<T> = std::result::Result<T, Error>;
