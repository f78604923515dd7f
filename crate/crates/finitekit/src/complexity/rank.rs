//! The three rank functions: polynomial, logarithmic, exponential.

use super::{apparent_bound, oc_bound, Error, GrowthFormula, Range, Result, RuntimeTrace};
use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Cap on the polynomial-rank search; traces needing more signal overflow
/// (the class is decided by the exponential rank beyond this point anyway).
pub const POLY_RANK_MAX: u32 = 64;

/// Largest integer exponential rank the search grid distinguishes; steeper
/// traces report as infinite, which still classifies as intractable.
pub const EXP_RANK_MAX: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogRank {
    Finite(u32),
    Infinite,
}

impl LogRank {
    pub fn finite(self) -> Option<u32> {
        match self {
            LogRank::Finite(k) => Some(k),
            LogRank::Infinite => None,
        }
    }
}

impl fmt::Display for LogRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogRank::Finite(k) => write!(f, "{k}"),
            LogRank::Infinite => write!(f, "inf"),
        }
    }
}

/// An exponential rank 1/k (or an integer rank for fractional k on the
/// grid), stored as an exact rational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExpRank {
    Finite(BigRational),
    Infinite,
}

impl ExpRank {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExpRank::Finite(r) => Some(r),
            ExpRank::Infinite => None,
        }
    }
}

impl fmt::Display for ExpRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpRank::Finite(r) => write!(f, "{r}"),
            ExpRank::Infinite => write!(f, "inf"),
        }
    }
}

/// Smallest k ≥ 1 such that the factor-2 midpoint test accepts n^(k-1);
/// minimality gives the companion rejection at n^(k-2). Overflows past
/// [`POLY_RANK_MAX`].
pub fn poly_rank(trace: &RuntimeTrace, range: Range) -> Result<u32> {
    trace.require_coverage(range)?;
    let two = BigRational::from_integer(BigInt::from(2));
    for k in 1..=POLY_RANK_MAX {
        let w = apparent_bound(trace, &GrowthFormula::Poly(k - 1), &two, range)?;
        if w.holds {
            return Ok(k);
        }
    }
    Err(Error::RankOverflow { cap: POLY_RANK_MAX })
}

/// Smallest k ≥ 1 with the certain bound holding against log^k(n), searched
/// up to ceil(log2 n0); infinite when none qualifies. Requires n1 ≥ 4 so the
/// thresholds that consume this rank stay defined.
pub fn log_rank(trace: &RuntimeTrace, range: Range) -> Result<LogRank> {
    if range.n1 < 4 {
        return Err(Error::InvalidRange {
            n1: range.n1,
            n0: range.n0,
            requirement: "n1 >= 4 for log ranks",
        });
    }
    trace.require_coverage(range)?;
    let k_max = (range.n0 as f64).log2().ceil() as u32;
    for k in 1..=k_max.max(1) {
        if oc_bound(trace, &GrowthFormula::LogPow(k), range)?.holds {
            return Ok(LogRank::Finite(k));
        }
    }
    Ok(LogRank::Infinite)
}

/// The k grid for the exponential rank, in descending order: integers
/// n0..=1 (ranks 1/n0..1) then fractions 1/2..=1/EXP_RANK_MAX (ranks
/// 2..=EXP_RANK_MAX).
fn exp_grid(n0: u64) -> impl Iterator<Item = BigRational> {
    let ints = (1..=n0).rev().map(|k| BigRational::from_integer(k.into()));
    let fracs = (2..=EXP_RANK_MAX)
        .map(|r| BigRational::new(BigInt::from(1), BigInt::from(r)));
    ints.chain(fracs)
}

/// The reciprocal 1/k of the largest grid member k for which the certain
/// bound against 2^(n/k) holds; infinite when even the steepest grid member
/// (2^(EXP_RANK_MAX·n)) fails.
pub fn exp_rank(trace: &RuntimeTrace, range: Range) -> Result<ExpRank> {
    trace.require_coverage(range)?;
    for k in exp_grid(range.n0) {
        let rate = k.recip();
        if oc_bound(trace, &GrowthFormula::Exp(rate.clone()), range)?.holds {
            return Ok(ExpRank::Finite(rate));
        }
    }
    Ok(ExpRank::Infinite)
}
