//! Class-transition thresholds over a trace: the first size where a
//! function leaves a hierarchy level (explode), the size past which it
//! permanently re-enters one (collapse), doubling-stability evidence for
//! the finite-to-general implications, and the rank arithmetic for
//! composing reductions.

use crate::complexity::{
    classify, oc_bound, Error, GrowthFormula, Level, Range, Result, RuntimeTrace,
};
use num::{BigRational, Signed};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Outcome of an explode/collapse scan. `found` implies `z` is present and
/// inside the scanned domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub found: bool,
    pub z: Option<u64>,
    pub scanned_up_to: u64,
    /// The grid the scan ran on (prefix endpoints examined).
    pub grid: Vec<u64>,
}

/// Smallest covered z ≥ n1 such that the trace classifies at or below
/// `level` on [n1..n0] for every grid n0 < z and strictly above `level` on
/// [n1..z]. Scans prefix ranges on the trace grid.
pub fn explode(trace: &RuntimeTrace, level: Level, n1: u64) -> Result<ThresholdResult> {
    let grid: Vec<u64> = trace
        .points_in(n1, trace.last_n())
        .map(|(n, _)| *n)
        .collect();
    if grid.is_empty() || grid[0] != n1 {
        return Err(Error::Coverage {
            label: trace.label().to_string(),
            missing: n1,
        });
    }
    for &z in &grid {
        let label = classify(trace, Range::new(n1, z).unwrap())?;
        if label.level > level {
            return Ok(ThresholdResult {
                found: true,
                z: Some(z),
                scanned_up_to: z,
                grid,
            });
        }
    }
    Ok(ThresholdResult {
        found: false,
        z: None,
        scanned_up_to: *grid.last().unwrap(),
        grid,
    })
}

/// Smallest z ≤ n1 such that the trace classifies at or below `level` on
/// [base..n0] for every grid n0 in [z..n1], where base is the first trace
/// point. `found` is false when even [base..n1] classifies above the level.
pub fn collapse(trace: &RuntimeTrace, level: Level, n1: u64) -> Result<ThresholdResult> {
    let base = trace.first_n();
    let grid: Vec<u64> = trace.points_in(base, n1).map(|(n, _)| *n).collect();
    if grid.is_empty() || *grid.last().unwrap() != n1 {
        return Err(Error::Coverage {
            label: trace.label().to_string(),
            missing: n1,
        });
    }
    let mut z = None;
    for &n0 in grid.iter().rev() {
        let label = classify(trace, Range::new(base, n0).unwrap())?;
        if label.level > level {
            break;
        }
        z = Some(n0);
    }
    Ok(ThresholdResult {
        found: z.is_some(),
        z,
        scanned_up_to: n1,
        grid,
    })
}

/// One checked doubling step: does the certain bound at [base..n'] carry to
/// [base..2n']?
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublingPair {
    pub n_prime: u64,
    pub n_double: u64,
    pub premise_holds: bool,
    pub conclusion_holds: bool,
    pub pass: bool,
}

/// Finite evidence for the doubling-stability premise: this is measured
/// support on the trace grid, never a proof of the general-case statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublingEvidence {
    pub stable: bool,
    pub checked_pairs: Vec<DoublingPair>,
    pub first_failure: Option<u64>,
    /// Fixed caveat carried into every report.
    pub caveat: String,
}

pub const DOUBLING_CAVEAT: &str =
    "finite evidence for the doubling-stability premise on the sampled grid; not a proof";

/// Checks, for every covered grid point n' in [n0 .. last/2], that the
/// certain bound against g on [base..n'] implies it on [base..2n'].
pub fn doubling_evidence(
    trace: &RuntimeTrace,
    g: &GrowthFormula,
    n0: u64,
) -> Result<DoublingEvidence> {
    let base = trace.first_n();
    if n0 < base {
        return Err(Error::Coverage {
            label: trace.label().to_string(),
            missing: n0,
        });
    }
    let last = trace.last_n();
    let candidates: Vec<u64> = trace
        .points_in(n0, last / 2)
        .map(|(n, _)| *n)
        .collect();
    if candidates.is_empty() {
        return Err(Error::Coverage {
            label: trace.label().to_string(),
            missing: n0,
        });
    }
    let mut pairs = Vec::new();
    let mut first_failure = None;
    for n_prime in candidates {
        let n_double = n_prime * 2;
        let premise = oc_bound(trace, g, Range::new(base.max(2), n_prime).unwrap())?.holds;
        let conclusion = oc_bound(trace, g, Range::new(base.max(2), n_double).unwrap())?.holds;
        let pass = !premise || conclusion;
        if !pass && first_failure.is_none() {
            first_failure = Some(n_prime);
        }
        pairs.push(DoublingPair {
            n_prime,
            n_double,
            premise_holds: premise,
            conclusion_holds: conclusion,
            pass,
        });
    }
    Ok(DoublingEvidence {
        stable: first_failure.is_none(),
        checked_pairs: pairs,
        first_failure,
        caveat: DOUBLING_CAVEAT.to_string(),
    })
}

/// A rank operand for composition arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RankExpr {
    PolyRank(u32),
    LogRank(u32),
    /// Stored as the rank value 1/k (exact rational, positive).
    ExpRank(BigRational),
}

impl fmt::Display for RankExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankExpr::PolyRank(k) => write!(f, "PolyRank={k}"),
            RankExpr::LogRank(k) => write!(f, "LogRank={k}"),
            RankExpr::ExpRank(r) => write!(f, "ExpRank={r}"),
        }
    }
}

/// A composed rank: always an upper bound, never an exact rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposedRank {
    pub bound: RankExpr,
    pub is_upper_bound: bool,
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum ComposeError {
    #[error("cannot compose {0} applications with a {1} callee: kinds must match")]
    UnsupportedCombination(String, String),
    #[error("exponential rank operands must be positive")]
    NonPositiveRate,
}

/// Rank arithmetic for reductions: n^k applications of a PolyRank-j
/// algorithm cost at most PolyRank k+j; log^k applications of LogRank j
/// at most LogRank k+j; 2^(n/k) applications of ExpRank 1/j at most
/// ExpRank 1/k + 1/j. The result is an upper bound.
pub fn compose_ranks(
    call_count: &RankExpr,
    callee: &RankExpr,
) -> std::result::Result<ComposedRank, ComposeError> {
    let bound = match (call_count, callee) {
        (RankExpr::PolyRank(k), RankExpr::PolyRank(j)) => RankExpr::PolyRank(k + j),
        (RankExpr::LogRank(k), RankExpr::LogRank(j)) => RankExpr::LogRank(k + j),
        (RankExpr::ExpRank(a), RankExpr::ExpRank(b)) => {
            if a.is_negative() || b.is_negative() {
                return Err(ComposeError::NonPositiveRate);
            }
            RankExpr::ExpRank(a + b)
        }
        (a, b) => {
            return Err(ComposeError::UnsupportedCombination(
                a.to_string(),
                b.to_string(),
            ))
        }
    };
    Ok(ComposedRank {
        bound,
        is_upper_bound: true,
    })
}
