//! Classification into the seven-level hierarchy.

use super::{
    exp_rank, log_rank, min_const, oc_bound, poly_rank, Error, ExpRank, GrowthFormula, LogRank,
    Range, Result, RuntimeTrace,
};
use num::{BigRational, BigUint, One};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The seven levels, ordered by tractability. `Ord` follows the hierarchy.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub enum Level {
    Const = 1,
    PolyLog = 2,
    Linear = 3,
    Poly = 4,
    SemiPoly = 5,
    Exp = 6,
    Intr = 7,
}

impl Level {
    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn all() -> [Level; 7] {
        [
            Level::Const,
            Level::PolyLog,
            Level::Linear,
            Level::Poly,
            Level::SemiPoly,
            Level::Exp,
            Level::Intr,
        ]
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Level::Const => "Const",
            Level::PolyLog => "PolyLog",
            Level::Linear => "Linear",
            Level::Poly => "Poly",
            Level::SemiPoly => "SemiPoly",
            Level::Exp => "Exp",
            Level::Intr => "Intr",
        };
        f.write_str(s)
    }
}

/// The rank values computed on the way to a classification, plus the
/// thresholds they were compared against (base-2 logs of n0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankEvidence {
    pub log_rank: Option<LogRank>,
    pub poly_rank: Option<u32>,
    pub poly_rank_overflowed: bool,
    pub exp_rank: Option<ExpRank>,
    pub polylog_threshold: f64,
    pub poly_threshold: f64,
    pub semipoly_threshold: f64,
}

/// A classification outcome: exactly one level per (trace, range) pair,
/// with the evidence used to assign it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassLabel {
    pub level: Level,
    pub range: (u64, u64),
    pub evidence: RankEvidence,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.level)?;
        match self.level {
            Level::Const | Level::PolyLog => {
                if let Some(lr) = &self.evidence.log_rank {
                    write!(f, ", LogRank={lr}")?;
                }
            }
            Level::Linear => {}
            Level::Poly | Level::SemiPoly => {
                if let Some(pr) = &self.evidence.poly_rank {
                    write!(f, ", PolyRank={pr}")?;
                }
            }
            Level::Exp | Level::Intr => {
                if let Some(er) = &self.evidence.exp_rank {
                    write!(f, ", ExpRank={er}")?;
                }
            }
        }
        Ok(())
    }
}

/// Assigns the first matching level, testing Const, PolyLog, Linear, Poly,
/// SemiPoly, Exp in order and falling through to Intr.
///
/// * Const: the minimal constant against g=1 is identical on the full range
///   and its lower half (the finite stand-in for "fixed c0 independent of
///   n0"), and the log rank is at most 1.
/// * PolyLog: LogRank ≤ log2(n0)/log2(log2(n0)).
/// * Linear: the certain bound against n holds.
/// * Poly: PolyRank ≤ 1 + log2(log2(n0)).
/// * SemiPoly: PolyRank ≤ 1 + log2(n0).
/// * Exp: ExpRank ≤ 8.
///
/// Requires n1 ≥ 4 so the log-log thresholds are defined.
pub fn classify(trace: &RuntimeTrace, range: Range) -> Result<ClassLabel> {
    if range.n1 < 4 {
        return Err(Error::InvalidRange {
            n1: range.n1,
            n0: range.n0,
            requirement: "n1 >= 4 for classification",
        });
    }
    trace.require_coverage(range)?;

    let log2_n0 = (range.n0 as f64).log2();
    let polylog_threshold = log2_n0 / log2_n0.log2();
    let poly_threshold = 1.0 + log2_n0.log2();
    let semipoly_threshold = 1.0 + log2_n0;

    let lr = log_rank(trace, range)?;
    let mut evidence = RankEvidence {
        log_rank: Some(lr),
        poly_rank: None,
        poly_rank_overflowed: false,
        exp_rank: None,
        polylog_threshold,
        poly_threshold,
        semipoly_threshold,
    };
    let label = |level: Level, evidence: RankEvidence| ClassLabel {
        level,
        range: (range.n1, range.n0),
        evidence,
    };

    // Const: stable minimal constant across the halves, log rank <= 1.
    let one = GrowthFormula::Const(BigUint::one());
    let c_full = min_const(trace, &one, range)?;
    let c_half = min_const(trace, &one, range.lower_half())?;
    if c_full == c_half && matches!(lr, LogRank::Finite(k) if k <= 1) {
        return Ok(label(Level::Const, evidence));
    }

    if let LogRank::Finite(k) = lr {
        if (k as f64) <= polylog_threshold {
            return Ok(label(Level::PolyLog, evidence));
        }
    }

    if oc_bound(trace, &GrowthFormula::Poly(1), range)?.holds {
        return Ok(label(Level::Linear, evidence));
    }

    match poly_rank(trace, range) {
        Ok(pr) => {
            evidence.poly_rank = Some(pr);
            if (pr as f64) <= poly_threshold {
                return Ok(label(Level::Poly, evidence));
            }
            if (pr as f64) <= semipoly_threshold {
                return Ok(label(Level::SemiPoly, evidence));
            }
        }
        Err(Error::RankOverflow { .. }) => {
            evidence.poly_rank_overflowed = true;
        }
        Err(e) => return Err(e),
    }

    let er = exp_rank(trace, range)?;
    evidence.exp_rank = Some(er.clone());
    let eight = BigRational::from_integer(8.into());
    if matches!(&er, ExpRank::Finite(r) if *r <= eight) {
        return Ok(label(Level::Exp, evidence));
    }
    Ok(label(Level::Intr, evidence))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigUint;

    fn pow2(f: impl Fn(u64) -> BigUint, n1: u64, n0: u64) -> RuntimeTrace {
        RuntimeTrace::pow2("f", n1, n0, f)
    }

    fn level(t: &RuntimeTrace, n1: u64, n0: u64) -> Level {
        classify(t, Range::new(n1, n0).unwrap()).unwrap().level
    }

    fn log2c(n: u64) -> u64 {
        (n as f64).log2().ceil() as u64
    }

    #[test]
    fn constant_is_const() {
        let t = pow2(|_| BigUint::from(7u32), 4, 256);
        assert_eq!(level(&t, 4, 256), Level::Const);
    }

    #[test]
    fn square_is_poly_at_256() {
        // PolyRank 2 <= 1 + log2(log2(256)) = 4.
        let t = pow2(|n| BigUint::from(n * n), 4, 256);
        let c = classify(&t, Range::new(4, 256).unwrap()).unwrap();
        assert_eq!(c.level, Level::Poly);
        assert_eq!(c.evidence.poly_rank, Some(2));
        assert_eq!(c.evidence.poly_threshold, 4.0);
    }

    #[test]
    fn steep_exponential_is_intractable() {
        let t = pow2(|n| BigUint::from(2u32).pow(9 * n as u32), 4, 16);
        let c = classify(&t, Range::new(4, 16).unwrap()).unwrap();
        assert_eq!(c.level, Level::Intr);
    }

    #[test]
    fn battery_at_1024_matches_thresholds() {
        let n0 = 1024;
        let cases: Vec<(RuntimeTrace, Level)> = vec![
            (pow2(|_| BigUint::from(7u32), 4, n0), Level::Const),
            (
                pow2(|n| BigUint::from(log2c(n) * log2c(n)), 4, n0),
                Level::PolyLog,
            ),
            (pow2(|n| BigUint::from(n), 4, n0), Level::Linear),
            (pow2(|n| BigUint::from(n * log2c(n)), 4, n0), Level::Poly),
            (pow2(|n| BigUint::from(n * n), 4, n0), Level::Poly),
            (pow2(|n| BigUint::from(n).pow(5), 4, n0), Level::SemiPoly),
            (
                pow2(|n| BigUint::from(2u32).pow(n as u32), 4, n0),
                Level::Exp,
            ),
            (
                pow2(|n| BigUint::from(2u32).pow(9 * n as u32), 4, n0),
                Level::Intr,
            ),
        ];
        for (t, expect) in cases {
            assert_eq!(level(&t, 4, n0), expect, "trace {t:?}");
        }
    }

    #[test]
    fn exactly_one_level_is_assigned() {
        // classify returns a single label; re-running is stable.
        let t = pow2(|n| BigUint::from(n * n), 4, 1024);
        let a = classify(&t, Range::new(4, 1024).unwrap()).unwrap();
        let b = classify(&t, Range::new(4, 1024).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn domination_is_antitone_on_formula_battery() {
        // Pointwise-dominated formula traces never classify above their
        // dominators.
        let n0 = 1024;
        let battery: Vec<RuntimeTrace> = vec![
            pow2(|_| BigUint::one(), 4, n0),
            pow2(|n| BigUint::from(log2c(n) * log2c(n)), 4, n0),
            pow2(|n| BigUint::from(n), 4, n0),
            pow2(|n| BigUint::from(n * log2c(n)), 4, n0),
            pow2(|n| BigUint::from(n * n), 4, n0),
            pow2(|n| BigUint::from(n).pow(5), 4, n0),
            pow2(|n| BigUint::from(2u32).pow(n as u32), 4, n0),
            pow2(|n| BigUint::from(2u32).pow(9 * n as u32), 4, n0),
        ];
        let r = Range::new(4, n0).unwrap();
        for a in &battery {
            for b in &battery {
                let dominated = a
                    .points()
                    .iter()
                    .zip(b.points())
                    .all(|((_, ca), (_, cb))| ca <= cb);
                if dominated {
                    let la = classify(a, r).unwrap().level;
                    let lb = classify(b, r).unwrap().level;
                    assert!(la <= lb, "{a:?} vs {b:?}: {la} > {lb}");
                }
            }
        }
    }
}
