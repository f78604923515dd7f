//! Bounded-constant bounds and the midpoint growth test.

use super::{Error, GrowthFormula, Range, Result, RuntimeTrace};
use num::bigint::Sign;
use num::{BigInt, BigRational, BigUint, Integer, One, Zero};

/// Diagnostic outcome of a bound check. For the plain bound check the two
/// constants are the minimal constants over the full range and its lower
/// half (when the half contains a grid point); for the midpoint tests they
/// are exactly the two constants the test compares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundWitness {
    pub holds: bool,
    /// Smallest size at which the check failed, when it failed.
    pub failing_n: Option<u64>,
    pub const_at_endpoint: BigUint,
    pub const_at_midpoint: BigUint,
}

/// ceil(cost / g) for positive rationals.
fn ceil_ratio(cost: &BigUint, g: &BigRational) -> BigUint {
    let num = BigInt::from_biguint(Sign::Plus, cost.clone()) * g.denom();
    let (q, r) = num.div_rem(g.numer());
    let q = if r.is_zero() { q } else { q + BigInt::one() };
    q.to_biguint().expect("positive")
}

/// Smallest natural c with cost(n) ≤ c·g(n) at every covered n in `range`,
/// i.e. the ceiling of the largest cost/g ratio over the grid.
pub fn min_const(trace: &RuntimeTrace, g: &GrowthFormula, range: Range) -> Result<BigUint> {
    trace.require_coverage(range)?;
    let mut best = BigUint::one();
    for (n, cost) in trace.points_in(range.n1, range.n0) {
        let c = ceil_ratio(cost, &g.eval(*n));
        if c > best {
            best = c;
        }
    }
    Ok(best)
}

/// Checks cost(n) ≤ c·g(n) at every covered n; reports the smallest
/// violating size otherwise.
pub fn bound_holds(
    trace: &RuntimeTrace,
    g: &GrowthFormula,
    c: &BigUint,
    range: Range,
) -> Result<BoundWitness> {
    trace.require_coverage(range)?;
    let cr = BigRational::from_integer(BigInt::from_biguint(Sign::Plus, c.clone()));
    let mut failing_n = None;
    for (n, cost) in trace.points_in(range.n1, range.n0) {
        let bound = &cr * g.eval(*n);
        let cost_r = BigRational::from_integer(BigInt::from_biguint(Sign::Plus, cost.clone()));
        if cost_r > bound {
            failing_n = Some(*n);
            break;
        }
    }
    let endpoint = min_const(trace, g, range)?;
    let midpoint = match min_const(trace, g, range.lower_half()) {
        Ok(c) => c,
        Err(Error::Coverage { .. }) => endpoint.clone(),
        Err(e) => return Err(e),
    };
    Ok(BoundWitness {
        holds: failing_n.is_none(),
        failing_n,
        const_at_endpoint: endpoint,
        const_at_midpoint: midpoint,
    })
}

/// The apparent-complexity test: the minimal constant over the full range
/// must be at most `h_at_n0` times the minimal constant over the lower
/// half `n1..floor((n1+n0)/2)`.
pub fn apparent_bound(
    trace: &RuntimeTrace,
    g: &GrowthFormula,
    h_at_n0: &BigRational,
    range: Range,
) -> Result<BoundWitness> {
    trace.require_coverage(range)?;
    let half = range.lower_half();
    let c_full = min_const(trace, g, range)?;
    let c_half = min_const(trace, g, half)?;
    let full_r = BigRational::from_integer(BigInt::from_biguint(Sign::Plus, c_full.clone()));
    let half_r = BigRational::from_integer(BigInt::from_biguint(Sign::Plus, c_half.clone()));
    let allowance = h_at_n0 * &half_r;
    let holds = full_r <= allowance;
    let failing_n = if holds {
        None
    } else {
        // The first point whose cost alone exceeds the allowed constant; the
        // endpoint when the excess comes from ceiling rounding only.
        let mut found = None;
        for (n, cost) in trace.points_in(range.n1, range.n0) {
            let bound = &allowance * g.eval(*n);
            let cost_r =
                BigRational::from_integer(BigInt::from_biguint(Sign::Plus, cost.clone()));
            if cost_r > bound {
                found = Some(*n);
                break;
            }
        }
        Some(found.unwrap_or(range.n0))
    };
    Ok(BoundWitness {
        holds,
        failing_n,
        const_at_endpoint: c_full,
        const_at_midpoint: c_half,
    })
}

/// The certain-complexity test: the apparent bound with factor 1 + 1/n0².
pub fn oc_bound(trace: &RuntimeTrace, g: &GrowthFormula, range: Range) -> Result<BoundWitness> {
    let n0 = BigInt::from(range.n0);
    let h = BigRational::one() + BigRational::new(BigInt::one(), &n0 * &n0);
    apparent_bound(trace, g, &h, range)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::ToPrimitive;

    fn dense(f: impl Fn(u64) -> u64, n1: u64, n0: u64) -> RuntimeTrace {
        RuntimeTrace::dense("f", n1, n0, |n| BigUint::from(f(n)))
    }

    fn rng(n1: u64, n0: u64) -> Range {
        Range::new(n1, n0).unwrap()
    }

    #[test]
    fn bound_equality_case_holds() {
        // f(n)=n² against n² with c=1.
        let t = dense(|n| n * n, 2, 10);
        let w = bound_holds(&t, &GrowthFormula::Poly(2), &BigUint::one(), rng(2, 10)).unwrap();
        assert!(w.holds);
        assert_eq!(w.failing_n, None);
    }

    #[test]
    fn bound_fails_at_smallest_violator() {
        // f(n)=2n against n with c=1 fails everywhere; smallest is n1.
        let t = dense(|n| 2 * n, 2, 5);
        let w = bound_holds(&t, &GrowthFormula::Poly(1), &BigUint::one(), rng(2, 5)).unwrap();
        assert!(!w.holds);
        assert_eq!(w.failing_n, Some(2));
    }

    #[test]
    fn min_const_exact_ratio() {
        let t = dense(|n| 3 * n, 2, 10);
        assert_eq!(
            min_const(&t, &GrowthFormula::Poly(1), rng(2, 10)).unwrap(),
            BigUint::from(3u32)
        );
    }

    #[test]
    fn min_const_ceiling_at_small_n() {
        // f(n)=n²+1: max ceil((n²+1)/n²) over [2..10] is 2, at n=2.
        let t = dense(|n| n * n + 1, 2, 10);
        assert_eq!(
            min_const(&t, &GrowthFormula::Poly(2), rng(2, 10)).unwrap(),
            BigUint::from(2u32)
        );
    }

    #[test]
    fn min_const_factorial_vs_exponential() {
        // max ceil(n!/2^n) over [2..4] = ceil(24/16) = 2.
        let fact = |n: u64| (1..=n).product::<u64>();
        let t = dense(fact, 2, 4);
        assert_eq!(
            min_const(&t, &GrowthFormula::exp_rate(1, 1), rng(2, 4)).unwrap(),
            BigUint::from(2u32)
        );
    }

    #[test]
    fn min_const_is_tight() {
        // Minimality: holds at min_const, fails at min_const - 1.
        let cases: Vec<(RuntimeTrace, GrowthFormula)> = vec![
            (dense(|n| 3 * n, 2, 50), GrowthFormula::Poly(1)),
            (dense(|n| n * n + 7, 2, 40), GrowthFormula::Poly(2)),
            (dense(|_| 5, 2, 30), GrowthFormula::Const(BigUint::one())),
            (dense(|n| n * n * n / 2 + 1, 2, 20), GrowthFormula::Poly(2)),
        ];
        for (t, g) in cases {
            let r = rng(2, t.last_n());
            let c = min_const(&t, &g, r).unwrap();
            assert!(bound_holds(&t, &g, &c, r).unwrap().holds);
            if c > BigUint::one() {
                let c1 = &c - BigUint::one();
                assert!(!bound_holds(&t, &g, &c1, r).unwrap().holds, "g={g}");
            }
        }
    }

    #[test]
    fn apparent_linear_under_constant_growth() {
        // f(n)=n vs g=1 on [2..100]: constants 100 (endpoint) vs 51
        // (midpoint floor(102/2)=51); factor 2 suffices.
        let t = dense(|n| n, 2, 100);
        let h = BigRational::from_integer(2.into());
        let w = apparent_bound(&t, &GrowthFormula::Const(BigUint::one()), &h, rng(2, 100)).unwrap();
        assert!(w.holds);
        assert_eq!(w.const_at_endpoint.to_u64(), Some(100));
        assert_eq!(w.const_at_midpoint.to_u64(), Some(51));
    }

    #[test]
    fn apparent_quadratic_fails_tight_factor() {
        // f(n)=n² vs g=n: ratio n, endpoint 100 vs midpoint 51, factor
        // 1+1/100² is far too small.
        let t = dense(|n| n * n, 2, 100);
        let h = BigRational::one()
            + BigRational::new(BigInt::one(), BigInt::from(100 * 100));
        let w = apparent_bound(&t, &GrowthFormula::Poly(1), &h, rng(2, 100)).unwrap();
        assert!(!w.holds);
        assert_eq!(w.const_at_endpoint.to_u64(), Some(100));
        assert_eq!(w.const_at_midpoint.to_u64(), Some(51));
        assert!(w.failing_n.is_some());
    }

    #[test]
    fn apparent_constant_function_is_stable() {
        let t = dense(|_| 9, 2, 64);
        let w = apparent_bound(
            &t,
            &GrowthFormula::Const(BigUint::from(9u32)),
            &BigRational::one(),
            rng(2, 64),
        )
        .unwrap();
        assert!(w.holds);
        assert_eq!(w.const_at_endpoint, w.const_at_midpoint);
    }

    #[test]
    fn oc_accepts_constant_ratio() {
        let t = dense(|n| 5 * n, 2, 1000);
        let w = oc_bound(&t, &GrowthFormula::Poly(1), rng(2, 1000)).unwrap();
        assert!(w.holds);
    }

    #[test]
    fn oc_rejects_quadratic_over_linear() {
        let t = dense(|n| n * n, 2, 100);
        let w = oc_bound(&t, &GrowthFormula::Poly(1), rng(2, 100)).unwrap();
        assert!(!w.holds);
    }

    #[test]
    fn oc_accepts_log_on_pow2_grid() {
        // ceil(log2 n) sampled on powers of two equals log2 n exactly, so
        // both reference constants are 1.
        let t = RuntimeTrace::pow2("log", 4, 256, |n| {
            BigUint::from((n as f64).log2().ceil() as u64)
        });
        let w = oc_bound(&t, &GrowthFormula::LogPow(1), rng(4, 256)).unwrap();
        assert!(w.holds);
        assert_eq!(w.const_at_endpoint, BigUint::one());
        assert_eq!(w.const_at_midpoint, BigUint::one());
    }

    #[test]
    fn oc_implies_any_looser_apparent_bound() {
        let traces = vec![
            dense(|n| n, 2, 64),
            dense(|n| n * n, 2, 64),
            dense(|_| 3, 2, 64),
            dense(|n| n * n + n, 2, 64),
        ];
        let gs = vec![
            GrowthFormula::Poly(1),
            GrowthFormula::Poly(2),
            GrowthFormula::Const(BigUint::from(3u32)),
        ];
        let r = rng(2, 64);
        for t in &traces {
            for g in &gs {
                let oc = oc_bound(t, g, r).unwrap();
                if oc.holds {
                    for extra in [0i64, 1, 10] {
                        let h = BigRational::one()
                            + BigRational::new(BigInt::one(), BigInt::from(64 * 64))
                            + BigRational::from_integer(extra.into());
                        assert!(apparent_bound(t, g, &h, r).unwrap().holds);
                    }
                }
            }
        }
    }
}
