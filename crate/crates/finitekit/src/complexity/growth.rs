//! The symbolic comparison-function family: constants, log powers,
//! polynomials, and exponentials `2^(r·n)`.

use num::bigint::Sign;
use num::{BigInt, BigRational, BigUint, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A growth formula g(n). Evaluation is exact rational arithmetic except
/// for the base-2 logarithm (and the fractional part of non-integer
/// exponentials), which are computed in binary floating point and rounded
/// to 12 significant digits, so every downstream comparison is exact and
/// reproducible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GrowthFormula {
    /// g(n) = c0, with c0 ≥ 1.
    Const(BigUint),
    /// g(n) = log2(n)^k, with k ≥ 1.
    LogPow(u32),
    /// g(n) = n^k, with k ≥ 0.
    Poly(u32),
    /// g(n) = 2^(r·n), with r > 0.
    Exp(BigRational),
}

impl GrowthFormula {
    pub fn exp_rate(num: i64, den: i64) -> Self {
        GrowthFormula::Exp(BigRational::new(num.into(), den.into()))
    }

    /// Checks the parameter invariants (LogPow k ≥ 1, Exp r > 0, Const ≥ 1).
    pub fn valid(&self) -> bool {
        match self {
            GrowthFormula::Const(c) => !c.is_zero(),
            GrowthFormula::LogPow(k) => *k >= 1,
            GrowthFormula::Poly(_) => true,
            GrowthFormula::Exp(r) => r.is_positive(),
        }
    }

    /// Evaluates g(n) as an exact positive rational. Requires n ≥ 2 so the
    /// logarithm is positive.
    pub fn eval(&self, n: u64) -> BigRational {
        assert!(n >= 2, "growth formulas are evaluated at n >= 2");
        match self {
            GrowthFormula::Const(c) => {
                BigRational::from_integer(BigInt::from_biguint(Sign::Plus, c.clone()))
            }
            GrowthFormula::LogPow(k) => {
                let l = round_sig12((n as f64).log2());
                pow_rational(&l, *k)
            }
            GrowthFormula::Poly(k) => {
                BigRational::from_integer(BigInt::from(n).pow(*k))
            }
            GrowthFormula::Exp(r) => {
                // 2^(r*n) = 2^q * 2^(s/t) with 0 <= s/t < 1; the integer
                // part is exact, the fractional part is rounded like the
                // logarithm above.
                let e = r * BigRational::from_integer(BigInt::from(n));
                let q = e.floor().to_integer();
                let frac = &e - BigRational::from_integer(q.clone());
                let q: u64 = q.to_u64().expect("exponent fits u64 at desk scale");
                let int_part = BigRational::from_integer(BigInt::from(2u32).pow(q as u32));
                if frac.is_zero() {
                    int_part
                } else {
                    let f = frac.to_f64().expect("fraction in [0,1)");
                    int_part * round_sig12(f.exp2())
                }
            }
        }
    }
}

impl fmt::Display for GrowthFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthFormula::Const(c) => write!(f, "{c}"),
            GrowthFormula::LogPow(k) => write!(f, "log^{k}(n)"),
            GrowthFormula::Poly(k) => write!(f, "n^{k}"),
            GrowthFormula::Exp(r) => write!(f, "2^({r}n)"),
        }
    }
}

fn pow_rational(x: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// Rounds a positive float to 12 significant decimal digits, exactly, as a
/// rational.
pub fn round_sig12(x: f64) -> BigRational {
    assert!(x > 0.0 && x.is_finite());
    let mag = x.log10().floor() as i32;
    let shift = 11 - mag; // 12 significant digits
    let scale = if shift >= 0 {
        BigInt::from(10u32).pow(shift as u32)
    } else {
        BigInt::one()
    };
    if shift >= 0 {
        let scaled = x * 10f64.powi(shift);
        BigRational::new(BigInt::from(scaled.round() as i128), scale)
    } else {
        // Very large values: keep integer rounding.
        BigRational::from_integer(BigInt::from(x.round() as i128))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    #[test]
    fn poly_is_exact() {
        let g = GrowthFormula::Poly(3);
        assert_eq!(g.eval(10), BigRational::from_integer(1000.into()));
    }

    #[test]
    fn log_of_power_of_two_is_exact() {
        let g = GrowthFormula::LogPow(1);
        assert_eq!(g.eval(1024), BigRational::from_integer(10.into()));
        let g2 = GrowthFormula::LogPow(2);
        assert_eq!(g2.eval(256), BigRational::from_integer(64.into()));
    }

    #[test]
    fn exp_integer_rate_is_exact() {
        let g = GrowthFormula::exp_rate(1, 1);
        assert_eq!(g.eval(10), BigRational::from_integer(1024.into()));
        let g9 = GrowthFormula::exp_rate(9, 1);
        assert_eq!(
            g9.eval(4),
            BigRational::from_integer(BigInt::from(1u64 << 36))
        );
    }

    #[test]
    fn exp_fractional_rate_close_to_float() {
        let g = GrowthFormula::exp_rate(1, 3);
        let v = g.eval(10); // 2^(10/3) = 10.079...
        let f = v.to_f64().unwrap();
        assert!((f - 10.0793683).abs() < 1e-5, "{f}");
    }

    #[test]
    fn round_sig12_round_trips_simple_values() {
        let r = round_sig12(3.0);
        assert_eq!(r, BigRational::from_f64(3.0).unwrap());
    }
}
