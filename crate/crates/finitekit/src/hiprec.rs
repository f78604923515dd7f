//! High-precision natural logarithms over exact rationals, precise enough
//! (roughly 50 significant digits) to decide the integer boundary
//! comparisons in the tractability tables without floating-point doubt.

use num::{BigInt, BigRational, BigUint, One, Signed};

/// ln(2) to 60 decimal digits.
const LN2: &str = "0.693147180559945309417232121458176568075500134360255254120680";

/// Number of decimal digits results are truncated to between operations.
const DIGITS: u32 = 60;

fn truncate(x: &BigRational) -> BigRational {
    let scale = BigInt::from(10u32).pow(DIGITS);
    let scaled = (x * BigRational::from_integer(scale.clone())).floor();
    BigRational::new(scaled.to_integer(), scale)
}

fn parse_decimal(s: &str) -> BigRational {
    let (int_part, frac_part) = s.split_once('.').unwrap();
    let digits: String = format!("{int_part}{frac_part}");
    let num: BigInt = digits.parse().unwrap();
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    BigRational::new(num, den)
}

pub fn ln2() -> BigRational {
    parse_decimal(LN2)
}

/// atanh(z) = z + z^3/3 + z^5/5 + ... for |z| < 1; terms truncated to the
/// working precision, stopping once a term falls below 10^-DIGITS.
fn atanh(z: &BigRational) -> BigRational {
    let eps = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(DIGITS));
    let z2 = truncate(&(z * z));
    let mut term = z.clone();
    let mut sum = z.clone();
    let mut k = 1u32;
    loop {
        term = truncate(&(&term * &z2));
        k += 2;
        let contrib = &term / BigRational::from_integer(k.into());
        if contrib.abs() < eps {
            break;
        }
        sum += contrib;
    }
    truncate(&sum)
}

/// ln of a positive rational: split into m·2^k with m in [1, 2), then
/// ln m = 2·atanh((m-1)/(m+1)) converges fast.
pub fn ln(x: &BigRational) -> BigRational {
    assert!(x.is_positive(), "ln of non-positive value");
    let two = BigRational::from_integer(2.into());
    let one = BigRational::one();
    let mut k: i64 = 0;
    let mut m = x.clone();
    while m >= two {
        m /= &two;
        k += 1;
    }
    while m < one {
        m *= &two;
        k -= 1;
    }
    let z = (&m - &one) / (&m + &one);
    let lnm = &atanh(&z) * &two;
    truncate(&(lnm + BigRational::from_integer(k.into()) * ln2()))
}

pub fn ln_biguint(x: &BigUint) -> BigRational {
    ln(&BigRational::from_integer(BigInt::from_biguint(
        num::bigint::Sign::Plus,
        x.clone(),
    )))
}

pub fn ln_u64(x: u64) -> BigRational {
    ln(&BigRational::from_integer(BigInt::from(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::ToPrimitive;

    #[test]
    fn ln_matches_f64_on_smalls() {
        for x in [2u64, 3, 10, 35, 342, 3162, 1_000_000] {
            let hi = ln_u64(x).to_f64().unwrap();
            let lo = (x as f64).ln();
            assert!((hi - lo).abs() < 1e-12, "{x}: {hi} vs {lo}");
        }
    }

    #[test]
    fn ln_of_power_of_two_is_k_ln2() {
        let l = ln_u64(1 << 20);
        let expect = ln2() * BigRational::from_integer(20.into());
        let diff = (&l - &expect).abs().to_f64().unwrap();
        assert!(diff < 1e-55);
    }

    #[test]
    fn ln_is_accurate_to_many_digits() {
        // ln(10) = 2.302585092994045684017991454684364207601101488628772976033...
        let l = ln_u64(10);
        let reference = parse_decimal(
            "2.302585092994045684017991454684364207601101488628772976033",
        );
        let diff = (&l - &reference).abs();
        let bound = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(50));
        assert!(diff < bound, "diff {}", diff.to_f64().unwrap());
    }
}
