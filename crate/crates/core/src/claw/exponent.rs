//! Query-complexity exponents as exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

fn pow(base: u32, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `(2^(l-1) - 1) / (2^l - 1)`, the exponent of `N` in Mclaw's query count.
///
/// # Panics
///
/// Panics if `l < 2`.
pub fn mclaw_exponent(l: u32) -> BigRational {
    assert!(l >= 2, "exponents are defined for l >= 2");
    BigRational::new(pow(2, l - 1) - 1, pow(2, l) - 1)
}

/// `(3^(l-1) - 1) / (2 * 3^(l-1))`, the exponent of the recursive HSX finder.
///
/// # Panics
///
/// Panics if `l < 2`.
pub fn hsx_exponent(l: u32) -> BigRational {
    assert!(l >= 2, "exponents are defined for l >= 2");
    let p = pow(3, l - 1);
    BigRational::new(&p - BigInt::one(), p * 2)
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("exponents are finite")
}

/// Decimal expansion truncated (not rounded) to `digits` places.
pub fn truncated_decimal(r: &BigRational, digits: u32) -> String {
    let scale = pow(10, digits);
    let scaled = (r * BigRational::from_integer(scale)).floor().to_integer();
    let s = format!("{:0>width$}", scaled.to_string(), width = digits as usize + 1);
    let (int, frac) = s.split_at(s.len() - digits as usize);
    format!("{int}.{frac}")
}

/// `(num, den)` of the Mclaw exponent as floats, for log-space arithmetic
/// that stays exact when `log2 N` is a multiple of `den`.
pub(crate) fn mclaw_exponent_parts(l: u32) -> (f64, f64) {
    let r = mclaw_exponent(l);
    (
        r.numer().to_f64().expect("finite"),
        r.denom().to_f64().expect("finite"),
    )
}
