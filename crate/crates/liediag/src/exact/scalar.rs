//! Arbitrary-precision rationals. `BigRational` keeps the denominator
//! positive and the fraction reduced, which is exactly the invariant we need.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "3", "-5" or "3/4".
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad rational: {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator: {s:?}")));
            }
            Ok(Scalar::new(parse_int(n)?, den))
        }
        None => Ok(Scalar::from_integer(parse_int(s)?)),
    }
}

pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Positive gcd of two rationals: gcd of numerators over lcm of denominators.
/// gcd(0, x) = |x|.
pub fn rational_gcd(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let n = num::Integer::gcd(a.numer(), b.numer());
    let d = num::Integer::lcm(a.denom(), b.denom());
    Scalar::new(n, d).abs()
}
