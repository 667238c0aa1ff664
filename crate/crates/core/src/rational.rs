//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field: arbitrary-precision rationals, always in lowest terms.
pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q` (q > 0 after normalization).
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = |m: &str| Error::Domain(format!("invalid rational `{s}`: {m}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad("numerator"))?;
        let d: BigInt = d.trim().parse().map_err(|_| bad("denominator"))?;
        if d.is_zero() {
            return Err(bad("zero denominator"));
        }
        Ok(Q::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| bad("integer"))?;
        Ok(Q::from_integer(n))
    }
}

/// Nearest integer (ties away from zero).
pub fn round_q(x: &Q) -> BigInt {
    let two = BigInt::from(2);
    let num = x.numer() * two.clone() + x.denom() * if x.is_negative() { -1 } else { 1 };
    num / (x.denom() * two)
}
