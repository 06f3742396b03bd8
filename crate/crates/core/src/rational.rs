//! Exact rational scalars.
//!
//! Every coordinate, weight and multiplier is a [`Rational`]: an
//! arbitrary-precision fraction kept in lowest terms with a positive
//! denominator. On the wire rationals are strings such as `"3/7"` or `"-2"`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `numer / denom`; panics on a zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    BigRational::from_integer(BigInt::from(value))
}

/// Parses `"a/b"` or an integer literal into a rational.
///
/// Only an optional leading minus on the numerator and ASCII digits are
/// accepted; decimals, exponents, whitespace inside the token, signs on the
/// denominator and zero denominators are rejected.
pub fn parse_rational(token: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational literal: {token:?}"));
    let (numer, denom) = match token.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (token, None),
    };
    let digits = numer.strip_prefix('-').unwrap_or(numer);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = match denom {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {token:?}")));
    }
    Ok(BigRational::new(numer, denom))
}

/// Canonical string form: `"p/q"` in lowest terms, or `"p"` when integral.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub fn parse_all(tokens: &[String]) -> Result<Vec<Rational>> {
    tokens.iter().map(|t| parse_rational(t)).collect()
}

pub fn format_all(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

pub fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, v| acc + v)
}

/// Scales a nonzero vector to the primitive integer vector with the same direction.
pub(crate) fn primitive_direction(values: &mut [Rational]) {
    let denom_lcm = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| v.numer() * (&denom_lcm / v.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return;
    }
    for (slot, v) in values.iter_mut().zip(ints) {
        *slot = BigRational::from_integer(v / &g);
    }
}
