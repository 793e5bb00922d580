//! Exact rational weights.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Parses `"3"`, `"-7/2"`, `"+4/6"` into a reduced rational.
///
/// Only integer and `p/q` literals are accepted. Decimal points, exponents,
/// embedded whitespace and zero denominators are rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Rational(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numerator = parse_integer(num, true).ok_or_else(bad)?;
    let denominator = match den {
        Some(d) => parse_integer(d, false).ok_or_else(bad)?,
        None => BigInt::from(1),
    };
    if denominator == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(numerator, denominator))
}

fn parse_integer(text: &str, signed: bool) -> Option<BigInt> {
    let digits = match text.as_bytes().first()? {
        b'-' | b'+' if signed => &text[1..],
        _ => text,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

/// Renders a rational in the form accepted by [`parse_rational`].
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub(crate) fn abs(value: &Rational) -> Rational {
    value.abs()
}
