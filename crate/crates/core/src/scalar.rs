//! Numeric backends for weights, tolerances and ranks.
//!
//! Every algorithm in the crate is generic over [`Scalar`]. Two backends are
//! provided: `f64` for fast approximate work and [`Rational`] (arbitrary
//! precision) for exact comparisons. The kernel condition and the referee's
//! constraint checks are comparison-sensitive, so the exact backend is the
//! authoritative one.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact arbitrary-precision rational.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid number literal `{literal}`: {reason}")]
pub struct ScalarParseError {
    pub literal: String,
    pub reason: &'static str,
}

impl ScalarParseError {
    fn new(literal: &str, reason: &'static str) -> Self {
        Self {
            literal: literal.to_string(),
            reason,
        }
    }
}

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Signed
    + Sum
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic and comparisons are exact.
    const EXACT: bool;

    fn from_i64(value: i64) -> Self;

    /// `numer / denom`; `denom` must be non-zero.
    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn to_f64(&self) -> f64;

    fn is_finite(&self) -> bool;

    /// Parses a decimal (`0.25`, `-3`, `1e-3` for floats) or a fraction `p/q`.
    fn parse_literal(literal: &str) -> Result<Self, ScalarParseError>;

    /// `self > 0`. Unlike `Signed::is_positive`, false for `0.0`.
    fn above_zero(&self) -> bool {
        *self > Self::zero()
    }

    /// `self < 0`. Unlike `Signed::is_negative`, false for `-0.0`.
    fn below_zero(&self) -> bool {
        *self < Self::zero()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(value: i64) -> Self {
        value as f64
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn parse_literal(literal: &str) -> Result<Self, ScalarParseError> {
        let s = literal.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: f64 = p
                .trim()
                .parse()
                .map_err(|_| ScalarParseError::new(literal, "bad numerator"))?;
            let q: f64 = q
                .trim()
                .parse()
                .map_err(|_| ScalarParseError::new(literal, "bad denominator"))?;
            if q == 0.0 {
                return Err(ScalarParseError::new(literal, "zero denominator"));
            }
            return Ok(p / q);
        }
        s.parse().map_err(|_| ScalarParseError::new(literal, "not a decimal"))
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(value: i64) -> Self {
        Rational::from_integer(BigInt::from(value))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn parse_literal(literal: &str) -> Result<Self, ScalarParseError> {
        let s = literal.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p = parse_exact_decimal(p.trim()).ok_or_else(|| ScalarParseError::new(literal, "bad numerator"))?;
            let q = parse_exact_decimal(q.trim()).ok_or_else(|| ScalarParseError::new(literal, "bad denominator"))?;
            if q.is_zero() {
                return Err(ScalarParseError::new(literal, "zero denominator"));
            }
            return Ok(p / q);
        }
        parse_exact_decimal(s).ok_or_else(|| ScalarParseError::new(literal, "not a decimal"))
    }
}

/// Exact decimal parse: optional sign, digits, optional fraction part.
fn parse_exact_decimal(s: &str) -> Option<Rational> {
    let (negative, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    // Bound the literal so a hostile input cannot request a gigantic power of ten.
    if int_part.len() + frac_part.len() > 4096 {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = Rational::new(numer, denom);
    Some(if negative { -value } else { value })
}

/// Smallest integer not below `value`, as a float-free count when possible.
pub(crate) fn ceil_ratio<S: Scalar>(numer: &S, denom: &S) -> f64 {
    (numer.to_f64() / denom.to_f64()).ceil()
}
