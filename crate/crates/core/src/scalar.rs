//! Exact rational scalars.
//!
//! All weights live in the field of rationals. [`Scalar`] is an arbitrary
//! precision fraction kept in canonical form (coprime numerator and
//! denominator, positive denominator), so equality is structural.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// An exact rational number.
pub type Scalar = BigRational;

/// Error returned when a rational literal cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Builds a scalar from a machine integer.
pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// Builds the fraction `num / den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `p` or `p/q` (optional leading sign on `p`, `q > 0`).
pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ScalarParseError::Empty);
    }
    let malformed = || ScalarParseError::Malformed(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num = parse_integer(num, true).ok_or_else(malformed)?;
    let den = match den {
        Some(d) => parse_integer(d, false).ok_or_else(malformed)?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(ScalarParseError::ZeroDenominator(text.to_string()));
    }
    Ok(Scalar::new(num, den))
}

fn parse_integer(text: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = match text.strip_prefix('-') {
        Some(rest) if allow_sign => rest,
        Some(_) => return None,
        None => text.strip_prefix('+').filter(|_| allow_sign).unwrap_or(text),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

/// Size measure used for pivot selection: bits of numerator plus bits of denominator.
pub fn bit_size(s: &Scalar) -> u64 {
    s.numer().bits() + s.denom().bits()
}

/// Writes a scalar as `p` or `p/q`; never decimalised.
pub struct Exact<'a>(pub &'a Scalar);

impl fmt::Display for Exact<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    let mut acc = BigInt::one();
    for v in values {
        let d = v.denom();
        if !d.is_one() {
            acc = acc.lcm(d);
        }
    }
    acc
}

/// Scales a rational vector to an integer vector with the given common denominator.
pub fn scale_to_integers(values: &[Scalar], denom: &BigInt) -> Vec<BigInt> {
    values
        .iter()
        .map(|v| {
            if v.denom().is_one() {
                v.numer() * denom
            } else {
                v.numer() * (denom / v.denom())
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_scalar("5").unwrap(), int(5));
        assert_eq!(parse_scalar("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(parse_scalar("+7").unwrap(), int(7));
        assert_eq!(parse_scalar("4/2").unwrap(), int(2));
    }

    #[test]
    fn rejects_bad_literals() {
        assert!(matches!(parse_scalar("3/0"), Err(ScalarParseError::ZeroDenominator(_))));
        assert!(matches!(parse_scalar("1/-2"), Err(ScalarParseError::Malformed(_))));
        assert!(matches!(parse_scalar("1.5"), Err(ScalarParseError::Malformed(_))));
        assert!(matches!(parse_scalar("--1"), Err(ScalarParseError::Malformed(_))));
        assert!(matches!(parse_scalar(""), Err(ScalarParseError::Empty)));
    }

    #[test]
    fn canonical_form_is_kept() {
        let s = ratio(6, -4);
        assert_eq!(s.numer(), &BigInt::from(-3));
        assert_eq!(s.denom(), &BigInt::from(2));
        assert_eq!(Exact(&s).to_string(), "-3/2");
        assert_eq!(Exact(&int(-4)).to_string(), "-4");
    }

    #[test]
    fn common_denominator_is_lcm() {
        let v = vec![ratio(1, 4), ratio(1, 6), int(3)];
        let d = common_denominator(&v);
        assert_eq!(d, BigInt::from(12));
        assert_eq!(
            scale_to_integers(&v, &d),
            vec![BigInt::from(3), BigInt::from(2), BigInt::from(36)]
        );
    }
}
