//! Dual numeric mode: exact rationals where the inputs are rational,
//! `f64` everywhere else. Code that works in either mode is generic
//! over [`Scalar`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, the exact arithmetic mode.
pub type Rational = num_rational::BigRational;

/// Numeric scalar usable as a probability or expectation value.
pub trait Scalar:
    Clone + Num + Signed + PartialOrd + fmt::Debug + fmt::Display + 'static
{
    /// Whether arithmetic in this mode is exact.
    const EXACT: bool;

    fn from_int(v: i64) -> Self;

    /// The fraction `num/den`. Panics if `den == 0`.
    fn ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Largest integer `<= self`.
    fn floor_int(&self) -> i64;

    fn is_integer(&self) -> bool;

    /// JSON form: rationals serialise as `"num/den"` strings, floats as numbers.
    fn json_value(&self) -> Value;

    fn from_json_value(v: &Value) -> Option<Self>;

    /// Parses `"a/b"`, decimal (`"0.35"`) or integer literals.
    fn parse(s: &str) -> Result<Self>;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn floor_int(&self) -> i64 {
        self.floor() as i64
    }

    fn is_integer(&self) -> bool {
        self.fract() == 0.0
    }

    fn json_value(&self) -> Value {
        serde_json::json!(self)
    }

    fn from_json_value(v: &Value) -> Option<Self> {
        match v {
            Value::Number(n) => n.as_f64(),
            Value::String(s) => Self::parse(s).ok(),
            _ => None,
        }
    }

    fn parse(s: &str) -> Result<Self> {
        if let Some((num, den)) = s.split_once('/') {
            let num: f64 = num
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
            let den: f64 = den
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
            if den == 0.0 {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(num / den)
        } else {
            s.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad number {s:?}")))
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn floor_int(&self) -> i64 {
        self.floor()
            .to_integer()
            .to_i64()
            .expect("floor out of i64 range")
    }

    fn is_integer(&self) -> bool {
        self.denom().is_one()
    }

    fn json_value(&self) -> Value {
        Value::String(format!("{}/{}", self.numer(), self.denom()))
    }

    fn from_json_value(v: &Value) -> Option<Self> {
        match v {
            Value::String(s) => Self::parse(s).ok(),
            Value::Number(n) => {
                let i = n.as_i64()?;
                Some(Self::from_int(i))
            }
            _ => None,
        }
    }

    fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: BigInt = num
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
            let den: BigInt = den
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(num, den))
        } else if let Some((int_part, frac_part)) = s.split_once('.') {
            let negative = int_part.trim_start().starts_with('-');
            let int_part = if int_part.is_empty() || int_part == "-" {
                BigInt::zero()
            } else {
                int_part
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?
            };
            if frac_part.is_empty() {
                return Ok(Rational::from_integer(int_part));
            }
            if !frac_part.chars().all(|c| c.is_ascii_digit()) {
                return Err(Error::Parse(format!("bad decimal {s:?}")));
            }
            let digits: BigInt = frac_part
                .parse()
                .map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?;
            let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
            let frac = Rational::new(digits, scale);
            let int = Rational::from_integer(int_part);
            Ok(if negative { int - frac } else { int + frac })
        } else {
            let int: BigInt = s
                .parse()
                .map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
            Ok(Rational::from_integer(int))
        }
    }
}

/// Shorthand for `Rational::ratio`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::ratio(num, den)
}

/// Validates `0 <= p <= 1/2`, the marginal range every KS-box operation accepts.
pub fn require_marginal<T: Scalar>(p: &T) -> Result<()> {
    if *p < T::zero() || *p > T::ratio(1, 2) {
        return Err(Error::InvalidMarginal { p: p.to_string() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(Rational::parse("1/2").unwrap(), rat(1, 2));
        assert_eq!(Rational::parse("0.35").unwrap(), rat(35, 100));
        assert_eq!(Rational::parse("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(Rational::parse("3").unwrap(), rat(3, 1));
        assert_eq!(Rational::parse("0.5").unwrap(), rat(1, 2));
        assert!(Rational::parse("1/0").is_err());
        assert!(Rational::parse("abc").is_err());
        assert_eq!(f64::parse("1/4").unwrap(), 0.25);
    }

    #[test]
    fn rational_json_round_trip() {
        let v = rat(21, 25).json_value();
        assert_eq!(v, Value::String("21/25".into()));
        assert_eq!(Rational::from_json_value(&v).unwrap(), rat(21, 25));
    }

    #[test]
    fn floor_and_integrality() {
        assert_eq!(rat(5, 2).floor_int(), 2);
        assert_eq!(rat(-5, 2).floor_int(), -3);
        assert!(rat(4, 2).is_integer());
        assert!(!rat(1, 3).is_integer());
        assert!(2.0f64.is_integer());
        assert_eq!(2.5f64.floor_int(), 2);
    }

    #[test]
    fn marginal_range() {
        assert!(require_marginal(&rat(1, 2)).is_ok());
        assert!(require_marginal(&rat(0, 1)).is_ok());
        assert!(require_marginal(&rat(51, 100)).is_err());
        assert!(require_marginal(&-0.1f64).is_err());
    }
}
