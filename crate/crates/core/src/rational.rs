//! Exact rational scalars and their canonical text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-0.125"` exactly.
pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some(split) = text.find(['e', 'E']) {
        let mantissa = parse(&text[..split])?;
        let exponent: i32 = text[split + 1..].parse().map_err(|_| bad())?;
        let scale = Rational::from_integer(BigInt::from(10)).pow(exponent);
        return Ok(mantissa * scale);
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.trim_start().starts_with('-');
        let whole: BigInt = match whole {
            "" | "-" | "+" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let digits: BigInt = frac.parse().map_err(|_| bad())?;
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let frac = Rational::new(digits, denom);
        let whole = Rational::from_integer(whole);
        return Ok(if negative { whole - frac } else { whole + frac });
    }
    let p: BigInt = text.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// Canonical text: reduced `"p/q"`, or `"p"` for integers.
pub fn format(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn sqrt_exact(value: &Rational) -> Option<Rational> {
    if value.is_negative() {
        return None;
    }
    let n = value.numer().sqrt();
    let d = value.denom().sqrt();
    if &(&n * &n) == value.numer() && &(&d * &d) == value.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Sign as -1, 0 or 1.
pub fn sign(value: &Rational) -> i32 {
    if value.is_zero() {
        0
    } else if value.is_positive() {
        1
    } else {
        -1
    }
}
