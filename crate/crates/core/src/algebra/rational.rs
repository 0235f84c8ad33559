use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Shorthand constructor for small literals. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    rational_normalize(&BigInt::from(n), &BigInt::from(d)).expect("nonzero denominator")
}

pub fn rational_normalize(n: &BigInt, d: &BigInt) -> Result<Rational> {
    if d.is_zero() {
        return Err(Error::InvalidRational);
    }
    // BigRational::new reduces and moves the sign to the numerator.
    Ok(BigRational::new(n.clone(), d.clone()))
}

/// Serializes as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p/q"` or a bare integer. Decimal and exponent literals are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    let parse_int = |x: &str| -> Result<BigInt> {
        let x = x.trim();
        let digits = x.strip_prefix(['+', '-']).unwrap_or(x);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        x.trim_start_matches('+').parse::<BigInt>().map_err(|_| bad())
    };
    match t.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            rational_normalize(&n, &d)
        }
        None => Ok(Rational::from_integer(parse_int(t)?)),
    }
}

/// Parses a rational or a plain decimal literal such as `-0.25` into its exact value.
/// Only used for sample-grid bounds.
pub fn parse_decimal(s: &str) -> Result<Rational> {
    if let Ok(q) = parse_rational(s) {
        return Ok(q);
    }
    let t = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    let (neg, body) = match t.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').ok_or_else(bad)?;
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let d = num_traits::pow(BigInt::from(10), frac_part.len());
    let q = Rational::new(n, d);
    Ok(if neg { -q } else { q })
}

/// Floating rendering for plotting and diagnostics only.
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}
