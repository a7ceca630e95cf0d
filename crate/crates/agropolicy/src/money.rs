//! Exact monetary arithmetic.
//!
//! Per-hectare tax amounts are held as rationals (UAH) for the whole
//! computation and rounded half-up to whole hryvnias only when a report
//! is written. Statutory rates are parsed from decimal literals into
//! exact fractions, so e.g. 0.95% of UAH 28,000 is exactly 266.

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::ModelError;

/// Exact rational amount, in UAH (or a dimensionless fraction for rates).
pub type Rational = Ratio<i128>;

pub fn ratio(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

pub fn zero() -> Rational {
    Rational::zero()
}

/// Round half-up (towards +inf on ties) to whole UAH.
pub fn round_uah(x: Rational) -> i64 {
    (x + ratio(1, 2)).floor().to_integer() as i64
}

pub fn to_f64(x: Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Finite and strictly positive (rejects NaN and infinities).
pub fn is_positive(x: f64) -> bool {
    x.is_finite() && x > 0.0
}

/// Finite and non-negative (rejects NaN and infinities).
pub fn is_non_negative(x: f64) -> bool {
    x.is_finite() && x >= 0.0
}

/// Parse a decimal literal (`28000`, `0.0095`, `-0.3`) into an exact fraction.
pub fn parse_decimal(s: &str) -> Result<Rational, ModelError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ModelError::BadNumber(s.to_string()));
    }
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1i128, rest),
        None => (1i128, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(ModelError::BadNumber(s.to_string()));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
        || frac_part.len() > 18
    {
        return Err(ModelError::BadNumber(s.to_string()));
    }
    let int_val: i128 = if int_part.is_empty() {
        0
    } else {
        int_part
            .parse()
            .map_err(|_| ModelError::BadNumber(s.to_string()))?
    };
    let mut num = int_val;
    let mut den = 1i128;
    for c in frac_part.chars() {
        num = num * 10 + (c as u8 - b'0') as i128;
        den *= 10;
    }
    Ok(Rational::new(sign * num, den))
}

/// Render a fraction whose reduced denominator divides a power of ten back
/// into the shortest decimal literal. Used by the scenario echo so that
/// re-parsing reproduces the identical value.
pub fn format_decimal(x: Rational) -> String {
    let neg = x < Rational::zero();
    let x = x.abs();
    let mut den = *x.denom();
    // scale denominator up to a power of ten
    let mut pow10: u32 = 0;
    let mut d = den;
    while d % 2 == 0 {
        d /= 2;
    }
    while d % 5 == 0 {
        d /= 5;
    }
    if d != 1 {
        // not exactly representable in decimal; fall back to f64 rendering
        return format!("{}", to_f64(if neg { -x } else { x }));
    }
    let mut scale = 1i128;
    while den % 10 == 0 {
        den /= 10;
        pow10 += 1;
    }
    // den is now 2^a 5^b with no factor of 10; multiply up
    while den != 1 {
        if den % 2 == 0 {
            den /= 2;
            scale *= 5;
        } else {
            den /= 5;
            scale *= 2;
        }
        pow10 += 1;
    }
    let digits = x.numer() * scale;
    let base = 10i128.pow(pow10);
    let int_part = digits / base;
    let frac_part = digits % base;
    let sign = if neg { "-" } else { "" };
    if frac_part == 0 {
        format!("{sign}{int_part}")
    } else {
        let frac = format!("{:0width$}", frac_part, width = pow10 as usize);
        let frac = frac.trim_end_matches('0');
        format!("{sign}{int_part}.{frac}")
    }
}
