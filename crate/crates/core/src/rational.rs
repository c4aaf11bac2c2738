//! Exact rationals and their `"p/q"` text form.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

use crate::error::{validation, Result};

pub use num_rational::BigRational as Rational;

/// Parses `"p/q"` or an integer string. Decimal notation is rejected so that
/// every value entering the exact engine is exactly what the user wrote.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let parse_int = |s: &str| -> Result<BigInt> {
        let s = s.trim();
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(validation(format!("not an exact rational: {text:?}")));
        }
        s.parse::<BigInt>()
            .map_err(|_| validation(format!("not an exact rational: {text:?}")))
    };
    match text.split_once('/') {
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(validation(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from_integer(parse_int(text)?)),
    }
}

/// Always `p/q`, including integers (`0/1`, `1/1`).
pub struct PQ<'a>(pub &'a Rational);

impl fmt::Display for PQ<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

pub fn format_rational(r: &Rational) -> String {
    PQ(r).to_string()
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

/// Lossy conversion for reporting and for the raster engine.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: scale down before dividing.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub(crate) fn is_unit_interval(lo: &Rational, hi: &Rational) -> bool {
    lo.is_zero() && hi.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rational("2").unwrap(), int(2));
        assert_eq!(parse_rational(" 1/-2 ").unwrap(), ratio(-1, 2));
    }

    #[test]
    fn rejects_decimals_and_garbage() {
        for bad in ["0.25", "1e3", "", "/", "1/0", "a/b", "1/2/3", "0.5/1"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn formats_integers_with_unit_denominator() {
        assert_eq!(format_rational(&int(0)), "0/1");
        assert_eq!(format_rational(&ratio(6, 8)), "3/4");
        assert_eq!(format_rational(&ratio(-1, 3)), "-1/3");
    }

    #[test]
    fn frac_is_in_unit_interval() {
        assert_eq!(frac(&ratio(7, 4)), ratio(3, 4));
        assert_eq!(frac(&ratio(-1, 4)), ratio(3, 4));
        assert_eq!(frac(&int(3)), int(0));
    }
}
