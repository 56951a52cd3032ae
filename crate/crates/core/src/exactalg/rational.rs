//! Arbitrary-precision rationals and the `"num/den"` text form used by every
//! JSON artifact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{HilbError, Result};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `gcd(num, den) = 1` and `den > 0`.
pub fn is_reduced(q: &Rational) -> bool {
    q.denom().is_positive() && q.numer().gcd(q.denom()).is_one()
}

/// Formats as `"num/den"`; the denominator is always written.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `"num/den"` or a bare integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let parse_int =
        |s: &str| s.trim().parse::<BigInt>().map_err(|e| HilbError::Parse(format!("bad integer {s:?}: {e}")));
    match text.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(HilbError::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(parse_int(n)?, den))
        }
        None => Ok(Rational::from_integer(parse_int(text)?)),
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_round_trips() {
        for q in [rat(3, 2), rat(-7, 21), int(0), int(-5)] {
            assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
        assert_eq!(format_rational(&rat(2, -4)), "-1/2");
        assert_eq!(format_rational(&int(0)), "0/1");
        assert_eq!(parse_rational(" 12 ").unwrap(), int(12));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x/2").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn constructed_values_are_reduced() {
        assert!(is_reduced(&rat(6, -4)));
        assert!(is_reduced(&int(0)));
        assert_eq!(common_denominator(&[rat(1, 4), rat(1, 6), int(3)]), BigInt::from(12));
    }
}
