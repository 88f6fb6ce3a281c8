//! Exact scalars.
//!
//! Coefficients are [`BigRational`] values, always kept in lowest terms with a
//! positive denominator. The textual form used by scheme files is
//! `-?digits(/digits)?`.

use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{FmmError, Result};

pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `-?digits(/digits)?`, rejecting a zero denominator.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || FmmError::Rational(text.to_string());
    let body = text.strip_prefix('-').unwrap_or(text);
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let is_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !is_digits(numer) || !denom.is_none_or(is_digits) {
        return Err(bad());
    }
    let mut n: BigInt = numer.parse().map_err(|_| bad())?;
    if body.len() != text.len() {
        n = -n;
    }
    let d: BigInt = match denom {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Lowest-terms rendering: `3`, `-3/2`.
pub fn render_rational(value: &Rational) -> String {
    value.to_string()
}

pub(crate) fn is_unit(value: &Rational) -> bool {
    value.is_integer() && value.numer().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_grammar() {
        assert_eq!(parse_rational("1").unwrap(), int(1));
        assert_eq!(parse_rational("-3/2").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse_rational("0").unwrap(), int(0));
        for bad in [
            "", "-", "1/", "/2", "1/0", "+1", "1.5", " 1", "1/-2", "--1", "a",
        ] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn renders_lowest_terms() {
        assert_eq!(render_rational(&frac(4, -6)), "-2/3");
        assert_eq!(render_rational(&int(-7)), "-7");
    }

    #[test]
    fn units() {
        assert!(is_unit(&int(1)));
        assert!(is_unit(&int(-1)));
        assert!(!is_unit(&int(2)));
        assert!(!is_unit(&frac(1, 2)));
    }

    proptest! {
        #[test]
        fn render_parse_roundtrip(n in any::<i64>(), d in 1i64..=i64::MAX) {
            let q = frac(n, d);
            prop_assert_eq!(parse_rational(&render_rational(&q)).unwrap(), q);
        }

        #[test]
        fn addition_is_exact(a in any::<i32>(), b in 1i32.., c in any::<i32>(), d in 1i32..) {
            let x = frac(a.into(), b.into());
            let y = frac(c.into(), d.into());
            prop_assert_eq!(&(&x + &y) - &y, x);
        }
    }
}
