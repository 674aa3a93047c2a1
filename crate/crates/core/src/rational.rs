//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"3"`, `"-1.25"`, `"7/2"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    if let Some((whole, fractional)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if !digits.chars().all(|c| c.is_ascii_digit())
            || !fractional.chars().all(|c| c.is_ascii_digit())
            || (digits.is_empty() && fractional.is_empty())
        {
            return None;
        }
        let mantissa: BigInt = format!("{digits}{fractional}").parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), fractional.len());
        let value = Rational::new(mantissa, scale);
        return Some(if negative { -value } else { value });
    }
    s.parse::<BigInt>().ok().map(Rational::from_integer)
}

/// Least common multiple of the denominators (1 for an empty slice).
pub fn common_denominator(values: &[Rational]) -> BigInt {
    values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn is_integral(value: &Rational) -> bool {
    value.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integer_decimal_and_fraction() {
        assert_eq!(parse_rational("3"), Some(int(3)));
        assert_eq!(parse_rational("1.5"), Some(frac(3, 2)));
        assert_eq!(parse_rational("7/2"), Some(frac(7, 2)));
        assert_eq!(parse_rational("-0.25"), Some(frac(-1, 4)));
        assert_eq!(parse_rational(".5"), Some(frac(1, 2)));
        assert_eq!(parse_rational(" 4/6 "), Some(frac(2, 3)));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1/0", "1.2.3", "1e3", "."] {
            assert_eq!(parse_rational(bad), None, "{bad}");
        }
    }

    #[test]
    fn common_denominator_is_lcm() {
        let v = [frac(1, 2), frac(1, 4), int(0), frac(5, 6)];
        assert_eq!(common_denominator(&v), BigInt::from(12));
    }
}
