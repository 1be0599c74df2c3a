//! Exact rational scalars.
//!
//! All coefficients are `num_rational::BigRational`; this module only adds the
//! small amount of glue (parsing, formatting, integer conversion) the rest of
//! the crate needs.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn sign(s: i64) -> Rational {
    if s >= 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `(-1)^e` as a rational.
pub fn neg_one_pow(e: usize) -> Rational {
    if e % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Canonical text form: `n` for integers, `n/d` otherwise.
pub fn format(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Returns the value as an integer if it is one and fits in `i64`.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if !q.is_integer() {
        return None;
    }
    i64::try_from(q.numer().clone()).ok()
}

pub fn is_nonnegative_integer(q: &Rational) -> bool {
    q.is_integer() && !q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        assert_eq!(format(&ratio(6, -4)), "-3/2");
        assert_eq!(format(&int(7)), "7");
        assert_eq!(parse("-3/2").unwrap(), ratio(-3, 2));
        assert_eq!(parse("4/2").unwrap(), int(2));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn normalized_denominator_positive() {
        let q = ratio(3, -9);
        assert!(q.denom() > &BigInt::zero());
        assert_eq!(q, ratio(-1, 3));
    }
}
