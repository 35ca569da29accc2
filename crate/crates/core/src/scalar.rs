//! Exact rational scalars.
//!
//! `num`'s `BigRational` already maintains the invariants we need: values are
//! kept in lowest terms with a positive denominator, and arithmetic never
//! rounds.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

pub type Scalar = BigRational;

/// Scalar from a machine integer.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Scalar from a numerator/denominator pair. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_zero(s: &Scalar) -> bool {
    s.is_zero()
}

pub fn is_one(s: &Scalar) -> bool {
    s.is_one()
}

/// Canonical text form: `numerator` or `numerator/denominator`.
pub fn to_string(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parses the canonical text form produced by [`to_string`].
pub fn parse(text: &str) -> Option<Scalar> {
    let mut parts = text.splitn(2, '/');
    let numer: BigInt = parts.next()?.parse().ok()?;
    match parts.next() {
        None => Some(BigRational::from_integer(numer)),
        Some(d) => {
            let denom: BigInt = d.parse().ok()?;
            if denom.is_zero() || denom.is_negative() {
                None
            } else {
                Some(BigRational::new(numer, denom))
            }
        }
    }
}

/// Rounds to the nearest `f64`; used only by the numeric module.
pub fn to_f64(s: &Scalar) -> f64 {
    num::traits::ToPrimitive::to_f64(s).unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let s = ratio(4, -6);
        assert_eq!(to_string(&s), "-2/3");
        assert_eq!(parse("-2/3"), Some(s));
        assert_eq!(parse("5"), Some(int(5)));
        assert!(parse("1/0").is_none());
        assert!(parse("1/-2").is_none());
    }
}
