//! Rational scalars.
//!
//! `Rat` is an arbitrary-precision rational, always reduced to lowest terms
//! with a positive denominator (both invariants are maintained by
//! `num_rational::BigRational` on every construction).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` reduced. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// The value as an `i64`, if it is an integer that fits.
pub fn to_i64(r: &Rat) -> Option<i64> {
    if !is_integer(r) {
        return None;
    }
    let n = r.numer();
    let max = BigInt::from(i64::MAX);
    let min = BigInt::from(i64::MIN);
    if *n > max || *n < min {
        return None;
    }
    let (sign, digits) = n.to_u64_digits();
    let mag = digits.first().copied().unwrap_or(0);
    Some(match sign {
        num_bigint::Sign::Minus => -(mag as i64),
        _ => mag as i64,
    })
}

/// Rough size measure used for pivot selection: bits of numerator plus
/// denominator.
pub fn bit_size(r: &Rat) -> u64 {
    r.numer().abs().bits() + r.denom().bits()
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_positive_denominator() {
        let r = ratio(6, -4);
        assert_eq!(r, ratio(-3, 2));
        assert!(r.denom() > &BigInt::zero());
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn integer_conversions() {
        assert_eq!(to_i64(&rat(-7)), Some(-7));
        assert_eq!(to_i64(&ratio(1, 2)), None);
        assert!(is_integer(&ratio(4, 2)));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rat("3/4"), Some(ratio(3, 4)));
        assert_eq!(parse_rat("-12"), Some(rat(-12)));
        assert_eq!(parse_rat("1/0"), None);
    }
}
