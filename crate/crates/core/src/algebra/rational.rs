//! Exact rationals.
//!
//! `BigRational` already keeps values in lowest terms with a positive
//! denominator, so it is used directly. The helpers here cover the
//! constructors and the `num/den` text form used in reports.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `2^e` for any integer `e`.
pub fn pow2(e: i64) -> Rational {
    let mag = Rational::from_integer(BigInt::one() << e.unsigned_abs());
    if e >= 0 {
        mag
    } else {
        mag.recip()
    }
}

/// `(-1)^e`.
pub fn sign_pow(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}

/// Lossless `num/den` form; integers are written with denominator 1.
pub fn to_fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `num/den` or a bare integer.
pub fn parse_fraction(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Short human form: `3`, `-1/8`.
pub fn to_short_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(to_fraction_string(&r), "-3/2");
        assert_eq!(to_fraction_string(&int(5)), "5/1");
    }

    #[test]
    fn fraction_round_trip() {
        for r in [rat(-7, 5760), int(0), int(-48), rat(1, 3)] {
            assert_eq!(parse_fraction(&to_fraction_string(&r)), Some(r));
        }
        assert_eq!(parse_fraction("1/0"), None);
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(pow2(3), int(8));
        assert_eq!(pow2(-3), rat(1, 8));
        assert_eq!(pow2(0), int(1));
        assert_eq!(sign_pow(-3), int(-1));
        assert_eq!(factorial(5), int(120));
    }
}
