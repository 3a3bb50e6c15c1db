//! Arbitrary-precision rationals.
//!
//! `BigRational` already keeps itself in lowest terms with a positive
//! denominator, so the domain type is a plain alias plus a few helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact binary value of a finite double.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Fallback for magnitudes outside the direct conversion path.
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn pow(q: &Rational, exp: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..exp {
        out *= q;
    }
    out
}

/// Parses `"p"` or `"p/q"`.
pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn is_negative(q: &Rational) -> bool {
    q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_form() {
        let q = frac(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(frac(0, 5), int(0));
        assert_eq!(frac(0, 5).denom(), &BigInt::from(1));
    }

    #[test]
    fn float_is_exact() {
        let q = from_f64(0.9).unwrap();
        assert_eq!(to_f64(&q), 0.9);
        assert!(q != frac(9, 10));
        assert_eq!(from_f64(0.5).unwrap(), frac(1, 2));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse("3/2"), Some(frac(3, 2)));
        assert_eq!(parse(" -7 "), Some(int(-7)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
    }

    #[test]
    fn reciprocal_round_trip() {
        for (a, b) in [(3, 7), (-5, 2), (11, -13)] {
            let q = frac(a, b);
            assert_eq!(&q * q.recip(), Rational::one());
        }
    }
}
