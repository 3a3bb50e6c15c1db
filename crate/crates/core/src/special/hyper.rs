use num_traits::{One, Zero};

use crate::arith::rational::int;
use crate::arith::Rational;

use super::SpecialError;

/// Rising factorial `z(z+1)…(z+k−1)`.
pub fn pochhammer_exact(z: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut f = z.clone();
    for _ in 0..k {
        if f.is_zero() {
            return Rational::zero();
        }
        acc *= &f;
        f += Rational::one();
    }
    acc
}

/// `₂F₁(−m_neg, b; c; z)`, a sum of `m_neg + 1` terms.
pub fn hyp2f1_terminating(
    m_neg: u32,
    b: &Rational,
    c: &Rational,
    z: &Rational,
) -> Result<Rational, SpecialError> {
    let mut sum = Rational::one();
    let mut term = Rational::one();
    let a = int(-(m_neg as i64));
    for k in 0..m_neg {
        let ck = c + int(k as i64);
        if ck.is_zero() {
            return Err(SpecialError::ZeroDenominator(k as usize));
        }
        let kk = int(k as i64);
        term = term * (&a + &kk) * (b + &kk) * z / (ck * int(k as i64 + 1));
        sum += &term;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{frac, to_f64};
    use proptest::prelude::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer_exact(&frac(1, 2), 3), frac(15, 8));
        assert_eq!(pochhammer_exact(&int(-2), 3), int(0));
        assert_eq!(pochhammer_exact(&frac(7, 3), 0), int(1));
        assert_eq!(pochhammer_exact(&int(1), 5), int(120));
    }

    proptest! {
        #[test]
        fn pochhammer_splits(p in -30i64..30, q in 1i64..12, j in 0u32..8, k in 0u32..8) {
            let z = frac(p, q);
            let lhs = pochhammer_exact(&z, j + k);
            let rhs = pochhammer_exact(&z, j) * pochhammer_exact(&(&z + int(j as i64)), k);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn hyp2f1_matches_float_sum(m in 0u32..12, bp in -20i64..20, cp in 1i64..40, zp in -50i64..50) {
            let b = frac(bp, 3);
            let c = frac(cp, 7);
            let z = frac(zp, 17);
            let exact = to_f64(&hyp2f1_terminating(m, &b, &c, &z).unwrap());
            let (bf, cf, zf) = (to_f64(&b), to_f64(&c), to_f64(&z));
            let (mut s, mut t, mut scale) = (1.0f64, 1.0f64, 1.0f64);
            for k in 0..m {
                let k = k as f64;
                t *= (k - m as f64) * (bf + k) * zf / ((cf + k) * (k + 1.0));
                s += t;
                scale += t.abs();
            }
            // relative to the sum's magnitude; cancellation is measured by `scale`
            prop_assert!((exact - s).abs() <= 1e-12 * exact.abs().max(1e-300) + 1e-14 * scale);
        }
    }

    #[test]
    fn hyp2f1_examples() {
        let z = frac(3, 7);
        assert_eq!(hyp2f1_terminating(0, &int(5), &int(2), &z).unwrap(), int(1));
        // 1 + 4z
        assert_eq!(
            hyp2f1_terminating(1, &int(2), &frac(-1, 2), &z).unwrap(),
            int(1) + int(4) * &z
        );
        assert_eq!(hyp2f1_terminating(4, &int(2), &frac(1, 3), &int(0)).unwrap(), int(1));
        assert_eq!(
            hyp2f1_terminating(3, &int(1), &int(-1), &z).unwrap_err(),
            SpecialError::ZeroDenominator(1)
        );
    }
}
