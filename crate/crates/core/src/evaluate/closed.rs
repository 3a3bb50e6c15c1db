use std::f64::consts::PI;

use num_traits::{One, Signed, Zero};

use crate::arith::rational::{frac, from_f64, int, to_f64};
use crate::arith::Rational;
use crate::special::{hyp2f1_terminating, pochhammer_exact};

use super::EvalError;

/// Exact coefficients `d_0(m), …, d_m(m)` of `P_m(a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyCoeffs {
    pub m: u32,
    pub coeffs: Vec<Rational>,
}

impl PolyCoeffs {
    pub fn eval(&self, a: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * a + c)
    }

    pub fn all_positive(&self) -> bool {
        self.coeffs.iter().all(Signed::is_positive)
    }

    /// `d_l² ≥ d_{l−1}·d_{l+1}` for every interior `l`.
    pub fn is_log_concave(&self) -> bool {
        self.coeffs
            .windows(3)
            .all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
    }
}

fn central_prefactor(m: u32) -> Rational {
    // binom(2m, m) / 4^m = (1/2)_m / m!
    pochhammer_exact(&frac(1, 2), m) / pochhammer_exact(&int(1), m)
}

/// `P_m(a) = binom(2m,m)/4^m · ₂F₁(−m, m+1; 1/2 − m; (a+1)/2)`, exactly.
pub fn boros_moll_value(m: u32, a: &Rational) -> Rational {
    let z = (a + int(1)) / int(2);
    let f = hyp2f1_terminating(m, &int(m as i64 + 1), &(frac(1, 2) - int(m as i64)), &z)
        .expect("c = 1/2 - m never hits a non-positive integer");
    central_prefactor(m) * f
}

pub fn boros_moll_coeffs(m: u32) -> PolyCoeffs {
    // Σ_k w_k ((1+a)/2)^k with w_k the ₂F₁ term coefficients
    let mm = int(m as i64);
    let c = frac(1, 2) - &mm;
    let mut coeffs = vec![Rational::zero(); m as usize + 1];
    let mut w = Rational::one();
    for k in 0..=m as usize {
        if k > 0 {
            let kk = int(k as i64 - 1);
            w = w * (&kk - &mm) * (&kk + &mm + int(1)) / ((&c + &kk) * int(k as i64) * int(2));
        }
        let mut binom = Rational::one();
        for (j, slot) in coeffs.iter_mut().enumerate().take(k + 1) {
            *slot += &w * &binom;
            binom = binom * int((k - j) as i64) / int(j as i64 + 1);
        }
    }
    let pre = central_prefactor(m);
    PolyCoeffs {
        m,
        coeffs: coeffs.into_iter().map(|c| c * &pre).collect(),
    }
}

/// `(π/2)·P_m(a) / (2(a+1))^{m+1/2}` for the quartic `x⁴ + 2a·x² + 1`.
pub fn closed_form_t1(m: u32, a: f64) -> Result<f64, EvalError> {
    if !(a > -1.0) || !a.is_finite() {
        return Err(EvalError::Domain(format!("closed form needs a > -1 (got {a})")));
    }
    let aq = from_f64(a).expect("finite");
    let p = boros_moll_value(m, &aq);
    let s = to_f64(&((&aq + Rational::one()) * int(2)));
    Ok(0.5 * PI * to_f64(&p) / (s.powi(m as i32) * s.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluate::{integral_quadrature, IntegralParams};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn small_cases() {
        assert_eq!(boros_moll_coeffs(0).coeffs, vec![int(1)]);
        assert_eq!(boros_moll_coeffs(1).coeffs, vec![frac(3, 2), int(1)]);
        // golden after the quadrature oracle below
        assert_eq!(
            boros_moll_coeffs(2).coeffs,
            vec![frac(21, 8), frac(15, 4), frac(3, 2)]
        );
        assert!(rel(closed_form_t1(0, 1.0).unwrap(), PI / 4.0) < 1e-15);
        let expect = 0.5 * PI * 0.5 * 2f64.powf(-1.5) * 3.0;
        assert!(rel(closed_form_t1(1, 0.0).unwrap(), expect) < 1e-15);
        assert!(closed_form_t1(0, -1.0).is_err());
    }

    #[test]
    fn coefficients_match_value_route() {
        for m in 0..=10 {
            let c = boros_moll_coeffs(m);
            assert_eq!(c.coeffs.len(), m as usize + 1);
            for a in [frac(-3, 4), int(0), frac(2, 7), int(5)] {
                assert_eq!(c.eval(&a), boros_moll_value(m, &a), "m={m}");
            }
        }
    }

    #[test]
    fn quadrature_oracle() {
        for m in 0..=6u32 {
            let c = boros_moll_coeffs(m);
            for (a, aq) in [(0.0, int(0)), (0.5, frac(1, 2))] {
                let q = integral_quadrature(&IntegralParams::quartic(m, a), 1e-13).unwrap();
                let lhs = 2.0 / PI * (2.0 * (a + 1.0)).powf(m as f64 + 0.5) * q.value;
                assert!(rel(lhs, to_f64(&c.eval(&aq))) < 1e-9, "m={m} a={a}");
            }
        }
    }

    #[test]
    fn positive_and_log_concave() {
        for m in 0..=20 {
            let c = boros_moll_coeffs(m);
            assert!(c.all_positive(), "m={m}");
            assert!(c.is_log_concave(), "m={m}");
        }
        let bad = PolyCoeffs {
            m: 2,
            coeffs: vec![int(1), int(1), int(3)],
        };
        assert!(!bad.is_log_concave());
    }
}
