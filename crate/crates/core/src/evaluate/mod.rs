//! Quadrature, series and closed-form evaluation of
//! `I = ∫₀^∞ dx / (x^{2n} + α·a·x^n + 1)^{m+1}`.
//!
//! Domain gates: the kernel is positive on `x > 0` iff `α·a > −2`; the
//! power series in `a` converges for `|α·a| < 2`; the closed form needs
//! `a > −1` (the `n = α = 2` case of the positivity gate).

mod closed;
mod polypart;
mod quadrature;
mod series;

use thiserror::Error;

use crate::holonomic::HolonomicError;
use crate::special::SpecialError;

pub use closed::{boros_moll_coeffs, boros_moll_value, closed_form_t1, PolyCoeffs};
pub use polypart::{dn_convolution, polypart_check, DnReport, PolypartReport};
pub use quadrature::{
    adaptive_gk15, integral_quadrature, unfolded_check, FoldCheck, QuadResult, QUAD_BUDGET,
};
pub use series::{series_sum, series_sum_exact, series_terms, SeriesResult};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series diverges: {0}")]
    Divergence(String),
    #[error("quadrature did not converge after {evaluations} evaluations (value {value}, error estimate {error})")]
    NonConvergence {
        value: f64,
        error: f64,
        evaluations: usize,
    },
    #[error("series needs more than {0} terms for the requested tolerance")]
    Budget(usize),
    #[error(transparent)]
    Holonomic(#[from] HolonomicError),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

/// Parameters of `∫₀^∞ (x^{2n} + α·a·x^n + 1)^{−(m+1)} dx`.
///
/// `α = n` is the generalized family, `(n, α) = (2, 2)` the quartic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralParams {
    pub n: u32,
    pub alpha: f64,
    pub m: u32,
    pub a: f64,
}

impl IntegralParams {
    pub fn new(n: u32, alpha: f64, m: u32, a: f64) -> Self {
        Self { n, alpha, m, a }
    }

    /// The quartic `x⁴ + 2a·x² + 1`.
    pub fn quartic(m: u32, a: f64) -> Self {
        Self::new(2, 2.0, m, a)
    }

    pub fn alpha_a(&self) -> f64 {
        self.alpha * self.a
    }

    fn check_finite(&self) -> Result<(), EvalError> {
        if self.n == 0 {
            return Err(EvalError::Domain("n must be at least 1".into()));
        }
        if !self.alpha.is_finite() || !self.a.is_finite() {
            return Err(EvalError::Domain("alpha and a must be finite".into()));
        }
        Ok(())
    }

    pub fn check_positivity(&self) -> Result<(), EvalError> {
        self.check_finite()?;
        if self.alpha_a() <= -2.0 {
            return Err(EvalError::Domain(format!(
                "alpha*a = {} must exceed -2 for the integral to exist",
                self.alpha_a()
            )));
        }
        Ok(())
    }

    pub fn check_series(&self) -> Result<(), EvalError> {
        self.check_finite()?;
        if self.alpha_a().abs() >= 2.0 {
            return Err(EvalError::Divergence(format!(
                "|alpha*a| = {} must be below 2",
                self.alpha_a().abs()
            )));
        }
        Ok(())
    }

    /// `(x^{2n} + α·a·x^n + 1)^{−(m+1)}`
    pub fn integrand(&self, x: f64) -> Result<f64, EvalError> {
        self.check_positivity()?;
        if !(x > 0.0) {
            return Err(EvalError::Domain(format!("x = {x} must be positive")));
        }
        Ok(self.kernel_power(x))
    }

    fn kernel_power(&self, x: f64) -> f64 {
        let xn = x.powi(self.n as i32);
        let q = xn * xn + self.alpha_a() * xn + 1.0;
        q.powi(-(self.m as i32 + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrand_examples() {
        assert_eq!(IntegralParams::quartic(0, 1.0).integrand(1.0).unwrap(), 0.25);
        assert_eq!(IntegralParams::new(1, 1.0, 0, 0.0).integrand(1.0).unwrap(), 0.5);
        let p = IntegralParams::new(3, 3.0, 4, 0.5);
        assert!((p.integrand(1e-9).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gates() {
        assert!(IntegralParams::quartic(0, -1.0).integrand(1.0).is_err());
        assert!(IntegralParams::quartic(0, 0.0).integrand(0.0).is_err());
        assert!(IntegralParams::quartic(0, -0.99).check_positivity().is_ok());
        assert!(matches!(
            IntegralParams::quartic(0, 1.5).check_series(),
            Err(EvalError::Divergence(_))
        ));
        assert!(IntegralParams::new(0, 1.0, 0, 0.0).check_positivity().is_err());
    }
}
