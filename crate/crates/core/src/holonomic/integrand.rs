use crate::arith::{MultiPoly, RatFunc, Var};

use super::grammar::is_parameter_only;
use super::HolonomicError;

/// `F = Q(x, a)^(-(m+1)) · x^e` with `e` a polynomial in the parameters.
///
/// `F` is never formed; everything goes through the logarithmic
/// derivatives `D F / F`, which are rational in `(x, a, m, u)`. The kernel
/// may carry a parameter-only scale factor (for example `u·z² + a·z + u`
/// stands for `z² + n·a·z + 1`); such a factor cancels in every
/// logarithmic derivative.
#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedIntegrand {
    kernel: MultiPoly,
    x_exponent: MultiPoly,
    /// `m + 1` until `m` is specialized.
    power: MultiPoly,
}

impl CertifiedIntegrand {
    pub fn new(kernel: MultiPoly, x_exponent: MultiPoly) -> Result<Self, HolonomicError> {
        if !kernel.contains(Var::X) {
            return Err(HolonomicError::Kernel("kernel must depend on x".into()));
        }
        let by_x = kernel.coefficients_in(Var::X);
        let constant = &by_x[0];
        let leading = by_x.last().unwrap();
        if constant.is_zero() || !is_parameter_only(constant) || constant != leading {
            return Err(HolonomicError::Kernel(format!(
                "constant term and leading x-coefficient must agree and be free of x and a \
                 (got `{constant}` and `{leading}`)"
            )));
        }
        if !is_parameter_only(&x_exponent) {
            return Err(HolonomicError::Kernel(
                "the x exponent may only involve m and u".into(),
            ));
        }
        Ok(Self {
            kernel,
            x_exponent,
            power: MultiPoly::var(Var::M) + MultiPoly::one(),
        })
    }

    /// Accepts a parsed kernel whose denominator is free of `x` and `a`.
    pub fn from_rational(kernel: &RatFunc, x_exponent: &RatFunc) -> Result<Self, HolonomicError> {
        if !is_parameter_only(kernel.den()) {
            return Err(HolonomicError::Kernel(
                "kernel must be a polynomial in x and a".into(),
            ));
        }
        let e = x_exponent.as_poly().ok_or_else(|| {
            HolonomicError::Kernel("the x exponent must be a polynomial in m and u".into())
        })?;
        Self::new(kernel.num().clone(), e)
    }

    /// `x⁴ + 2a·x² + 1` with no extra power of `x`.
    pub fn quartic() -> Self {
        let x = MultiPoly::var(Var::X);
        let a = MultiPoly::var(Var::A);
        Self::new(
            x.pow(4) + MultiPoly::int(2) * a * x.pow(2) + MultiPoly::one(),
            MultiPoly::zero(),
        )
        .expect("valid kernel")
    }

    pub fn kernel(&self) -> &MultiPoly {
        &self.kernel
    }

    pub fn x_exponent(&self) -> &MultiPoly {
        &self.x_exponent
    }

    /// `m + 1`, the power to which the kernel is inverted.
    pub(crate) fn main_power(&self) -> &MultiPoly {
        &self.power
    }

    /// Logarithmic derivative `D_var F / F`.
    pub fn log_derivative(&self, var: Var) -> RatFunc {
        self.logderiv_tower(var, 1).pop().expect("order 1")
    }

    /// `[G_0, …, G_order]` with `D_var^i F = G_i · F`.
    pub fn logderiv_tower(&self, var: Var, order: usize) -> Vec<RatFunc> {
        let (nums, base) = self.tower_numerators(var, order);
        nums.into_iter()
            .enumerate()
            .map(|(i, n)| RatFunc::new(n, base.pow(i as u32)).expect("kernel is nonzero"))
            .collect()
    }

    /// Numerators `N_i` of `G_i = N_i / base^i`, where `base = Q` for `a`
    /// and `base = x·Q` for `x`.
    ///
    /// `N_{i+1} = Q·∂N_i − (i + m + 1)·N_i·∂Q` in `a`, and
    /// `N_{i+1} = xQ·∂N_i − i·N_i·(Q + x·∂Q) + N_i·(e·Q − (m+1)·x·∂Q)` in `x`.
    pub(crate) fn tower_numerators(&self, var: Var, order: usize) -> (Vec<MultiPoly>, MultiPoly) {
        assert!(matches!(var, Var::X | Var::A), "towers exist only in x and a");
        let q = &self.kernel;
        let dq = q.diff(var).expect("x or a");
        let x = MultiPoly::var(Var::X);
        let base = match var {
            Var::A => q.clone(),
            _ => &x * q,
        };
        let mut nums = vec![MultiPoly::one()];
        for i in 0..order {
            let n = nums.last().unwrap();
            let dn = n.diff(var).expect("x or a");
            let k = MultiPoly::int(i as i64);
            let next = match var {
                Var::A => &dn * q - &(&(&k + self.main_power()) * n) * &dq,
                _ => {
                    let x_dq = &x * &dq;
                    &(&x * q) * &dn - &(&k * n) * &(q + &x_dq)
                        + n * &(&self.x_exponent * q - self.main_power() * &x_dq)
                }
            };
            nums.push(next);
        }
        (nums, base)
    }

    pub fn substitute(&self, var: Var, value: &crate::arith::Rational) -> Self {
        Self {
            kernel: self.kernel.substitute(var, value),
            x_exponent: self.x_exponent.substitute(var, value),
            power: self.power.substitute(var, value),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{frac, int, to_f64};
    use crate::arith::{Assignment, Rational};
    use crate::holonomic::grammar::parse_expr;

    fn rf(s: &str) -> RatFunc {
        parse_expr(s).unwrap()
    }

    #[test]
    fn order_zero_is_one() {
        let f = CertifiedIntegrand::quartic();
        for var in [Var::X, Var::A] {
            let t = f.logderiv_tower(var, 0);
            assert_eq!(t.len(), 1);
            assert_eq!(t[0], RatFunc::one());
        }
    }

    #[test]
    fn first_and_second_a_derivatives() {
        let f = CertifiedIntegrand::quartic();
        let t = f.logderiv_tower(Var::A, 2);
        assert_eq!(t[1], rf("-(m+1)*2*x^2/(x^4+2*a*x^2+1)"));
        assert_eq!(t[2], rf("(m+1)*(m+2)*4*x^4/(x^4+2*a*x^2+1)^2"));
    }

    #[test]
    fn x_derivative_with_power_of_x() {
        let f = CertifiedIntegrand::from_rational(&rf("z^2 + n*a*z + 1"), &rf("u - 1")).unwrap();
        let g1 = f.log_derivative(Var::X);
        let expect = rf("(u-1)/x - (m+1)*(2*x + n*a)/(x^2 + n*a*x + 1)");
        assert_eq!(g1, expect);
    }

    /// Central difference of `Q^-(m+1)` in exact rationals at integer m.
    fn finite_difference_ratio(a0: &Rational, x0: &Rational, m: u32, h: &Rational) -> f64 {
        let q = |a: &Rational| {
            let x2 = x0 * x0;
            &x2 * &x2 + int(2) * a * &x2 + int(1)
        };
        let f = |a: &Rational| crate::arith::rational::pow(&q(a), m + 1).recip();
        let d = (f(&(a0 + h)) - f(&(a0 - h))) / (int(2) * h);
        to_f64(&(d / f(a0)))
    }

    #[test]
    fn first_a_derivative_matches_finite_difference() {
        let f = CertifiedIntegrand::quartic();
        let g1 = &f.logderiv_tower(Var::A, 1)[1];
        let h = frac(1, 1_000_000);
        for (a0, x0, m) in [(frac(1, 3), frac(5, 4), 0u32), (frac(-1, 2), frac(2, 7), 3)] {
            let mut pt = Assignment::new();
            pt.insert(Var::A, a0.clone());
            pt.insert(Var::X, x0.clone());
            pt.insert(Var::M, int(m as i64));
            let exact = to_f64(&g1.eval(&pt).unwrap());
            let fd = finite_difference_ratio(&a0, &x0, m, &h);
            assert!((exact - fd).abs() <= 1e-9 * exact.abs().max(1.0), "{exact} vs {fd}");
        }
    }

    #[test]
    fn towers_follow_the_recursion() {
        // G_{i+1} = D G_i + G_i·Λ, checked with generic rational-function ops
        let f = CertifiedIntegrand::from_rational(&rf("x^2 + n*a*x + 1"), &rf("u - 1")).unwrap();
        for var in [Var::A, Var::X] {
            let t = f.logderiv_tower(var, 3);
            let lam = &t[1];
            for i in 0..3 {
                let next = &t[i].diff(var).unwrap() + &(&t[i] * lam);
                assert_eq!(next, t[i + 1], "{var} order {}", i + 1);
            }
        }
    }

    #[test]
    fn kernel_validation() {
        assert!(CertifiedIntegrand::from_rational(&rf("x^2 + 2"), &rf("0")).is_err());
        assert!(CertifiedIntegrand::from_rational(&rf("a + 1"), &rf("0")).is_err());
        assert!(CertifiedIntegrand::from_rational(&rf("x^2 + 1"), &rf("x")).is_err());
        assert!(CertifiedIntegrand::from_rational(&rf("(x^2+1)/x"), &rf("0")).is_err());
        assert!(CertifiedIntegrand::from_rational(&rf("z^2 + n*a*z + 1"), &rf("u-1")).is_ok());
    }
}
