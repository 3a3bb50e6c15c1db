use std::fmt;
use std::ops::Add;

use crate::arith::{MultiPoly, Rational, Var};

use super::grammar::{is_parameter_only, OperatorExpr};
use super::HolonomicError;

/// `Σ coeffs[i] · D_a^i` with polynomial coefficients in `(a, m, u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp {
    coeffs: Vec<MultiPoly>,
}

impl DiffOp {
    pub fn new(mut coeffs: Vec<MultiPoly>) -> Result<Self, HolonomicError> {
        if coeffs.iter().any(|c| c.contains(Var::X)) {
            return Err(HolonomicError::Operator(
                "operator coefficients may not depend on x".into(),
            ));
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(MultiPoly::zero());
        }
        Ok(Self { coeffs })
    }

    pub fn zero() -> Self {
        Self {
            coeffs: vec![MultiPoly::zero()],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    /// Clears parameter-only monomial denominators (such as powers of `u`
    /// coming from `n`). Returns the operator and the monomial it was
    /// multiplied by; a certificate paired with it must be scaled alike.
    pub fn from_expr(expr: &OperatorExpr) -> Result<(Self, MultiPoly), HolonomicError> {
        let mut lcm = [0u32; 4];
        for c in &expr.coeffs {
            if c.is_zero() {
                continue;
            }
            let (e, _) = c.den().as_monomial().filter(|_| is_parameter_only(c.den())).ok_or_else(|| {
                HolonomicError::Operator(format!(
                    "coefficient `{c}` is not polynomial up to a parameter monomial"
                ))
            })?;
            for i in 0..4 {
                lcm[i] = lcm[i].max(e[i]);
            }
        }
        let scale = MultiPoly::monomial(Rational::from_integer(1.into()), lcm);
        let mut coeffs = Vec::with_capacity(expr.coeffs.len());
        for c in &expr.coeffs {
            let scaled = c.mul_poly(&scale);
            coeffs.push(scaled.as_poly().ok_or_else(|| {
                HolonomicError::Operator(format!("could not clear denominator of `{c}`"))
            })?);
        }
        Ok((Self::new(coeffs)?, scale))
    }

    pub fn substitute(&self, var: Var, value: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.substitute(var, value)).collect())
            .expect("substitution keeps x out")
    }
}

impl Add<&DiffOp> for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = MultiPoly::zero();
        DiffOp::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
        .expect("sum keeps x out")
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*D_a")?,
                _ => write!(f, "({c})*D_a^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
