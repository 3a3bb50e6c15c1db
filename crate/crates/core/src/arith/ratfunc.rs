//! Rational functions `num / den` without gcd normalization.
//!
//! Equality is decided by expanding the cross product to zero. The only
//! simplification performed is cancellation of common monomial factors
//! and making the denominator's leading coefficient 1, which keeps
//! denominators built from `u = 1/n` readable.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{Assignment, MultiPoly, Var};
use super::rational::Rational;
use super::ArithError;

#[derive(Clone, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Self { num, den }.tidy())
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        Self {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn into_parts(self) -> (MultiPoly, MultiPoly) {
        (self.num, self.den)
    }

    /// True iff the numerator expands to the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Returns the polynomial if the denominator is a nonzero constant.
    pub fn as_poly(&self) -> Option<MultiPoly> {
        let c = self.den.as_constant()?;
        Some(self.num.scale(&c.recip()))
    }

    fn tidy(mut self) -> Self {
        if self.num.is_zero() {
            self.den = MultiPoly::one();
            return self;
        }
        let gn = self.num.monomial_content();
        let gd = self.den.monomial_content();
        let mut g = [0u32; 4];
        for i in 0..4 {
            g[i] = gn[i].min(gd[i]);
        }
        let lc = self
            .den
            .leading_coefficient()
            .cloned()
            .unwrap_or_else(Rational::one);
        if g != [0; 4] || !lc.is_one() {
            self.num = self.num.div_monomial(&g, &lc);
            self.den = self.den.div_monomial(&g, &lc);
        }
        self
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self, ArithError> {
        if rhs.num.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self {
            num: &self.num * &rhs.den,
            den: &self.den * &rhs.num,
        }
        .tidy())
    }

    pub fn pow(&self, exp: u32) -> Self {
        Self {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }

    /// Quotient rule. Admissible variables are `x` and `a`.
    pub fn diff(&self, v: Var) -> Result<Self, ArithError> {
        let dn = self.num.diff(v)?;
        let dd = self.den.diff(v)?;
        if dd.is_zero() {
            return Ok(Self {
                num: dn,
                den: self.den.clone(),
            }
            .tidy());
        }
        Ok(Self {
            num: &dn * &self.den - &self.num * &dd,
            den: self.den.pow(2),
        }
        .tidy())
    }

    pub fn substitute(&self, v: Var, value: &Rational) -> Result<Self, ArithError> {
        Self::new(self.num.substitute(v, value), self.den.substitute(v, value))
            .map_err(|_| ArithError::DenominatorVanishes)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .tidy()
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        Self {
            num: &self.num * p,
            den: self.den.clone(),
        }
        .tidy()
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &Assignment) -> Result<Rational, ArithError> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(ArithError::DenominatorVanishes);
        }
        Ok(self.num.eval(point)? / d)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.num.contains(v) || self.den.contains(v)
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        (&self.num * &other.den - &other.num * &self.den).is_zero()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            }
            .tidy();
        }
        RatFunc {
            num: &self.num * &rhs.den + &rhs.num * &self.den,
            den: &self.den * &rhs.den,
        }
        .tidy()
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
        .tidy()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
