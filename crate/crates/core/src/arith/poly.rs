//! Sparse multivariate polynomials over the rationals in the fixed
//! variables `x, a, m, u`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{self, Rational};
use super::ArithError;

/// Ordered variable set. `x` is the integration variable, `a` the
/// parameter we differentiate in, `m` and `u = 1/n` are symbolic
/// parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    A,
    M,
    U,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::A, Var::M, Var::U];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::A => "a",
            Var::M => "m",
            Var::U => "u",
        }
    }

    /// Whether this variable is a parameter (not a differentiation variable).
    pub fn is_parameter(self) -> bool {
        matches!(self, Var::M | Var::U)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector in variable order `(x, a, m, u)`.
pub type Monomial = [u32; 4];

/// A point assignment for evaluation.
pub type Assignment = BTreeMap<Var, Rational>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, [0; 4])
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rational::int(c))
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Self::monomial(Rational::one(), e)
    }

    pub fn monomial(c: Rational, exps: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&[0; 4])
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Returns the constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    /// Returns the single term if this polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(Monomial, Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c.clone()))
        } else {
            None
        }
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v.index()]).max().unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e[v.index()] > 0)
    }

    fn add_term(&mut self, exps: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (*e, k * c))
                .collect(),
        }
    }

    /// Multiplies by a monomial `c * vars^exps`.
    pub fn mul_monomial(&self, exps: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, k)| {
                let mut ne = *e;
                for i in 0..4 {
                    ne[i] += exps[i];
                }
                (ne, k * c)
            })
            .collect();
        Self { terms }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Formal partial derivative. Only `x` and `a` are admissible.
    pub fn diff(&self, v: Var) -> Result<Self, ArithError> {
        if v.is_parameter() {
            return Err(ArithError::DiffParameter(v));
        }
        let i = v.index();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[i] -= 1;
            out.add_term(ne, c * rational::int(i64::from(e[i])));
        }
        Ok(out)
    }

    /// Substitutes a rational value for one variable.
    pub fn substitute(&self, v: Var, value: &Rational) -> Self {
        let i = v.index();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut ne = *e;
            ne[i] = 0;
            out.add_term(ne, c * rational::pow(value, e[i]));
        }
        out
    }

    /// Substitutes a polynomial for one variable.
    pub fn compose(&self, v: Var, value: &MultiPoly) -> Self {
        let i = v.index();
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::one()];
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            while powers.len() <= e[i] as usize {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut ne = *e;
            ne[i] = 0;
            let rest = Self::monomial(c.clone(), ne);
            out = out + &rest * &powers[e[i] as usize];
        }
        out
    }

    /// Exact value at a point. Every variable present must be assigned.
    pub fn eval(&self, point: &Assignment) -> Result<Rational, ArithError> {
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for v in Var::ALL {
                let k = e[v.index()];
                if k == 0 {
                    continue;
                }
                let val = point.get(&v).ok_or(ArithError::Unassigned(v))?;
                term *= rational::pow(val, k);
            }
            total += term;
        }
        Ok(total)
    }

    /// Coefficients with respect to powers of `v`: `self = Σ out[k]·v^k`.
    pub fn coefficients_in(&self, v: Var) -> Vec<MultiPoly> {
        let i = v.index();
        let deg = self.degree_in(v) as usize;
        let mut out = vec![MultiPoly::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (e, c) in &self.terms {
            let mut ne = *e;
            ne[i] = 0;
            out[e[i] as usize].add_term(ne, c.clone());
        }
        out
    }

    /// Largest monomial dividing every term, with unit coefficient.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return [0; 4];
        };
        let mut g = *first;
        for e in it {
            for i in 0..4 {
                g[i] = g[i].min(e[i]);
            }
        }
        g
    }

    /// Exact division by a monomial that divides every term.
    pub fn div_monomial(&self, exps: &Monomial, c: &Rational) -> Self {
        let inv = c.recip();
        let terms = self
            .terms
            .iter()
            .map(|(e, k)| {
                let mut ne = *e;
                for i in 0..4 {
                    debug_assert!(ne[i] >= exps[i]);
                    ne[i] -= exps[i];
                }
                (ne, k * &inv)
            })
            .collect();
        Self { terms }
    }

    /// Coefficient of the lexicographically largest monomial.
    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }
}

fn fmt_monomial(e: &Monomial) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        match e[v.index()] {
            0 => {}
            1 => parts.push(v.name().to_string()),
            k => parts.push(format!("{}^{}", v.name(), k)),
        }
    }
    parts.join("*")
}

/// Canonical rendering: terms in descending lexicographic order of
/// `(x, a, m, u)` exponents, explicit signs between terms.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = fmt_monomial(e);
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = *e1;
                for i in 0..4 {
                    e[i] += e2[i];
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
