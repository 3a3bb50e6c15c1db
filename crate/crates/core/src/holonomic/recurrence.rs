//! Coefficient recurrences of power-series solutions.
//!
//! If `y(a) = Σ c_l a^l` is annihilated by `Σ p_i(a) D_a^i`, then each
//! monomial `φ·a^j·D_a^i` contributes `φ·(l+i−j)(l+i−j−1)⋯(l−j+1)` to the
//! coefficient of `c_{l+i−j}` in the coefficient of `a^l`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{rational, MultiPoly, Rational, Var};

use super::operator::DiffOp;
use super::HolonomicError;

/// Polynomial in the recurrence index `l` with coefficients in `(m, u)`:
/// `Σ coeffs[k]·l^k`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IndexPoly {
    coeffs: Vec<MultiPoly>,
}

impl IndexPoly {
    pub fn new(mut coeffs: Vec<MultiPoly>) -> Self {
        while coeffs.last().is_some_and(MultiPoly::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: MultiPoly) -> Self {
        Self::new(vec![c])
    }

    /// `l + s`
    pub fn shifted_index(s: i64) -> Self {
        Self::new(vec![MultiPoly::int(s), MultiPoly::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = MultiPoly::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::default();
        }
        let mut out = vec![MultiPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, p) in self.coeffs.iter().enumerate() {
            for (j, q) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(p * q);
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        Self::new(self.coeffs.iter().map(|p| p * c).collect())
    }

    /// `p(l) ↦ p(l + s)`
    pub fn shift(&self, s: i64) -> Self {
        let step = Self::shifted_index(s);
        let mut out = Self::default();
        for c in self.coeffs.iter().rev() {
            out = out.mul(&step).add(&Self::constant(c.clone()));
        }
        out
    }

    /// Coefficients in `l` with `m`, `u` fixed.
    pub fn specialize(&self, m: &Rational, u: &Rational) -> Vec<Rational> {
        self.coeffs
            .iter()
            .map(|c| {
                c.substitute(Var::M, m)
                    .substitute(Var::U, u)
                    .as_constant()
                    .expect("recurrence coefficients involve only m and u")
            })
            .collect()
    }

    /// Value at integer `l` with `m`, `u` fixed.
    pub fn eval(&self, l: i64, m: &Rational, u: &Rational) -> Rational {
        horner(&self.specialize(m, u), l)
    }
}

fn horner(coeffs: &[Rational], l: i64) -> Rational {
    let lq = rational::int(l);
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * &lq + c)
}

impl fmt::Display for IndexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let wrapped = if c.num_terms() > 1 { format!("({text})") } else { text };
            let body = match k {
                0 => wrapped,
                _ => {
                    let lpow = if k == 1 { "l".to_string() } else { format!("l^{k}") };
                    match c.as_constant() {
                        Some(q) if q.is_one() => lpow,
                        Some(q) if (-q.clone()).is_one() => format!("-{lpow}"),
                        _ => format!("{wrapped}*{lpow}"),
                    }
                }
            };
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            f.write_str(&body)?;
        }
        Ok(())
    }
}

/// `Σ_j q_j(l)·c_{l+j} = 0` with offsets `j ≥ 0`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Recurrence {
    terms: BTreeMap<usize, IndexPoly>,
}

impl Recurrence {
    pub fn new(terms: BTreeMap<usize, IndexPoly>) -> Self {
        Self {
            terms: terms.into_iter().filter(|(_, p)| !p.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &BTreeMap<usize, IndexPoly> {
        &self.terms
    }

    pub fn coefficient(&self, offset: usize) -> Option<&IndexPoly> {
        self.terms.get(&offset)
    }

    pub fn offsets(&self) -> Vec<usize> {
        self.terms.keys().copied().collect()
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0 = 0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(j, p)| {
                let idx = if *j == 0 { "l".to_string() } else { format!("l+{j}") };
                format!("({p})*c({idx})")
            })
            .collect();
        write!(f, "{} = 0", parts.join(" + "))
    }
}

/// `(l + s)(l + s − 1)⋯(l + s − i + 1)`
fn falling(s: i64, i: usize) -> IndexPoly {
    let mut out = IndexPoly::constant(MultiPoly::one());
    for k in 0..i as i64 {
        out = out.mul(&IndexPoly::shifted_index(s - k));
    }
    out
}

/// Translates an operator in `D_a` into the recurrence satisfied by the
/// Taylor coefficients at `a = 0`, shifted so the smallest offset is 0.
pub fn ode_to_recurrence(l: &DiffOp) -> Recurrence {
    let mut raw: BTreeMap<i64, IndexPoly> = BTreeMap::new();
    for (i, p) in l.coeffs().iter().enumerate() {
        for (j, phi) in p.coefficients_in(Var::A).into_iter().enumerate() {
            if phi.is_zero() {
                continue;
            }
            let offset = i as i64 - j as i64;
            let contrib = falling(offset, i).scale(&phi);
            let slot = raw.entry(offset).or_default();
            *slot = slot.add(&contrib);
        }
    }
    raw.retain(|_, p| !p.is_zero());
    let Some(&min) = raw.keys().next() else {
        return Recurrence::default();
    };
    Recurrence::new(
        raw.into_iter()
            .map(|(off, p)| ((off - min) as usize, p.shift(-min)))
            .collect(),
    )
}

/// Exact multipliers `q_l` with `c_l = q_l · base(l mod 2)`, where
/// `base(0) = c₀` and `base(1) = c₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientStream {
    multipliers: Vec<Rational>,
}

impl CoefficientStream {
    pub fn multipliers(&self) -> &[Rational] {
        &self.multipliers
    }

    pub fn len(&self) -> usize {
        self.multipliers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multipliers.is_empty()
    }

    pub fn get(&self, l: usize) -> Option<&Rational> {
        self.multipliers.get(l)
    }

    pub fn parity(l: usize) -> usize {
        l % 2
    }

    /// `q_{l+2} / q_l`
    pub fn stride_ratio(&self, l: usize) -> Option<Rational> {
        let lo = self.multipliers.get(l)?;
        let hi = self.multipliers.get(l + 2)?;
        (!lo.is_zero()).then(|| hi / lo)
    }
}

/// `q_{l+2}/q_l = −p₀(l)/p₂(l)` for a two-term recurrence with offsets
/// `{0, 2}`, specialized at fixed `m`, `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct StrideRatio {
    p0: Vec<Rational>,
    p2: Vec<Rational>,
}

impl StrideRatio {
    pub fn new(rec: &Recurrence, m: &Rational, u: &Rational) -> Result<Self, HolonomicError> {
        match (rec.coefficient(0), rec.coefficient(2)) {
            (Some(p0), Some(p2)) if rec.terms().len() == 2 => Ok(Self {
                p0: p0.specialize(m, u),
                p2: p2.specialize(m, u),
            }),
            _ => Err(HolonomicError::UnsupportedRecurrence(rec.offsets())),
        }
    }

    pub fn at(&self, l: i64) -> Result<Rational, HolonomicError> {
        let lead = horner(&self.p2, l);
        if lead.is_zero() {
            return Err(HolonomicError::LeadingVanishes { l });
        }
        Ok(-horner(&self.p0, l) / lead)
    }
}

pub fn stride_ratio_at(
    rec: &Recurrence,
    l: i64,
    m: &Rational,
    u: &Rational,
) -> Result<Rational, HolonomicError> {
    StrideRatio::new(rec, m, u)?.at(l)
}

/// Unrolls a two-term recurrence with offsets `{0, 2}` from `q₀ = q₁ = 1`.
pub fn unroll(
    rec: &Recurrence,
    m: i64,
    u: &Rational,
    count: usize,
) -> Result<CoefficientStream, HolonomicError> {
    if m < 0 || !u.is_positive() || u > &Rational::one() {
        return Err(HolonomicError::Domain(format!(
            "unroll needs m ≥ 0 and 0 < u ≤ 1 (got m = {m}, u = {u})"
        )));
    }
    // built up front so bad recurrences fail even for tiny counts
    let ratio = StrideRatio::new(rec, &rational::int(m), u)?;
    let mut multipliers: Vec<Rational> = Vec::with_capacity(count);
    for l in 0..count {
        let q = if l < 2 {
            Rational::one()
        } else {
            &multipliers[l - 2] * ratio.at(l as i64 - 2)?
        };
        multipliers.push(q);
    }
    Ok(CoefficientStream { multipliers })
}
