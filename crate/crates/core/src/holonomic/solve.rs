//! Finds a telescoping certificate for a given operator at fixed `m, n`.
//!
//! Ansatz `R = x·P(x)/Q` with `P = Σ_{k ≤ d} c_k(a)·x^k`. Multiplying the
//! identity `L(F)/F = D_x R + R·Λ_x` by `Q^s`, `s = max(order, 2)`, gives
//!
//! ```text
//! Σ_i p_i·N_i·Q^{s−i} = Σ_k c_k · x^k·((k + e + 1)·Q − (m + 2)·x·Q_x)·Q^{s−2}
//! ```
//!
//! which is linear in the `c_k`. Comparing powers of `x` yields a system
//! over `ℚ[a]`, solved by fraction-free elimination with primitive-part
//! reduction of each row.

use crate::arith::{rational, MultiPoly, RatFunc, Rational, UniPoly, Var};

use super::certificate::Certificate;
use super::integrand::CertifiedIntegrand;
use super::operator::DiffOp;
use super::telescoping::telescoping_residual;
use super::HolonomicError;

/// Reduced fraction of univariate polynomials in `a`.
#[derive(Clone, Debug)]
struct Frac {
    num: UniPoly,
    den: UniPoly,
}

impl Frac {
    fn new(num: UniPoly, den: UniPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g).expect("gcd divides");
        let mut den = den.exact_div(&g).expect("gcd divides");
        let lc = den.leading().cloned().expect("nonzero denominator");
        num = num.scale(&lc.recip());
        den = den.scale(&lc.recip());
        Self { num, den }
    }

    fn zero() -> Self {
        Self {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    fn from_poly(p: UniPoly) -> Self {
        Self::new(p, UniPoly::one())
    }

    fn sub(&self, rhs: &Self) -> Self {
        Self::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    fn mul_poly(&self, p: &UniPoly) -> Self {
        Self::new(&self.num * p, self.den.clone())
    }

    fn div_poly(&self, p: &UniPoly) -> Self {
        Self::new(self.num.clone(), &self.den * p)
    }
}

fn row_content(row: &[UniPoly]) -> UniPoly {
    row.iter()
        .filter(|p| !p.is_zero())
        .fold(UniPoly::zero(), |g, p| g.gcd(p))
}

/// Solves `A·c = b` over `ℚ(a)`; free unknowns are set to zero.
fn solve_system(mut rows: Vec<Vec<UniPoly>>, ncols: usize) -> Result<Vec<Frac>, HolonomicError> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next_row = 0;
    for col in 0..ncols {
        let candidate = (next_row..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| rows[r][col].degree().unwrap_or(0));
        let Some(p) = candidate else { continue };
        rows.swap(next_row, p);
        let pivot_row = rows[next_row].clone();
        let piv = pivot_row[col].clone();
        for row in rows.iter_mut().skip(next_row + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            let new_row: Vec<UniPoly> = row
                .iter()
                .zip(&pivot_row)
                .map(|(x, y)| &(&piv * x) - &(&factor * y))
                .collect();
            let g = row_content(&new_row);
            *row = if g.is_zero() {
                new_row
            } else {
                new_row.iter().map(|p| p.exact_div(&g).expect("content divides")).collect()
            };
        }
        pivots.push((next_row, col));
        next_row += 1;
    }
    for row in &rows[next_row..] {
        if !row[ncols].is_zero() {
            return Err(HolonomicError::Inconsistent);
        }
    }
    let mut sol = vec![Frac::zero(); ncols];
    for &(r, col) in pivots.iter().rev() {
        let mut acc = Frac::from_poly(rows[r][ncols].clone());
        for (j, s) in sol.iter().enumerate().skip(col + 1) {
            if !rows[r][j].is_zero() {
                acc = acc.sub(&s.mul_poly(&rows[r][j]));
            }
        }
        sol[col] = acc.div_poly(&rows[r][col]);
    }
    Ok(sol)
}

fn specialize(p: &MultiPoly, m: &Rational, u: &Rational) -> MultiPoly {
    p.substitute(Var::M, m).substitute(Var::U, u)
}

/// Searches for `R = x·P(x)/Q` with `deg P ≤ degree_bound` at fixed
/// integer `m ≥ 0` and `n ≥ 1` (so `u = 1/n`).
pub fn certificate_solve(
    l: &DiffOp,
    f: &CertifiedIntegrand,
    m: i64,
    n: i64,
    degree_bound: usize,
) -> Result<Certificate, HolonomicError> {
    if m < 0 || n < 1 {
        return Err(HolonomicError::Domain(format!(
            "certificate_solve needs m ≥ 0 and n ≥ 1 (got m = {m}, n = {n})"
        )));
    }
    let mq = rational::int(m);
    let uq = rational::frac(1, n);
    let f_s = f.substitute(Var::M, &mq).substitute(Var::U, &uq);
    let l_s = DiffOp::new(l.coeffs().iter().map(|c| specialize(c, &mq, &uq)).collect())?;
    if l_s.is_zero() {
        return Ok(Certificate::zero());
    }
    let q = f_s.kernel().clone();
    let e = f_s
        .x_exponent()
        .as_constant()
        .expect("x exponent is parameter-only");
    let s = l_s.order().max(2);

    let (nums, _) = f_s.tower_numerators(Var::A, l_s.order());
    let mut lhs = MultiPoly::zero();
    for (i, (p, n_i)) in l_s.coeffs().iter().zip(&nums).enumerate() {
        lhs = lhs + &(p * n_i) * &q.pow((s - i) as u32);
    }

    let x = MultiPoly::var(Var::X);
    let qx = q.diff(Var::X).expect("x");
    let qpow = q.pow((s - 2) as u32);
    let m_plus_2 = MultiPoly::constant(&mq + rational::int(2));
    let columns: Vec<MultiPoly> = (0..=degree_bound)
        .map(|k| {
            let kk = MultiPoly::constant(rational::int(k as i64) + &e + rational::int(1));
            let inner = &kk * &q - &(&m_plus_2 * &x) * &qx;
            &(&x.pow(k as u32) * &inner) * &qpow
        })
        .collect();

    let max_deg = columns
        .iter()
        .map(|c| c.degree_in(Var::X))
        .chain(std::iter::once(lhs.degree_in(Var::X)))
        .max()
        .unwrap_or(0) as usize;
    let to_uni = |p: &MultiPoly| {
        UniPoly::from_multi(p, Var::A).expect("only a remains after specialization")
    };
    let col_coeffs: Vec<Vec<MultiPoly>> =
        columns.iter().map(|c| c.coefficients_in(Var::X)).collect();
    let lhs_coeffs = lhs.coefficients_in(Var::X);
    let mut rows = Vec::with_capacity(max_deg + 1);
    for d in 0..=max_deg {
        let mut row: Vec<UniPoly> = col_coeffs
            .iter()
            .map(|cc| cc.get(d).map(&to_uni).unwrap_or_default())
            .collect();
        row.push(lhs_coeffs.get(d).map(&to_uni).unwrap_or_default());
        if row.iter().any(|p| !p.is_zero()) {
            rows.push(row);
        }
    }

    let sol = solve_system(rows, degree_bound + 1)?;

    let common = sol.iter().fold(UniPoly::one(), |acc, c| {
        let g = acc.gcd(&c.den);
        (&acc * &c.den).exact_div(&g).expect("lcm")
    });
    let mut num = MultiPoly::zero();
    for (k, c) in sol.iter().enumerate() {
        if c.num.is_zero() {
            continue;
        }
        let scale = common.exact_div(&c.den).expect("lcm multiple");
        num = num + &(&c.num * &scale).to_multi(Var::A) * &x.pow(k as u32 + 1);
    }
    let den = &common.to_multi(Var::A) * &q;
    let cert = Certificate::new(RatFunc::new(num, den)?);
    if !telescoping_residual(&l_s, &cert, &f_s).is_zero() {
        return Err(HolonomicError::Inconsistent);
    }
    Ok(cert)
}
