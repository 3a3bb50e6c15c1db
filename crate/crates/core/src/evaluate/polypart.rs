use std::f64::consts::PI;

use num_traits::{Signed, Zero};

use crate::arith::rational::{frac, int, to_f64};
use crate::arith::Rational;
use crate::special::{ln_gamma, pochhammer_exact, series_bases};

use super::closed::{boros_moll_coeffs, boros_moll_value};
use super::series::{parity_sums, series_terms};
use super::EvalError;

#[derive(Clone, Debug, PartialEq)]
pub struct PolypartReport {
    pub m: u32,
    pub a: Rational,
    pub exact: Rational,
    pub series_side: f64,
    pub deviation: f64,
}

/// `binom(z, k) = (−1)^k (−z)_k / k!`
fn binom(z: &Rational, k: u32) -> Rational {
    let sign = if k.is_multiple_of(2) { int(1) } else { int(-1) };
    sign * pochhammer_exact(&-z, k) / pochhammer_exact(&int(1), k)
}

/// Quartic-series coefficients `c_l` at unit argument (so the display's
/// sum is `4·Σ c_l a^l`).
fn unit_coefficients(m: u32, count: usize) -> Result<Vec<f64>, EvalError> {
    let q = series_terms(2, &int(2), m, &int(1), count)?;
    let b = series_bases(2, m);
    Ok(q.iter()
        .enumerate()
        .map(|(l, q)| if l % 2 == 0 { b.c0 } else { b.c1 } * to_f64(q))
        .collect())
}

fn relative(x: f64, exact: &Rational) -> f64 {
    let e = to_f64(exact);
    if exact.is_zero() {
        x.abs()
    } else {
        ((x - e) / e).abs()
    }
}

/// Compares exact `P_m(a)` with
/// `2^{m+3/2}(a+1)^{m+1/2}/(4π) · Σ_{l<truncation} (−1)^l 2^l … a^l`.
pub fn polypart_check(m: u32, a: &Rational, truncation: usize) -> Result<PolypartReport, EvalError> {
    if a.abs() >= int(1) {
        return Err(EvalError::Divergence(format!("|a| = {} must be below 1", to_f64(a))));
    }
    let [even, odd] = parity_sums(2, m, a, truncation)?;
    let sum = 4.0 * series_bases(2, m).combine(&even, &odd);
    let ap1 = to_f64(&(a + int(1)));
    let pre = 2f64.powf(m as f64 + 1.5) * ap1.powi(m as i32) * ap1.sqrt() / (4.0 * PI);
    let series_side = pre * sum;
    let exact = boros_moll_value(m, a);
    Ok(PolypartReport {
        m,
        a: a.clone(),
        deviation: relative(series_side, &exact),
        exact,
        series_side,
    })
}

/// Both readings of the coefficient-of-`a^n` convolution, against the
/// exact `d_n(m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DnReport {
    pub n_idx: u32,
    pub m: u32,
    pub exact: Rational,
    /// `l = 0..=n` with `binom(m+1/2, n−l)` and Gamma factors from
    /// `ln_gamma`.
    pub printed: f64,
    /// Coefficient `n` of the product of the truncated binomial series and
    /// the truncated integral series, built from the recurrence instead.
    pub cauchy: f64,
    pub printed_deviation: f64,
    pub cauchy_deviation: f64,
}

impl DnReport {
    /// Deviations are relative, or absolute when `d_n(m) = 0`.
    pub fn matching_readings(&self, tol: f64) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.printed_deviation <= tol {
            out.push("printed");
        }
        if self.cauchy_deviation <= tol {
            out.push("cauchy");
        }
        out
    }
}

pub fn dn_convolution(n_idx: u32, m: u32, truncation: usize) -> Result<DnReport, EvalError> {
    let half = frac(2 * m as i64 + 1, 2);
    let pre = 2f64.powf(m as f64 + 1.5) / (4.0 * PI);
    let mf = m as f64;

    let mut printed = 0.0;
    for l in 0..=n_idx {
        let lf = l as f64;
        let lg = ln_gamma(lf / 2.0 + 0.25)? + ln_gamma(mf + lf / 2.0 + 0.75)?
            - ln_gamma(lf + 1.0)?
            - ln_gamma(mf + 1.0)?;
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        printed += to_f64(&binom(&half, n_idx - l)) * sign * 2f64.powi(l as i32) * lg.exp();
    }
    printed *= pre;

    let coeffs = unit_coefficients(m, truncation + 1)?;
    let mut cauchy = 0.0;
    for k in 0..=truncation.min(n_idx as usize) {
        let l = n_idx as usize - k;
        if l <= truncation {
            cauchy += to_f64(&binom(&half, k as u32)) * 4.0 * coeffs[l];
        }
    }
    cauchy *= pre;

    let exact = boros_moll_coeffs(m)
        .coeffs
        .get(n_idx as usize)
        .cloned()
        .unwrap_or_else(Rational::zero);
    Ok(DnReport {
        n_idx,
        m,
        printed_deviation: relative(printed, &exact),
        cauchy_deviation: relative(cauchy, &exact),
        exact,
        printed,
        cauchy,
    })
}
