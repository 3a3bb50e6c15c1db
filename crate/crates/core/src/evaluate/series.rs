use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::rational::{frac, from_f64, int, to_f64};
use crate::arith::Rational;
use crate::holonomic::fixtures::family_variant;
use crate::holonomic::recurrence::{ode_to_recurrence, Recurrence, StrideRatio};
use crate::special::series_bases;

use super::{EvalError, IntegralParams};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    pub tail_bound: f64,
}

/// Recurrence of the verified operator for the `x^{2n} + n·a·x^n + 1`
/// family; `u = 1/n` is left symbolic.
fn family_recurrence() -> &'static Recurrence {
    static REC: OnceLock<Recurrence> = OnceLock::new();
    REC.get_or_init(|| {
        let t = family_variant("corrected").expect("built-in fixture");
        ode_to_recurrence(&t.operator)
    })
}

/// Exact multipliers `q_l` and the scaled variable, shared by the
/// term-level and summing entry points.
struct Stream {
    ratio: StrideRatio,
    q: Vec<Rational>,
}

impl Stream {
    fn new(n: u32, m: u32) -> Result<Self, EvalError> {
        Ok(Self {
            ratio: StrideRatio::new(family_recurrence(), &int(m as i64), &frac(1, n as i64))?,
            q: vec![Rational::one(), Rational::one()],
        })
    }

    fn ratio(&self, l: usize) -> Result<Rational, EvalError> {
        Ok(self.ratio.at(l as i64)?)
    }

    fn get(&mut self, l: usize) -> Result<&Rational, EvalError> {
        while self.q.len() <= l {
            let k = self.q.len() - 2;
            let next = &self.q[k] * self.ratio(k)?;
            self.q.push(next);
        }
        Ok(&self.q[l])
    }
}

fn scaled_variable(n: u32, alpha: &Rational, a: &Rational) -> Rational {
    alpha * a / int(n as i64)
}

/// Exact terms `q_l·(α·a/n)^l` for `l < count`. The value of the series is
/// `c₀·Σ_even + c₁·Σ_odd`.
pub fn series_terms(
    n: u32,
    alpha: &Rational,
    m: u32,
    a: &Rational,
    count: usize,
) -> Result<Vec<Rational>, EvalError> {
    if n == 0 {
        return Err(EvalError::Domain("n must be at least 1".into()));
    }
    let t = scaled_variable(n, alpha, a);
    let mut s = Stream::new(n, m)?;
    let mut out = Vec::with_capacity(count);
    let mut tp = Rational::one();
    for l in 0..count {
        out.push(s.get(l)? * &tp);
        tp *= &t;
    }
    Ok(out)
}

/// Smallest index from which the stride ratio is monotone in `l`.
///
/// The ratio is `(n²/4)·(1 + (A·l + B)/((l+1)(l+2)))` with `A = 2m − 1`,
/// `B = 2v(2m + 2 − 2v) − 2`, `v = 1/(2n)`.
fn monotone_from(n: u32, m: u32) -> f64 {
    let v = 1.0 / (2.0 * n as f64);
    let a = 2.0 * m as f64 - 1.0;
    let b = 2.0 * v * (2.0 * m as f64 + 2.0 - 2.0 * v) - 2.0;
    if a <= 0.0 {
        // then B < 0 as well and the ratio stays below its limit
        return 0.0;
    }
    let disc = b * b + a * (2.0 * a - 3.0 * b);
    if disc < 0.0 {
        0.0
    } else {
        ((-b + disc.sqrt()) / a).max(0.0)
    }
}

fn check_series_domain(n: u32, t: &Rational) -> Result<(), EvalError> {
    if n == 0 {
        return Err(EvalError::Domain("n must be at least 1".into()));
    }
    // |α·a| = n·|t| < 2
    if (t.abs() * int(n as i64)) >= int(2) {
        return Err(EvalError::Divergence(format!(
            "|alpha*a| = {} must be below 2",
            to_f64(&(t.abs() * int(n as i64)))
        )));
    }
    Ok(())
}

/// Exact `[Σ_even, Σ_odd]` of `q_l t^l` over `l < count`, not reduced to
/// lowest terms (the reduction would dominate the cost).
///
/// Each parity class is a nested product `1 + r₀s(1 + r₂s(1 + …))` with
/// `s = t²`; evaluating it inside out over integers keeps one common
/// denominator and needs a single reduction at the end.
pub(crate) fn parity_sums(
    n: u32,
    m: u32,
    t: &Rational,
    count: usize,
) -> Result<[Rational; 2], EvalError> {
    let s = Stream::new(n, m)?;
    let sq = t * t;
    let (sp, sd) = (sq.numer().clone(), sq.denom().clone());
    let mut out = [Rational::zero(), Rational::zero()];
    for (p, slot) in out.iter_mut().enumerate() {
        if count <= p {
            continue;
        }
        let k = (count - p).div_ceil(2);
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for j in (0..k - 1).rev() {
            let r = s.ratio(p + 2 * j)?;
            let a_num = r.numer() * &sp;
            let a_den = r.denom() * &sd;
            num = &a_den * &den + a_num * num;
            den *= a_den;
        }
        if p == 1 {
            num *= t.numer();
            den *= t.denom();
        }
        *slot = Rational::new_raw(num, den);
    }
    Ok(out)
}

pub fn series_sum_exact(
    n: u32,
    alpha: &Rational,
    m: u32,
    a: &Rational,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesResult, EvalError> {
    let t = scaled_variable(n, alpha, a);
    check_series_domain(n, &t)?;
    let bases = series_bases(n, m);
    if t.is_zero() {
        return Ok(SeriesResult {
            value: bases.combine(&Rational::one(), &Rational::zero()),
            terms_used: 1,
            tail_bound: 0.0,
        });
    }
    let s = Stream::new(n, m)?;
    let tf = to_f64(&t);
    let t2 = tf * tf;
    let limit = t2 * (n as f64).powi(2) / 4.0;
    let mono = monotone_from(n, m);
    let base = [bases.c0, bases.c1];

    // float pass: log-magnitudes of the terms and running parity sums
    let ln_t = tf.abs().ln();
    let mut ln_q = vec![0.0f64, 0.0];
    let mut rho = Vec::new();
    let mut float_sums = [0.0f64, 0.0];
    let mut l = 0usize;
    let mut count = loop {
        while ln_q.len() < l + 6 {
            let k = ln_q.len() - 2;
            let r = to_f64(&s.ratio(k)?);
            rho.push(r.abs() * t2);
            ln_q.push(ln_q[k] + r.abs().ln());
        }
        for k in [l, l + 1] {
            float_sums[k % 2] += (ln_q[k] + k as f64 * ln_t).exp() * tf.signum().powi(k as i32);
        }
        l += 2;
        let est = base[0] * float_sums[0] + base[1] * float_sums[1];
        let tail = float_tail(&ln_q, &rho, &base, ln_t, l, limit, mono);
        if tail <= tol * est.abs() {
            break l;
        }
        if l >= max_terms {
            return Err(EvalError::Budget(max_terms));
        }
    };

    // exact pass; the float estimate may be off by cancellation, so recheck
    loop {
        let sums = parity_sums(n, m, &t, count)?;
        let value = bases.combine(&sums[0], &sums[1]);
        while ln_q.len() < count + 4 {
            let k = ln_q.len() - 2;
            let r = to_f64(&s.ratio(k)?);
            rho.push(r.abs() * t2);
            ln_q.push(ln_q[k] + r.abs().ln());
        }
        let tail = float_tail(&ln_q, &rho, &base, ln_t, count, limit, mono);
        if tail <= tol * value.abs() {
            return Ok(SeriesResult {
                value,
                terms_used: count,
                tail_bound: tail,
            });
        }
        if count >= max_terms {
            return Err(EvalError::Budget(max_terms));
        }
        count = (count + count / 4 + 2).min(max_terms) & !1;
    }
}

/// Geometric bound on `Σ_{k ≥ l} |c_k t^k|`, or `∞` while the stride ratio
/// is not yet monotone and below one.
fn float_tail(
    ln_q: &[f64],
    rho: &[f64],
    base: &[f64; 2],
    ln_t: f64,
    l: usize,
    limit: f64,
    mono: f64,
) -> f64 {
    if (l as f64) < mono {
        return f64::INFINITY;
    }
    let mut total = 0.0;
    for k in [l, l + 1] {
        let r = rho[k].max(limit);
        if r >= 1.0 {
            return f64::INFINITY;
        }
        let next = base[k % 2].abs() * (ln_q[k] + k as f64 * ln_t).exp();
        total += next / (1.0 - r);
    }
    total
}

pub fn series_sum(params: &IntegralParams, tol: f64, max_terms: usize) -> Result<SeriesResult, EvalError> {
    params.check_series()?;
    let alpha = from_f64(params.alpha).expect("finite");
    let a = from_f64(params.a).expect("finite");
    series_sum_exact(params.n, &alpha, params.m, &a, tol, max_terms)
}
