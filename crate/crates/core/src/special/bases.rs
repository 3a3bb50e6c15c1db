use std::f64::consts::PI;

use crate::arith::rational::{frac, int, to_f64};
use num_bigint::BigInt;

use crate::arith::Rational;

use super::hyper::pochhammer_exact;

/// The `l = 0` and `l = 1` series coefficients, each stored as a float
/// factor times an exact rational: `c_p = kappa[p]·ratio[p]`.
///
/// With `v = 1/(2n)` and `t = 1/2 − v`, reflection gives
/// `c₀ = (πv/sin πv)·(1−v)_m/m!` and `c₁ = −½·(πt/sin πt)·(3/2−v)_m/m!`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesBases {
    pub n: u32,
    pub m: u32,
    pub c0: f64,
    pub c1: f64,
    pub kappa: [f64; 2],
    pub ratio: [Rational; 2],
}

fn x_over_sin(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x / x.sin()
    }
}

pub fn series_bases(n: u32, m: u32) -> SeriesBases {
    assert!(n >= 1, "n must be positive");
    let v = frac(1, 2 * n as i64);
    let m_fact = pochhammer_exact(&int(1), m);
    let r0 = pochhammer_exact(&(int(1) - &v), m) / &m_fact;
    let r1 = pochhammer_exact(&(frac(3, 2) - &v), m) / &m_fact;
    let vf = 1.0 / (2.0 * n as f64);
    let tf = 0.5 - vf;
    let k0 = x_over_sin(PI * vf);
    let k1 = -0.5 * x_over_sin(PI * tf);
    SeriesBases {
        n,
        m,
        c0: k0 * to_f64(&r0),
        c1: k1 * to_f64(&r1),
        kappa: [k0, k1],
        ratio: [r0, r1],
    }
}

impl SeriesBases {
    /// `c₀·even + c₁·odd`. For `n = 2` both factors share `π/(2√2)` and the
    /// combination is formed exactly before the single rounding, which
    /// matters when the two halves cancel.
    ///
    /// Inputs need not be in lowest terms; nothing here reduces them.
    pub fn combine(&self, even: &Rational, odd: &Rational) -> f64 {
        let [r0, r1] = &self.ratio;
        if self.n == 2 {
            // r0·E − (r1/2)·O over the common denominator
            let left = r0.numer() * even.numer() * r1.denom() * odd.denom() * 2;
            let right = r1.numer() * odd.numer() * r0.denom() * even.denom();
            let den = r0.denom() * even.denom() * r1.denom() * odd.denom() * 2;
            self.kappa[0] * raw_to_f64(left - right, den)
        } else {
            self.kappa[0] * raw_to_f64(r0.numer() * even.numer(), r0.denom() * even.denom())
                + self.kappa[1] * raw_to_f64(r1.numer() * odd.numer(), r1.denom() * odd.denom())
        }
    }
}

fn raw_to_f64(num: BigInt, den: BigInt) -> f64 {
    to_f64(&Rational::new_raw(num, den))
}
