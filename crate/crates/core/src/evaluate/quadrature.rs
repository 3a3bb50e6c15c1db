use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{EvalError, IntegralParams};

/// Maximum integrand evaluations per integral.
pub const QUAD_BUDGET: usize = 1_000_000;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Clone, Copy, Debug)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    // largest error first; ties broken by position so the order is total
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

/// One 15-point Kronrod rule with the QUADPACK error heuristic.
fn gk15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Segment {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs = kron.abs();
    let mut fv = [(0.0, 0.0); 7];
    for (j, x) in XGK.iter().take(7).enumerate() {
        let (f1, f2) = (f(c - h * x), f(c + h * x));
        fv[j] = (f1, f2);
        kron += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kron;
    let mut asc = WGK[7] * (fc - mean).abs();
    for (j, (f1, f2)) in fv.iter().enumerate() {
        asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let (value, abs, asc) = (kron * h, abs * h.abs(), asc * h.abs());
    let mut error = ((kron - gauss) * h).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    if abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * abs);
    }
    Segment { lo, hi, value, error }
}

/// Globally adaptive Gauss–Kronrod on `[lo, hi]`: bisect the segment with
/// the largest error until the total is within `rel_tol·|value|`.
pub fn adaptive_gk15<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    rel_tol: f64,
    budget: usize,
) -> Result<QuadResult, EvalError> {
    let mut heap = BinaryHeap::new();
    heap.push(gk15(&f, lo, hi));
    let mut evaluations = 15;
    loop {
        // sum in left-to-right order so the result is schedule independent
        let mut segs: Vec<&Segment> = heap.iter().collect();
        segs.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let value: f64 = segs.iter().map(|s| s.value).sum();
        let error: f64 = segs.iter().map(|s| s.error).sum();
        if error <= rel_tol * value.abs() {
            return Ok(QuadResult {
                value,
                error_estimate: error,
                evaluations,
            });
        }
        let worst = heap.pop().expect("nonempty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if evaluations + 30 > budget || !(worst.lo < mid && mid < worst.hi) {
            return Err(EvalError::NonConvergence {
                value,
                error,
                evaluations,
            });
        }
        heap.push(gk15(&f, worst.lo, mid));
        heap.push(gk15(&f, mid, worst.hi));
        evaluations += 30;
    }
}

/// `∫₀^∞` via `x → 1/x` on `[1, ∞)`:
/// `∫₀¹ (1 + x^{2n(m+1)−2})·f(x) dx`.
pub fn integral_quadrature(params: &IntegralParams, tol: f64) -> Result<QuadResult, EvalError> {
    params.check_positivity()?;
    if !(tol >= 1e-13) {
        return Err(EvalError::Domain(format!("tolerance {tol} is below 1e-13")));
    }
    let k = (2 * params.n * (params.m + 1) - 2) as i32;
    let p = *params;
    adaptive_gk15(
        move |x| (1.0 + x.powi(k)) * p.kernel_power(x),
        0.0,
        1.0,
        tol,
        QUAD_BUDGET,
    )
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FoldCheck {
    pub folded: QuadResult,
    pub unfolded: QuadResult,
    pub cutoff: f64,
    /// Upper bound on `∫_X^∞`.
    pub tail_bound: f64,
}

impl FoldCheck {
    /// `folded − unfolded` must lie in `[−errs, tail + errs]`.
    pub fn consistent(&self) -> bool {
        let errs = self.folded.error_estimate + self.unfolded.error_estimate;
        let d = self.folded.value - self.unfolded.value;
        d >= -errs && d <= self.tail_bound + errs
    }
}

/// Integrates the original integrand on `[0, X]` and bounds the rest by
/// `(1 − 2X^{−n})^{−(m+1)} X^{1−2n(m+1)} / (2n(m+1) − 1)`, valid since
/// `α·a > −2`.
pub fn unfolded_check(params: &IntegralParams, tol: f64, cutoff: f64) -> Result<FoldCheck, EvalError> {
    let folded = integral_quadrature(params, tol)?;
    if !(cutoff > 2f64.powf(1.0 / params.n as f64)) {
        return Err(EvalError::Domain(format!("cutoff {cutoff} is too small")));
    }
    let p = *params;
    let unfolded = adaptive_gk15(move |x| p.kernel_power(x), 0.0, cutoff, tol, QUAD_BUDGET)?;
    let (n, m1) = (params.n as f64, params.m as f64 + 1.0);
    let s = 2.0 * n * m1 - 1.0;
    let tail_bound = (1.0 - 2.0 * cutoff.powf(-n)).powf(-m1) * cutoff.powf(-s) / s;
    Ok(FoldCheck {
        folded,
        unfolded,
        cutoff,
        tail_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn exact_anchors() {
        let q = integral_quadrature(&IntegralParams::quartic(0, 1.0), 1e-13).unwrap();
        assert!(rel(q.value, PI / 4.0) < 1e-12, "{q:?}");
        let q = integral_quadrature(&IntegralParams::new(1, 1.0, 0, 0.0), 1e-13).unwrap();
        assert!(rel(q.value, PI / 2.0) < 1e-12);
        let q = integral_quadrature(&IntegralParams::quartic(0, 0.0), 1e-13).unwrap();
        assert!(rel(q.value, PI / (2.0 * 2f64.sqrt())) < 1e-12);
        assert!(q.error_estimate >= 0.0 && q.error_estimate <= 1e-13 * q.value);
    }

    #[test]
    fn polynomial_is_exact() {
        let q = adaptive_gk15(|x| x.powi(12) - 3.0 * x, 0.0, 2.0, 1e-13, QUAD_BUDGET).unwrap();
        let exact = 2f64.powi(13) / 13.0 - 6.0;
        assert!(rel(q.value, exact) < 1e-14);
        assert_eq!(q.evaluations, 15);
    }

    #[test]
    fn budget_is_enforced() {
        let err = adaptive_gk15(|x| 1.0 / x.sqrt(), 0.0, 1.0, 1e-15, 300).unwrap_err();
        assert!(matches!(err, EvalError::NonConvergence { .. }));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(integral_quadrature(&IntegralParams::quartic(0, -1.0), 1e-12).is_err());
        assert!(integral_quadrature(&IntegralParams::quartic(0, 0.0), 1e-14).is_err());
    }

    #[test]
    fn fold_matches_unfolded() {
        for p in [
            IntegralParams::quartic(0, 0.3),
            IntegralParams::new(3, 3.0, 2, -0.5),
            IntegralParams::new(1, 0.5, 1, 1.9),
        ] {
            let c = unfolded_check(&p, 1e-12, 1e3).unwrap();
            assert!(c.consistent(), "{p:?} {c:?}");
        }
    }

    #[test]
    fn deterministic() {
        let p = IntegralParams::new(4, 4.0, 3, 0.2);
        let a = integral_quadrature(&p, 1e-12).unwrap();
        let b = integral_quadrature(&p, 1e-12).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }
}
