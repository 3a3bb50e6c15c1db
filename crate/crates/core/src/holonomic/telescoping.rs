//! Exact check of the creative-telescoping identity `L(F) = D_x(R·F)`.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{random_point, ArithError, Assignment, MultiPoly, RatFunc, Rational, Var};

use super::certificate::Certificate;
use super::integrand::CertifiedIntegrand;
use super::operator::DiffOp;

/// Number of random rational points in a spot check.
pub const SPOT_CHECKS: usize = 5;

/// `(L F)/F`: `Σ p_i·G_i` over the common denominator `Q^r`.
fn operator_part(l: &DiffOp, f: &CertifiedIntegrand) -> RatFunc {
    let r = l.order();
    let (nums, q) = f.tower_numerators(Var::A, r);
    let mut acc = MultiPoly::zero();
    for (i, (p, n)) in l.coeffs().iter().zip(&nums).enumerate() {
        if p.is_zero() {
            continue;
        }
        acc = acc + &(p * n) * &q.pow((r - i) as u32);
    }
    RatFunc::new(acc, q.pow(r as u32)).expect("kernel is nonzero")
}

/// `D_x(R·F)/F = D_x R + R·(D_x F / F)`.
fn certificate_part(cert: &Certificate, f: &CertifiedIntegrand) -> RatFunc {
    let r = cert.rational();
    if r.is_zero() {
        return RatFunc::zero();
    }
    let (num, den) = (r.num(), r.den());
    let x = MultiPoly::var(Var::X);
    let q = f.kernel();
    let qx = q.diff(Var::X).expect("x");
    // Λ_x = (e·Q − (m+1)·x·Q_x) / (x·Q)
    let lam_num = f.x_exponent() * q - &(f.main_power() * &x) * &qx;
    let xq = &x * q;
    let dnum = num.diff(Var::X).expect("x");
    let dden = den.diff(Var::X).expect("x");
    let top = &(&(&dnum * den) - &(num * &dden)) * &xq + &(num * den) * &lam_num;
    RatFunc::new(top, &den.pow(2) * &xq).expect("nonzero")
}

/// `Σ p_i·G_i^a − (D_x R + R·G_1^x)`; zero iff the identity holds.
pub fn telescoping_residual(l: &DiffOp, cert: &Certificate, f: &CertifiedIntegrand) -> RatFunc {
    operator_part(l, f) - certificate_part(cert, f)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpotCheck {
    pub point: Assignment,
    pub value: Rational,
}

impl SpotCheck {
    pub fn passed(&self) -> bool {
        self.value.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub verified: bool,
    pub residual: RatFunc,
    pub residual_text: String,
    pub spot_checks: Vec<SpotCheck>,
    pub denominator_ok: bool,
}

impl VerificationReport {
    pub fn spot_checks_pass(&self) -> bool {
        self.spot_checks.iter().all(SpotCheck::passed)
    }
}

/// Residual at one point, computed by specializing `m` and `u` first and
/// differentiating afterwards. This is a different order of operations
/// from [`telescoping_residual`] and serves as an independent check.
pub fn residual_at(
    l: &DiffOp,
    cert: &Certificate,
    f: &CertifiedIntegrand,
    point: &Assignment,
) -> Result<Rational, ArithError> {
    let mut l_s = l.clone();
    let mut f_s = f.clone();
    let mut r_s = cert.rational().clone();
    for v in [Var::M, Var::U] {
        let val = point.get(&v).ok_or(ArithError::Unassigned(v))?;
        l_s = l_s.substitute(v, val);
        f_s = f_s.substitute(v, val);
        r_s = r_s.substitute(v, val)?;
    }
    if f_s.kernel().coefficients_in(Var::X)[0].is_zero() {
        return Err(ArithError::DenominatorVanishes);
    }
    let residual = telescoping_residual(&l_s, &Certificate::new(r_s), &f_s);
    residual.eval(point)
}

pub fn verify_certificate(
    l: &DiffOp,
    cert: &Certificate,
    f: &CertifiedIntegrand,
    seed: u64,
) -> VerificationReport {
    let residual = telescoping_residual(l, cert, f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spot_checks = Vec::with_capacity(SPOT_CHECKS);
    let mut attempts = 0;
    while spot_checks.len() < SPOT_CHECKS && attempts < 100 {
        attempts += 1;
        let point = random_point(&mut rng);
        match residual_at(l, cert, f, &point) {
            Ok(value) => spot_checks.push(SpotCheck { point, value }),
            Err(ArithError::DenominatorVanishes) => continue,
            Err(e) => panic!("spot check failed unexpectedly: {e}"),
        }
    }
    VerificationReport {
        verified: residual.is_zero(),
        residual_text: residual.to_string(),
        residual,
        spot_checks,
        denominator_ok: cert.denominator_divides_kernel_power(f),
    }
}
