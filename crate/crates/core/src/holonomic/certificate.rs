use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{random_rational, MultiPoly, RatFunc, UniPoly, Var};

use super::integrand::CertifiedIntegrand;

/// Telescoping certificate `R(x, a)`: the claimed identity is
/// `L(F) = D_x(R·F)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    r: RatFunc,
}

impl Certificate {
    pub fn new(r: RatFunc) -> Self {
        Self { r }
    }

    pub fn zero() -> Self {
        Self::new(RatFunc::zero())
    }

    pub fn rational(&self) -> &RatFunc {
        &self.r
    }

    pub fn scaled(&self, p: &MultiPoly) -> Self {
        Self::new(self.r.mul_poly(p))
    }

    /// Whether the denominator divides `(x·Q)^k` for some `k`.
    ///
    /// Checked on univariate specializations: `a, m, u` are replaced by
    /// seeded random rationals and the resulting polynomial in `x` must
    /// divide `(x·Q)^deg`. Parameter-only factors become constants.
    pub fn denominator_divides_kernel_power(&self, f: &CertifiedIntegrand) -> bool {
        let den = self.r.den();
        let base = &MultiPoly::var(Var::X) * f.kernel();
        let k = den.degree_in(Var::X).max(1);
        let target = base.pow(k);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut trials = 0;
        let mut checked = 0;
        while checked < 3 && trials < 50 {
            trials += 1;
            let mut d = den.clone();
            let mut t = target.clone();
            for v in [Var::A, Var::M, Var::U] {
                let val = random_rational(&mut rng);
                d = d.substitute(v, &val);
                t = t.substitute(v, &val);
            }
            let (Some(d), Some(t)) = (UniPoly::from_multi(&d, Var::X), UniPoly::from_multi(&t, Var::X)) else {
                return false;
            };
            if d.is_zero() || t.is_zero() {
                continue;
            }
            if t.exact_div(&d).is_none() {
                return false;
            }
            checked += 1;
        }
        checked > 0
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.r.fmt(f)
    }
}
