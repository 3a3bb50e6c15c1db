//! Exact and numerical tools for the quartic integral
//! `∫₀^∞ dx / (x^{2n} + α·a·x^n + 1)^{m+1}` and its relatives.
//!
//! * [`arith`]: exact rationals, sparse polynomials, rational functions.
//! * [`holonomic`]: differential operators, telescoping certificates,
//!   operator-to-recurrence translation.
//! * [`special`]: Gamma function, Pochhammer symbols, terminating ₂F₁.
//! * [`evaluate`]: quadrature, series and closed-form evaluation, and the
//!   exact coefficients of the associated polynomial `P_m(a)`.

// Quadrature and Lanczos tables keep their published digits; `!(x > y)`
// is used on purpose so that NaN lands on the rejecting side.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod holonomic;
pub mod special;
pub mod evaluate;

/// Environment variable that overrides the spot-check seed.
pub const SEED_ENV: &str = "QUARTIC_LAB_SEED";
pub const DEFAULT_SEED: u64 = 42;

/// Seed from `QUARTIC_LAB_SEED`, or 42 when unset. A value that does not
/// parse as `u64` is an error.
pub fn seed_from_env() -> Result<u64, String> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| format!("{SEED_ENV} must be an unsigned integer (got `{s}`)")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}
