//! Exact arithmetic substrate: rationals, sparse polynomials in
//! `(x, a, m, u)`, rational functions, and univariate polynomials used by
//! the certificate solver.

pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod upoly;

use num_bigint::BigInt;
use rand::Rng;
use thiserror::Error;

pub use poly::{Assignment, Monomial, MultiPoly, Var};
pub use ratfunc::RatFunc;
pub use rational::Rational;
pub use upoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("cannot differentiate with respect to parameter `{0}`")]
    DiffParameter(Var),
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("denominator vanishes at the evaluation point")]
    DenominatorVanishes,
    #[error("variable `{0}` has no assigned value")]
    Unassigned(Var),
}

/// Bound on numerators and denominators of random rational points.
pub const POINT_BOUND: i64 = 10_000;

/// Random rational with `|num| < 10^4` and `0 < den < 10^4`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let n: i64 = rng.gen_range(-(POINT_BOUND - 1)..POINT_BOUND);
    let d: i64 = rng.gen_range(1..POINT_BOUND);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Random assignment of all four variables.
pub fn random_point<R: Rng>(rng: &mut R) -> Assignment {
    Var::ALL
        .into_iter()
        .map(|v| (v, random_rational(rng)))
        .collect()
}
