//! Annihilating operators, telescoping certificates and coefficient
//! recurrences.
//!
//! The integrand `F = Q^(-(m+1))·x^e` is handled only through its
//! logarithmic derivatives, so every identity reduces to an identity of
//! rational functions in `(x, a, m, u)` that is decided by expansion.

pub mod certificate;
pub mod fixtures;
pub mod grammar;
pub mod integrand;
pub mod operator;
pub mod recurrence;
pub mod solve;
pub mod telescoping;

use thiserror::Error;

use crate::arith::ArithError;

pub use certificate::Certificate;
pub use fixtures::{resolve_family, FamilyResolution, Triple};
pub use integrand::CertifiedIntegrand;
pub use operator::DiffOp;
pub use recurrence::{ode_to_recurrence, unroll, CoefficientStream, IndexPoly, Recurrence};
pub use solve::certificate_solve;
pub use telescoping::{telescoping_residual, verify_certificate, SpotCheck, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HolonomicError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed triple file: {0}")]
    File(String),
    #[error("invalid kernel: {0}")]
    Kernel(String),
    #[error("invalid operator: {0}")]
    Operator(String),
    #[error("recurrence leading coefficient vanishes at l = {l}")]
    LeadingVanishes { l: i64 },
    #[error("unroll needs exactly the offsets {{0, 2}}, got {0:?}")]
    UnsupportedRecurrence(Vec<usize>),
    #[error("certificate system is inconsistent at this degree bound")]
    Inconsistent,
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
