//! Gamma function, exact Pochhammer symbols and terminating ₂F₁.

mod bases;
mod gamma;
mod hyper;

use thiserror::Error;

pub use bases::{series_bases, SeriesBases};
pub use gamma::{gamma, ln_gamma};
pub use hyper::{hyp2f1_terminating, pochhammer_exact};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecialError {
    #[error("gamma is only defined here for x > 0 (got {0})")]
    NonPositive(String),
    #[error("lower parameter c + {0} vanishes")]
    ZeroDenominator(usize),
}
