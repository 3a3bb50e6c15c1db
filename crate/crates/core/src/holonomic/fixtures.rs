//! Built-in operator/certificate triples and the general-n variant sweep.

use super::certificate::Certificate;
use super::grammar::{parse_expr, parse_operator, parse_triple_text, TripleText};
use super::integrand::CertifiedIntegrand;
use super::operator::DiffOp;
use super::solve::certificate_solve;
use super::telescoping::{verify_certificate, VerificationReport};
use super::HolonomicError;
use crate::arith::MultiPoly;

pub const QUARTIC: &str = include_str!("../../data/quartic.txt");
pub const FAMILY_PRINTED: &str = include_str!("../../data/family_printed.txt");
pub const FAMILY_REDUCED_KERNEL: &str = include_str!("../../data/family_reduced_kernel.txt");
pub const FAMILY_OPERATOR_FIXED: &str = include_str!("../../data/family_operator_fixed.txt");
pub const FAMILY_CORRECTED: &str = include_str!("../../data/family_corrected.txt");

/// Every configured reading of the general-n proof, printed first.
pub const FAMILY_VARIANTS: [&str; 4] = [
    FAMILY_PRINTED,
    FAMILY_REDUCED_KERNEL,
    FAMILY_OPERATOR_FIXED,
    FAMILY_CORRECTED,
];

/// Parameters at which `certificate_solve` probes each variant.
pub const PROBE_M: i64 = 1;
pub const PROBE_N: i64 = 3;
pub const PROBE_DEGREE: usize = 4;

/// A parsed operator, certificate and integrand, ready to verify.
#[derive(Clone, Debug)]
pub struct Triple {
    pub name: String,
    pub integrand: CertifiedIntegrand,
    pub operator: DiffOp,
    pub certificate: Certificate,
    pub notes: Vec<String>,
}

impl Triple {
    pub fn from_text(t: &TripleText) -> Result<Self, HolonomicError> {
        let integrand =
            CertifiedIntegrand::from_rational(&parse_expr(&t.kernel)?, &parse_expr(&t.x_exponent)?)?;
        let (operator, scale) = DiffOp::from_expr(&parse_operator(&t.operator)?)?;
        let certificate = Certificate::new(parse_expr(&t.certificate)?).scaled(&scale);
        Ok(Self {
            name: t.name.clone(),
            integrand,
            operator,
            certificate,
            notes: t.notes.clone(),
        })
    }

    pub fn parse(src: &str) -> Result<Self, HolonomicError> {
        Self::from_text(&parse_triple_text(src)?)
    }

    pub fn verify(&self, seed: u64) -> VerificationReport {
        verify_certificate(&self.operator, &self.certificate, &self.integrand, seed)
    }

    /// Perturbs the certificate numerator by `+x`; used to exercise the
    /// failure path.
    pub fn corrupted(&self) -> Self {
        let (num, den) = self.certificate.rational().clone().into_parts();
        let num = num + MultiPoly::var(crate::arith::Var::X);
        let mut out = self.clone();
        out.certificate = Certificate::new(
            crate::arith::RatFunc::new(num, den).expect("denominator unchanged"),
        );
        out
    }
}

pub fn quartic() -> Triple {
    Triple::parse(QUARTIC).expect("built-in fixture parses")
}

pub fn family_variants() -> Vec<Triple> {
    FAMILY_VARIANTS
        .iter()
        .map(|src| Triple::parse(src).expect("built-in fixture parses"))
        .collect()
}

pub fn family_variant(name: &str) -> Option<Triple> {
    family_variants().into_iter().find(|t| t.name == name)
}

#[derive(Clone, Debug)]
pub struct VariantOutcome {
    pub triple: Triple,
    pub report: VerificationReport,
    /// Whether `certificate_solve` finds some certificate for this
    /// variant's operator and kernel at the probe parameters.
    pub solvable_at_probe: bool,
}

#[derive(Clone, Debug)]
pub struct FamilyResolution {
    pub variants: Vec<VariantOutcome>,
}

impl FamilyResolution {
    pub fn verified(&self) -> Vec<&VariantOutcome> {
        self.variants.iter().filter(|v| v.report.verified).collect()
    }

    /// The single verifying variant, if exactly one verifies.
    pub fn unique(&self) -> Option<&VariantOutcome> {
        match self.verified().as_slice() {
            [one] => Some(one),
            _ => None,
        }
    }
}

pub fn evaluate_variant(triple: Triple, seed: u64) -> VariantOutcome {
    let report = triple.verify(seed);
    let solvable_at_probe = certificate_solve(
        &triple.operator,
        &triple.integrand,
        PROBE_M,
        PROBE_N,
        PROBE_DEGREE,
    )
    .is_ok();
    VariantOutcome {
        triple,
        report,
        solvable_at_probe,
    }
}

pub fn resolve_family(seed: u64) -> FamilyResolution {
    FamilyResolution {
        variants: family_variants()
            .into_iter()
            .map(|t| evaluate_variant(t, seed))
            .collect(),
    }
}
