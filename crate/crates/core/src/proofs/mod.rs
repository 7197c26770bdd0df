//! Refutation objects and their verifiers: Nullstellensatz certificates,
//! line-based derivations (NS / MC / PC rules), input MC refutations and
//! configurational proofs.

mod configurational;
mod derivation;
mod ns;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, FieldSpec, Polynomial};

pub use configurational::{to_configurational, verify_configurational, ConfStep, ConfigurationalProof};
pub use derivation::{
    check_input_refutation, mc_mult_premise_ok, verify_derivation, Derivation, InputMcRefutation, Justification, Line,
};
pub use ns::{verify_ns, NsCertificate, NsMode};

/// Which multiplication rule a line-based proof may use: NS multiplies
/// only axiom products, MC also monomials, PC anything.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProofSystem {
    Ns,
    Mc,
    Pc,
}

impl ProofSystem {
    pub const ALL: [ProofSystem; 3] = [ProofSystem::Ns, ProofSystem::Mc, ProofSystem::Pc];

    pub fn name(self) -> &'static str {
        match self {
            ProofSystem::Ns => "ns",
            ProofSystem::Mc => "mc",
            ProofSystem::Pc => "pc",
        }
    }
}

impl fmt::Display for ProofSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ProofSystem {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "ns" => Ok(ProofSystem::Ns),
            "mc" => Ok(ProofSystem::Mc),
            "pc" => Ok(ProofSystem::Pc),
            other => Err(format!("unknown proof system {other:?}")),
        }
    }
}

/// Degree, size and (for configurational proofs) variable space.
///
/// `size` counts every monomial of every line, repetitions included.
/// `derived_size` leaves out lines that merely download an axiom;
/// `cofactor_size` is the NS-only count of monomials in the `g_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Measures {
    pub degree: usize,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cofactor_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vspace: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProofError {
    #[error("not a refutation: the combination leaves residual {residual}")]
    NotARefutation { residual: Polynomial },
    #[error("certificate does not fit the system: {0}")]
    InvalidCertificate(String),
    #[error("line {line}: bad justification: {reason}")]
    BadJustification { line: usize, reason: String },
    #[error("line {line}: monomial calculus multiplies only monomials and axiom products")]
    McMultViolation { line: usize },
    #[error("line {line}: nullstellensatz derivations multiply only axiom products")]
    NsMultViolation { line: usize },
    #[error("the last line is not the constant 1")]
    LastLineNotOne,
    #[error("backbone position {index}: {reason}")]
    BackboneBroken { index: usize, reason: String },
    #[error("step {step}: premise line {line} is not in the current configuration")]
    DeadPremise { step: usize, line: usize },
    #[error("the final configuration does not contain 1")]
    LastConfigNot1,
    #[error("expected a {expected} proof, got {got}")]
    WrongSystem { expected: ProofSystem, got: ProofSystem },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub(crate) fn same_field(expected: FieldSpec, p: &Polynomial) -> Result<(), ProofError> {
    if p.field() != expected {
        return Err(AlgebraError::FieldMismatch(expected, p.field()).into());
    }
    Ok(())
}
