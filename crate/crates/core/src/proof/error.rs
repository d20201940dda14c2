use thiserror::Error;

use super::ProofId;
use crate::kernel::KernelError;
use crate::syntax::ParseError;

/// Failures while building, expanding, or checking proofs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown rule or macro `{0}`")]
    UnknownRule(String),
    #[error("bad arguments for `{rule}`: {reason}")]
    BadArgs { rule: String, reason: String },
    #[error("macro `{0}` has no expansion")]
    NoExpansion(String),
    #[error("not a closed arithmetic term: {0}")]
    NotClosedArithmetic(String),
    #[error("polynomials differ: {lhs} vs {rhs}")]
    NormalizationMismatch { lhs: String, rhs: String },
    #[error("missing lemma `{0}`")]
    MissingLemma(String),
    #[error("theorem `{0}` is not an equation")]
    NotAnEquation(String),
    #[error("{conv} does not apply to {term}")]
    ShapeMismatch { conv: &'static str, term: String },
    #[error("rewriting budget of {0} steps exceeded")]
    BudgetExceeded(usize),
    #[error("macro `{0}` is already registered")]
    DuplicateMacro(String),
    #[error("macro registry is frozen; cannot register `{0}`")]
    RegistryFrozen(String),
    #[error("expansion of `{name}` proves {got}, expected {expected}")]
    ExpansionMismatch { name: String, expected: String, got: String },
    #[error("step {id}: {reason}")]
    CheckFailure { id: ProofId, reason: String },
    #[error("proof has no steps")]
    EmptyProof,
}

impl ProofError {
    pub(crate) fn at(id: &ProofId, err: impl std::fmt::Display) -> Self {
        ProofError::CheckFailure {
            id: id.clone(),
            reason: err.to_string(),
        }
    }
}
