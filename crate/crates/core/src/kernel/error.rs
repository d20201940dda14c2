use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("type error: {0}")]
    TypeError(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("unknown type constructor `{0}`")]
    UnknownTypeConstructor(String),
    #[error("type constructor `{name}` expects {expected} arguments, got {got}")]
    ArityMismatch { name: String, expected: usize, got: usize },
    #[error("rule `{rule}` does not apply: {reason}")]
    RuleMismatch { rule: String, reason: String },
    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),
    #[error("match failure{}: {reason}", index.map(|i| format!(" at index {i}")).unwrap_or_default())]
    MatchFailure { index: Option<usize>, reason: String },
    #[error("conflicting assignment for `{0}`")]
    ConflictingAssignment(String),
    #[error("pattern list has {patterns} entries but target list has {targets}")]
    LengthMismatch { patterns: usize, targets: usize },
    #[error("instantiation of `{0}` has the wrong type")]
    InstantiationTypeMismatch(String),
}

impl KernelError {
    pub fn type_error(msg: impl Into<String>) -> Self {
        KernelError::TypeError(msg.into())
    }

    pub fn rule(rule: &str, reason: impl Into<String>) -> Self {
        KernelError::RuleMismatch {
            rule: rule.to_string(),
            reason: reason.into(),
        }
    }

    pub fn match_failure(reason: impl Into<String>) -> Self {
        KernelError::MatchFailure {
            index: None,
            reason: reason.into(),
        }
    }
}
