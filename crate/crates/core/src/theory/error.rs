use thiserror::Error;

use crate::kernel::KernelError;
use crate::syntax::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: invalid JSON: {message}")]
    Json { path: String, message: String },
    #[error("{file}: at {at}: {message}")]
    Schema { file: String, at: String, message: String },
    #[error("{file}: item {index} has kind `{ty}`, which is not supported; state the needed facts as axioms instead")]
    UnsupportedItem { file: String, index: usize, ty: String },
    #[error("{file}: at {at}: {error}")]
    Parse { file: String, at: String, error: ParseError },
    #[error("import cycle: {}", .0.join(" -> "))]
    ImportCycle(Vec<String>),
    #[error("imported theory `{0}` not found in the search path")]
    ImportNotFound(String),
    #[error("theorem `{0}` is defined more than once")]
    DuplicateTheorem(String),
    #[error("item `{item}`: {reason}")]
    InvalidItem { item: String, reason: String },
    #[error("item `{item}`: {error}")]
    Kernel { item: String, error: KernelError },
    #[error("no theorem named `{0}`")]
    UnknownTheorem(String),
}

impl TheoryError {
    pub(crate) fn kernel(item: &str, error: KernelError) -> Self {
        TheoryError::Kernel {
            item: item.to_string(),
            error,
        }
    }
}
