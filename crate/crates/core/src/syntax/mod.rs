//! Concrete syntax for types, terms, and sequents. The grammar is described
//! in `docs/grammar.md`.

mod lexer;
mod parser;
mod printer;

use thiserror::Error;

use crate::kernel::{HolType, Name};

pub use lexer::is_identifier;
pub use parser::{
    parse_instantiation, parse_prop, parse_sequent, parse_term, parse_term_typed, parse_type, CONJ, DISJ, EXISTS, NEG,
};
pub use printer::{print_instantiation, print_sequent, print_term, print_type, Printer};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("type inference error at offset {pos}: {message}")]
    TypeInference { pos: usize, message: String },
    #[error("`{0}` has no rendering that reads back unchanged")]
    Unprintable(String),
}

impl ParseError {
    pub fn syntax(pos: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            pos,
            message: message.into(),
        }
    }

    pub fn inference(pos: usize, message: impl Into<String>) -> Self {
        ParseError::TypeInference {
            pos,
            message: message.into(),
        }
    }

    pub fn pos(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::TypeInference { pos, .. } => *pos,
            ParseError::Unprintable(_) => 0,
        }
    }
}

/// Types of the free variables a term may mention. Later entries shadow
/// earlier ones with the same name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VarContext {
    vars: Vec<(Name, HolType)>,
}

impl VarContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, name: &str) -> Option<&HolType> {
        self.vars.iter().rev().find(|(n, _)| &**n == name).map(|(_, t)| t)
    }

    pub fn insert(&mut self, name: impl Into<Name>, ty: HolType) {
        self.vars.push((name.into(), ty));
    }

    pub fn contains(&self, name: &str, ty: &HolType) -> bool {
        self.get(name) == Some(ty)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &HolType)> {
        self.vars.iter().map(|(n, t)| (n, t))
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }
}

impl<N: Into<Name>> FromIterator<(N, HolType)> for VarContext {
    fn from_iter<I: IntoIterator<Item = (N, HolType)>>(iter: I) -> Self {
        VarContext {
            vars: iter.into_iter().map(|(n, t)| (n.into(), t)).collect(),
        }
    }
}
