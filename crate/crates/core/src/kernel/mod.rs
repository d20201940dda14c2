//! Types, terms, sequents, instantiation, matching and the primitive rules.
//! Everything that must be trusted lives here.

mod error;
mod inst;
mod matching;
mod rules;
mod sig;
mod term;
mod thm;
mod types;

pub use error::KernelError;
pub use inst::{subst_norm, subst_term, subst_type, TermInstantiation, TypeInstantiation};
pub use matching::{first_order_match, first_order_match_list, Instantiation};
pub use rules::{apply_prim_rule, ArgKind, PrimRule, RuleArgs, TheoremSource};
pub use sig::{type_of, Signature};
pub use term::{Term, TermKind, ALL, EQUALS, IMPLIES};
pub use thm::{Sequent, Thm};
pub use types::{HolType, Name, TypeKind, BOOL, FUN};

/// Beta-normal form of `t`.
pub fn beta_norm(t: &Term) -> Term {
    t.beta_norm()
}
