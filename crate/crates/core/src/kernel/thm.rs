use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use super::term::Term;

/// A judgment `A1, ..., An |- C`. Hypotheses form a set kept in canonical
/// term order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub hyps: BTreeSet<Term>,
    pub prop: Term,
}

impl Sequent {
    pub fn new(hyps: impl IntoIterator<Item = Term>, prop: Term) -> Self {
        Sequent {
            hyps: hyps.into_iter().collect(),
            prop,
        }
    }

    pub fn concl(prop: Term) -> Self {
        Sequent {
            hyps: BTreeSet::new(),
            prop,
        }
    }

    pub fn map_terms(&self, mut f: impl FnMut(&Term) -> Term) -> Sequent {
        Sequent {
            hyps: self.hyps.iter().map(&mut f).collect(),
            prop: f(&self.prop),
        }
    }

    pub fn try_map_terms<E>(&self, mut f: impl FnMut(&Term) -> Result<Term, E>) -> Result<Sequent, E> {
        Ok(Sequent {
            hyps: self.hyps.iter().map(&mut f).collect::<Result<_, _>>()?,
            prop: f(&self.prop)?,
        })
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.hyps.iter().chain(std::iter::once(&self.prop))
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_sequent(self))
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_sequent(self))
    }
}

/// A sequent that has been derived. Values are only created by the
/// primitive rules, by theory lookup, by trusted macro evaluation, and by
/// `sorry`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Thm(Sequent);

impl Thm {
    pub(crate) fn new(seq: Sequent) -> Self {
        Thm(seq)
    }

    pub fn sequent(&self) -> &Sequent {
        &self.0
    }

    pub fn into_sequent(self) -> Sequent {
        self.0
    }
}

impl Deref for Thm {
    type Target = Sequent;

    fn deref(&self) -> &Sequent {
        &self.0
    }
}

impl fmt::Debug for Thm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_sequent(&self.0))
    }
}
