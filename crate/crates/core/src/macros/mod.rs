//! Proof macros: derived rules with a fast evaluation function and an
//! optional expansion into more basic steps.
//!
//! A macro step is accepted without expansion only when its level is at
//! most the trust threshold. The default threshold is 0, and every built-in
//! macro has level 1 or more, so by default everything is expanded.

mod apply_theorem;
mod arith;
mod poly;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::kernel::{ArgKind, HolType, RuleArgs, Sequent, Thm};
use crate::proof::{Env, ProofError, ProofNode};

pub use apply_theorem::ApplyTheorem;
pub use arith::{nat_eval_conv, NatArithEval};
pub use poly::{canonical_poly, NatNormPoly, Poly};

pub trait Macro: Send + Sync {
    fn name(&self) -> &str;

    /// Lower is more trustworthy.
    fn level(&self) -> u32;

    fn arg_kind(&self) -> ArgKind;

    /// Type of a term argument, if fixed.
    fn arg_type(&self) -> Option<HolType> {
        None
    }

    fn eval(&self, env: &Env, args: &RuleArgs, prevs: &[&Thm]) -> Result<Sequent, ProofError>;

    /// A proof of the same sequent from the given premise proofs, or `None`
    /// if the macro cannot be expanded.
    fn expand(&self, env: &Env, args: &RuleArgs, prevs: &[ProofNode]) -> Option<Result<ProofNode, ProofError>>;
}

/// Accepts macro steps whose level is at most `threshold`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TrustPolicy {
    pub threshold: u32,
}

impl TrustPolicy {
    pub fn new(threshold: u32) -> Self {
        TrustPolicy { threshold }
    }

    pub fn trusts(&self, level: u32) -> bool {
        level <= self.threshold
    }
}

#[derive(Default)]
pub struct MacroRegistry {
    macros: BTreeMap<String, Arc<dyn Macro>>,
    frozen: bool,
}

impl MacroRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// The three built-in macros, not yet frozen.
    pub fn with_builtins() -> Self {
        let mut r = Self::new();
        r.register(Arc::new(ApplyTheorem)).expect("fresh registry");
        r.register(Arc::new(NatArithEval)).expect("fresh registry");
        r.register(Arc::new(NatNormPoly)).expect("fresh registry");
        r
    }

    pub fn register(&mut self, m: Arc<dyn Macro>) -> Result<(), ProofError> {
        let name = m.name().to_string();
        if self.frozen {
            return Err(ProofError::RegistryFrozen(name));
        }
        if self.macros.contains_key(&name) {
            return Err(ProofError::DuplicateMacro(name));
        }
        self.macros.insert(name, m);
        Ok(())
    }

    pub fn freeze(&mut self) {
        self.frozen = true;
    }

    pub fn is_frozen(&self) -> bool {
        self.frozen
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn Macro>> {
        self.macros.get(name).cloned()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.macros.keys().map(String::as_str)
    }
}

/// The frozen registry of built-in macros.
pub fn builtin_macros() -> &'static MacroRegistry {
    static REG: OnceLock<MacroRegistry> = OnceLock::new();
    REG.get_or_init(|| {
        let mut r = MacroRegistry::with_builtins();
        r.freeze();
        r
    })
}

pub(crate) fn term_arg<'a>(name: &str, args: &'a RuleArgs) -> Result<&'a crate::kernel::Term, ProofError> {
    match args {
        RuleArgs::Term(t) => Ok(t),
        _ => Err(ProofError::BadArgs {
            rule: name.to_string(),
            reason: "expects a term".into(),
        }),
    }
}

pub(crate) fn no_prevs(name: &str, n: usize) -> Result<(), ProofError> {
    if n == 0 {
        Ok(())
    } else {
        Err(ProofError::BadArgs {
            rule: name.to_string(),
            reason: format!("takes no premises, got {n}"),
        })
    }
}
