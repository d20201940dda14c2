use crate::kernel::{KernelError, Sequent, Signature, TheoremSource};
use crate::macros::{builtin_macros, MacroRegistry};
use crate::syntax::VarContext;
use crate::theory::Theory;

/// Step budget for repeated rewriting.
pub const DEFAULT_BUDGET: usize = 100_000;

/// Everything a proof step may consult: the theory (optionally restricted
/// to the items before a given position), the macro registry, the free
/// variable context used to read arguments, and the rewriting budget.
#[derive(Clone)]
pub struct Env<'a> {
    thy: &'a Theory,
    before: Option<usize>,
    macros: &'a MacroRegistry,
    vars: VarContext,
    budget: usize,
}

impl<'a> Env<'a> {
    pub fn new(thy: &'a Theory) -> Self {
        Env {
            thy,
            before: None,
            macros: builtin_macros(),
            vars: VarContext::new(),
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_macros(mut self, macros: &'a MacroRegistry) -> Self {
        self.macros = macros;
        self
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_vars(mut self, vars: VarContext) -> Self {
        self.vars = vars;
        self
    }

    /// Only declarations and theorems of items strictly before `index`
    /// (plus everything imported) are visible.
    pub fn before_item(mut self, index: usize) -> Self {
        self.before = Some(index);
        self
    }

    pub fn theory(&self) -> &'a Theory {
        self.thy
    }

    pub fn macros(&self) -> &'a MacroRegistry {
        self.macros
    }

    pub fn vars(&self) -> &VarContext {
        &self.vars
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn sig(&self) -> &'a Signature {
        match self.before {
            Some(i) => self.thy.signature_before(i),
            None => self.thy.signature(),
        }
    }
}

impl TheoremSource for Env<'_> {
    fn signature(&self) -> &Signature {
        self.sig()
    }

    fn lookup_theorem(&self, name: &str) -> Result<Sequent, KernelError> {
        self.thy
            .lookup(name, self.before)
            .map(|e| e.schematic.clone())
            .ok_or_else(|| KernelError::UnknownTheorem(name.to_string()))
    }
}
