//! Theories: ordered lists of declarations, axioms, definitions and proved
//! theorems, with imports, stored as JSON.

mod check;
mod error;
mod load;
mod save;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{Map, Value};

use crate::kernel::{HolType, KernelError, Sequent, Signature, Term, TermKind};
use crate::proof::LinearProof;
use crate::syntax::VarContext;

pub use check::{check_theorem, check_theory, CheckOptions, Outcome, TheoremReport, TheoryCheckReport};
pub use error::TheoryError;
pub use load::{load_theory, Loader};
pub use save::{save_theory, to_json, to_json_string};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ItemKind {
    TypeDecl {
        arity: usize,
    },
    ConstDecl {
        ty: HolType,
    },
    Axiom {
        vars: VarContext,
        prop: Term,
    },
    /// `prop` is the defining equation `c = body`.
    Definition {
        ty: HolType,
        prop: Term,
    },
    Theorem {
        vars: VarContext,
        prop: Term,
        proof: LinearProof,
        attributes: Option<Vec<String>>,
        num_gaps: Option<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoryItem {
    pub name: String,
    pub kind: ItemKind,
    /// Keys this tool does not interpret, kept in their original order.
    pub extra: Map<String, Value>,
}

impl TheoryItem {
    pub fn new(name: impl Into<String>, kind: ItemKind) -> Self {
        TheoryItem {
            name: name.into(),
            kind,
            extra: Map::new(),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self.kind {
            ItemKind::TypeDecl { .. } => "type.ax",
            ItemKind::ConstDecl { .. } => "def.ax",
            ItemKind::Axiom { .. } => "thm.ax",
            ItemKind::Definition { .. } => "def",
            ItemKind::Theorem { .. } => "thm",
        }
    }
}

/// Where a stored theorem comes from: theory name and item position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Origin {
    pub theory: String,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremEntry {
    /// Statement with named free variables.
    pub sequent: Sequent,
    /// Statement with the declared variables turned schematic.
    pub schematic: Sequent,
    pub vars: VarContext,
    pub origin: Origin,
}

#[derive(Debug, Clone)]
pub struct Theory {
    pub name: String,
    pub imports: Vec<String>,
    items: Vec<TheoryItem>,
    pub extra: Map<String, Value>,
    deps: Vec<Arc<Theory>>,
    sig: Arc<Signature>,
    sig_before: Vec<Arc<Signature>>,
    table: BTreeMap<String, TheoremEntry>,
}

impl PartialEq for Theory {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.imports == other.imports && self.items == other.items && self.extra == other.extra
    }
}

/// Replaces the free variables listed in `vars` by schematic variables.
pub fn schematize(t: &Term, vars: &VarContext) -> Term {
    match t.kind() {
        TermKind::Var(n, ty) if vars.contains(n, ty) => Term::svar(n.clone(), ty.clone()),
        TermKind::App(f, x) => {
            let (nf, nx) = (schematize(f, vars), schematize(x, vars));
            if nf.ptr_eq(f) && nx.ptr_eq(x) {
                t.clone()
            } else {
                Term::app(nf, nx)
            }
        }
        TermKind::Abs(n, ty, b) => {
            let nb = schematize(b, vars);
            if nb.ptr_eq(b) {
                t.clone()
            } else {
                Term::abs(n.clone(), ty.clone(), nb)
            }
        }
        _ => t.clone(),
    }
}

impl Theory {
    /// An empty theory importing `deps`, in order.
    pub fn new(name: impl Into<String>, deps: Vec<Arc<Theory>>) -> Result<Theory, TheoryError> {
        let name = name.into();
        let mut sig = Signature::base();
        let mut table: BTreeMap<String, TheoremEntry> = BTreeMap::new();
        for d in &deps {
            sig.merge(&d.sig).map_err(|e| TheoryError::kernel(&name, e))?;
            for (k, e) in &d.table {
                match table.get(k) {
                    Some(prev) if prev.origin != e.origin => return Err(TheoryError::DuplicateTheorem(k.clone())),
                    Some(_) => {}
                    None => {
                        table.insert(k.clone(), e.clone());
                    }
                }
            }
        }
        Ok(Theory {
            imports: deps.iter().map(|d| d.name.clone()).collect(),
            name,
            items: Vec::new(),
            extra: Map::new(),
            deps,
            sig: Arc::new(sig),
            sig_before: Vec::new(),
            table,
        })
    }

    pub fn items(&self) -> &[TheoryItem] {
        &self.items
    }

    pub fn item(&self, name: &str) -> Option<(usize, &TheoryItem)> {
        self.items.iter().enumerate().find(|(_, it)| it.name == name)
    }

    pub fn deps(&self) -> &[Arc<Theory>] {
        &self.deps
    }

    /// Imported theories, transitively, each once, dependencies first.
    pub fn import_closure(&self) -> Vec<Arc<Theory>> {
        fn visit(t: &Arc<Theory>, out: &mut Vec<Arc<Theory>>) {
            if out.iter().any(|o| Arc::ptr_eq(o, t)) {
                return;
            }
            for d in &t.deps {
                visit(d, out);
            }
            out.push(t.clone());
        }
        let mut out = Vec::new();
        for d in &self.deps {
            visit(d, &mut out);
        }
        out
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    /// Signature in effect for item `index`: imports plus earlier items.
    pub fn signature_before(&self, index: usize) -> &Signature {
        self.sig_before.get(index).unwrap_or(&self.sig)
    }

    /// A theorem visible to item `before` (all theorems when `None`).
    pub fn lookup(&self, name: &str, before: Option<usize>) -> Option<&TheoremEntry> {
        let e = self.table.get(name)?;
        match before {
            Some(i) if e.origin.theory == self.name && e.origin.index >= i => None,
            _ => Some(e),
        }
    }

    /// Statement of a theorem, with its variables schematic if requested.
    pub fn get_theorem(&self, name: &str, schematic: bool) -> Result<Sequent, KernelError> {
        let e = self
            .lookup(name, None)
            .ok_or_else(|| KernelError::UnknownTheorem(name.to_string()))?;
        Ok(if schematic { e.schematic.clone() } else { e.sequent.clone() })
    }

    pub fn theorem_names(&self) -> impl Iterator<Item = &str> {
        self.table.keys().map(String::as_str)
    }

    fn add_entry(&mut self, name: &str, vars: &VarContext, prop: &Term) -> Result<(), TheoryError> {
        if self.table.contains_key(name) {
            return Err(TheoryError::DuplicateTheorem(name.to_string()));
        }
        let sequent = Sequent::concl(prop.clone());
        let schematic = Sequent::concl(schematize(prop, vars));
        self.table.insert(
            name.to_string(),
            TheoremEntry {
                sequent,
                schematic,
                vars: vars.clone(),
                origin: Origin {
                    theory: self.name.clone(),
                    index: self.items.len(),
                },
            },
        );
        Ok(())
    }

    fn check_statement(&self, item: &str, vars: &VarContext, prop: &Term) -> Result<(), TheoryError> {
        let err = |reason: String| TheoryError::InvalidItem {
            item: item.to_string(),
            reason,
        };
        for (_, ty) in vars.iter() {
            self.sig.check_type(ty).map_err(|e| TheoryError::kernel(item, e))?;
        }
        let ty = crate::kernel::type_of(prop, &self.sig).map_err(|e| TheoryError::kernel(item, e))?;
        if !ty.is_bool() {
            return Err(err(format!("statement has type {ty}, expected bool")));
        }
        if prop.has_svars() {
            return Err(err("statement contains schematic variables".into()));
        }
        for (n, ty) in prop.free_vars() {
            if !vars.contains(&n, &ty) {
                return Err(err(format!("free variable `{n}` of type {ty} is not declared in vars")));
            }
        }
        Ok(())
    }

    /// Appends an item after validating it against everything before it.
    pub fn push(&mut self, item: TheoryItem) -> Result<(), TheoryError> {
        let name = item.name.clone();
        let before = self.sig.clone();
        let mut sig = (*self.sig).clone();
        let kernel = |e| TheoryError::kernel(&name, e);
        match &item.kind {
            ItemKind::TypeDecl { arity } => {
                if sig.type_arity(&name).is_some() {
                    return Err(TheoryError::InvalidItem {
                        item: name,
                        reason: "type constructor already declared".into(),
                    });
                }
                sig.add_type(&name, *arity).map_err(kernel)?;
            }
            ItemKind::ConstDecl { ty } => {
                self.new_constant(&name, ty)?;
                sig.add_const(&name, ty.clone()).map_err(kernel)?;
            }
            ItemKind::Axiom { vars, prop } | ItemKind::Theorem { vars, prop, .. } => {
                self.check_statement(&name, vars, prop)?;
                self.add_entry(&name, vars, prop)?;
            }
            ItemKind::Definition { ty, prop } => {
                self.new_constant(&name, ty)?;
                sig.add_const(&name, ty.clone()).map_err(kernel)?;
                let invalid = |reason: String| TheoryError::InvalidItem {
                    item: name.clone(),
                    reason,
                };
                let (c, body) = prop
                    .dest_eq()
                    .ok_or_else(|| invalid("definition is not an equation".into()))?;
                if !matches!(c.dest_const(), Some((n, cty)) if **n == *name && cty == ty) {
                    return Err(invalid(format!("left side must be the constant `{name}` itself")));
                }
                crate::kernel::type_of(prop, &sig).map_err(kernel)?;
                if !body.free_vars().is_empty() || body.has_svars() || !body.is_closed() {
                    return Err(invalid("body has free variables".into()));
                }
                if body.names().contains(name.as_str()) {
                    return Err(invalid("definition refers to itself".into()));
                }
                if !body.type_vars().is_subset(&ty.type_vars()) {
                    return Err(invalid("body has type variables not in the constant's type".into()));
                }
                let def_name = format!("{name}_def");
                if self.table.contains_key(&def_name) {
                    return Err(TheoryError::DuplicateTheorem(def_name));
                }
                self.add_entry(&def_name, &VarContext::new(), prop)?;
            }
        }
        self.sig_before.push(before);
        self.sig = Arc::new(sig);
        self.items.push(item);
        Ok(())
    }

    fn new_constant(&self, name: &str, ty: &HolType) -> Result<(), TheoryError> {
        self.sig.check_type(ty).map_err(|e| TheoryError::kernel(name, e))?;
        if self.sig.has_const(name) {
            return Err(TheoryError::InvalidItem {
                item: name.to_string(),
                reason: "constant already declared".into(),
            });
        }
        Ok(())
    }

    /// Replaces the proof of theorem item `index`.
    pub fn set_proof(&mut self, index: usize, new: LinearProof) -> Result<(), TheoryError> {
        match self.items.get_mut(index).map(|it| &mut it.kind) {
            Some(ItemKind::Theorem { proof, .. }) => {
                *proof = new;
                Ok(())
            }
            _ => Err(TheoryError::InvalidItem {
                item: format!("#{index}"),
                reason: "not a theorem".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schematize_only_declared() {
        let b = HolType::bool();
        let vars: VarContext = [("A", b.clone())].into_iter().collect();
        let t = Term::mk_implies(Term::var("A", b.clone()), Term::var("B", b.clone()));
        let s = schematize(&t, &vars);
        assert_eq!(s, Term::mk_implies(Term::svar("A", b.clone()), Term::var("B", b)));
    }
}
