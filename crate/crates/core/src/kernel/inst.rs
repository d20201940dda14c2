use std::collections::BTreeMap;

use super::error::KernelError;
use super::term::{Term, TermKind};
use super::types::{HolType, Name, TypeKind};

/// Type-variable name to type.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TypeInstantiation(pub BTreeMap<Name, HolType>);

/// Schematic-variable name to replacement term.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermInstantiation(pub BTreeMap<Name, Term>);

impl TypeInstantiation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&HolType> {
        self.0.get(name)
    }

    pub fn insert(&mut self, name: impl Into<Name>, ty: HolType) {
        self.0.insert(name.into(), ty);
    }

    pub fn apply(&self, ty: &HolType) -> HolType {
        if self.0.is_empty() {
            return ty.clone();
        }
        match ty.kind() {
            TypeKind::Var(n) => self.0.get(n).cloned().unwrap_or_else(|| ty.clone()),
            TypeKind::App(c, args) => {
                let new: Vec<_> = args.iter().map(|a| self.apply(a)).collect();
                if new.iter().zip(args).all(|(a, b)| a.ptr_eq(b)) {
                    ty.clone()
                } else {
                    HolType::app(c.clone(), new)
                }
            }
        }
    }

    /// `other ∘ self`: applying the result equals applying `self` then `other`.
    pub fn compose(&self, other: &TypeInstantiation) -> TypeInstantiation {
        let mut out: BTreeMap<Name, HolType> =
            self.0.iter().map(|(k, v)| (k.clone(), other.apply(v))).collect();
        for (k, v) in &other.0 {
            out.entry(k.clone()).or_insert_with(|| v.clone());
        }
        TypeInstantiation(out)
    }

    /// Extends `self` so that `pattern` instantiates to `target`.
    pub fn match_type(&mut self, pattern: &HolType, target: &HolType) -> Result<(), KernelError> {
        match (pattern.kind(), target.kind()) {
            (TypeKind::Var(n), _) => match self.0.get(n) {
                Some(prev) if prev == target => Ok(()),
                Some(_) => Err(KernelError::ConflictingAssignment(format!("'{n}"))),
                None => {
                    self.0.insert(n.clone(), target.clone());
                    Ok(())
                }
            },
            (TypeKind::App(c1, a1), TypeKind::App(c2, a2)) if c1 == c2 && a1.len() == a2.len() => {
                a1.iter().zip(a2).try_for_each(|(p, t)| self.match_type(p, t))
            }
            _ => Err(KernelError::match_failure(format!("type {pattern} does not match {target}"))),
        }
    }
}

impl TermInstantiation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Term> {
        self.0.get(name)
    }

    pub fn insert(&mut self, name: impl Into<Name>, t: Term) {
        self.0.insert(name.into(), t);
    }
}

impl<K: Into<Name>> FromIterator<(K, HolType)> for TypeInstantiation {
    fn from_iter<I: IntoIterator<Item = (K, HolType)>>(iter: I) -> Self {
        TypeInstantiation(iter.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

impl<K: Into<Name>> FromIterator<(K, Term)> for TermInstantiation {
    fn from_iter<I: IntoIterator<Item = (K, Term)>>(iter: I) -> Self {
        TermInstantiation(iter.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

/// Applies a type instantiation to every type inside `t`.
pub fn subst_type(tyinst: &TypeInstantiation, t: &Term) -> Term {
    if tyinst.is_empty() {
        return t.clone();
    }
    let ty_changed = |ty: &HolType| {
        let n = tyinst.apply(ty);
        (!n.ptr_eq(ty)).then_some(n)
    };
    match t.kind() {
        TermKind::Var(n, ty) => ty_changed(ty).map_or_else(|| t.clone(), |ty| Term::var(n.clone(), ty)),
        TermKind::SVar(n, ty) => ty_changed(ty).map_or_else(|| t.clone(), |ty| Term::svar(n.clone(), ty)),
        TermKind::Const(n, ty) => ty_changed(ty).map_or_else(|| t.clone(), |ty| Term::constant(n.clone(), ty)),
        TermKind::App(f, x) => t.rebuild_app(subst_type(tyinst, f), subst_type(tyinst, x)),
        TermKind::Abs(n, ty, b) => {
            let nb = subst_type(tyinst, b);
            match ty_changed(ty) {
                None if nb.ptr_eq(b) => t.clone(),
                nty => Term::abs(n.clone(), nty.unwrap_or_else(|| ty.clone()), nb),
            }
        }
        TermKind::Bound(_) => t.clone(),
    }
}

/// Replaces the schematic variables named in `inst`. Replacements must be
/// closed and have the schematic variable's type.
pub fn subst_term(inst: &TermInstantiation, t: &Term) -> Result<Term, KernelError> {
    if inst.is_empty() {
        return Ok(t.clone());
    }
    for (name, r) in &inst.0 {
        if !r.is_closed() {
            return Err(KernelError::type_error(format!(
                "replacement for `{name}` has a dangling bound variable"
            )));
        }
    }
    subst_term_rec(inst, t)
}

fn subst_term_rec(inst: &TermInstantiation, t: &Term) -> Result<Term, KernelError> {
    Ok(match t.kind() {
        TermKind::SVar(n, ty) => match inst.0.get(n) {
            Some(r) => {
                let rty = r.ty()?;
                if &rty != ty {
                    return Err(KernelError::InstantiationTypeMismatch(n.to_string()));
                }
                r.clone()
            }
            None => t.clone(),
        },
        TermKind::App(f, x) => t.rebuild_app(subst_term_rec(inst, f)?, subst_term_rec(inst, x)?),
        TermKind::Abs(n, ty, b) => {
            let nb = subst_term_rec(inst, b)?;
            if nb.ptr_eq(b) {
                t.clone()
            } else {
                Term::abs(n.clone(), ty.clone(), nb)
            }
        }
        _ => t.clone(),
    })
}

/// `subst_type`, then `subst_term`, then beta normalization.
pub fn subst_norm(t: &Term, tyinst: &TypeInstantiation, inst: &TermInstantiation) -> Result<Term, KernelError> {
    Ok(subst_term(inst, &subst_type(tyinst, t))?.beta_norm())
}
