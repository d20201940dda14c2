use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::error::KernelError;
use super::types::{HolType, Name};

pub const EQUALS: &str = "equals";
pub const IMPLIES: &str = "implies";
pub const ALL: &str = "all";

/// Lambda term with de Bruijn bound variables and named free/schematic variables.
///
/// Equality, hashing and ordering ignore the binder name hint carried by
/// `Abs`, so structural equality is alpha-equivalence.
#[derive(Clone)]
pub struct Term(Arc<TermKind>);

#[derive(Debug, Clone)]
pub enum TermKind {
    Var(Name, HolType),
    SVar(Name, HolType),
    Const(Name, HolType),
    App(Term, Term),
    Abs(Name, HolType, Term),
    Bound(usize),
}

impl Term {
    pub fn var(name: impl Into<Name>, ty: HolType) -> Self {
        Term(Arc::new(TermKind::Var(name.into(), ty)))
    }

    pub fn svar(name: impl Into<Name>, ty: HolType) -> Self {
        Term(Arc::new(TermKind::SVar(name.into(), ty)))
    }

    pub fn constant(name: impl Into<Name>, ty: HolType) -> Self {
        Term(Arc::new(TermKind::Const(name.into(), ty)))
    }

    pub fn app(f: Term, x: Term) -> Self {
        Term(Arc::new(TermKind::App(f, x)))
    }

    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Self {
        args.into_iter().fold(f, Term::app)
    }

    /// Raw abstraction; `body` already refers to the binder as `Bound(0)`.
    pub fn abs(hint: impl Into<Name>, ty: HolType, body: Term) -> Self {
        Term(Arc::new(TermKind::Abs(hint.into(), ty, body)))
    }

    pub fn bound(i: usize) -> Self {
        Term(Arc::new(TermKind::Bound(i)))
    }

    /// `%x. body` where the free variable `x` is abstracted out of `body`.
    pub fn lambda(name: &str, ty: &HolType, body: &Term) -> Self {
        Term::abs(name, ty.clone(), body.abstract_var(name, ty))
    }

    pub fn kind(&self) -> &TermKind {
        &self.0
    }

    pub fn ptr_eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn is_var(&self) -> bool {
        matches!(*self.0, TermKind::Var(..))
    }

    pub fn is_svar(&self) -> bool {
        matches!(*self.0, TermKind::SVar(..))
    }

    pub fn is_abs(&self) -> bool {
        matches!(*self.0, TermKind::Abs(..))
    }

    pub fn is_app(&self) -> bool {
        matches!(*self.0, TermKind::App(..))
    }

    pub fn is_const_named(&self, name: &str) -> bool {
        matches!(&*self.0, TermKind::Const(n, _) if &**n == name)
    }

    pub fn dest_var(&self) -> Option<(&Name, &HolType)> {
        match &*self.0 {
            TermKind::Var(n, ty) => Some((n, ty)),
            _ => None,
        }
    }

    pub fn dest_const(&self) -> Option<(&Name, &HolType)> {
        match &*self.0 {
            TermKind::Const(n, ty) => Some((n, ty)),
            _ => None,
        }
    }

    pub fn dest_app(&self) -> Option<(&Term, &Term)> {
        match &*self.0 {
            TermKind::App(f, x) => Some((f, x)),
            _ => None,
        }
    }

    pub fn dest_abs(&self) -> Option<(&Name, &HolType, &Term)> {
        match &*self.0 {
            TermKind::Abs(n, ty, b) => Some((n, ty, b)),
            _ => None,
        }
    }

    /// Head and arguments of an iterated application.
    pub fn strip_comb(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut t = self;
        while let TermKind::App(f, x) = &*t.0 {
            args.push(x);
            t = f;
        }
        args.reverse();
        (t, args)
    }

    pub fn head(&self) -> &Term {
        let mut t = self;
        while let TermKind::App(f, _) = &*t.0 {
            t = f;
        }
        t
    }

    /// `c a b` with head constant named `c` and exactly two arguments.
    pub fn dest_binop(&self, c: &str) -> Option<(&Term, &Term)> {
        let (f, r) = self.dest_app()?;
        let (op, l) = f.dest_app()?;
        op.is_const_named(c).then_some((l, r))
    }

    pub fn dest_eq(&self) -> Option<(&Term, &Term)> {
        self.dest_binop(EQUALS)
    }

    pub fn is_eq(&self) -> bool {
        self.dest_eq().is_some()
    }

    pub fn dest_implies(&self) -> Option<(&Term, &Term)> {
        self.dest_binop(IMPLIES)
    }

    /// `!x. body` as (hint, binder type, body with `Bound(0)`).
    pub fn dest_forall(&self) -> Option<(&Name, &HolType, &Term)> {
        let (f, x) = self.dest_app()?;
        if !f.is_const_named(ALL) {
            return None;
        }
        x.dest_abs()
    }

    /// Splits the first `n` antecedents off an implication chain.
    pub fn strip_implies_n(&self, n: usize) -> Option<(Vec<&Term>, &Term)> {
        let mut assums = Vec::with_capacity(n);
        let mut t = self;
        for _ in 0..n {
            let (a, rest) = t.dest_implies()?;
            assums.push(a);
            t = rest;
        }
        Some((assums, t))
    }

    pub fn strip_implies(&self) -> (Vec<&Term>, &Term) {
        let mut assums = Vec::new();
        let mut t = self;
        while let Some((a, rest)) = t.dest_implies() {
            assums.push(a);
            t = rest;
        }
        (assums, t)
    }

    pub fn mk_eq(lhs: Term, rhs: Term, ty: &HolType) -> Term {
        let eq_ty = HolType::fun_n([ty.clone(), ty.clone()], HolType::bool());
        Term::apps(Term::constant(EQUALS, eq_ty), [lhs, rhs])
    }

    pub fn mk_implies(a: Term, b: Term) -> Term {
        let ty = HolType::fun_n([HolType::bool(), HolType::bool()], HolType::bool());
        Term::apps(Term::constant(IMPLIES, ty), [a, b])
    }

    pub fn mk_forall(name: &str, ty: &HolType, body: &Term) -> Term {
        let all_ty = HolType::fun(HolType::fun(ty.clone(), HolType::bool()), HolType::bool());
        Term::app(Term::constant(ALL, all_ty), Term::lambda(name, ty, body))
    }

    /// Type computed structurally (consistency of applications is checked,
    /// constants are not looked up in any signature).
    pub fn ty(&self) -> Result<HolType, KernelError> {
        let mut env = Vec::new();
        self.ty_in(&mut env)
    }

    pub(crate) fn ty_in(&self, env: &mut Vec<HolType>) -> Result<HolType, KernelError> {
        match &*self.0 {
            TermKind::Var(_, ty) | TermKind::SVar(_, ty) | TermKind::Const(_, ty) => Ok(ty.clone()),
            TermKind::Bound(i) => env
                .len()
                .checked_sub(i + 1)
                .map(|k| env[k].clone())
                .ok_or_else(|| KernelError::type_error(format!("loose bound variable {i}"))),
            TermKind::App(f, x) => {
                let fty = f.ty_in(env)?;
                let xty = x.ty_in(env)?;
                match fty.dest_fun() {
                    Some((dom, cod)) if *dom == xty => Ok(cod.clone()),
                    Some((dom, _)) => Err(KernelError::type_error(format!(
                        "argument has type {xty}, expected {dom}"
                    ))),
                    None => Err(KernelError::type_error(format!(
                        "applying a term of non-function type {fty}"
                    ))),
                }
            }
            TermKind::Abs(_, ty, body) => {
                env.push(ty.clone());
                let r = body.ty_in(env);
                env.pop();
                Ok(HolType::fun(ty.clone(), r?))
            }
        }
    }

    /// True if some `Bound(i)` with `i >= depth` escapes.
    pub fn has_loose_bound_from(&self, depth: usize) -> bool {
        match &*self.0 {
            TermKind::Bound(i) => *i >= depth,
            TermKind::App(f, x) => f.has_loose_bound_from(depth) || x.has_loose_bound_from(depth),
            TermKind::Abs(_, _, b) => b.has_loose_bound_from(depth + 1),
            _ => false,
        }
    }

    pub fn is_closed(&self) -> bool {
        !self.has_loose_bound_from(0)
    }

    /// Shifts loose bound indices `>= cutoff` up by `by`.
    fn lift(&self, by: usize, cutoff: usize) -> Term {
        if by == 0 {
            return self.clone();
        }
        match &*self.0 {
            TermKind::Bound(i) if *i >= cutoff => Term::bound(i + by),
            TermKind::App(f, x) => {
                let (nf, nx) = (f.lift(by, cutoff), x.lift(by, cutoff));
                self.rebuild_app(nf, nx)
            }
            TermKind::Abs(n, ty, b) => {
                let nb = b.lift(by, cutoff + 1);
                if nb.ptr_eq(b) {
                    self.clone()
                } else {
                    Term::abs(n.clone(), ty.clone(), nb)
                }
            }
            _ => self.clone(),
        }
    }

    /// Replaces the outermost loose bound variable (`Bound(0)`) of an
    /// abstraction body by `arg`, lowering the remaining loose indices.
    pub fn instantiate(&self, arg: &Term) -> Term {
        self.instantiate_at(arg, 0)
    }

    fn instantiate_at(&self, arg: &Term, depth: usize) -> Term {
        match &*self.0 {
            TermKind::Bound(i) => match (*i).cmp(&depth) {
                Ordering::Equal => arg.lift(depth, 0),
                Ordering::Greater => Term::bound(i - 1),
                Ordering::Less => self.clone(),
            },
            TermKind::App(f, x) => {
                let (nf, nx) = (f.instantiate_at(arg, depth), x.instantiate_at(arg, depth));
                self.rebuild_app(nf, nx)
            }
            TermKind::Abs(n, ty, b) => {
                let nb = b.instantiate_at(arg, depth + 1);
                if nb.ptr_eq(b) {
                    self.clone()
                } else {
                    Term::abs(n.clone(), ty.clone(), nb)
                }
            }
            _ => self.clone(),
        }
    }

    /// Replaces free occurrences of the variable `name : ty` by the bound
    /// variable of a new enclosing binder.
    pub fn abstract_var(&self, name: &str, ty: &HolType) -> Term {
        self.abstract_at(name, ty, 0)
    }

    fn abstract_at(&self, name: &str, ty: &HolType, depth: usize) -> Term {
        match &*self.0 {
            TermKind::Var(n, vty) if &**n == name && vty == ty => Term::bound(depth),
            TermKind::Bound(i) if *i >= depth => Term::bound(i + 1),
            TermKind::App(f, x) => {
                let (nf, nx) = (f.abstract_at(name, ty, depth), x.abstract_at(name, ty, depth));
                self.rebuild_app(nf, nx)
            }
            TermKind::Abs(n, bty, b) => {
                let nb = b.abstract_at(name, ty, depth + 1);
                if nb.ptr_eq(b) {
                    self.clone()
                } else {
                    Term::abs(n.clone(), bty.clone(), nb)
                }
            }
            _ => self.clone(),
        }
    }

    pub(crate) fn rebuild_app(&self, nf: Term, nx: Term) -> Term {
        match &*self.0 {
            TermKind::App(f, x) if f.ptr_eq(&nf) && x.ptr_eq(&nx) => self.clone(),
            _ => Term::app(nf, nx),
        }
    }

    pub fn occurs_var(&self, name: &str, ty: &HolType) -> bool {
        match &*self.0 {
            TermKind::Var(n, vty) => &**n == name && vty == ty,
            TermKind::App(f, x) => f.occurs_var(name, ty) || x.occurs_var(name, ty),
            TermKind::Abs(_, _, b) => b.occurs_var(name, ty),
            _ => false,
        }
    }

    /// Free (named) variables in first-occurrence order, without duplicates.
    pub fn free_vars(&self) -> Vec<(Name, HolType)> {
        let mut out = Vec::new();
        self.collect(&mut |t| {
            if let TermKind::Var(n, ty) = t.kind() {
                let key = (n.clone(), ty.clone());
                if !out.contains(&key) {
                    out.push(key);
                }
            }
        });
        out
    }

    pub fn schematic_vars(&self) -> Vec<(Name, HolType)> {
        let mut out = Vec::new();
        self.collect(&mut |t| {
            if let TermKind::SVar(n, ty) = t.kind() {
                let key = (n.clone(), ty.clone());
                if !out.contains(&key) {
                    out.push(key);
                }
            }
        });
        out
    }

    pub fn has_svars(&self) -> bool {
        match &*self.0 {
            TermKind::SVar(..) => true,
            TermKind::App(f, x) => f.has_svars() || x.has_svars(),
            TermKind::Abs(_, _, b) => b.has_svars(),
            _ => false,
        }
    }

    /// Every type variable occurring anywhere in the term.
    pub fn type_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect(&mut |t| match t.kind() {
            TermKind::Var(_, ty) | TermKind::SVar(_, ty) | TermKind::Const(_, ty) | TermKind::Abs(_, ty, _) => {
                ty.collect_vars(&mut out)
            }
            _ => {}
        });
        out
    }

    /// Names of all constants and free/schematic variables (used to pick
    /// fresh names).
    pub fn names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect(&mut |t| match t.kind() {
            TermKind::Var(n, _) | TermKind::Const(n, _) => {
                out.insert(n.clone());
            }
            _ => {}
        });
        out
    }

    /// Pre-order visit of every subterm.
    pub fn collect(&self, f: &mut impl FnMut(&Term)) {
        f(self);
        match &*self.0 {
            TermKind::App(a, b) => {
                a.collect(f);
                b.collect(f);
            }
            TermKind::Abs(_, _, b) => b.collect(f),
            _ => {}
        }
    }

    pub fn size(&self) -> usize {
        match &*self.0 {
            TermKind::App(f, x) => 1 + f.size() + x.size(),
            TermKind::Abs(_, _, b) => 1 + b.size(),
            _ => 1,
        }
    }

    /// Beta-normal form. Simple types guarantee termination.
    pub fn beta_norm(&self) -> Term {
        match &*self.0 {
            TermKind::App(f, x) => {
                let nf = f.beta_norm();
                if let TermKind::Abs(_, _, body) = &*nf.0 {
                    body.instantiate(x).beta_norm()
                } else {
                    let nx = x.beta_norm();
                    self.rebuild_app(nf, nx)
                }
            }
            TermKind::Abs(n, ty, b) => {
                let nb = b.beta_norm();
                if nb.ptr_eq(b) {
                    self.clone()
                } else {
                    Term::abs(n.clone(), ty.clone(), nb)
                }
            }
            _ => self.clone(),
        }
    }

    pub fn is_beta_normal(&self) -> bool {
        match &*self.0 {
            TermKind::App(f, x) => !f.is_abs() && f.is_beta_normal() && x.is_beta_normal(),
            TermKind::Abs(_, _, b) => b.is_beta_normal(),
            _ => true,
        }
    }

    fn tag(&self) -> u8 {
        match &*self.0 {
            TermKind::Var(..) => 0,
            TermKind::SVar(..) => 1,
            TermKind::Const(..) => 2,
            TermKind::App(..) => 3,
            TermKind::Abs(..) => 4,
            TermKind::Bound(_) => 5,
        }
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (TermKind::Var(a, at), TermKind::Var(b, bt))
            | (TermKind::SVar(a, at), TermKind::SVar(b, bt))
            | (TermKind::Const(a, at), TermKind::Const(b, bt)) => a == b && at == bt,
            (TermKind::App(f1, x1), TermKind::App(f2, x2)) => f1 == f2 && x1 == x2,
            (TermKind::Abs(_, t1, b1), TermKind::Abs(_, t2, b2)) => t1 == t2 && b1 == b2,
            (TermKind::Bound(i), TermKind::Bound(j)) => i == j,
            _ => false,
        }
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.tag().hash(state);
        match &*self.0 {
            TermKind::Var(n, ty) | TermKind::SVar(n, ty) | TermKind::Const(n, ty) => {
                n.hash(state);
                ty.hash(state);
            }
            TermKind::App(f, x) => {
                f.hash(state);
                x.hash(state);
            }
            TermKind::Abs(_, ty, b) => {
                ty.hash(state);
                b.hash(state);
            }
            TermKind::Bound(i) => i.hash(state),
        }
    }
}

/// Constructor tag first, then fields lexicographically; binder hints are
/// not compared.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        match (&*self.0, &*other.0) {
            (TermKind::Var(a, at), TermKind::Var(b, bt))
            | (TermKind::SVar(a, at), TermKind::SVar(b, bt))
            | (TermKind::Const(a, at), TermKind::Const(b, bt)) => a.cmp(b).then_with(|| at.cmp(bt)),
            (TermKind::App(f1, x1), TermKind::App(f2, x2)) => f1.cmp(f2).then_with(|| x1.cmp(x2)),
            (TermKind::Abs(_, t1, b1), TermKind::Abs(_, t2, b2)) => t1.cmp(t2).then_with(|| b1.cmp(b2)),
            (TermKind::Bound(i), TermKind::Bound(j)) => i.cmp(j),
            _ => self.tag().cmp(&other.tag()),
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_term(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_term(self))
    }
}
