//! Conversions: procedures that, given a term `t`, prove `|- t = t'`.
//!
//! Failure is an ordinary error value so that combinators such as
//! [`try_conv`] and [`top_conv`] can recover from it.

use std::cell::Cell;

use crate::kernel::{first_order_match, PrimRule, RuleArgs, Term, TermInstantiation, TermKind, TypeInstantiation};
use crate::proof::{Env, ProofError, ProofNode};

pub type ConvResult = Result<ProofNode, ProofError>;

pub trait Conv {
    fn conv(&self, env: &Env, t: &Term) -> ConvResult;
}

impl<F: Fn(&Env, &Term) -> ConvResult> Conv for F {
    fn conv(&self, env: &Env, t: &Term) -> ConvResult {
        self(env, t)
    }
}

impl Conv for &dyn Conv {
    fn conv(&self, env: &Env, t: &Term) -> ConvResult {
        (**self).conv(env, t)
    }
}

impl Conv for Box<dyn Conv + '_> {
    fn conv(&self, env: &Env, t: &Term) -> ConvResult {
        (**self).conv(env, t)
    }
}

fn shape(conv: &'static str, t: &Term) -> ProofError {
    ProofError::ShapeMismatch {
        conv,
        term: t.to_string(),
    }
}

pub fn refl(env: &Env, t: &Term) -> ConvResult {
    ProofNode::prim(PrimRule::Reflexive, RuleArgs::Term(t.clone()), vec![], env)
}

/// True for proofs of `t = t` produced by `reflexive`.
pub fn is_refl(n: &ProofNode) -> bool {
    matches!(n.rule(), crate::proof::NodeRule::Prim(PrimRule::Reflexive))
}

/// Right-hand side of an equational proof.
pub fn rhs(n: &ProofNode) -> &Term {
    n.th().prop.dest_eq().expect("conversion result is an equation").1
}

pub fn symmetric(env: &Env, n: ProofNode) -> ConvResult {
    ProofNode::prim(PrimRule::Symmetric, RuleArgs::None, vec![n], env)
}

/// Chains `|- a = b` and `|- b = c`, skipping reflexive links.
pub fn transitive(env: &Env, n1: ProofNode, n2: ProofNode) -> ConvResult {
    if is_refl(&n2) {
        return Ok(n1);
    }
    if is_refl(&n1) {
        return Ok(n2);
    }
    ProofNode::prim(PrimRule::Transitive, RuleArgs::None, vec![n1, n2], env)
}

/// From `|- f = g` and `|- x = y` proves `|- f x = g y`.
pub fn combination(env: &Env, nf: ProofNode, nx: ProofNode) -> ConvResult {
    if is_refl(&nf) && is_refl(&nx) {
        let t = Term::app(rhs(&nf).clone(), rhs(&nx).clone());
        return refl(env, &t);
    }
    ProofNode::prim(PrimRule::Combination, RuleArgs::None, vec![nf, nx], env)
}

pub fn all_conv(env: &Env, t: &Term) -> ConvResult {
    refl(env, t)
}

pub fn no_conv(_env: &Env, t: &Term) -> ConvResult {
    Err(shape("no_conv", t))
}

pub fn then_conv<A: Conv, B: Conv>(a: A, b: B) -> impl Conv {
    move |env: &Env, t: &Term| {
        let n1 = a.conv(env, t)?;
        let n2 = b.conv(env, rhs(&n1))?;
        transitive(env, n1, n2)
    }
}

pub fn else_conv<A: Conv, B: Conv>(a: A, b: B) -> impl Conv {
    move |env: &Env, t: &Term| a.conv(env, t).or_else(|_| b.conv(env, t))
}

pub fn try_conv<A: Conv>(a: A) -> impl Conv {
    move |env: &Env, t: &Term| a.conv(env, t).or_else(|_| refl(env, t))
}

/// Rewrites with a stored equation `lhs = rhs` (schematic variables are
/// instantiated by matching `lhs` against the whole term).
pub fn rewr_conv(name: &str) -> impl Conv + '_ {
    move |env: &Env, t: &Term| rewrite(env, name, false, t)
}

/// Rewrites right to left with a stored equation.
pub fn rewr_conv_rev(name: &str) -> impl Conv + '_ {
    move |env: &Env, t: &Term| rewrite(env, name, true, t)
}

fn rewrite(env: &Env, name: &str, reverse: bool, t: &Term) -> ConvResult {
    use crate::kernel::TheoremSource;
    let seq = env.lookup_theorem(name)?;
    let (l, r) = seq.prop.dest_eq().ok_or_else(|| ProofError::NotAnEquation(name.to_string()))?;
    let pat = if reverse { r } else { l };
    let (tyinst, inst) = first_order_match(pat, t, &Default::default())?;
    let mut n = ProofNode::prim(PrimRule::Theorem, RuleArgs::Name(name.to_string()), vec![], env)?;
    if !tyinst.is_empty() {
        n = ProofNode::prim(PrimRule::SubstType, RuleArgs::TypeInst(tyinst), vec![n], env)?;
    }
    if !inst.is_empty() {
        n = ProofNode::prim(PrimRule::Substitution, RuleArgs::TermInst(inst), vec![n], env)?;
    }
    if reverse {
        n = symmetric(env, n)?;
    }
    match n.th().prop.dest_eq() {
        Some((lhs, _)) if lhs == t => Ok(n),
        _ => Err(crate::kernel::KernelError::match_failure(format!("rewriting {t} with {name} changes its left side")).into()),
    }
}

/// Instantiates a stored theorem with explicit type and term instantiations.
pub fn instantiate_theorem(
    env: &Env,
    name: &str,
    tyinst: TypeInstantiation,
    inst: TermInstantiation,
) -> ConvResult {
    let n = ProofNode::prim(PrimRule::Theorem, RuleArgs::Name(name.to_string()), vec![], env)?;
    let n = ProofNode::prim(PrimRule::SubstType, RuleArgs::TypeInst(tyinst), vec![n], env)?;
    ProofNode::prim(PrimRule::Substitution, RuleArgs::TermInst(inst), vec![n], env)
}

pub fn beta_conv_c(env: &Env, t: &Term) -> ConvResult {
    match t.dest_app() {
        Some((f, _)) if f.is_abs() => ProofNode::prim(PrimRule::BetaConv, RuleArgs::Term(t.clone()), vec![], env),
        _ => Err(shape("beta_conv", t)),
    }
}

pub fn arg_conv<C: Conv>(cv: C) -> impl Conv {
    move |env: &Env, t: &Term| {
        let (f, x) = t.dest_app().ok_or_else(|| shape("arg_conv", t))?;
        let nx = cv.conv(env, x)?;
        if is_refl(&nx) {
            return refl(env, t);
        }
        combination(env, refl(env, f)?, nx)
    }
}

pub fn fun_conv<C: Conv>(cv: C) -> impl Conv {
    move |env: &Env, t: &Term| {
        let (f, x) = t.dest_app().ok_or_else(|| shape("fun_conv", t))?;
        let nf = cv.conv(env, f)?;
        if is_refl(&nf) {
            return refl(env, t);
        }
        combination(env, nf, refl(env, x)?)
    }
}

/// Applies `cv` to both operands of `op a b`.
pub fn binop_conv<C: Conv>(cv: C) -> impl Conv {
    move |env: &Env, t: &Term| {
        let (opa, b) = t.dest_app().ok_or_else(|| shape("binop_conv", t))?;
        let (op, a) = opa.dest_app().ok_or_else(|| shape("binop_conv", t))?;
        let na = cv.conv(env, a)?;
        let nb = cv.conv(env, b)?;
        if is_refl(&na) && is_refl(&nb) {
            return refl(env, t);
        }
        let nopa = combination(env, refl(env, op)?, na)?;
        combination(env, nopa, nb)
    }
}

/// Applies `cv` to the body of an abstraction, opened with a variable that
/// occurs nowhere in the term.
pub fn abs_conv<C: Conv>(cv: C) -> impl Conv {
    move |env: &Env, t: &Term| {
        let (hint, ty, body) = t.dest_abs().ok_or_else(|| shape("abs_conv", t))?;
        let names = t.names();
        let mut name = if crate::syntax::is_identifier(hint) { hint.to_string() } else { "x".to_string() };
        while names.contains(name.as_str()) {
            name.push('\'');
        }
        let v = Term::var(name.as_str(), ty.clone());
        let nb = cv.conv(env, &body.instantiate(&v))?;
        if is_refl(&nb) {
            return refl(env, t);
        }
        ProofNode::prim(PrimRule::Abstraction, RuleArgs::Term(v), vec![nb], env)
    }
}

/// Applies `cv` to the immediate subterms.
pub fn sub_conv<C: Conv>(cv: C) -> impl Conv {
    move |env: &Env, t: &Term| match t.kind() {
        TermKind::App(f, x) => {
            let nf = cv.conv(env, f)?;
            let nx = cv.conv(env, x)?;
            combination(env, nf, nx)
        }
        TermKind::Abs(..) => abs_conv(|e: &Env, s: &Term| cv.conv(e, s)).conv(env, t),
        _ => refl(env, t),
    }
}

/// Repeatedly rewrites with `cv`, top-down, until no position changes.
/// Each successful rewrite costs one unit of the environment's budget.
pub fn top_conv<C: Conv>(cv: C) -> impl Conv {
    move |env: &Env, t: &Term| {
        let used = Cell::new(0usize);
        top_rec(&cv, env, t, &used)
    }
}

fn top_rec(cv: &dyn Conv, env: &Env, t: &Term, used: &Cell<usize>) -> ConvResult {
    let charge = || {
        used.set(used.get() + 1);
        if used.get() > env.budget() {
            Err(ProofError::BudgetExceeded(env.budget()))
        } else {
            Ok(())
        }
    };
    let mut acc = refl(env, t)?;
    loop {
        let cur = rhs(&acc).clone();
        match cv.conv(env, &cur) {
            Ok(n) if rhs(&n) != &cur => {
                charge()?;
                acc = transitive(env, acc, n)?;
            }
            Ok(_) => break,
            Err(ProofError::BudgetExceeded(b)) => return Err(ProofError::BudgetExceeded(b)),
            Err(_) => break,
        }
    }
    let cur = rhs(&acc).clone();
    let sub = sub_conv(|env: &Env, s: &Term| top_rec(cv, env, s, used)).conv(env, &cur)?;
    if is_refl(&sub) {
        return Ok(acc);
    }
    acc = transitive(env, acc, sub)?;
    let cur = rhs(&acc).clone();
    match cv.conv(env, &cur) {
        Ok(n) if rhs(&n) != &cur => {
            charge()?;
            let again = top_rec(cv, env, rhs(&n), used)?;
            let step = transitive(env, n, again)?;
            transitive(env, acc, step)
        }
        Err(ProofError::BudgetExceeded(b)) => Err(ProofError::BudgetExceeded(b)),
        _ => Ok(acc),
    }
}
