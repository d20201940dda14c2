//! The fixed table of primitive derivation rules.

use std::fmt;
use std::str::FromStr;

use super::error::KernelError;
use super::inst::{subst_term, subst_type, TermInstantiation, TypeInstantiation};
use super::sig::{type_of, Signature};
use super::term::Term;
use super::thm::{Sequent, Thm};

/// Read access to the declarations and stored theorems a rule may consult.
pub trait TheoremSource {
    fn signature(&self) -> &Signature;

    /// The named theorem in schematic-variable form.
    fn lookup_theorem(&self, name: &str) -> Result<Sequent, KernelError>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimRule {
    Assume,
    ImpliesIntro,
    ImpliesElim,
    ForallIntro,
    ForallElim,
    Reflexive,
    Symmetric,
    Transitive,
    Combination,
    Abstraction,
    BetaConv,
    EqualElim,
    SubstType,
    Substitution,
    Theorem,
    Sorry,
}

/// What a rule (or macro) takes as its argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgKind {
    None,
    Term,
    Variable,
    TypeInst,
    TermInst,
    TheoremName,
    Sequent,
}

impl PrimRule {
    pub const ALL: [PrimRule; 16] = [
        PrimRule::Assume,
        PrimRule::ImpliesIntro,
        PrimRule::ImpliesElim,
        PrimRule::ForallIntro,
        PrimRule::ForallElim,
        PrimRule::Reflexive,
        PrimRule::Symmetric,
        PrimRule::Transitive,
        PrimRule::Combination,
        PrimRule::Abstraction,
        PrimRule::BetaConv,
        PrimRule::EqualElim,
        PrimRule::SubstType,
        PrimRule::Substitution,
        PrimRule::Theorem,
        PrimRule::Sorry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PrimRule::Assume => "assume",
            PrimRule::ImpliesIntro => "implies_intro",
            PrimRule::ImpliesElim => "implies_elim",
            PrimRule::ForallIntro => "forall_intro",
            PrimRule::ForallElim => "forall_elim",
            PrimRule::Reflexive => "reflexive",
            PrimRule::Symmetric => "symmetric",
            PrimRule::Transitive => "transitive",
            PrimRule::Combination => "combination",
            PrimRule::Abstraction => "abstraction",
            PrimRule::BetaConv => "beta_conv",
            PrimRule::EqualElim => "equal_elim",
            PrimRule::SubstType => "subst_type",
            PrimRule::Substitution => "substitution",
            PrimRule::Theorem => "theorem",
            PrimRule::Sorry => "sorry",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            PrimRule::Assume | PrimRule::Reflexive | PrimRule::BetaConv | PrimRule::Theorem | PrimRule::Sorry => 0,
            PrimRule::ImpliesElim | PrimRule::Transitive | PrimRule::Combination | PrimRule::EqualElim => 2,
            _ => 1,
        }
    }

    pub fn arg_kind(self) -> ArgKind {
        match self {
            PrimRule::Assume | PrimRule::ImpliesIntro | PrimRule::ForallElim | PrimRule::Reflexive | PrimRule::BetaConv => {
                ArgKind::Term
            }
            PrimRule::ForallIntro | PrimRule::Abstraction => ArgKind::Variable,
            PrimRule::SubstType => ArgKind::TypeInst,
            PrimRule::Substitution => ArgKind::TermInst,
            PrimRule::Theorem => ArgKind::TheoremName,
            PrimRule::Sorry => ArgKind::Sequent,
            PrimRule::ImpliesElim | PrimRule::Symmetric | PrimRule::Transitive | PrimRule::Combination | PrimRule::EqualElim => {
                ArgKind::None
            }
        }
    }
}

impl fmt::Display for PrimRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PrimRule {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        PrimRule::ALL.into_iter().find(|r| r.name() == s).ok_or(())
    }
}

/// Parsed argument of a rule or macro.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleArgs {
    None,
    Term(Term),
    TypeInst(TypeInstantiation),
    TermInst(TermInstantiation),
    Name(String),
    Sequent(Sequent),
}

impl RuleArgs {
    pub fn kind(&self) -> ArgKind {
        match self {
            RuleArgs::None => ArgKind::None,
            RuleArgs::Term(_) => ArgKind::Term,
            RuleArgs::TypeInst(_) => ArgKind::TypeInst,
            RuleArgs::TermInst(_) => ArgKind::TermInst,
            RuleArgs::Name(_) => ArgKind::TheoremName,
            RuleArgs::Sequent(_) => ArgKind::Sequent,
        }
    }
}

fn bool_term(rule: PrimRule, t: &Term, sig: &Signature) -> Result<(), KernelError> {
    let ty = type_of(t, sig)?;
    if ty.is_bool() {
        Ok(())
    } else {
        Err(KernelError::rule(rule.name(), format!("{t} has type {ty}, expected bool")))
    }
}

fn dest_eq_prev(rule: PrimRule, th: &Thm) -> Result<(&Term, &Term), KernelError> {
    th.prop
        .dest_eq()
        .ok_or_else(|| KernelError::rule(rule.name(), format!("{} is not an equation", th.prop)))
}

fn eq_term(rule: PrimRule, l: Term, r: Term) -> Result<Term, KernelError> {
    let ty = l.ty().map_err(|e| KernelError::rule(rule.name(), e.to_string()))?;
    Ok(Term::mk_eq(l, r, &ty))
}

/// Evaluates a primitive rule on already-derived premises.
pub fn apply_prim_rule(
    rule: PrimRule,
    args: &RuleArgs,
    prevs: &[&Thm],
    src: &dyn TheoremSource,
) -> Result<Thm, KernelError> {
    let name = rule.name();
    let err = |reason: String| KernelError::rule(name, reason);
    if prevs.len() != rule.arity() {
        return Err(err(format!("expects {} premises, got {}", rule.arity(), prevs.len())));
    }
    let kind_ok = match rule.arg_kind() {
        ArgKind::Variable => matches!(args, RuleArgs::Term(_)),
        k => args.kind() == k,
    };
    if !kind_ok {
        return Err(err(format!("argument of the wrong kind ({:?})", args.kind())));
    }
    let sig = src.signature();

    let seq = match (rule, args) {
        (PrimRule::Assume, RuleArgs::Term(a)) => {
            bool_term(rule, a, sig)?;
            Sequent::new([a.clone()], a.clone())
        }
        (PrimRule::ImpliesIntro, RuleArgs::Term(a)) => {
            bool_term(rule, a, sig)?;
            let th = prevs[0];
            let mut hyps = th.hyps.clone();
            hyps.remove(a);
            Sequent {
                hyps,
                prop: Term::mk_implies(a.clone(), th.prop.clone()),
            }
        }
        (PrimRule::ImpliesElim, _) => {
            let (imp, ante) = (prevs[0], prevs[1]);
            let (a, b) = imp
                .prop
                .dest_implies()
                .ok_or_else(|| err(format!("{} is not an implication", imp.prop)))?;
            if *a != ante.prop {
                return Err(err(format!("antecedent {a} differs from {}", ante.prop)));
            }
            Sequent {
                hyps: imp.hyps.union(&ante.hyps).cloned().collect(),
                prop: b.clone(),
            }
        }
        (PrimRule::ForallIntro, RuleArgs::Term(x)) => {
            let (n, ty) = x.dest_var().ok_or_else(|| err(format!("{x} is not a variable")))?;
            sig.check_type(ty)?;
            let th = prevs[0];
            if th.hyps.iter().any(|h| h.occurs_var(n, ty)) {
                return Err(err(format!("{n} occurs free in the hypotheses")));
            }
            Sequent {
                hyps: th.hyps.clone(),
                prop: Term::mk_forall(n, ty, &th.prop),
            }
        }
        (PrimRule::ForallElim, RuleArgs::Term(t)) => {
            let th = prevs[0];
            let (_, pred) = th
                .prop
                .dest_app()
                .filter(|(f, _)| f.is_const_named(super::term::ALL))
                .ok_or_else(|| err(format!("{} is not universally quantified", th.prop)))?;
            let tty = type_of(t, sig)?;
            let bound_ty = pred
                .ty()?
                .dest_fun()
                .map(|(d, _)| d.clone())
                .ok_or_else(|| err("malformed quantifier".into()))?;
            if tty != bound_ty {
                return Err(err(format!("{t} has type {tty}, quantifier ranges over {bound_ty}")));
            }
            if !t.is_closed() {
                return Err(err("instantiating term has a dangling bound variable".into()));
            }
            let prop = match pred.dest_abs() {
                Some((_, _, body)) => body.instantiate(t),
                None => Term::app(pred.clone(), t.clone()),
            };
            Sequent {
                hyps: th.hyps.clone(),
                prop,
            }
        }
        (PrimRule::Reflexive, RuleArgs::Term(t)) => {
            let ty = type_of(t, sig)?;
            Sequent::concl(Term::mk_eq(t.clone(), t.clone(), &ty))
        }
        (PrimRule::Symmetric, _) => {
            let th = prevs[0];
            let (l, r) = dest_eq_prev(rule, th)?;
            Sequent {
                hyps: th.hyps.clone(),
                prop: eq_term(rule, r.clone(), l.clone())?,
            }
        }
        (PrimRule::Transitive, _) => {
            let (th1, th2) = (prevs[0], prevs[1]);
            let (s, t1) = dest_eq_prev(rule, th1)?;
            let (t2, u) = dest_eq_prev(rule, th2)?;
            if t1 != t2 {
                return Err(err(format!("middle terms differ: {t1} and {t2}")));
            }
            Sequent {
                hyps: th1.hyps.union(&th2.hyps).cloned().collect(),
                prop: eq_term(rule, s.clone(), u.clone())?,
            }
        }
        (PrimRule::Combination, _) => {
            let (th1, th2) = (prevs[0], prevs[1]);
            let (f, g) = dest_eq_prev(rule, th1)?;
            let (s, t) = dest_eq_prev(rule, th2)?;
            let fty = f.ty()?;
            let sty = s.ty()?;
            match fty.dest_fun() {
                Some((dom, _)) if *dom == sty => {}
                _ => return Err(err(format!("cannot apply {f} : {fty} to {s} : {sty}"))),
            }
            Sequent {
                hyps: th1.hyps.union(&th2.hyps).cloned().collect(),
                prop: eq_term(rule, Term::app(f.clone(), s.clone()), Term::app(g.clone(), t.clone()))?,
            }
        }
        (PrimRule::Abstraction, RuleArgs::Term(x)) => {
            let (n, ty) = x.dest_var().ok_or_else(|| err(format!("{x} is not a variable")))?;
            sig.check_type(ty)?;
            let th = prevs[0];
            let (s, t) = dest_eq_prev(rule, th)?;
            if th.hyps.iter().any(|h| h.occurs_var(n, ty)) {
                return Err(err(format!("{n} occurs free in the hypotheses")));
            }
            Sequent {
                hyps: th.hyps.clone(),
                prop: eq_term(rule, Term::lambda(n, ty, s), Term::lambda(n, ty, t))?,
            }
        }
        (PrimRule::BetaConv, RuleArgs::Term(t)) => {
            let ty = type_of(t, sig)?;
            let (f, x) = t.dest_app().ok_or_else(|| err(format!("{t} is not a beta redex")))?;
            let (_, _, body) = f.dest_abs().ok_or_else(|| err(format!("{t} is not a beta redex")))?;
            Sequent::concl(Term::mk_eq(t.clone(), body.instantiate(x), &ty))
        }
        (PrimRule::EqualElim, _) => {
            let (th1, th2) = (prevs[0], prevs[1]);
            let (a, b) = dest_eq_prev(rule, th1)?;
            if *a != th2.prop {
                return Err(err(format!("{a} differs from {}", th2.prop)));
            }
            Sequent {
                hyps: th1.hyps.union(&th2.hyps).cloned().collect(),
                prop: b.clone(),
            }
        }
        (PrimRule::SubstType, RuleArgs::TypeInst(tyinst)) => {
            for ty in tyinst.0.values() {
                sig.check_type(ty)?;
            }
            prevs[0].map_terms(|t| subst_type(tyinst, t))
        }
        (PrimRule::Substitution, RuleArgs::TermInst(inst)) => {
            for r in inst.0.values() {
                type_of(r, sig)?;
            }
            prevs[0].try_map_terms(|t| subst_term(inst, t).map(|t| t.beta_norm()))?
        }
        (PrimRule::Theorem, RuleArgs::Name(n)) => src.lookup_theorem(n)?,
        (PrimRule::Sorry, RuleArgs::Sequent(seq)) => {
            for t in seq.terms() {
                bool_term(rule, t, sig)?;
            }
            seq.clone()
        }
        _ => return Err(err("argument of the wrong kind".into())),
    };
    Ok(Thm::new(seq))
}
