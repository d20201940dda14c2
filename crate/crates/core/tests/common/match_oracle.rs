//! Exhaustive small patterns and targets, and a brute-force matcher that
//! tries every assignment of target subterms to schematic variables.

use std::collections::BTreeMap;

use holcheck::kernel::{subst_term, subst_type, HolType, Name, Term, TermInstantiation, TypeInstantiation};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Ty {
    Nat,
    Fun,
    Alpha,
}

fn nat() -> HolType {
    HolType::base("nat")
}

fn fun() -> HolType {
    HolType::fun(nat(), nat())
}

fn hol(ty: Ty) -> HolType {
    match ty {
        Ty::Nat => nat(),
        Ty::Fun => fun(),
        Ty::Alpha => HolType::var("a"),
    }
}

/// Signature: `c, z : nat`, `f : nat => nat`, `g : nat => nat => nat`,
/// `k : 'a => nat` (polymorphic). Patterns may also use `?X, ?Y : nat`,
/// `?F : nat => nat` and `?U : 'a`.
pub fn signature() -> holcheck::kernel::Signature {
    let mut sig = holcheck::kernel::Signature::base();
    sig.add_type("nat", 0).unwrap();
    for (c, ty) in [
        ("c", nat()),
        ("z", nat()),
        ("f", fun()),
        ("g", HolType::fun(nat(), fun())),
        ("k", HolType::fun(HolType::var("a"), nat())),
    ] {
        sig.add_const(c, ty).unwrap();
    }
    sig
}

struct Gen {
    pattern: bool,
    hint: &'static str,
}

impl Gen {
    /// Beta-normal terms of type `ty` with exactly `size` nodes, with
    /// `depth` enclosing binders of type `nat`.
    fn terms(&self, ty: Ty, size: usize, depth: usize) -> Vec<Term> {
        let mut out = Vec::new();
        match ty {
            Ty::Nat => {
                if size == 1 {
                    out.push(Term::constant("c", nat()));
                    out.push(Term::constant("z", nat()));
                    out.extend((0..depth).map(Term::bound));
                    if self.pattern {
                        out.push(Term::svar("X", nat()));
                        out.push(Term::svar("Y", nat()));
                    }
                }
                for head_size in 1..size.saturating_sub(1) {
                    let arg_size = size - 1 - head_size;
                    let heads: Vec<Term> =
                        self.terms(Ty::Fun, head_size, depth).into_iter().filter(|h| !h.is_abs()).collect();
                    if heads.is_empty() {
                        continue;
                    }
                    let args = self.terms(Ty::Nat, arg_size, depth);
                    for h in &heads {
                        for a in &args {
                            out.push(Term::app(h.clone(), a.clone()));
                        }
                    }
                }
                if size >= 3 {
                    let mut arg_tys = vec![Ty::Nat, Ty::Fun];
                    if self.pattern {
                        arg_tys.push(Ty::Alpha);
                    }
                    for aty in arg_tys {
                        let k = Term::constant("k", HolType::fun(hol(aty), nat()));
                        for a in self.terms(aty, size - 2, depth) {
                            out.push(Term::app(k.clone(), a));
                        }
                    }
                }
            }
            Ty::Fun => {
                if size == 1 {
                    out.push(Term::constant("f", fun()));
                    if self.pattern {
                        out.push(Term::svar("F", fun()));
                    }
                }
                if size >= 2 {
                    for body in self.terms(Ty::Nat, size - 1, depth + 1) {
                        out.push(Term::abs(self.hint, nat(), body));
                    }
                }
                if size >= 3 {
                    let g = Term::constant("g", HolType::fun(nat(), fun()));
                    for a in self.terms(Ty::Nat, size - 2, depth) {
                        out.push(Term::app(g.clone(), a));
                    }
                }
            }
            Ty::Alpha => {
                if size == 1 && self.pattern {
                    out.push(Term::svar("U", HolType::var("a")));
                }
            }
        }
        out
    }

    fn all(&self, max: usize) -> Vec<Term> {
        let mut out = Vec::new();
        for size in 1..=max {
            out.extend(self.terms(Ty::Nat, size, 0));
            out.extend(self.terms(Ty::Fun, size, 0));
        }
        out
    }
}

/// Every closed pattern with at most `max` nodes.
pub fn patterns(max: usize) -> Vec<Term> {
    Gen { pattern: true, hint: "x" }.all(max)
}

/// Every closed target with at most `max` nodes. Binder hints differ from
/// the patterns' so that agreement cannot depend on them.
pub fn targets(max: usize) -> Vec<Term> {
    Gen { pattern: false, hint: "y" }.all(max)
}

fn has_applied_svar(t: &Term) -> bool {
    let mut found = false;
    t.collect(&mut |s| found |= s.is_app() && s.head().is_svar());
    found
}

pub type Assignment = (BTreeMap<Name, HolType>, BTreeMap<Name, Term>);

/// The assignment making `pattern` syntactically equal to `target`, found
/// by trying every type choice for the pattern's type variables and every
/// closed subterm of `target` for each schematic variable. Patterns with a
/// schematic variable in function position never match.
pub fn brute_force_match(pattern: &Term, target: &Term) -> Option<Assignment> {
    if has_applied_svar(pattern) {
        return None;
    }
    let mut subterms: Vec<Term> = Vec::new();
    target.collect(&mut |s| {
        if s.is_closed() && !subterms.contains(s) {
            subterms.push(s.clone());
        }
    });
    let tyvars: Vec<Name> = pattern.type_vars().into_iter().collect();
    let choices = [nat(), fun()];
    let mut tychoice = vec![0usize; tyvars.len()];
    loop {
        let tyinst: TypeInstantiation =
            tyvars.iter().zip(&tychoice).map(|(v, &i)| (v.clone(), choices[i].clone())).collect();
        let p = subst_type(&tyinst, pattern);
        if let Some(inst) = assign(&p, target, &subterms) {
            return Some((tyinst.0, inst.0));
        }
        // Next type choice, odometer style.
        let mut i = 0;
        loop {
            if i == tychoice.len() {
                return None;
            }
            tychoice[i] += 1;
            if tychoice[i] < choices.len() {
                break;
            }
            tychoice[i] = 0;
            i += 1;
        }
    }
}

fn assign(p: &Term, target: &Term, subterms: &[Term]) -> Option<TermInstantiation> {
    let svars = p.schematic_vars();
    let cands: Vec<Vec<&Term>> = svars
        .iter()
        .map(|(_, ty)| subterms.iter().filter(|s| s.ty().ok().as_ref() == Some(ty)).collect())
        .collect();
    if cands.iter().any(Vec::is_empty) {
        return None;
    }
    let mut idx = vec![0usize; svars.len()];
    loop {
        let inst: TermInstantiation =
            svars.iter().zip(&idx).zip(&cands).map(|(((n, _), &i), c)| (n.clone(), c[i].clone())).collect();
        if subst_term(&inst, p).ok().as_ref() == Some(target) {
            return Some(inst);
        }
        let mut i = 0;
        loop {
            if i == idx.len() {
                return None;
            }
            idx[i] += 1;
            if idx[i] < cands[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}
