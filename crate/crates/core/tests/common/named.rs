//! A named-variable lambda calculus used as an independent reference for
//! de Bruijn substitution and beta normalization.

use std::collections::BTreeSet;

use holcheck::kernel::{HolType, Term, TermKind};

#[derive(Clone, Debug)]
pub enum Named {
    /// Free or bound variable, told apart only by the enclosing binders.
    Var(String, HolType),
    SVar(String, HolType),
    Const(String, HolType),
    App(Box<Named>, Box<Named>),
    Lam(String, HolType, Box<Named>),
}

use Named::*;

pub fn free_names(n: &Named, out: &mut BTreeSet<String>) {
    match n {
        Var(x, _) => {
            out.insert(x.clone());
        }
        App(f, a) => {
            free_names(f, out);
            free_names(a, out);
        }
        Lam(x, _, b) => {
            let mut inner = BTreeSet::new();
            free_names(b, &mut inner);
            inner.remove(x);
            out.extend(inner);
        }
        SVar(..) | Const(..) => {}
    }
}

fn fv(n: &Named) -> BTreeSet<String> {
    let mut s = BTreeSet::new();
    free_names(n, &mut s);
    s
}

fn fresh(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut name = format!("{base}'");
    while avoid.contains(&name) {
        name.push('\'');
    }
    name
}

/// What a substitution replaces: a free variable or a schematic variable.
#[derive(Clone, Copy)]
pub enum Target<'a> {
    Var(&'a str),
    SVar(&'a str),
}

/// Capture-avoiding substitution of `s` for `target` in `n`.
pub fn subst(n: &Named, target: Target, s: &Named) -> Named {
    match (n, target) {
        (Var(x, _), Target::Var(t)) if x == t => s.clone(),
        (SVar(x, _), Target::SVar(t)) if x == t => s.clone(),
        (Var(..) | SVar(..) | Const(..), _) => n.clone(),
        (App(f, a), _) => App(Box::new(subst(f, target, s)), Box::new(subst(a, target, s))),
        (Lam(y, ty, b), _) => {
            if matches!(target, Target::Var(t) if t == y) {
                return n.clone();
            }
            let fs = fv(s);
            let target_free = match target {
                Target::Var(t) => fv(b).contains(t),
                Target::SVar(_) => true,
            };
            if fs.contains(y) && target_free {
                let mut avoid = fs;
                avoid.extend(fv(b));
                if let Target::Var(t) = target {
                    avoid.insert(t.to_string());
                }
                let y2 = fresh(y, &avoid);
                let b2 = subst(b, Target::Var(y), &Var(y2.clone(), ty.clone()));
                Lam(y2, ty.clone(), Box::new(subst(&b2, target, s)))
            } else {
                Lam(y.clone(), ty.clone(), Box::new(subst(b, target, s)))
            }
        }
    }
}

/// Normal-order reduction to beta normal form.
pub fn normalize(n: &Named) -> Named {
    match n {
        App(f, a) => match normalize(f) {
            Lam(x, _, b) => normalize(&subst(&b, Target::Var(&x), a)),
            f2 => App(Box::new(f2), Box::new(normalize(a))),
        },
        Lam(x, ty, b) => Lam(x.clone(), ty.clone(), Box::new(normalize(b))),
        _ => n.clone(),
    }
}

/// Converts a closed-or-free de Bruijn term, naming each binder after its
/// hint unless that would capture a free occurrence in the body.
pub fn to_named(t: &Term) -> Named {
    let mut counter = 0;
    to_named_rec(t, &mut Vec::new(), &mut counter)
}

fn to_named_rec(t: &Term, stack: &mut Vec<(String, HolType)>, counter: &mut usize) -> Named {
    match t.kind() {
        TermKind::Var(n, ty) => Var(n.to_string(), ty.clone()),
        TermKind::SVar(n, ty) => SVar(n.to_string(), ty.clone()),
        TermKind::Const(n, ty) => Const(n.to_string(), ty.clone()),
        TermKind::Bound(i) => {
            let (n, ty) = &stack[stack.len() - 1 - i];
            Var(n.clone(), ty.clone())
        }
        TermKind::App(f, a) => App(
            Box::new(to_named_rec(f, stack, counter)),
            Box::new(to_named_rec(a, stack, counter)),
        ),
        TermKind::Abs(hint, ty, b) => {
            *counter += 1;
            let placeholder = format!("#{counter}");
            stack.push((placeholder.clone(), ty.clone()));
            let body = to_named_rec(b, stack, counter);
            stack.pop();
            let mut avoid = fv(&body);
            avoid.remove(&placeholder);
            let name = if avoid.contains(hint.as_ref()) {
                fresh(hint, &avoid)
            } else {
                hint.to_string()
            };
            let body = subst(&body, Target::Var(&placeholder), &Var(name.clone(), ty.clone()));
            Lam(name, ty.clone(), Box::new(body))
        }
    }
}

pub fn from_named(n: &Named) -> Term {
    from_named_rec(n, &mut Vec::new())
}

fn from_named_rec(n: &Named, stack: &mut Vec<String>) -> Term {
    match n {
        Var(x, ty) => match stack.iter().rev().position(|b| b == x) {
            Some(i) => Term::bound(i),
            None => Term::var(x.as_str(), ty.clone()),
        },
        SVar(x, ty) => Term::svar(x.as_str(), ty.clone()),
        Const(x, ty) => Term::constant(x.as_str(), ty.clone()),
        App(f, a) => Term::app(from_named_rec(f, stack), from_named_rec(a, stack)),
        Lam(x, ty, b) => {
            stack.push(x.clone());
            let body = from_named_rec(b, stack);
            stack.pop();
            Term::abs(x.as_str(), ty.clone(), body)
        }
    }
}
