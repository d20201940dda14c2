//! Random well-typed terms over the `nat` fixture signature.

use holcheck::kernel::{HolType, Term};
use holcheck::numeral;
use holcheck::syntax::VarContext;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn nat() -> HolType {
    HolType::base("nat")
}

pub fn bool_() -> HolType {
    HolType::bool()
}

fn nat_fun() -> HolType {
    HolType::fun(nat(), nat())
}

fn pred() -> HolType {
    HolType::fun(nat(), bool_())
}

/// Free variables the generator draws from, one type per name.
pub fn context() -> VarContext {
    [
        ("x", nat()),
        ("y", nat()),
        ("n", nat()),
        ("p", bool_()),
        ("q", bool_()),
        ("f", nat_fun()),
        ("g", nat_fun()),
        ("P", pred()),
        ("u", HolType::var("a")),
    ]
    .into_iter()
    .collect()
}

fn bin(c: &str, a: Term, b: Term) -> Term {
    let b_ty = bool_();
    Term::apps(Term::constant(c, HolType::fun_n([b_ty.clone(), b_ty.clone()], b_ty)), [a, b])
}

fn quant(c: &str, hint: &str, body: Term) -> Term {
    let abs = Term::abs(hint, nat(), body);
    Term::app(Term::constant(c, HolType::fun(pred(), bool_())), abs)
}

pub struct TermGen {
    /// Types of the enclosing binders, innermost last.
    bound: Vec<HolType>,
    /// Whether schematic variables may appear.
    pub schematic: bool,
}

const HINTS: [&str; 5] = ["x", "y", "m", "k", "n"];

impl TermGen {
    pub fn new(schematic: bool) -> Self {
        TermGen {
            bound: Vec::new(),
            schematic,
        }
    }

    fn bound_of(&self, ty: &HolType, rng: &mut impl Rng) -> Option<Term> {
        let hits: Vec<usize> = self
            .bound
            .iter()
            .rev()
            .enumerate()
            .filter(|(_, t)| *t == ty)
            .map(|(i, _)| i)
            .collect();
        hits.choose(rng).map(|&i| Term::bound(i))
    }

    fn under_binder(&mut self, ty: HolType, f: impl FnOnce(&mut Self) -> Term) -> Term {
        self.bound.push(ty);
        let t = f(self);
        self.bound.pop();
        t
    }

    fn leaf(&mut self, ty: &HolType, rng: &mut impl Rng) -> Term {
        if rng.gen_bool(0.4) {
            if let Some(b) = self.bound_of(ty, rng) {
                return b;
            }
        }
        if *ty == nat() {
            match rng.gen_range(0..6) {
                0 => numeral::mk_numeral_u64(rng.gen_range(0..20)),
                1 => numeral::mk_numeral_u64(rng.gen()),
                2 if self.schematic => Term::svar("m", nat()),
                _ => Term::var(*["x", "y", "n"].choose(rng).unwrap(), nat()),
            }
        } else if *ty == bool_() {
            match rng.gen_range(0..5) {
                0 => Term::constant("true", bool_()),
                1 => Term::constant("false", bool_()),
                2 if self.schematic => Term::svar("A", bool_()),
                _ => Term::var(*["p", "q"].choose(rng).unwrap(), bool_()),
            }
        } else if *ty == nat_fun() {
            match rng.gen_range(0..3) {
                0 => Term::constant("Suc", nat_fun()),
                1 if self.schematic => Term::svar("F", nat_fun()),
                _ => Term::var(*["f", "g"].choose(rng).unwrap(), nat_fun()),
            }
        } else if *ty == pred() {
            Term::var("P", pred())
        } else {
            Term::var("u", HolType::var("a"))
        }
    }

    /// A random term of type `ty` whose nesting depth is at most `depth`.
    pub fn term(&mut self, ty: &HolType, depth: u32, rng: &mut impl Rng) -> Term {
        if depth == 0 || rng.gen_bool(0.25) {
            return self.leaf(ty, rng);
        }
        let d = depth - 1;
        let hint = *HINTS.choose(rng).unwrap();
        if *ty == nat() {
            match rng.gen_range(0..6) {
                0 => numeral::plus(self.term(&nat(), d, rng), self.term(&nat(), d, rng)),
                1 => numeral::times(self.term(&nat(), d, rng), self.term(&nat(), d, rng)),
                2 => Term::app(self.term(&nat_fun(), d, rng), self.term(&nat(), d, rng)),
                3 => {
                    let f = self.term(&nat_fun(), d, rng);
                    Term::app(f, self.term(&nat(), d, rng))
                }
                _ => self.leaf(ty, rng),
            }
        } else if *ty == bool_() {
            match rng.gen_range(0..9) {
                0 => numeral::nat_eq(self.term(&nat(), d, rng), self.term(&nat(), d, rng)),
                1 => Term::mk_implies(self.term(&bool_(), d, rng), self.term(&bool_(), d, rng)),
                2 => bin("conj", self.term(&bool_(), d, rng), self.term(&bool_(), d, rng)),
                3 => bin("disj", self.term(&bool_(), d, rng), self.term(&bool_(), d, rng)),
                4 => Term::app(
                    Term::constant("neg", HolType::fun(bool_(), bool_())),
                    self.term(&bool_(), d, rng),
                ),
                5 => {
                    let body = self.under_binder(nat(), |g| g.term(&bool_(), d, rng));
                    quant("all", hint, body)
                }
                6 => {
                    let body = self.under_binder(nat(), |g| g.term(&bool_(), d, rng));
                    quant("exists", hint, body)
                }
                7 => Term::app(Term::var("P", pred()), self.term(&nat(), d, rng)),
                _ => {
                    let (l, r) = (self.term(&bool_(), d, rng), self.term(&bool_(), d, rng));
                    Term::mk_eq(l, r, &bool_())
                }
            }
        } else if *ty == nat_fun() || *ty == pred() {
            let (_, cod) = ty.dest_fun().unwrap();
            let cod = cod.clone();
            if rng.gen_bool(0.5) {
                let body = self.under_binder(nat(), |g| g.term(&cod, d, rng));
                Term::abs(hint, nat(), body)
            } else {
                self.leaf(ty, rng)
            }
        } else {
            self.leaf(ty, rng)
        }
    }
}

pub fn random_bool_term(rng: &mut impl Rng, depth: u32, schematic: bool) -> Term {
    TermGen::new(schematic).term(&bool_(), depth, rng)
}

pub fn random_term(rng: &mut impl Rng, depth: u32, schematic: bool) -> Term {
    let ty = [bool_(), nat(), nat_fun(), pred()].choose(rng).unwrap().clone();
    TermGen::new(schematic).term(&ty, depth, rng)
}
