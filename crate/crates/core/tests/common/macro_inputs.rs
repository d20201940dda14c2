//! Random valid inputs for the built-in macros, and an independent
//! coefficient-map model of polynomial arithmetic.

use std::collections::BTreeMap;

use holcheck::kernel::{HolType, RuleArgs, Term, TermKind};
use holcheck::proof::{node, Env, ProofNode};
use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use super::gen::{nat, TermGen};

fn binop(name: &str, a: Term, b: Term) -> Term {
    Term::apps(Term::constant(name, HolType::fun_n([nat(), nat()], nat())), [a, b])
}

/// Numeral for `n`, built bit by bit without the library's helpers.
pub fn numeral(n: &BigUint) -> Term {
    let c0 = |name: &str| Term::constant(name, nat());
    let c1 = |name: &str, t: Term| Term::app(Term::constant(name, HolType::fun(nat(), nat())), t);
    if n.bits() == 0 {
        return c0("zero");
    }
    let bits = n.bits();
    let mut t = c0("one");
    for i in (0..bits - 1).rev() {
        t = if n.bit(i) { c1("bit1", t) } else { c1("bit0", t) };
    }
    t
}

/// Value of a numeral built from `zero`, `one`, `bit0`, `bit1`.
pub fn numeral_value(t: &Term) -> Option<BigUint> {
    match t.kind() {
        TermKind::Const(n, _) if n.as_ref() == "zero" => Some(BigUint::from(0u8)),
        TermKind::Const(n, _) if n.as_ref() == "one" => Some(BigUint::from(1u8)),
        TermKind::App(f, x) => match f.kind() {
            TermKind::Const(n, _) if n.as_ref() == "bit0" => Some(numeral_value(x)? * 2u8),
            TermKind::Const(n, _) if n.as_ref() == "bit1" => Some(numeral_value(x)? * 2u8 + 1u8),
            _ => None,
        },
        _ => None,
    }
}

/// Closed `+`/`*` term over numerals, with its value computed natively.
pub fn random_arith(rng: &mut StdRng, depth: u32, max_bits: u64) -> (Term, BigUint) {
    if depth == 0 || rng.gen_bool(0.3) {
        let bits = rng.gen_range(0..=max_bits);
        let v: BigUint = if bits == 0 {
            BigUint::from(rng.gen_range(0u8..2))
        } else {
            BigUint::from(rng.gen::<u64>()) % (BigUint::from(1u8) << bits)
        };
        return (numeral(&v), v);
    }
    let (a, va) = random_arith(rng, depth - 1, max_bits);
    let (b, vb) = random_arith(rng, depth - 1, max_bits);
    if rng.gen_bool(0.5) {
        (binop("plus", a, b), va + vb)
    } else {
        (binop("times", a, b), va * vb)
    }
}

/// Coefficients indexed by the sorted list of variable names in each
/// monomial; zero coefficients are never stored.
pub type CoeffMap = BTreeMap<Vec<String>, BigUint>;

pub fn coeff_map(t: &Term) -> Option<CoeffMap> {
    if let Some(v) = numeral_value(t) {
        let mut m = CoeffMap::new();
        if v.bits() > 0 {
            m.insert(vec![], v);
        }
        return Some(m);
    }
    match t.kind() {
        TermKind::Var(n, _) => Some([(vec![n.to_string()], BigUint::from(1u8))].into_iter().collect()),
        TermKind::App(..) => {
            let (head, args) = t.strip_comb();
            let TermKind::Const(op, _) = head.kind() else { return None };
            if args.len() != 2 {
                return None;
            }
            let a = coeff_map(args[0])?;
            let b = coeff_map(args[1])?;
            let mut out = CoeffMap::new();
            match op.as_ref() {
                "plus" => {
                    for (k, v) in a.into_iter().chain(b) {
                        *out.entry(k).or_default() += v;
                    }
                }
                "times" => {
                    for (ka, va) in &a {
                        for (kb, vb) in &b {
                            let mut k: Vec<String> = ka.iter().chain(kb).cloned().collect();
                            k.sort();
                            *out.entry(k).or_default() += va * vb;
                        }
                    }
                }
                _ => return None,
            }
            Some(out)
        }
        _ => None,
    }
}

const POLY_VARS: [&str; 3] = ["x", "y", "n"];

pub fn random_poly(rng: &mut StdRng, depth: u32) -> Term {
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.6) {
            Term::var(*POLY_VARS.choose(rng).unwrap(), nat())
        } else {
            numeral(&BigUint::from(rng.gen_range(0u32..6)))
        };
    }
    let a = random_poly(rng, depth - 1);
    let b = random_poly(rng, depth - 1);
    binop(if rng.gen_bool(0.5) { "plus" } else { "times" }, a, b)
}

/// Some term whose coefficient map is `m`, with monomials and factors in
/// shuffled order and coefficients sometimes split into repeated summands.
pub fn render_shuffled(m: &CoeffMap, rng: &mut StdRng) -> Term {
    let mut summands = Vec::new();
    for (vars, c) in m {
        let mut pieces = vec![c.clone()];
        if *c > BigUint::from(1u8) && rng.gen_bool(0.3) {
            let first = c / 2u8;
            pieces = vec![first.clone(), c - first];
        }
        for piece in pieces {
            let mut factors: Vec<Term> = vars.iter().map(|v| Term::var(v.as_str(), nat())).collect();
            if piece != BigUint::from(1u8) || factors.is_empty() {
                factors.push(numeral(&piece));
            }
            factors.shuffle(rng);
            let mut it = factors.into_iter();
            let first = it.next().unwrap();
            summands.push(it.fold(first, |acc, f| binop("times", acc, f)));
        }
    }
    summands.shuffle(rng);
    let mut it = summands.into_iter();
    match it.next() {
        None => numeral(&BigUint::from(0u8)),
        Some(first) => it.fold(first, |acc, s| binop("plus", acc, s)),
    }
}

/// An equation `lhs = rhs` that holds as a polynomial identity.
pub fn random_poly_identity(rng: &mut StdRng, depth: u32) -> Term {
    let lhs = random_poly(rng, depth);
    let rhs = render_shuffled(&coeff_map(&lhs).unwrap(), rng);
    Term::mk_eq(lhs, rhs, &nat())
}

/// A theorem name and premise proofs that `apply_theorem` accepts.
pub fn random_apply_theorem(env: &Env, rng: &mut StdRng) -> (String, Vec<ProofNode>) {
    let mut g = TermGen::new(false);
    let b = HolType::bool();
    let assume = |t: Term| node("assume", RuleArgs::Term(t), vec![], env).unwrap();
    let conj = |a: Term, c: Term| {
        Term::apps(Term::constant("conj", HolType::fun_n([b.clone(), b.clone()], b.clone())), [a, c])
    };
    let suc = |t: Term| Term::app(Term::constant("Suc", HolType::fun(nat(), nat())), t);
    // Premises are beta-normal, as every kernel-produced statement is.
    let p = g.term(&b, 3, rng).beta_norm();
    let q = g.term(&b, 3, rng).beta_norm();
    let (name, prems) = match rng.gen_range(0..7) {
        0 => ("conjI", vec![assume(p), assume(q)]),
        1 => ("conjI", vec![assume(p)]),
        2 => ("conjD1", vec![assume(conj(p, q))]),
        3 => ("disjI2", vec![assume(q)]),
        4 => {
            let (m, n) = (g.term(&nat(), 2, rng).beta_norm(), g.term(&nat(), 2, rng).beta_norm());
            ("suc_inj", vec![assume(Term::mk_eq(suc(m), suc(n), &nat()))])
        }
        5 => ("add_0_right", vec![]),
        _ => ("imp_trans", vec![assume(Term::mk_implies(p.clone(), q.clone())), assume(Term::mk_implies(q, p))]),
    };
    (name.to_string(), prems)
}
