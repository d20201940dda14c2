//! Binary numerals: `0` is `zero`, `1` is `one`, and larger values are
//! built from `one` by `bit0` (append a 0 bit) and `bit1` (append a 1 bit),
//! least significant bit outermost. For example 6 (binary 110) is
//! `bit0 (bit1 one)`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::kernel::{HolType, Term, TermKind};

pub const NAT: &str = "nat";
pub const ZERO: &str = "zero";
pub const ONE: &str = "one";
pub const BIT0: &str = "bit0";
pub const BIT1: &str = "bit1";
pub const PLUS: &str = "plus";
pub const TIMES: &str = "times";

pub fn nat_ty() -> HolType {
    HolType::base(NAT)
}

fn nat_fun() -> HolType {
    HolType::fun(nat_ty(), nat_ty())
}

fn nat_binop_ty() -> HolType {
    HolType::fun_n([nat_ty(), nat_ty()], nat_ty())
}

pub fn zero() -> Term {
    Term::constant(ZERO, nat_ty())
}

pub fn one() -> Term {
    Term::constant(ONE, nat_ty())
}

pub fn bit0(t: Term) -> Term {
    Term::app(Term::constant(BIT0, nat_fun()), t)
}

pub fn bit1(t: Term) -> Term {
    Term::app(Term::constant(BIT1, nat_fun()), t)
}

pub fn plus(a: Term, b: Term) -> Term {
    Term::apps(Term::constant(PLUS, nat_binop_ty()), [a, b])
}

pub fn times(a: Term, b: Term) -> Term {
    Term::apps(Term::constant(TIMES, nat_binop_ty()), [a, b])
}

pub fn nat_eq(a: Term, b: Term) -> Term {
    Term::mk_eq(a, b, &nat_ty())
}

/// Canonical numeral term for `n`.
pub fn mk_numeral(n: &BigUint) -> Term {
    if n.is_zero() {
        return zero();
    }
    let bits = n.bits();
    // most significant bit is the innermost `one`
    let mut t = one();
    for i in (0..bits - 1).rev() {
        t = if n.bit(i) { bit1(t) } else { bit0(t) };
    }
    t
}

pub fn mk_numeral_u64(n: u64) -> Term {
    mk_numeral(&BigUint::from(n))
}

fn is_nat_const(t: &Term, name: &str, ty: &HolType) -> bool {
    matches!(t.kind(), TermKind::Const(n, cty) if &**n == name && cty == ty)
}

/// Value of a canonical numeral; `None` for anything else (including
/// non-canonical forms such as `bit0 zero`).
pub fn dest_numeral(t: &Term) -> Option<BigUint> {
    if is_nat_const(t, ZERO, &nat_ty()) {
        return Some(BigUint::zero());
    }
    dest_positive(t)
}

fn dest_positive(t: &Term) -> Option<BigUint> {
    if is_nat_const(t, ONE, &nat_ty()) {
        return Some(BigUint::one());
    }
    let (f, x) = t.dest_app()?;
    let bit = if is_nat_const(f, BIT0, &nat_fun()) {
        0u8
    } else if is_nat_const(f, BIT1, &nat_fun()) {
        1u8
    } else {
        return None;
    };
    let inner = dest_positive(x)?;
    Some((inner << 1u32) + BigUint::from(bit))
}

pub fn is_numeral(t: &Term) -> bool {
    dest_numeral(t).is_some()
}

pub fn dest_plus(t: &Term) -> Option<(&Term, &Term)> {
    t.dest_binop(PLUS)
}

pub fn dest_times(t: &Term) -> Option<(&Term, &Term)> {
    t.dest_binop(TIMES)
}
