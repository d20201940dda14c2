use num_bigint::BigUint;

use crate::conv::{arg_conv, binop_conv, fun_conv, refl, rewr_conv, then_conv, Conv, ConvResult};
use crate::kernel::{ArgKind, HolType, KernelError, RuleArgs, Sequent, Term, Thm};
use crate::numeral::{self, dest_numeral, dest_plus, dest_times, BIT0, BIT1, ONE, ZERO};
use crate::proof::{Env, ProofError, ProofNode};

use super::{no_prevs, term_arg, Macro};

/// Evaluates a closed term built from numerals, `+` and `*` to a numeral,
/// proving `|- t = n`.
pub struct NatArithEval;

pub(crate) const NAME: &str = "nat_arith_eval";

fn value(t: &Term) -> Option<BigUint> {
    if let Some(n) = dest_numeral(t) {
        return Some(n);
    }
    if let Some((a, b)) = dest_plus(t) {
        return Some(value(a)? + value(b)?);
    }
    if let Some((a, b)) = dest_times(t) {
        return Some(value(a)? * value(b)?);
    }
    None
}

impl Macro for NatArithEval {
    fn name(&self) -> &str {
        NAME
    }

    fn level(&self) -> u32 {
        1
    }

    fn arg_kind(&self) -> ArgKind {
        ArgKind::Term
    }

    fn arg_type(&self) -> Option<HolType> {
        Some(numeral::nat_ty())
    }

    fn eval(&self, _env: &Env, args: &RuleArgs, prevs: &[&Thm]) -> Result<Sequent, ProofError> {
        no_prevs(NAME, prevs.len())?;
        let t = term_arg(NAME, args)?;
        let v = value(t).ok_or_else(|| ProofError::NotClosedArithmetic(t.to_string()))?;
        Ok(Sequent::concl(numeral::nat_eq(t.clone(), numeral::mk_numeral(&v))))
    }

    fn expand(&self, env: &Env, args: &RuleArgs, prevs: &[ProofNode]) -> Option<Result<ProofNode, ProofError>> {
        Some((|| {
            no_prevs(NAME, prevs.len())?;
            nat_eval_conv(env, term_arg(NAME, args)?)
        })())
    }
}

/// Rewrites with a lemma of the numeral theory, reporting its absence
/// distinctly.
pub(crate) fn lemma(name: &'static str) -> impl Conv {
    move |env: &Env, t: &Term| {
        rewr_conv(name).conv(env, t).map_err(|e| match e {
            ProofError::Kernel(KernelError::UnknownTheorem(n)) => ProofError::MissingLemma(n),
            e => e,
        })
    }
}

enum Bits {
    Zero,
    One,
    Bit0,
    Bit1,
}

fn bits(t: &Term) -> Option<Bits> {
    if t.is_const_named(ZERO) {
        return Some(Bits::Zero);
    }
    if t.is_const_named(ONE) {
        return Some(Bits::One);
    }
    let (f, _) = t.dest_app()?;
    if f.is_const_named(BIT0) {
        Some(Bits::Bit0)
    } else if f.is_const_named(BIT1) {
        Some(Bits::Bit1)
    } else {
        None
    }
}

/// Proves `|- t = n` for a closed arithmetic term by rewriting with the
/// binary numeral lemmas, innermost operations first.
pub fn nat_eval_conv(env: &Env, t: &Term) -> ConvResult {
    if dest_numeral(t).is_some() {
        return refl(env, t);
    }
    if dest_plus(t).is_some() {
        return then_conv(binop_conv(nat_eval_conv), add_numerals).conv(env, t);
    }
    if dest_times(t).is_some() {
        return then_conv(binop_conv(nat_eval_conv), mul_numerals).conv(env, t);
    }
    Err(ProofError::NotClosedArithmetic(t.to_string()))
}

fn operands(t: &Term, dest: fn(&Term) -> Option<(&Term, &Term)>) -> Result<(Bits, Bits), ProofError> {
    let bad = || ProofError::NotClosedArithmetic(t.to_string());
    let (a, b) = dest(t).ok_or_else(bad)?;
    Ok((bits(a).ok_or_else(bad)?, bits(b).ok_or_else(bad)?))
}

/// `m + n` for canonical numerals.
fn add_numerals(env: &Env, t: &Term) -> ConvResult {
    use Bits::*;
    match operands(t, dest_plus)? {
        (Zero, _) => lemma("add_0_left").conv(env, t),
        (_, Zero) => lemma("add_0_right").conv(env, t),
        (One, One) => lemma("one_plus_one").conv(env, t),
        (One, Bit0) => lemma("one_add_bit0").conv(env, t),
        (One, Bit1) => then_conv(lemma("one_add_bit1"), arg_conv(add_numerals)).conv(env, t),
        (Bit0, One) => lemma("bit0_add_one").conv(env, t),
        (Bit1, One) => then_conv(lemma("bit1_add_one"), arg_conv(add_numerals)).conv(env, t),
        (Bit0, Bit0) => then_conv(lemma("bit0_add_bit0"), arg_conv(add_numerals)).conv(env, t),
        (Bit0, Bit1) => then_conv(lemma("bit0_add_bit1"), arg_conv(add_numerals)).conv(env, t),
        (Bit1, Bit0) => then_conv(lemma("bit1_add_bit0"), arg_conv(add_numerals)).conv(env, t),
        (Bit1, Bit1) => then_conv(
            lemma("bit1_add_bit1"),
            arg_conv(then_conv(fun_conv(arg_conv(add_numerals)), add_numerals)),
        )
        .conv(env, t),
    }
}

/// `m * n` for canonical numerals.
fn mul_numerals(env: &Env, t: &Term) -> ConvResult {
    use Bits::*;
    match operands(t, dest_times)? {
        (Zero, _) => lemma("mult_0_left").conv(env, t),
        (_, Zero) => lemma("mult_0_right").conv(env, t),
        (One, _) => lemma("mult_1_left").conv(env, t),
        (_, One) => lemma("mult_1_right").conv(env, t),
        (Bit0, _) => then_conv(lemma("bit0_mult"), arg_conv(mul_numerals)).conv(env, t),
        (Bit1, _) => then_conv(
            lemma("bit1_mult"),
            then_conv(fun_conv(arg_conv(arg_conv(mul_numerals))), add_numerals),
        )
        .conv(env, t),
    }
}
