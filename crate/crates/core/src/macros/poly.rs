//! Normalization of polynomials over the natural numbers.
//!
//! Evaluation compares coefficient maps. The expansion rewrites both sides
//! into a fixed normal form: a right-nested sum of monomials ending in `0`,
//! with strictly increasing monomials, where a monomial is `c * (v1 * (v2 *
//! ... * 1))` with a positive numeral `c` and sorted atoms `vi`. Monomials
//! are ordered by degree, then lexicographically on their sorted atom lists;
//! this order is preserved by multiplication with a common monomial, so the
//! product of a monomial and a normal polynomial is again normal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::conv::{
    arg_conv, binop_conv, fun_conv, refl, rhs, rewr_conv_rev, symmetric, then_conv, transitive, Conv, ConvResult,
};
use crate::kernel::{ArgKind, HolType, KernelError, RuleArgs, Sequent, Term, Thm};
use crate::numeral::{self, dest_numeral, dest_plus, dest_times, ONE, ZERO};
use crate::proof::{Env, ProofError, ProofNode};

use super::arith::{lemma, NatArithEval};
use super::{no_prevs, term_arg, Macro};

/// Proves `|- lhs = rhs` when both sides have the same polynomial normal
/// form.
pub struct NatNormPoly;

const NAME: &str = "nat_norm_poly";

/// Multiset of atoms, kept sorted. Ordered by degree, then
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial(Vec<Term>);

impl Monomial {
    pub fn atoms(&self) -> &[Term] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        v.sort();
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Monomial to nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly(pub BTreeMap<Monomial, BigUint>);

impl Poly {
    fn constant(n: BigUint) -> Poly {
        let mut m = BTreeMap::new();
        if !n.is_zero() {
            m.insert(Monomial(Vec::new()), n);
        }
        Poly(m)
    }

    fn atom(t: &Term) -> Poly {
        Poly([(Monomial(vec![t.clone()]), BigUint::one())].into_iter().collect())
    }

    fn add(mut self, other: Poly) -> Poly {
        for (m, c) in other.0 {
            *self.0.entry(m).or_default() += c;
        }
        self
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &other.0 {
                *out.0.entry(m1.mul(m2)).or_default() += c1 * c2;
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !c.is_one() || m.0.is_empty() {
                parts.push(c.to_string());
            }
            for a in &m.0 {
                let s = a.to_string();
                if a.is_app() || a.is_abs() {
                    parts.push(format!("({s})"));
                } else {
                    parts.push(s);
                }
            }
            f.write_str(&parts.join(" * "))?;
        }
        Ok(())
    }
}

/// Coefficient map of a nat term. Subterms other than numerals, `+` and `*`
/// are atoms.
pub fn canonical_poly(t: &Term) -> Poly {
    if let Some(n) = dest_numeral(t) {
        return Poly::constant(n);
    }
    if let Some((a, b)) = dest_plus(t) {
        return canonical_poly(a).add(canonical_poly(b));
    }
    if let Some((a, b)) = dest_times(t) {
        return canonical_poly(a).mul(&canonical_poly(b));
    }
    Poly::atom(t)
}

fn goal(args: &RuleArgs) -> Result<(&Term, &Term), ProofError> {
    let t = term_arg(NAME, args)?;
    let bad = || ProofError::BadArgs {
        rule: NAME.into(),
        reason: format!("{t} is not an equation between natural numbers"),
    };
    let (l, r) = t.dest_eq().ok_or_else(bad)?;
    if l.ty()? != numeral::nat_ty() {
        return Err(bad());
    }
    Ok((l, r))
}

impl Macro for NatNormPoly {
    fn name(&self) -> &str {
        NAME
    }

    fn level(&self) -> u32 {
        2
    }

    fn arg_kind(&self) -> ArgKind {
        ArgKind::Term
    }

    fn arg_type(&self) -> Option<HolType> {
        Some(HolType::bool())
    }

    fn eval(&self, _env: &Env, args: &RuleArgs, prevs: &[&Thm]) -> Result<Sequent, ProofError> {
        no_prevs(NAME, prevs.len())?;
        let (l, r) = goal(args)?;
        let (pl, pr) = (canonical_poly(l), canonical_poly(r));
        if pl != pr {
            return Err(ProofError::NormalizationMismatch {
                lhs: pl.to_string(),
                rhs: pr.to_string(),
            });
        }
        Ok(Sequent::concl(term_arg(NAME, args)?.clone()))
    }

    fn expand(&self, env: &Env, args: &RuleArgs, prevs: &[ProofNode]) -> Option<Result<ProofNode, ProofError>> {
        Some((|| {
            no_prevs(NAME, prevs.len())?;
            let (l, r) = goal(args)?;
            let nl = norm(env, l)?;
            let nr = norm(env, r)?;
            if rhs(&nl) != rhs(&nr) {
                return Err(ProofError::NormalizationMismatch {
                    lhs: canonical_poly(l).to_string(),
                    rhs: canonical_poly(r).to_string(),
                });
            }
            if crate::conv::is_refl(&nr) {
                return Ok(nl);
            }
            let back = symmetric(env, nr)?;
            transitive(env, nl, back)
        })())
    }
}

/// `|- t = N` with `N` in normal form.
fn norm(env: &Env, t: &Term) -> ConvResult {
    if let Some(n) = dest_numeral(t) {
        if n.is_zero() {
            return refl(env, t);
        }
        return then_conv(rev("mult_1_right"), rev("add_0_right")).conv(env, t);
    }
    if dest_plus(t).is_some() {
        return then_conv(binop_conv(norm), poly_add).conv(env, t);
    }
    if dest_times(t).is_some() {
        return then_conv(binop_conv(norm), poly_mul).conv(env, t);
    }
    then_conv(
        rev("mult_1_right"),
        then_conv(rev("mult_1_left"), rev("add_0_right")),
    )
    .conv(env, t)
}

fn rev(name: &'static str) -> impl Conv {
    move |env: &Env, t: &Term| {
        rewr_conv_rev(name).conv(env, t).map_err(|e| match e {
            ProofError::Kernel(KernelError::UnknownTheorem(n)) => ProofError::MissingLemma(n),
            e => e,
        })
    }
}

fn is_zero(t: &Term) -> bool {
    t.is_const_named(ZERO)
}

fn is_one(t: &Term) -> bool {
    t.is_const_named(ONE)
}

fn malformed(t: &Term) -> ProofError {
    ProofError::ShapeMismatch {
        conv: "nat_norm_poly",
        term: t.to_string(),
    }
}

/// Atoms of a normal-form monomial `c * (v1 * ... * 1)`.
fn key(m: &Term) -> Result<Monomial, ProofError> {
    let (_, mut pow) = dest_times(m).ok_or_else(|| malformed(m))?;
    let mut atoms = Vec::new();
    while let Some((v, rest)) = dest_times(pow) {
        atoms.push(v.clone());
        pow = rest;
    }
    Ok(Monomial(atoms))
}

/// Makes a numeral of a closed coefficient expression, via a
/// `nat_arith_eval` step.
fn coeff(env: &Env, t: &Term) -> ConvResult {
    if dest_numeral(t).is_some() {
        return refl(env, t);
    }
    ProofNode::macro_step(Arc::new(NatArithEval), RuleArgs::Term(t.clone()), vec![], env)
}

/// `P + Q` for normal `P`, `Q`.
fn poly_add(env: &Env, t: &Term) -> ConvResult {
    let (p, q) = dest_plus(t).ok_or_else(|| malformed(t))?;
    if is_zero(p) {
        return lemma("add_0_left").conv(env, t);
    }
    if is_zero(q) {
        return lemma("add_0_right").conv(env, t);
    }
    let (m1, _) = dest_plus(p).ok_or_else(|| malformed(p))?;
    let (m2, _) = dest_plus(q).ok_or_else(|| malformed(q))?;
    match key(m1)?.cmp(&key(m2)?) {
        Ordering::Less => then_conv(lemma("add_assoc"), arg_conv(poly_add)).conv(env, t),
        Ordering::Greater => then_conv(lemma("add_left_comm"), arg_conv(poly_add)).conv(env, t),
        Ordering::Equal => then_conv(
            lemma("add_add_swap"),
            then_conv(fun_conv(arg_conv(mono_add)), arg_conv(poly_add)),
        )
        .conv(env, t),
    }
}

/// `c1 * X + c2 * X = c * X`.
fn mono_add(env: &Env, t: &Term) -> ConvResult {
    then_conv(rev("add_mult_distrib"), fun_conv(arg_conv(coeff))).conv(env, t)
}

/// `P * Q` for normal `P`, `Q`.
fn poly_mul(env: &Env, t: &Term) -> ConvResult {
    let (p, q) = dest_times(t).ok_or_else(|| malformed(t))?;
    if is_zero(p) {
        return lemma("mult_0_left").conv(env, t);
    }
    if is_zero(q) {
        return lemma("mult_0_right").conv(env, t);
    }
    then_conv(
        lemma("add_mult_distrib"),
        then_conv(fun_conv(arg_conv(mono_mul_poly)), then_conv(arg_conv(poly_mul), poly_add)),
    )
    .conv(env, t)
}

/// `m * Q` for a monomial `m` and normal `Q`.
fn mono_mul_poly(env: &Env, t: &Term) -> ConvResult {
    let (_, q) = dest_times(t).ok_or_else(|| malformed(t))?;
    if is_zero(q) {
        return lemma("mult_0_right").conv(env, t);
    }
    then_conv(
        lemma("mult_add_distrib"),
        then_conv(fun_conv(arg_conv(mono_mul)), arg_conv(mono_mul_poly)),
    )
    .conv(env, t)
}

/// `(c1 * X) * (c2 * Y) = c * Z`.
fn mono_mul(env: &Env, t: &Term) -> ConvResult {
    then_conv(
        lemma("mult_mult_swap"),
        then_conv(fun_conv(arg_conv(coeff)), arg_conv(pow_mul)),
    )
    .conv(env, t)
}

/// Merges two sorted atom products `X * Y`.
fn pow_mul(env: &Env, t: &Term) -> ConvResult {
    let (x, y) = dest_times(t).ok_or_else(|| malformed(t))?;
    if is_one(x) {
        return lemma("mult_1_left").conv(env, t);
    }
    if is_one(y) {
        return lemma("mult_1_right").conv(env, t);
    }
    let (v, _) = dest_times(x).ok_or_else(|| malformed(x))?;
    let (w, _) = dest_times(y).ok_or_else(|| malformed(y))?;
    if v <= w {
        then_conv(lemma("mult_assoc"), arg_conv(pow_mul)).conv(env, t)
    } else {
        then_conv(lemma("mult_left_comm"), arg_conv(pow_mul)).conv(env, t)
    }
}
