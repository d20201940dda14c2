//! First-order matching of patterns containing schematic variables and type
//! variables against concrete targets.
//!
//! A schematic variable in head position of an application never matches:
//! only bare schematic variables are instantiated. Under a binder, a
//! candidate assignment that mentions the bound variable is rejected.

use super::error::KernelError;
use super::inst::{TermInstantiation, TypeInstantiation};
use super::term::{Term, TermKind};

pub type Instantiation = (TypeInstantiation, TermInstantiation);

/// Extends `partial` so that `subst_norm(pattern, result) == target`.
pub fn first_order_match(pattern: &Term, target: &Term, partial: &Instantiation) -> Result<Instantiation, KernelError> {
    let mut inst = partial.clone();
    match_rec(pattern, target, &mut inst, 0)?;
    Ok(inst)
}

/// Left-to-right fold of [`first_order_match`] over paired lists.
pub fn first_order_match_list(patterns: &[&Term], targets: &[&Term]) -> Result<Instantiation, KernelError> {
    if patterns.len() != targets.len() {
        return Err(KernelError::LengthMismatch {
            patterns: patterns.len(),
            targets: targets.len(),
        });
    }
    let mut inst = Instantiation::default();
    for (i, (p, t)) in patterns.iter().zip(targets).enumerate() {
        match_rec(p, t, &mut inst, 0).map_err(|e| match e {
            KernelError::MatchFailure { reason, .. } => KernelError::MatchFailure { index: Some(i), reason },
            KernelError::ConflictingAssignment(n) => KernelError::MatchFailure {
                index: Some(i),
                reason: format!("conflicting assignment for `{n}`"),
            },
            other => other,
        })?;
    }
    Ok(inst)
}

fn match_rec(pat: &Term, t: &Term, inst: &mut Instantiation, depth: usize) -> Result<(), KernelError> {
    let fail = || KernelError::match_failure(format!("{pat} does not match {t}"));
    match (pat.kind(), t.kind()) {
        (TermKind::SVar(n, ty), _) => {
            if let Some(prev) = inst.1.get(n) {
                return if prev == t {
                    Ok(())
                } else {
                    Err(KernelError::ConflictingAssignment(format!("?{n}")))
                };
            }
            if depth > 0 && t.has_loose_bound_from(0) {
                return Err(KernelError::match_failure(format!(
                    "?{n} cannot be assigned a term mentioning a bound variable"
                )));
            }
            let tty = t.ty()?;
            inst.0.match_type(ty, &tty)?;
            inst.1.insert(n.clone(), t.clone());
            Ok(())
        }
        (TermKind::Var(n1, ty1), TermKind::Var(n2, ty2)) if n1 == n2 => inst.0.match_type(ty1, ty2),
        (TermKind::Const(n1, ty1), TermKind::Const(n2, ty2)) if n1 == n2 => inst.0.match_type(ty1, ty2),
        (TermKind::Bound(i), TermKind::Bound(j)) if i == j => Ok(()),
        (TermKind::Abs(_, ty1, b1), TermKind::Abs(_, ty2, b2)) => {
            inst.0.match_type(ty1, ty2)?;
            match_rec(b1, b2, inst, depth + 1)
        }
        (TermKind::App(..), _) if pat.head().is_svar() => Err(KernelError::match_failure(format!(
            "schematic variable applied to arguments in {pat}"
        ))),
        (TermKind::App(f1, x1), TermKind::App(f2, x2)) => {
            match_rec(f1, f2, inst, depth)?;
            match_rec(x1, x2, inst, depth)
        }
        _ => Err(fail()),
    }
}
