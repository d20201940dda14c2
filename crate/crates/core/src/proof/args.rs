use crate::kernel::{ArgKind, HolType, RuleArgs, Thm};
use crate::syntax::{self, is_identifier, Printer};

use super::{Env, ProofError};

/// Reads the `args` string of a proof item. `expected` constrains the type
/// of a term argument; the premises supply types for the schematic
/// variables of an instantiation.
pub fn parse_args(
    rule: &str,
    kind: ArgKind,
    expected: Option<&HolType>,
    s: &str,
    prevs: &[&Thm],
    env: &Env,
) -> Result<RuleArgs, ProofError> {
    let bad = |reason: String| ProofError::BadArgs {
        rule: rule.to_string(),
        reason,
    };
    let sig = env.sig();
    let ctx = env.vars();
    let s = s.trim();
    Ok(match kind {
        ArgKind::None => {
            if !s.is_empty() {
                return Err(bad(format!("takes no arguments, got `{s}`")));
            }
            RuleArgs::None
        }
        ArgKind::Term | ArgKind::Variable => RuleArgs::Term(syntax::parse_term_typed(s, ctx, sig, expected)?),
        ArgKind::TheoremName => {
            if !is_identifier(s) {
                return Err(bad(format!("`{s}` is not a theorem name")));
            }
            RuleArgs::Name(s.to_string())
        }
        ArgKind::Sequent => RuleArgs::Sequent(syntax::parse_sequent(s, ctx, sig)?),
        ArgKind::TypeInst => {
            let (tyinst, inst) = syntax::parse_instantiation(s, ctx, sig, &|_| None)?;
            if !inst.is_empty() {
                return Err(bad("expects only type variables".into()));
            }
            RuleArgs::TypeInst(tyinst)
        }
        ArgKind::TermInst => {
            let svars: Vec<_> = prevs.iter().flat_map(|th| th.terms().flat_map(|t| t.schematic_vars())).collect();
            let svar_type = |n: &str| svars.iter().find(|(m, _)| &**m == n).map(|(_, t)| t.clone());
            let (tyinst, inst) = syntax::parse_instantiation(s, ctx, sig, &svar_type)?;
            if !tyinst.is_empty() {
                return Err(bad("expects only schematic variables".into()));
            }
            RuleArgs::TermInst(inst)
        }
    })
}

/// Renders arguments so that [`parse_args`] reads them back unchanged.
pub fn print_args(args: &RuleArgs, env: &Env) -> Result<String, ProofError> {
    let p = Printer::new(env.sig()).with_ctx(env.vars());
    Ok(match args {
        RuleArgs::None => String::new(),
        RuleArgs::Term(t) => p.term(t)?,
        RuleArgs::TypeInst(tyinst) => p.instantiation(tyinst, &Default::default())?,
        RuleArgs::TermInst(inst) => p.instantiation(&Default::default(), inst)?,
        RuleArgs::Name(n) => n.clone(),
        RuleArgs::Sequent(seq) => p.sequent(seq)?,
    })
}
