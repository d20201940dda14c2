use crate::kernel::{
    first_order_match_list, subst_norm, ArgKind, KernelError, PrimRule, RuleArgs, Sequent, TheoremSource, Thm,
};
use crate::proof::{Env, ProofError, ProofNode};

use super::Macro;

/// Instantiates a stored theorem `A1 --> ... --> An --> C` by matching its
/// first assumptions against the premises, and discharges them. With fewer
/// premises than assumptions the rest stay as implications.
pub struct ApplyTheorem;

const NAME: &str = "apply_theorem";

fn theorem_name(args: &RuleArgs) -> Result<&str, ProofError> {
    match args {
        RuleArgs::Name(n) => Ok(n),
        _ => Err(ProofError::BadArgs {
            rule: NAME.into(),
            reason: "expects a theorem name".into(),
        }),
    }
}

/// Theorem sequent and the instantiation matching its assumptions to `props`.
fn instantiate(
    env: &Env,
    name: &str,
    props: &[&crate::kernel::Term],
) -> Result<(Sequent, crate::kernel::Instantiation), ProofError> {
    let seq = env.lookup_theorem(name)?;
    let (assms, _) = seq.prop.strip_implies_n(props.len()).ok_or_else(|| {
        KernelError::match_failure(format!("`{name}` has fewer than {} assumptions", props.len()))
    })?;
    let inst = first_order_match_list(&assms, props)?;
    // discharging needs the normalized assumption to be the premise itself
    for (i, (a, p)) in assms.iter().zip(props).enumerate() {
        if subst_norm(a, &inst.0, &inst.1)? != **p {
            return Err(KernelError::MatchFailure {
                index: Some(i),
                reason: format!("premise {p} is not in beta-normal form"),
            }
            .into());
        }
    }
    Ok((seq, inst))
}

impl Macro for ApplyTheorem {
    fn name(&self) -> &str {
        NAME
    }

    fn level(&self) -> u32 {
        1
    }

    fn arg_kind(&self) -> ArgKind {
        ArgKind::TheoremName
    }

    fn eval(&self, env: &Env, args: &RuleArgs, prevs: &[&Thm]) -> Result<Sequent, ProofError> {
        let name = theorem_name(args)?;
        let props: Vec<_> = prevs.iter().map(|th| &th.prop).collect();
        let (seq, (tyinst, inst)) = instantiate(env, name, &props)?;
        let (_, rest) = seq.prop.strip_implies_n(prevs.len()).expect("checked by instantiate");
        let mut hyps = Vec::new();
        for h in &seq.hyps {
            hyps.push(subst_norm(h, &tyinst, &inst)?);
        }
        hyps.extend(prevs.iter().flat_map(|th| th.hyps.iter().cloned()));
        Ok(Sequent::new(hyps, subst_norm(rest, &tyinst, &inst)?))
    }

    fn expand(&self, env: &Env, args: &RuleArgs, prevs: &[ProofNode]) -> Option<Result<ProofNode, ProofError>> {
        Some((|| {
            let name = theorem_name(args)?;
            let props: Vec<_> = prevs.iter().map(|p| &p.th().prop).collect();
            let (_, (tyinst, inst)) = instantiate(env, name, &props)?;
            let mut n = ProofNode::prim(PrimRule::Theorem, RuleArgs::Name(name.to_string()), vec![], env)?;
            n = ProofNode::prim(PrimRule::SubstType, RuleArgs::TypeInst(tyinst), vec![n], env)?;
            n = ProofNode::prim(PrimRule::Substitution, RuleArgs::TermInst(inst), vec![n], env)?;
            for p in prevs {
                n = ProofNode::prim(PrimRule::ImpliesElim, RuleArgs::None, vec![n, p.clone()], env)?;
            }
            Ok(n)
        })())
    }
}
