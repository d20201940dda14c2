use std::collections::HashMap;
use std::sync::Arc;

use super::{parse_args, Env, LinearProof, NodeRule, ProofError, ProofId, ProofNode};
use crate::kernel::{apply_prim_rule, ArgKind, HolType, PrimRule, RuleArgs, Sequent, Thm};
use crate::macros::{Macro, TrustPolicy};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub conclusion: Sequent,
    /// Primitive steps checked plus trusted macro steps. An expanded macro
    /// step contributes the steps of its expansion instead of itself.
    pub steps_checked: usize,
    pub macro_steps_trusted: usize,
    pub macro_steps_expanded: usize,
    /// Ids of `sorry` steps, including those inside expansions.
    pub gaps: Vec<ProofId>,
}

struct Checker<'e, 'a> {
    env: &'e Env<'a>,
    trust: TrustPolicy,
    steps: usize,
    trusted: usize,
    expanded: usize,
    gaps: Vec<ProofId>,
}

/// Type a term argument must have, when the premises determine it.
fn expected_arg_type(rule: &NodeRule, prevs: &[&Thm]) -> Option<HolType> {
    match rule {
        NodeRule::Prim(PrimRule::Assume | PrimRule::ImpliesIntro) => Some(HolType::bool()),
        NodeRule::Prim(PrimRule::ForallElim) => {
            let (f, pred) = prevs.first()?.prop.dest_app()?;
            if !f.is_const_named(crate::kernel::ALL) {
                return None;
            }
            pred.ty().ok()?.dest_fun().map(|(d, _)| d.clone())
        }
        NodeRule::Macro(m) => m.arg_type(),
        _ => None,
    }
}

fn arg_kind(rule: &NodeRule) -> ArgKind {
    match rule {
        NodeRule::Prim(r) => r.arg_kind(),
        NodeRule::Macro(m) => m.arg_kind(),
        NodeRule::Premise(_) => ArgKind::None,
    }
}

impl<'e, 'a> Checker<'e, 'a> {
    fn new(env: &'e Env<'a>, trust: TrustPolicy) -> Self {
        Checker {
            env,
            trust,
            steps: 0,
            trusted: 0,
            expanded: 0,
            gaps: Vec::new(),
        }
    }

    fn step(&mut self, id: &ProofId, rule: &NodeRule, args: &RuleArgs, prevs: &[&Thm]) -> Result<Thm, ProofError> {
        match rule {
            NodeRule::Prim(r) => {
                let th = apply_prim_rule(*r, args, prevs, self.env).map_err(|e| ProofError::at(id, e))?;
                self.steps += 1;
                if *r == PrimRule::Sorry {
                    self.gaps.push(id.clone());
                }
                Ok(th)
            }
            NodeRule::Macro(m) => self.macro_step(id, m, args, prevs),
            NodeRule::Premise(_) => Err(ProofError::at(id, "premise placeholder outside an expansion")),
        }
    }

    fn macro_step(&mut self, id: &ProofId, m: &Arc<dyn Macro>, args: &RuleArgs, prevs: &[&Thm]) -> Result<Thm, ProofError> {
        let claimed = m.eval(self.env, args, prevs).map_err(|e| ProofError::at(id, e))?;
        if self.trust.trusts(m.level()) {
            self.steps += 1;
            self.trusted += 1;
            return Ok(Thm::new(claimed));
        }
        let premises: Vec<ProofNode> = prevs
            .iter()
            .enumerate()
            .map(|(i, th)| ProofNode::premise(i, (*th).clone()))
            .collect();
        let expansion = m
            .expand(self.env, args, &premises)
            .ok_or_else(|| ProofError::at(id, ProofError::NoExpansion(m.name().to_string())))?
            .map_err(|e| ProofError::at(id, e))?;
        self.expanded += 1;
        let th = self.expansion(id, &expansion)?;
        if *th.sequent() != claimed {
            return Err(ProofError::at(
                id,
                ProofError::ExpansionMismatch {
                    name: m.name().to_string(),
                    expected: claimed.to_string(),
                    got: th.sequent().to_string(),
                },
            ));
        }
        Ok(th)
    }

    /// Re-derives every node of an expansion from its premises, giving the
    /// nodes ids `parent.0`, `parent.1`, ... in linearization order.
    fn expansion(&mut self, parent: &ProofId, root: &ProofNode) -> Result<Thm, ProofError> {
        let mut done: HashMap<usize, Thm> = HashMap::new();
        let mut next = 0u32;
        for n in root.topological() {
            let th = if let NodeRule::Premise(_) = n.rule() {
                n.th().clone()
            } else {
                let id = parent.child(next);
                next += 1;
                let prevs: Vec<&Thm> = n.prevs().iter().map(|p| &done[&p.addr()]).collect();
                self.step(&id, n.rule(), n.args(), &prevs)?
            };
            done.insert(n.addr(), th);
        }
        Ok(done.remove(&root.addr()).expect("root is visited last"))
    }

    fn linear(&mut self, proof: &LinearProof) -> Result<Thm, ProofError> {
        let mut results: HashMap<&ProofId, Thm> = HashMap::with_capacity(proof.items.len());
        let mut last = None;
        for item in &proof.items {
            let id = &item.id;
            if results.contains_key(id) {
                return Err(ProofError::at(id, "duplicate id"));
            }
            let prevs = item
                .prevs
                .iter()
                .map(|p| {
                    results
                        .get(p)
                        .ok_or_else(|| ProofError::at(id, format!("premise {p} is not an earlier step")))
                })
                .collect::<Result<Vec<&Thm>, _>>()?;
            let rule = match item.rule.parse::<PrimRule>() {
                Ok(r) => NodeRule::Prim(r),
                Err(()) => match self.env.macros().get(&item.rule) {
                    Some(m) => NodeRule::Macro(m),
                    None => return Err(ProofError::at(id, ProofError::UnknownRule(item.rule.clone()))),
                },
            };
            let expected = expected_arg_type(&rule, &prevs);
            let args = parse_args(&item.rule, arg_kind(&rule), expected.as_ref(), &item.args, &prevs, self.env)
                .map_err(|e| ProofError::at(id, e))?;
            let th = self.step(id, &rule, &args, &prevs)?;
            if let Some(annot) = &item.th {
                if annot != th.sequent() {
                    return Err(ProofError::at(
                        id,
                        format!("annotation {annot} differs from derived {}", th.sequent()),
                    ));
                }
            }
            results.insert(id, th.clone());
            last = Some(th);
        }
        last.ok_or(ProofError::EmptyProof)
    }
}

/// Checks a linear proof step by step. Macro steps whose level is above the
/// trust threshold are expanded and their expansions checked in turn.
pub fn check_linear_proof(proof: &LinearProof, env: &Env, trust: TrustPolicy) -> Result<CheckReport, ProofError> {
    let mut c = Checker::new(env, trust);
    let th = c.linear(proof)?;
    Ok(CheckReport {
        conclusion: th.into_sequent(),
        steps_checked: c.steps,
        macro_steps_trusted: c.trusted,
        macro_steps_expanded: c.expanded,
        gaps: c.gaps,
    })
}

/// Replaces every macro step reachable from `root` by its expansion,
/// recursively, keeping sharing. The result proves the same sequent using
/// primitive rules only.
pub fn expand_fully(root: &ProofNode, env: &Env) -> Result<ProofNode, ProofError> {
    let mut done: HashMap<usize, ProofNode> = HashMap::new();
    for n in root.topological() {
        let prevs: Vec<ProofNode> = n.prevs().iter().map(|p| done[&p.addr()].clone()).collect();
        let unchanged = prevs.iter().zip(n.prevs()).all(|(a, b)| a.ptr_eq(b));
        let new = match n.rule() {
            NodeRule::Premise(_) => n.clone(),
            NodeRule::Prim(_) if unchanged => n.clone(),
            NodeRule::Prim(r) => ProofNode::prim(*r, n.args().clone(), prevs, env)?,
            NodeRule::Macro(m) => {
                let exp = m
                    .expand(env, n.args(), &prevs)
                    .ok_or_else(|| ProofError::NoExpansion(m.name().to_string()))??;
                let exp = expand_fully(&exp, env)?;
                if exp.th() != n.th() {
                    return Err(ProofError::ExpansionMismatch {
                        name: m.name().to_string(),
                        expected: n.th().sequent().to_string(),
                        got: exp.th().sequent().to_string(),
                    });
                }
                exp
            }
        };
        done.insert(n.addr(), new);
    }
    Ok(done.remove(&root.addr()).expect("root is visited last"))
}

/// Rebuilds a linear proof as a proof DAG. Macro steps are evaluated, not
/// expanded.
pub fn to_dag(proof: &LinearProof, env: &Env) -> Result<ProofNode, ProofError> {
    let mut nodes: HashMap<&ProofId, ProofNode> = HashMap::with_capacity(proof.items.len());
    let mut last = None;
    for item in &proof.items {
        let id = &item.id;
        if nodes.contains_key(id) {
            return Err(ProofError::at(id, "duplicate id"));
        }
        let prevs = item
            .prevs
            .iter()
            .map(|p| {
                nodes
                    .get(p)
                    .cloned()
                    .ok_or_else(|| ProofError::at(id, format!("premise {p} is not an earlier step")))
            })
            .collect::<Result<Vec<ProofNode>, _>>()?;
        let rule = match item.rule.parse::<PrimRule>() {
            Ok(r) => NodeRule::Prim(r),
            Err(()) => match env.macros().get(&item.rule) {
                Some(m) => NodeRule::Macro(m),
                None => return Err(ProofError::at(id, ProofError::UnknownRule(item.rule.clone()))),
            },
        };
        let ths: Vec<&Thm> = prevs.iter().map(ProofNode::th).collect();
        let expected = expected_arg_type(&rule, &ths);
        let args = parse_args(&item.rule, arg_kind(&rule), expected.as_ref(), &item.args, &ths, env)
            .map_err(|e| ProofError::at(id, e))?;
        let node = match rule {
            NodeRule::Prim(r) => ProofNode::prim(r, args, prevs, env),
            NodeRule::Macro(m) => ProofNode::macro_step(m, args, prevs, env),
            NodeRule::Premise(_) => unreachable!("linear proofs have no premise placeholders"),
        }
        .map_err(|e| ProofError::at(id, e))?;
        nodes.insert(id, node.clone());
        last = Some(node);
    }
    last.ok_or(ProofError::EmptyProof)
}
