use std::collections::HashMap;

use super::{print_args, Env, LinearProof, LinearProofItem, NodeRule, ProofError, ProofId, ProofNode};

/// Flattens a proof DAG into a linear proof. Every node becomes exactly one
/// item, premises come first, and ids are consecutive from 0 in depth-first
/// post-order with premises visited left to right. Arguments are printed
/// against the environment's signature and variable context, and every
/// item carries its sequent.
pub fn linearize(root: &ProofNode, env: &Env) -> Result<LinearProof, ProofError> {
    let order = root.topological();
    let mut ids: HashMap<usize, ProofId> = HashMap::with_capacity(order.len());
    let mut items = Vec::with_capacity(order.len());
    for (i, n) in order.iter().enumerate() {
        if let NodeRule::Premise(k) = n.rule() {
            return Err(ProofError::UnknownRule(format!("premise placeholder #{k}")));
        }
        let id = ProofId::top(i as u32);
        let prevs = n.prevs().iter().map(|p| ids[&p.addr()].clone()).collect();
        items.push(LinearProofItem {
            id: id.clone(),
            rule: n.rule().name().to_string(),
            args: print_args(n.args(), env)?,
            prevs,
            th: Some(n.th().sequent().clone()),
        });
        ids.insert(n.addr(), id);
    }
    Ok(LinearProof { items })
}
