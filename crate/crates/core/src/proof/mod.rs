//! Proof terms (shared DAGs of rule applications), their linear form, and
//! the linear-proof checker.

mod args;
mod check;
mod env;
mod error;
mod linearize;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::kernel::{apply_prim_rule, PrimRule, RuleArgs, Sequent, Thm};
use crate::macros::Macro;

pub use args::{parse_args, print_args};
pub use check::{check_linear_proof, expand_fully, to_dag, CheckReport};
pub use env::{Env, DEFAULT_BUDGET};
pub use error::ProofError;
pub use linearize::linearize;

/// Dotted identifier of a proof item: `3`, `3.0`, `3.0.12`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProofId(Vec<u32>);

impl ProofId {
    pub fn top(n: u32) -> Self {
        ProofId(vec![n])
    }

    pub fn child(&self, n: u32) -> Self {
        let mut v = self.0.clone();
        v.push(n);
        ProofId(v)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for ProofId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

impl FromStr for ProofId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts = s
            .split('.')
            .map(|p| {
                if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) {
                    Err(format!("malformed proof id `{s}`"))
                } else {
                    p.parse::<u32>().map_err(|_| format!("malformed proof id `{s}`"))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ProofId(parts))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProofItem {
    pub id: ProofId,
    pub rule: String,
    pub args: String,
    pub prevs: Vec<ProofId>,
    pub th: Option<Sequent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearProof {
    pub items: Vec<LinearProofItem>,
}

impl LinearProof {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

#[derive(Clone)]
pub enum NodeRule {
    Prim(PrimRule),
    Macro(Arc<dyn Macro>),
    /// Stands for the `n`-th premise of a macro step while its expansion is
    /// being checked.
    Premise(usize),
}

impl NodeRule {
    pub fn name(&self) -> &str {
        match self {
            NodeRule::Prim(r) => r.name(),
            NodeRule::Macro(m) => m.name(),
            NodeRule::Premise(_) => "premise",
        }
    }

    pub fn is_macro(&self) -> bool {
        matches!(self, NodeRule::Macro(_))
    }
}

struct NodeData {
    rule: NodeRule,
    args: RuleArgs,
    prevs: Vec<ProofNode>,
    th: Thm,
}

/// One rule application together with the sequent it proves. Premises are
/// shared by reference, so a proof is a DAG.
#[derive(Clone)]
pub struct ProofNode(Arc<NodeData>);

impl ProofNode {
    pub fn prim(rule: PrimRule, args: RuleArgs, prevs: Vec<ProofNode>, env: &Env) -> Result<ProofNode, ProofError> {
        let th = {
            let ths: Vec<&Thm> = prevs.iter().map(|p| &p.0.th).collect();
            apply_prim_rule(rule, &args, &ths, env)?
        };
        Ok(ProofNode(Arc::new(NodeData {
            rule: NodeRule::Prim(rule),
            args,
            prevs,
            th,
        })))
    }

    /// A macro step. Its sequent comes from the macro's evaluation function,
    /// so it is only as trustworthy as that function until expanded.
    pub fn macro_step(
        m: Arc<dyn Macro>,
        args: RuleArgs,
        prevs: Vec<ProofNode>,
        env: &Env,
    ) -> Result<ProofNode, ProofError> {
        let seq = {
            let ths: Vec<&Thm> = prevs.iter().map(|p| &p.0.th).collect();
            m.eval(env, &args, &ths)?
        };
        Ok(ProofNode(Arc::new(NodeData {
            rule: NodeRule::Macro(m),
            args,
            prevs,
            th: Thm::new(seq),
        })))
    }

    pub fn premise(index: usize, th: Thm) -> ProofNode {
        ProofNode(Arc::new(NodeData {
            rule: NodeRule::Premise(index),
            args: RuleArgs::None,
            prevs: Vec::new(),
            th,
        }))
    }

    pub fn rule(&self) -> &NodeRule {
        &self.0.rule
    }

    pub fn args(&self) -> &RuleArgs {
        &self.0.args
    }

    pub fn prevs(&self) -> &[ProofNode] {
        &self.0.prevs
    }

    pub fn th(&self) -> &Thm {
        &self.0.th
    }

    pub fn ptr_eq(&self, other: &ProofNode) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub(crate) fn addr(&self) -> usize {
        Arc::as_ptr(&self.0) as *const () as usize
    }

    /// Nodes reachable from `self`, each counted once, in the order
    /// [`linearize`] emits them.
    pub fn topological(&self) -> Vec<ProofNode> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        let mut stack = vec![(self.clone(), 0usize)];
        seen.insert(self.addr());
        while let Some((n, i)) = stack.pop() {
            if i < n.prevs().len() {
                let p = n.prevs()[i].clone();
                stack.push((n, i + 1));
                if seen.insert(p.addr()) {
                    stack.push((p, 0));
                }
            } else {
                out.push(n);
            }
        }
        out
    }

    pub fn has_macros(&self) -> bool {
        self.topological().iter().any(|n| n.rule().is_macro())
    }
}

/// Builds a node for a primitive rule or registered macro by name.
pub fn node(rule: &str, args: RuleArgs, prevs: Vec<ProofNode>, env: &Env) -> Result<ProofNode, ProofError> {
    if let Ok(r) = rule.parse::<PrimRule>() {
        return ProofNode::prim(r, args, prevs, env);
    }
    let m = env
        .macros()
        .get(rule)
        .ok_or_else(|| ProofError::UnknownRule(rule.to_string()))?;
    ProofNode::macro_step(m, args, prevs, env)
}

impl fmt::Debug for ProofNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?} : {}", self.rule().name(), self.args(), self.th().sequent())
    }
}

impl Drop for NodeData {
    // Long chains of premises would otherwise be freed recursively.
    fn drop(&mut self) {
        let mut stack = std::mem::take(&mut self.prevs);
        while let Some(n) = stack.pop() {
            if let Ok(mut data) = Arc::try_unwrap(n.0) {
                stack.append(&mut data.prevs);
            }
        }
    }
}
