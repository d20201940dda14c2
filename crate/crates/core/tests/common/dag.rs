//! Random proof DAGs over the `nat` fixture, built from primitive rules and
//! the built-in macros with deliberate sharing of sub-proofs.

use holcheck::kernel::{HolType, PrimRule, RuleArgs, Term, TermInstantiation};
use holcheck::numeral::{mk_numeral_u64, nat_eq, plus, times};
use holcheck::proof::{node, Env, ProofNode};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use super::gen::{nat, TermGen};

const AXIOMS: [&str; 8] = [
    "add_0_right",
    "add_suc",
    "conjI",
    "conjD1",
    "disjI1",
    "suc_inj",
    "mult_1_right",
    "exI",
];

fn prim(rule: PrimRule, args: RuleArgs, prevs: Vec<ProofNode>, env: &Env) -> Option<ProofNode> {
    ProofNode::prim(rule, args, prevs, env).ok()
}

fn pick<'a>(pool: &'a [ProofNode], rng: &mut StdRng) -> &'a ProofNode {
    // Favour recent nodes so the DAG grows deep rather than wide.
    let n = pool.len();
    let back = (rng.gen_range(0.0f64..1.0).powi(2) * n as f64) as usize;
    &pool[n - 1 - back.min(n - 1)]
}

fn small_nat(rng: &mut StdRng) -> Term {
    mk_numeral_u64(rng.gen_range(0..50))
}

fn step(pool: &[ProofNode], env: &Env, rng: &mut StdRng) -> Option<ProofNode> {
    let mut g = TermGen::new(false);
    let b = HolType::bool();
    match rng.gen_range(0..17) {
        0 => prim(PrimRule::Assume, RuleArgs::Term(g.term(&b, 3, rng)), vec![], env),
        1 => prim(PrimRule::Reflexive, RuleArgs::Term(g.term(&nat(), 3, rng)), vec![], env),
        2 => {
            let name = AXIOMS.choose(rng).unwrap();
            prim(PrimRule::Theorem, RuleArgs::Name(name.to_string()), vec![], env)
        }
        3 => {
            let p = pick(pool, rng).clone();
            let hyp = p
                .th()
                .hyps
                .iter()
                .next()
                .cloned()
                .filter(|_| rng.gen_bool(0.7))
                .unwrap_or_else(|| g.term(&b, 2, rng));
            prim(PrimRule::ImpliesIntro, RuleArgs::Term(hyp), vec![p], env)
        }
        4 => {
            let imp = pool.iter().rev().filter(|n| n.th().prop.dest_implies().is_some()).nth(rng.gen_range(0..3))?;
            let (ante, _) = imp.th().prop.dest_implies().unwrap();
            let arg = pool
                .iter()
                .find(|n| &n.th().prop == ante)
                .cloned()
                .or_else(|| prim(PrimRule::Assume, RuleArgs::Term(ante.clone()), vec![], env))?;
            prim(PrimRule::ImpliesElim, RuleArgs::None, vec![imp.clone(), arg], env)
        }
        5 => prim(PrimRule::Symmetric, RuleArgs::None, vec![pick(pool, rng).clone()], env),
        6 => {
            let a = pick(pool, rng).clone();
            let (_, r) = a.th().prop.dest_eq()?;
            let r = r.clone();
            let b = pool.iter().rev().find(|n| n.th().prop.dest_eq().is_some_and(|(l, _)| *l == r))?;
            prim(PrimRule::Transitive, RuleArgs::None, vec![a, b.clone()], env)
        }
        7 => {
            let f = pick(pool, rng).clone();
            let x = pick(pool, rng).clone();
            prim(PrimRule::Combination, RuleArgs::None, vec![f, x], env)
        }
        8 => {
            let v = Term::var(*["x", "y", "n"].choose(rng).unwrap(), nat());
            prim(PrimRule::Abstraction, RuleArgs::Term(v), vec![pick(pool, rng).clone()], env)
        }
        9 => {
            let body = g.term(&nat(), 3, rng).abstract_var("x", &nat());
            let redex = Term::app(Term::abs("x", nat(), body), g.term(&nat(), 2, rng));
            prim(PrimRule::BetaConv, RuleArgs::Term(redex), vec![], env)
        }
        10 => {
            let v = Term::var(*["x", "y", "n"].choose(rng).unwrap(), nat());
            prim(PrimRule::ForallIntro, RuleArgs::Term(v), vec![pick(pool, rng).clone()], env)
        }
        11 => {
            let p = pool.iter().rev().find(|n| n.th().prop.dest_forall().is_some())?;
            prim(PrimRule::ForallElim, RuleArgs::Term(g.term(&nat(), 2, rng)), vec![p.clone()], env)
        }
        12 => {
            let eq = pick(pool, rng).clone();
            let (l, _) = eq.th().prop.dest_eq()?;
            let prem = pool.iter().find(|n| &n.th().prop == l)?;
            prim(PrimRule::EqualElim, RuleArgs::None, vec![eq.clone(), prem.clone()], env)
        }
        13 => {
            let p = pick(pool, rng).clone();
            let svars = p.th().prop.schematic_vars();
            let (name, ty) = svars.choose(rng)?;
            let inst: TermInstantiation = [(name.clone(), g.term(ty, 2, rng))].into_iter().collect();
            prim(PrimRule::Substitution, RuleArgs::TermInst(inst), vec![p], env)
        }
        14 => {
            let a = small_nat(rng);
            let t = if rng.gen_bool(0.5) { plus(a, small_nat(rng)) } else { times(a, small_nat(rng)) };
            node("nat_arith_eval", RuleArgs::Term(t), vec![], env).ok()
        }
        15 => {
            let x = Term::var("x", nat());
            let y = Term::var("y", nat());
            let goal = if rng.gen_bool(0.5) {
                nat_eq(plus(x.clone(), y.clone()), plus(y, x))
            } else {
                nat_eq(times(x.clone(), plus(y.clone(), mk_numeral_u64(1))), plus(times(x.clone(), y), x))
            };
            node("nat_norm_poly", RuleArgs::Term(goal), vec![], env).ok()
        }
        _ => {
            let prems: Vec<ProofNode> = (0..rng.gen_range(0..3)).map(|_| pick(pool, rng).clone()).collect();
            let name = ["conjI", "disjI1", "suc_inj", "conjD1"].choose(rng).unwrap();
            node("apply_theorem", RuleArgs::Name(name.to_string()), prems, env).ok()
        }
    }
}

/// A DAG of roughly `size` nodes; the root is the last node built, and it
/// shares its premises with earlier nodes wherever the generator reused
/// them.
pub fn random_dag(env: &Env, rng: &mut StdRng, size: usize) -> ProofNode {
    let mut pool = vec![prim(PrimRule::Reflexive, RuleArgs::Term(Term::var("x", nat())), vec![], env).unwrap()];
    let mut attempts = 0;
    while pool.len() < size && attempts < size * 50 {
        attempts += 1;
        if let Some(n) = step(&pool, env, rng) {
            pool.push(n);
        }
    }
    // Tie several recent nodes together so the root reaches most of the pool.
    let mut root = pool.last().unwrap().clone();
    for other in pool.iter().rev().skip(1).take(8) {
        let Some(conj) = node(
            "apply_theorem",
            RuleArgs::Name("conjI".into()),
            vec![root.clone(), other.clone()],
            env,
        )
        .ok() else {
            continue;
        };
        root = conj;
    }
    root
}
