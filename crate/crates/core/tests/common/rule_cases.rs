//! Positive and side-condition cases for every primitive rule, run against
//! the `nat` fixture theory. Shared by the kernel tests and the acceptance
//! suite.

use holcheck::kernel::{apply_prim_rule, HolType, PrimRule, RuleArgs, Sequent, Term, TermInstantiation, Thm};
use holcheck::proof::{parse_args, Env};
use holcheck::syntax::{parse_sequent, VarContext};
use holcheck::theory::Theory;

pub enum Arg {
    None,
    /// Parsed like a proof item's `args` string.
    Text(&'static str),
    /// Built directly, bypassing the parser's own checks.
    Built(fn() -> RuleArgs),
}

pub enum Expect {
    Ok(&'static str),
    Err,
}

pub struct RuleCase {
    pub rule: PrimRule,
    pub label: &'static str,
    pub arg: Arg,
    pub prevs: &'static [&'static str],
    pub expect: Expect,
}

pub fn context() -> VarContext {
    let b = HolType::bool();
    let nat = HolType::base("nat");
    let nn = HolType::fun(nat.clone(), nat.clone());
    [
        ("p", b.clone()),
        ("q", b.clone()),
        ("r", b.clone()),
        ("s", b.clone()),
        ("x", nat.clone()),
        ("y", nat.clone()),
        ("z", nat.clone()),
        ("f", nn.clone()),
        ("g", nn),
        ("u", HolType::var("a")),
        ("P", HolType::fun(nat, b)),
    ]
    .into_iter()
    .collect()
}

fn nat() -> HolType {
    HolType::base("nat")
}

use Arg::{Built, Text};
use Expect::{Err, Ok};
use PrimRule::*;

macro_rules! case {
    ($rule:expr, $label:expr, $arg:expr, [$($p:expr),*], $expect:expr) => {
        RuleCase { rule: $rule, label: $label, arg: $arg, prevs: &[$($p),*], expect: $expect }
    };
}

pub fn cases() -> Vec<RuleCase> {
    vec![
        case!(Assume, "boolean atom", Text("p"), [], Ok("p |- p")),
        case!(Assume, "equation", Text("x = y"), [], Ok("x = y |- x = y")),
        case!(Assume, "non-boolean term", Text("x"), [], Err),
        case!(Assume, "premise given", Text("p"), ["|- q"], Err),
        case!(ImpliesIntro, "discharges hypothesis", Text("p"), ["p |- q"], Ok("|- p --> q")),
        case!(ImpliesIntro, "absent hypothesis kept", Text("p"), ["q |- q"], Ok("q |- p --> q")),
        case!(ImpliesIntro, "non-boolean antecedent", Text("x"), ["|- p"], Err),
        case!(ImpliesIntro, "missing premise", Text("p"), [], Err),
        case!(ImpliesElim, "modus ponens", Arg::None, ["|- p --> q", "|- p"], Ok("|- q")),
        case!(ImpliesElim, "hypotheses united", Arg::None, ["r |- p --> q", "s |- p"], Ok("r, s |- q")),
        case!(ImpliesElim, "antecedent mismatch", Arg::None, ["|- p --> q", "|- r"], Err),
        case!(ImpliesElim, "not an implication", Arg::None, ["|- p", "|- p"], Err),
        case!(ForallIntro, "generalizes", Text("x"), ["|- x = x"], Ok("|- !x::nat. x = x")),
        case!(ForallIntro, "vacuous", Text("x"), ["|- p"], Ok("|- !x::nat. p")),
        case!(ForallIntro, "free in hypotheses", Text("x"), ["x = y |- x = x"], Err),
        case!(ForallIntro, "not a variable", Text("x + y"), ["|- p"], Err),
        case!(ForallElim, "instantiates", Text("y"), ["|- !x::nat. x = x"], Ok("|- y = y")),
        case!(ForallElim, "compound witness", Text("x + 1"), ["|- !n::nat. n + 0 = n"], Ok("|- x + 1 + 0 = x + 1")),
        case!(ForallElim, "witness of wrong type", Built(|| RuleArgs::Term(Term::var("p", HolType::bool()))), ["|- !x::nat. x = x"], Err),
        case!(ForallElim, "not quantified", Text("y"), ["|- p --> q"], Err),
        case!(Reflexive, "variable", Text("x"), [], Ok("|- x = x")),
        case!(Reflexive, "abstraction", Text("%z::nat. z"), [], Ok("|- (%z::nat. z) = (%z::nat. z)")),
        case!(Reflexive, "premise given", Text("x"), ["|- p"], Err),
        case!(Symmetric, "swaps sides", Arg::None, ["|- x = y"], Ok("|- y = x")),
        case!(Symmetric, "keeps hypotheses", Arg::None, ["p |- x = y"], Ok("p |- y = x")),
        case!(Symmetric, "not an equation", Arg::None, ["|- p"], Err),
        case!(Transitive, "chains", Arg::None, ["|- x = y", "|- y = z"], Ok("|- x = z")),
        case!(Transitive, "hypotheses united", Arg::None, ["p |- x = y", "q |- y = z"], Ok("p, q |- x = z")),
        case!(Transitive, "middle mismatch", Arg::None, ["|- x = y", "|- z = x"], Err),
        case!(Transitive, "not equations", Arg::None, ["|- p", "|- q"], Err),
        case!(Combination, "congruence", Arg::None, ["|- f = g", "|- x = y"], Ok("|- f x = g y")),
        case!(Combination, "argument type mismatch", Arg::None, ["|- f = g", "|- p = q"], Err),
        case!(Combination, "not a function", Arg::None, ["|- x = y", "|- x = y"], Err),
        case!(Abstraction, "abstracts both sides", Text("x"), ["|- f x = g x"], Ok("|- (%x::nat. f x) = (%x::nat. g x)")),
        case!(Abstraction, "free in hypotheses", Text("x"), ["x = y |- f x = g x"], Err),
        case!(Abstraction, "not an equation", Text("x"), ["|- p"], Err),
        case!(BetaConv, "reduces redex", Text("(%z::nat. f z) x"), [], Ok("|- (%z::nat. f z) x = f x")),
        case!(BetaConv, "under binder", Text("(%z::nat. %w::nat. z) x"), [], Ok("|- (%z::nat. %w::nat. z) x = (%w::nat. x)")),
        case!(BetaConv, "not a redex", Text("f x"), [], Err),
        case!(EqualElim, "transports", Arg::None, ["|- p = q", "|- p"], Ok("|- q")),
        case!(EqualElim, "hypotheses united", Arg::None, ["r |- p = q", "s |- p"], Ok("r, s |- q")),
        case!(EqualElim, "wrong premise", Arg::None, ["|- p = q", "|- q"], Err),
        case!(SubstType, "instantiates type variable", Text("{'a := nat}"), ["|- (v :: 'a) = v"], Ok("|- (v :: nat) = v")),
        case!(SubstType, "empty instantiation", Text("{}"), ["p |- u = u"], Ok("p |- u = u")),
        case!(SubstType, "two premises", Text("{'a := nat}"), ["|- p", "|- q"], Err),
        case!(SubstType, "undeclared constructor", Built(|| {
            let mut i = holcheck::kernel::TypeInstantiation::new();
            i.insert("a", HolType::base("nosuch"));
            RuleArgs::TypeInst(i)
        }), ["|- u = u"], Err),
        case!(Substitution, "instantiates schematic", Text("{A := p}"), ["|- ?A --> ?A"], Ok("|- p --> p")),
        case!(Substitution, "beta-normalizes", Text("{P := %n::nat. n = n}"), ["|- ?P x"], Ok("|- x = x")),
        case!(Substitution, "hypotheses instantiated", Text("{A := q}"), ["?A |- ?A"], Ok("q |- q")),
        case!(Substitution, "type mismatch", Built(|| {
            let mut i = TermInstantiation::new();
            i.insert("A", Term::var("x", nat()));
            RuleArgs::TermInst(i)
        }), ["|- ?A --> ?A"], Err),
        case!(Theorem, "axiom in schematic form", Text("conjI"), [], Ok("|- ?A --> ?B --> ?A & ?B")),
        case!(Theorem, "imported lemma", Text("add_0_right"), [], Ok("|- ?n + 0 = ?n")),
        case!(Theorem, "unknown name", Text("no_such_theorem"), [], Err),
        case!(Theorem, "premise given", Text("conjI"), ["|- p"], Err),
        case!(Sorry, "any sequent", Text("p |- q"), [], Ok("p |- q")),
        case!(Sorry, "premise given", Text("|- p"), ["|- p"], Err),
        case!(Sorry, "non-boolean statement", Built(|| RuleArgs::Sequent(Sequent::concl(Term::var("x", nat())))), [], Err),
    ]
}

pub struct Outcome {
    pub rule: PrimRule,
    pub label: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn premise(thy: &Theory, env: &Env, s: &str) -> Thm {
    let seq = parse_sequent(s, env.vars(), thy.signature()).unwrap_or_else(|e| panic!("premise {s}: {e}"));
    apply_prim_rule(PrimRule::Sorry, &RuleArgs::Sequent(seq), &[], env).expect("sorry accepts boolean sequents")
}

pub fn run(thy: &Theory, case: &RuleCase) -> Outcome {
    let env = Env::new(thy).with_vars(context());
    let prevs: Vec<Thm> = case.prevs.iter().map(|s| premise(thy, &env, s)).collect();
    let refs: Vec<&Thm> = prevs.iter().collect();
    let args = match &case.arg {
        Arg::None => Result::Ok(RuleArgs::None),
        Arg::Text(s) => parse_args(case.rule.name(), case.rule.arg_kind(), None, s, &refs, &env).map_err(|e| e.to_string()),
        Arg::Built(f) => Result::Ok(f()),
    };
    let result = args.and_then(|a| apply_prim_rule(case.rule, &a, &refs, &env).map_err(|e| e.to_string()));
    let (passed, detail) = match (&case.expect, result) {
        (Expect::Ok(want), Result::Ok(th)) => {
            let want = parse_sequent(want, env.vars(), thy.signature()).unwrap_or_else(|e| panic!("expected sequent {want}: {e}"));
            (*th.sequent() == want, format!("got {}", th.sequent()))
        }
        (Expect::Ok(_), Result::Err(e)) => (false, format!("unexpected error: {e}")),
        (Expect::Err, Result::Ok(th)) => (false, format!("unexpectedly derived {}", th.sequent())),
        (Expect::Err, Result::Err(e)) => (true, format!("rejected: {e}")),
    };
    Outcome {
        rule: case.rule,
        label: case.label,
        passed,
        detail,
    }
}
