mod common;

use common::gen::{context, nat, random_bool_term, random_term};
use holcheck::kernel::{HolType, Sequent, Signature, Term};
use holcheck::syntax::{parse_sequent, parse_term, parse_type, print_sequent, print_term, print_type, ParseError, Printer, VarContext};
use std::sync::OnceLock;

use holcheck::theory::ItemKind;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn sig() -> &'static Signature {
    static SIG: OnceLock<Signature> = OnceLock::new();
    SIG.get_or_init(|| common::fixture("nat").signature().clone())
}

fn bool_ty() -> HolType {
    HolType::bool()
}

#[test]
fn type_examples() {
    let s = sig().clone();
    let a = HolType::var("a");
    assert_eq!(parse_type("bool", &s).unwrap(), bool_ty());
    assert_eq!(
        parse_type("nat => nat => bool", &s).unwrap(),
        HolType::fun(nat(), HolType::fun(nat(), bool_ty()))
    );
    let higher = HolType::fun(HolType::fun(a, bool_ty()), bool_ty());
    assert_eq!(parse_type("('a => bool) => bool", &s).unwrap(), higher);
    assert_eq!(print_type(&higher), "('a => bool) => bool");
    assert_eq!(parse_type(&print_type(&higher), &s).unwrap(), higher);
}

#[test]
fn type_errors_carry_positions() {
    let s = sig().clone();
    assert!(matches!(parse_type("nat =>", &s), Err(ParseError::Syntax { pos: 6, .. })));
    assert!(parse_type("nosuch", &s).is_err());
    assert!(parse_type("(nat", &s).is_err());
}

#[test]
fn equation_builds_the_expected_tree() {
    let ctx: VarContext = [("x", nat())].into_iter().collect();
    let t = parse_term("x = x", &ctx, sig()).unwrap();
    let x = Term::var("x", nat());
    let eq = Term::constant("equals", HolType::fun_n([nat(), nat()], bool_ty()));
    assert_eq!(t, Term::apps(eq, [x.clone(), x]));
}

#[test]
fn forall_body_uses_bound_index() {
    let t = parse_term("!x::nat. x + 0 = x", &VarContext::new(), sig()).unwrap();
    let (name, ty, body) = t.dest_forall().unwrap();
    assert_eq!((name.as_ref(), ty), ("x", &nat()));
    let (lhs, rhs) = body.dest_eq().unwrap();
    assert_eq!(rhs, &Term::bound(0));
    assert!(lhs.is_app());
    assert_eq!(print_term(&t), "!x::nat. x + 0 = x");
}

#[test]
fn implication_is_right_associative() {
    let ctx: VarContext = [("A", bool_ty()), ("B", bool_ty())].into_iter().collect();
    let t = parse_term("A --> B --> A", &ctx, sig()).unwrap();
    let a = Term::var("A", bool_ty());
    let b = Term::var("B", bool_ty());
    assert_eq!(t, Term::mk_implies(a.clone(), Term::mk_implies(b, a)));
}

#[test]
fn precedence_table() {
    let s = sig().clone();
    let ctx = context();
    let same = |a: &str, b: &str| {
        assert_eq!(parse_term(a, &ctx, &s).unwrap(), parse_term(b, &ctx, &s).unwrap(), "{a} vs {b}");
    };
    same("p --> q | p & q", "p --> (q | (p & q))");
    same("p | q | p", "p | (q | p)");
    same("~p & q", "(~p) & q");
    same("~x = y", "~(x = y)");
    same("x + y * n = n", "(x + (y * n)) = n");
    same("x + y + n", "(x + y) + n");
    same("x * y * n", "(x * y) * n");
    same("f x + g y", "(f x) + (g y)");
    same("!x. P x --> p", "!x. (P x --> p)");
    assert!(parse_term("x = y = n", &ctx, &s).is_err(), "equality is non-associative");
}

#[test]
fn minimal_parentheses() {
    let s = sig().clone();
    let ctx: VarContext = [("a", nat()), ("b", nat()), ("c", nat())].into_iter().collect();
    for src in ["a + b * c", "(a + b) * c", "a + (b + c)", "a * b + c", "Suc (a + b)"] {
        assert_eq!(print_term(&parse_term(src, &ctx, &s).unwrap()), src);
    }
}

#[test]
fn numerals_are_binary_constant_trees() {
    let t = parse_term("6", &VarContext::new(), sig()).unwrap();
    let c = |n: &str| Term::constant(n, HolType::fun(nat(), nat()));
    let one = Term::constant("one", nat());
    assert_eq!(t, Term::app(c("bit0"), Term::app(c("bit1"), one)));
    assert_eq!(print_term(&t), "6");
    assert_eq!(print_term(&parse_term("0", &VarContext::new(), sig()).unwrap()), "0");
}

#[test]
fn lambda_printing() {
    let t = Term::abs("x", nat(), Term::bound(0));
    assert_eq!(print_term(&t), "%x::nat. x");
}

#[test]
fn clashing_hint_is_primed() {
    let x = Term::var("x", nat());
    let t = Term::abs("x", nat(), Term::mk_eq(Term::bound(0), x, &nat()));
    let printed = print_term(&t);
    assert_eq!(printed, "%x'::nat. x' = x");
    assert_eq!(parse_term(&printed, &context(), sig()).unwrap(), t);
}

#[test]
fn type_inference_fills_binders() {
    let s = sig().clone();
    let t = parse_term("%n. n + 1", &VarContext::new(), &s).unwrap();
    assert_eq!(t.ty().unwrap(), HolType::fun(nat(), nat()));
    assert!(matches!(
        parse_term("%n. n", &VarContext::new(), &s),
        Err(ParseError::TypeInference { .. })
    ));
    assert!(matches!(
        parse_term("x = p", &context(), &s),
        Err(ParseError::TypeInference { .. })
    ));
}

#[test]
fn schematic_variables_and_ascription() {
    let s = sig().clone();
    let t = parse_term("?A --> ?B --> ?A", &VarContext::new(), &s).unwrap();
    assert_eq!(t.schematic_vars().len(), 2);
    let m = parse_term("(?m :: nat)", &VarContext::new(), &s).unwrap();
    assert_eq!(m, Term::svar("m", nat()));
    let ex = parse_term("?x::nat. x = x", &VarContext::new(), &s).unwrap();
    assert!(!ex.has_svars() && ex.is_app());
}

#[test]
fn sequent_examples() {
    let s = sig().clone();
    let ctx: VarContext = [("x", nat()), ("A", bool_ty()), ("B", bool_ty())].into_iter().collect();
    let x = Term::var("x", nat());
    assert_eq!(parse_sequent("|- x = x", &ctx, &s).unwrap(), Sequent::concl(Term::mk_eq(x.clone(), x, &nat())));
    let a = Term::var("A", bool_ty());
    let b = Term::var("B", bool_ty());
    let seq = parse_sequent("A, B |- A", &ctx, &s).unwrap();
    assert_eq!(seq, Sequent::new([a.clone(), b], a));
    assert_eq!(parse_sequent("B, A |- A", &ctx, &s).unwrap(), seq);
    assert_eq!(print_sequent(&seq), "A, B |- A");
}

#[test]
fn fixture_statements_reparse() {
    for name in ["logic_base", "nat", "nat_bench"] {
        let thy = common::fixture(name);
        let empty = VarContext::new();
        for (i, item) in thy.items().iter().enumerate() {
            let (ctx, prop) = match &item.kind {
                ItemKind::Axiom { vars, prop } | ItemKind::Theorem { vars, prop, .. } => (vars, prop),
                ItemKind::Definition { prop, .. } => (&empty, prop),
                _ => continue,
            };
            let sig = if matches!(item.kind, ItemKind::Definition { .. }) {
                thy.signature_before(i + 1)
            } else {
                thy.signature_before(i)
            };
            let printed = Printer::new(sig).with_ctx(ctx).term(prop).unwrap();
            assert_eq!(&parse_term(&printed, ctx, sig).unwrap(), prop, "{name}.{}", item.name);
        }
    }
}

fn random_sequent(rng: &mut StdRng) -> Sequent {
    let hyps: Vec<Term> = (0..rng.gen_range(0..4)).map(|_| random_bool_term(rng, 4, false)).collect();
    Sequent::new(hyps, random_bool_term(rng, 5, false))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn plain_printing_round_trips(seed: u64) {
        let t = random_term(&mut StdRng::seed_from_u64(seed), 6, false);
        let printed = print_term(&t);
        let back = parse_term(&printed, &context(), sig());
        prop_assert_eq!(back, Ok(t), "{}", printed);
    }

    #[test]
    fn checked_printing_round_trips_with_schematics(seed: u64) {
        let t = random_term(&mut StdRng::seed_from_u64(seed), 6, true);
        let s = sig().clone();
        let ctx = context();
        let printed = Printer::new(&s).with_ctx(&ctx).term(&t).unwrap();
        prop_assert_eq!(parse_term(&printed, &ctx, &s), Ok(t));
        prop_assert_eq!(print_term(&parse_term(&printed, &ctx, &s).unwrap()), print_term(&parse_term(&printed, &ctx, &s).unwrap()));
    }

    #[test]
    fn reprinting_is_a_fixpoint(seed: u64) {
        let t = random_term(&mut StdRng::seed_from_u64(seed), 6, false);
        let once = print_term(&t);
        let twice = print_term(&parse_term(&once, &context(), sig()).unwrap());
        prop_assert_eq!(once, twice);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn sequents_round_trip(seed: u64) {
        let seq = random_sequent(&mut StdRng::seed_from_u64(seed));
        let printed = print_sequent(&seq);
        let back = parse_sequent(&printed, &context(), sig()).unwrap();
        prop_assert_eq!(&back, &seq);
        prop_assert_eq!(print_sequent(&back), printed);
    }
}
