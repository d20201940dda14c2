use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use super::lexer::is_identifier;
use super::parser::{self, Assoc, INFIX, NEG_PREC};
use super::{ParseError, VarContext};
use crate::kernel::{HolType, Name, Sequent, Signature, Term, TermInstantiation, TermKind, TypeInstantiation, TypeKind, ALL, FUN};
use crate::numeral;

const BINDER_PREC: u32 = 0;
const APP_PREC: u32 = 900;
const ATOM_PREC: u32 = 1000;

pub fn print_type(ty: &HolType) -> String {
    let mut out = String::new();
    write_type(ty, 0, &mut out);
    out
}

/// Levels: 0 anywhere, 1 left of an arrow, 2 argument of a postfix
/// constructor.
fn write_type(ty: &HolType, level: u8, out: &mut String) {
    match ty.kind() {
        TypeKind::Var(n) => {
            out.push('\'');
            out.push_str(n);
        }
        TypeKind::App(c, args) if &**c == FUN && args.len() == 2 => {
            if level > 0 {
                out.push('(');
            }
            write_type(&args[0], 1, out);
            out.push_str(" => ");
            write_type(&args[1], 0, out);
            if level > 0 {
                out.push(')');
            }
        }
        TypeKind::App(c, args) => {
            match args.len() {
                0 => {}
                1 => {
                    write_type(&args[0], 2, out);
                    out.push(' ');
                }
                _ => {
                    out.push('(');
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            out.push_str(", ");
                        }
                        write_type(a, 0, out);
                    }
                    out.push_str(") ");
                }
            }
            out.push_str(c);
        }
    }
}

pub fn print_term(t: &Term) -> String {
    let mut w = Writer::new(Mode::Plain, None, None, t.names());
    w.term(t, 0);
    w.out
}

pub fn print_sequent(seq: &Sequent) -> String {
    let mut w = Writer::new(Mode::Plain, None, None, sequent_names(seq));
    w.sequent(seq);
    w.out
}

pub fn print_instantiation(tyinst: &TypeInstantiation, inst: &TermInstantiation) -> String {
    let names = inst.0.values().flat_map(Term::names).collect();
    let mut w = Writer::new(Mode::Plain, None, None, names);
    w.instantiation(tyinst, inst);
    w.out
}

fn sequent_names(seq: &Sequent) -> BTreeSet<Name> {
    seq.terms().flat_map(Term::names).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// No annotations beyond binder types.
    Plain,
    /// Free and schematic variables outside the context are ascribed at
    /// their first occurrence.
    Annotate,
    /// As `Annotate`, and every polymorphic constant is ascribed.
    Full,
}

struct Writer<'a> {
    mode: Mode,
    sig: Option<&'a Signature>,
    ctx: Option<&'a VarContext>,
    avoid: BTreeSet<Name>,
    scope: Vec<String>,
    annotated: HashSet<(bool, Name)>,
    /// Whether the signature lets decimal numerals be read back.
    numerals: bool,
    out: String,
}

impl<'a> Writer<'a> {
    fn new(mode: Mode, sig: Option<&'a Signature>, ctx: Option<&'a VarContext>, avoid: BTreeSet<Name>) -> Self {
        Writer {
            mode,
            sig,
            ctx,
            avoid,
            scope: Vec::new(),
            annotated: HashSet::new(),
            numerals: sig.is_none_or(|s| {
                [numeral::ZERO, numeral::ONE, numeral::BIT0, numeral::BIT1]
                    .iter()
                    .all(|c| s.has_const(c))
            }),
            out: String::new(),
        }
    }

    fn polymorphic(&self, name: &str) -> bool {
        self.mode == Mode::Full && self.sig.is_some_and(|s| s.is_polymorphic(name))
    }

    fn needs_annotation(&mut self, schematic: bool, name: &Name, ty: &HolType) -> bool {
        if self.mode == Mode::Plain {
            return false;
        }
        if !schematic && self.ctx.is_some_and(|c| c.contains(name, ty)) {
            return false;
        }
        self.annotated.insert((schematic, name.clone()))
    }

    fn fresh_bound_name(&self, hint: &str) -> String {
        let mut name = if is_identifier(hint) { hint.to_string() } else { "x".to_string() };
        while self.avoid.contains(name.as_str()) || self.scope.contains(&name) {
            name.push('\'');
        }
        name
    }

    fn open(&mut self, cond: bool) {
        if cond {
            self.out.push('(');
        }
    }

    fn close(&mut self, cond: bool) {
        if cond {
            self.out.push(')');
        }
    }

    fn ascribed(&mut self, text: &str, ty: &HolType) {
        self.out.push('(');
        self.out.push_str(text);
        self.out.push_str("::");
        write_type(ty, 0, &mut self.out);
        self.out.push(')');
    }

    fn binder(&mut self, sym: &str, hint: &str, ty: &HolType, body: &Term, prec: u32) {
        let paren = prec > BINDER_PREC;
        self.open(paren);
        let name = self.fresh_bound_name(hint);
        let _ = write!(self.out, "{sym}{name}::");
        write_type(ty, 0, &mut self.out);
        self.out.push_str(". ");
        self.scope.push(name);
        self.term(body, BINDER_PREC);
        self.scope.pop();
        self.close(paren);
    }

    fn term(&mut self, t: &Term, prec: u32) {
        if let Some(n) = numeral::dest_numeral(t).filter(|_| self.numerals) {
            let _ = write!(self.out, "{n}");
            return;
        }
        match t.kind() {
            TermKind::Var(n, ty) => {
                if self.needs_annotation(false, n, ty) {
                    self.ascribed(n, ty);
                } else {
                    self.out.push_str(n);
                }
            }
            TermKind::SVar(n, ty) => {
                if self.needs_annotation(true, n, ty) {
                    self.ascribed(&format!("?{n}"), ty);
                } else {
                    self.out.push('?');
                    self.out.push_str(n);
                }
            }
            TermKind::Const(n, ty) => {
                if self.polymorphic(n) {
                    self.ascribed(n, ty);
                } else {
                    self.out.push_str(n);
                }
            }
            TermKind::Bound(i) => match self.scope.len().checked_sub(i + 1) {
                Some(k) => {
                    let name = self.scope[k].clone();
                    self.out.push_str(&name);
                }
                None => {
                    let _ = write!(self.out, "<loose {i}>");
                }
            },
            TermKind::Abs(hint, ty, body) => self.binder("%", hint, ty, body, prec),
            TermKind::App(f, x) => self.application(t, f, x, prec),
        }
    }

    fn application(&mut self, t: &Term, f: &Term, x: &Term, prec: u32) {
        if let (Some((q, _)), Some((hint, ty, body))) = (f.dest_const(), x.dest_abs()) {
            let sym = match &**q {
                ALL => Some("!"),
                parser::EXISTS => Some("?"),
                _ => None,
            };
            if let Some(sym) = sym {
                return self.binder(sym, hint, ty, body, prec);
            }
        }
        if let Some((c, _)) = f.dest_const() {
            if &**c == parser::NEG && !self.polymorphic(c) {
                let paren = prec > NEG_PREC;
                self.open(paren);
                self.out.push('~');
                let nested = x.dest_app().is_some_and(|(g, _)| g.is_const_named(parser::NEG));
                self.term(x, if nested { NEG_PREC } else { NEG_PREC + 1 });
                self.close(paren);
                return;
            }
        }
        let (head, args) = t.strip_comb();
        if let (Some((c, _)), 2) = (head.dest_const(), args.len()) {
            if let Some(&(sym, _, p, assoc)) = INFIX.iter().find(|(_, name, ..)| *name == &**c) {
                if !self.polymorphic(c) {
                    let (lp, rp) = match assoc {
                        Assoc::Left => (p, p + 1),
                        Assoc::Right => (p + 1, p),
                        Assoc::Non => (p + 1, p + 1),
                    };
                    let paren = prec > p;
                    self.open(paren);
                    self.term(args[0], lp);
                    let _ = write!(self.out, " {sym} ");
                    self.term(args[1], rp);
                    self.close(paren);
                    return;
                }
            }
        }
        let paren = prec > APP_PREC;
        self.open(paren);
        self.term(f, APP_PREC);
        self.out.push(' ');
        self.term(x, ATOM_PREC);
        self.close(paren);
    }

    fn sequent(&mut self, seq: &Sequent) {
        for (i, h) in seq.hyps.iter().enumerate() {
            if i > 0 {
                self.out.push_str(", ");
            }
            self.term(h, 0);
        }
        if !seq.hyps.is_empty() {
            self.out.push(' ');
        }
        self.out.push_str("|- ");
        self.term(&seq.prop, 0);
    }

    fn instantiation(&mut self, tyinst: &TypeInstantiation, inst: &TermInstantiation) {
        self.out.push('{');
        let mut first = true;
        for (v, ty) in &tyinst.0 {
            if !first {
                self.out.push_str(", ");
            }
            first = false;
            let _ = write!(self.out, "'{v} := ");
            write_type(ty, 0, &mut self.out);
        }
        for (v, t) in &inst.0 {
            if !first {
                self.out.push_str(", ");
            }
            first = false;
            let _ = write!(self.out, "{v} := ");
            self.term(t, 0);
        }
        self.out.push('}');
    }
}

/// Printing that guarantees the output reads back to the same value under
/// the given signature and context. The plainest rendering that survives
/// a re-parse is chosen; type ascriptions are added only when inference
/// would otherwise fail or pick a different type.
pub struct Printer<'a> {
    sig: &'a Signature,
    ctx: Option<&'a VarContext>,
}

const MODES: [Mode; 3] = [Mode::Plain, Mode::Annotate, Mode::Full];

impl<'a> Printer<'a> {
    pub fn new(sig: &'a Signature) -> Self {
        Printer { sig, ctx: None }
    }

    pub fn with_ctx(mut self, ctx: &'a VarContext) -> Self {
        self.ctx = Some(ctx);
        self
    }

    fn empty_ctx() -> &'static VarContext {
        static EMPTY: std::sync::OnceLock<VarContext> = std::sync::OnceLock::new();
        EMPTY.get_or_init(VarContext::new)
    }

    fn ctx(&self) -> &VarContext {
        self.ctx.unwrap_or_else(|| Self::empty_ctx())
    }

    fn first_that_reads_back<T: PartialEq>(
        &self,
        names: BTreeSet<Name>,
        what: &dyn Fn() -> String,
        render: &dyn Fn(&mut Writer),
        reparse: &dyn Fn(&str) -> Result<T, ParseError>,
        expected: &T,
    ) -> Result<String, ParseError> {
        for mode in MODES {
            let mut w = Writer::new(mode, Some(self.sig), self.ctx, names.clone());
            render(&mut w);
            if reparse(&w.out).is_ok_and(|back| back == *expected) {
                return Ok(w.out);
            }
        }
        Err(ParseError::Unprintable(what()))
    }

    pub fn term(&self, t: &Term) -> Result<String, ParseError> {
        self.first_that_reads_back(
            t.names(),
            &|| print_term(t),
            &|w| w.term(t, 0),
            &|s| parser::parse_term(s, self.ctx(), self.sig),
            t,
        )
    }

    pub fn sequent(&self, seq: &Sequent) -> Result<String, ParseError> {
        self.first_that_reads_back(
            sequent_names(seq),
            &|| print_sequent(seq),
            &|w| w.sequent(seq),
            &|s| parser::parse_sequent(s, self.ctx(), self.sig),
            seq,
        )
    }

    pub fn instantiation(&self, tyinst: &TypeInstantiation, inst: &TermInstantiation) -> Result<String, ParseError> {
        let svar_type = |n: &str| inst.get(n).and_then(|t| t.ty().ok());
        let expected = (tyinst.clone(), inst.clone());
        self.first_that_reads_back(
            inst.0.values().flat_map(Term::names).collect(),
            &|| print_instantiation(tyinst, inst),
            &|w| w.instantiation(tyinst, inst),
            &|s| parser::parse_instantiation(s, self.ctx(), self.sig, &svar_type),
            &expected,
        )
    }
}
