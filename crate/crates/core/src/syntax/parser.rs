use std::collections::HashMap;

use num_bigint::BigUint;

use super::lexer::{tokenize, Tok, Token};
use super::{ParseError, VarContext};
use crate::kernel::{
    HolType, Name, Sequent, Signature, Term, TermInstantiation, TypeInstantiation, TypeKind, ALL, EQUALS, IMPLIES,
};
use crate::numeral;

pub const CONJ: &str = "conj";
pub const DISJ: &str = "disj";
pub const NEG: &str = "neg";
pub const EXISTS: &str = "exists";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Assoc {
    Left,
    Right,
    Non,
}

/// Infix operators: token, constant name, precedence, associativity.
pub(crate) const INFIX: [(&str, &str, u32, Assoc); 6] = [
    ("-->", IMPLIES, 25, Assoc::Right),
    ("|", DISJ, 30, Assoc::Right),
    ("&", CONJ, 35, Assoc::Right),
    ("=", EQUALS, 50, Assoc::Non),
    ("+", numeral::PLUS, 65, Assoc::Left),
    ("*", numeral::TIMES, 70, Assoc::Left),
];

pub(crate) const NEG_PREC: u32 = 40;

fn infix_of(tok: &Tok) -> Option<(&'static str, &'static str, u32, Assoc)> {
    match tok {
        Tok::Sym(s) => INFIX.iter().find(|(t, ..)| t == s).copied(),
        _ => None,
    }
}

#[derive(Debug, Clone)]
enum IType {
    Var(usize),
    Named(Name),
    App(Name, Vec<IType>),
}

#[derive(Debug)]
enum Pre {
    Var(Name, IType, usize),
    SVar(Name, IType, usize),
    Const(Name, IType, usize),
    Bound(usize),
    App(Box<Pre>, Box<Pre>),
    Abs(Name, IType, Box<Pre>, usize),
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    sig: &'a Signature,
    ctx: &'a VarContext,
    subst: Vec<Option<IType>>,
    free: HashMap<Name, IType>,
    svars: HashMap<Name, IType>,
    bound: Vec<(Name, IType)>,
}

type Typed = (Pre, IType);

impl<'a> Parser<'a> {
    fn new(src: &str, sig: &'a Signature, ctx: &'a VarContext) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
            sig,
            ctx,
            subst: Vec::new(),
            free: HashMap::new(),
            svars: HashMap::new(),
            bound: Vec::new(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn here(&self) -> usize {
        self.toks[self.pos].pos
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{s}`")))
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let found = match self.peek() {
            Tok::Ident(s) | Tok::Num(s) => format!("`{s}`"),
            Tok::TyVar(s) => format!("`'{s}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".to_string(),
        };
        ParseError::syntax(self.here(), format!("expected {expected}, found {found}"))
    }

    fn expect_ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.advance();
                Ok(s)
            }
            _ => Err(self.unexpected("identifier")),
        }
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    // ---- types ----

    fn parse_type(&mut self) -> Result<HolType, ParseError> {
        let dom = self.parse_type_postfix()?;
        if self.eat_sym("=>") {
            let cod = self.parse_type()?;
            Ok(HolType::fun(dom, cod))
        } else {
            Ok(dom)
        }
    }

    fn parse_type_postfix(&mut self) -> Result<HolType, ParseError> {
        let start = self.here();
        let mut args = match self.peek().clone() {
            Tok::TyVar(v) => {
                self.advance();
                vec![HolType::var(v)]
            }
            Tok::Ident(c) => {
                self.advance();
                vec![self.type_app(&c, Vec::new(), start)?]
            }
            Tok::Sym("(") => {
                self.advance();
                let mut list = vec![self.parse_type()?];
                while self.eat_sym(",") {
                    list.push(self.parse_type()?);
                }
                self.expect_sym(")")?;
                list
            }
            _ => return Err(self.unexpected("type")),
        };
        while let Tok::Ident(c) = self.peek().clone() {
            let pos = self.here();
            self.advance();
            args = vec![self.type_app(&c, args, pos)?];
        }
        if args.len() != 1 {
            return Err(ParseError::syntax(start, "expected type constructor after parenthesized type list"));
        }
        Ok(args.pop().unwrap())
    }

    fn type_app(&self, c: &str, args: Vec<HolType>, pos: usize) -> Result<HolType, ParseError> {
        match self.sig.type_arity(c) {
            Some(a) if a == args.len() => Ok(HolType::app(c, args)),
            Some(a) => Err(ParseError::syntax(
                pos,
                format!("type constructor `{c}` takes {a} arguments, given {}", args.len()),
            )),
            None => Err(ParseError::syntax(pos, format!("unknown type constructor `{c}`"))),
        }
    }

    // ---- inference ----

    fn fresh(&mut self) -> IType {
        self.subst.push(None);
        IType::Var(self.subst.len() - 1)
    }

    fn from_hol(ty: &HolType) -> IType {
        match ty.kind() {
            TypeKind::Var(n) => IType::Named(n.clone()),
            TypeKind::App(c, args) => IType::App(c.clone(), args.iter().map(Self::from_hol).collect()),
        }
    }

    /// Declared constant type with its type variables replaced by fresh
    /// inference variables.
    fn instance(&mut self, ty: &HolType) -> IType {
        let mut map: HashMap<Name, IType> = HashMap::new();
        self.instance_rec(ty, &mut map)
    }

    fn instance_rec(&mut self, ty: &HolType, map: &mut HashMap<Name, IType>) -> IType {
        match ty.kind() {
            TypeKind::Var(n) => {
                if let Some(t) = map.get(n) {
                    return t.clone();
                }
                let v = self.fresh();
                map.insert(n.clone(), v.clone());
                v
            }
            TypeKind::App(c, args) => IType::App(c.clone(), args.iter().map(|a| self.instance_rec(a, map)).collect()),
        }
    }

    fn shallow(&self, t: &IType) -> IType {
        let mut t = t.clone();
        while let IType::Var(v) = t {
            match &self.subst[v] {
                Some(next) => t = next.clone(),
                None => break,
            }
        }
        t
    }

    fn occurs(&self, v: usize, t: &IType) -> bool {
        match self.shallow(t) {
            IType::Var(w) => v == w,
            IType::Named(_) => false,
            IType::App(_, args) => args.iter().any(|a| self.occurs(v, a)),
        }
    }

    fn unify(&mut self, a: &IType, b: &IType, pos: usize) -> Result<(), ParseError> {
        let (a, b) = (self.shallow(a), self.shallow(b));
        match (&a, &b) {
            (IType::Var(x), IType::Var(y)) if x == y => Ok(()),
            (IType::Var(x), other) | (other, IType::Var(x)) => {
                if self.occurs(*x, other) {
                    return Err(ParseError::inference(pos, "cyclic type constraint"));
                }
                self.subst[*x] = Some(other.clone());
                Ok(())
            }
            (IType::Named(x), IType::Named(y)) if x == y => Ok(()),
            (IType::App(c1, a1), IType::App(c2, a2)) if c1 == c2 && a1.len() == a2.len() => {
                for (x, y) in a1.iter().zip(a2) {
                    self.unify(x, y, pos)?;
                }
                Ok(())
            }
            _ => Err(ParseError::inference(
                pos,
                format!("cannot unify {} with {}", self.show(&a), self.show(&b)),
            )),
        }
    }

    fn show(&self, t: &IType) -> String {
        match self.shallow(t) {
            IType::Var(v) => format!("?t{v}"),
            IType::Named(n) => format!("'{n}"),
            IType::App(c, args) if args.is_empty() => c.to_string(),
            IType::App(c, args) if &*c == crate::kernel::FUN && args.len() == 2 => {
                format!("({} => {})", self.show(&args[0]), self.show(&args[1]))
            }
            IType::App(c, args) => {
                let parts: Vec<_> = args.iter().map(|a| self.show(a)).collect();
                format!("({}) {c}", parts.join(", "))
            }
        }
    }

    fn resolve(&self, t: &IType, pos: usize, what: &str) -> Result<HolType, ParseError> {
        match self.shallow(t) {
            IType::Var(_) => Err(ParseError::inference(pos, format!("ambiguous type for {what}"))),
            IType::Named(n) => Ok(HolType::var(n)),
            IType::App(c, args) => Ok(HolType::app(
                c,
                args.iter().map(|a| self.resolve(a, pos, what)).collect::<Result<_, _>>()?,
            )),
        }
    }

    fn fun(a: IType, b: IType) -> IType {
        IType::App(crate::kernel::FUN.into(), vec![a, b])
    }

    fn bool_ty() -> IType {
        IType::App(crate::kernel::BOOL.into(), Vec::new())
    }

    fn mk_app(&mut self, f: Typed, x: Typed, pos: usize) -> Result<Typed, ParseError> {
        let res = self.fresh();
        self.unify(&f.1, &Self::fun(x.1, res.clone()), pos)?;
        Ok((Pre::App(Box::new(f.0), Box::new(x.0)), res))
    }

    fn constant(&mut self, name: &str, pos: usize) -> Result<Typed, ParseError> {
        let decl = self
            .sig
            .const_type(name)
            .ok_or_else(|| ParseError::syntax(pos, format!("unknown constant `{name}`")))?
            .clone();
        let ty = self.instance(&decl);
        Ok((Pre::Const(name.into(), ty.clone(), pos), ty))
    }

    // ---- terms ----

    fn parse_expr(&mut self, min: u32) -> Result<Typed, ParseError> {
        let mut lhs = self.parse_prefix()?;
        while let Some((_, cname, prec, assoc)) = infix_of(self.peek()) {
            if prec < min {
                break;
            }
            let pos = self.here();
            self.advance();
            let rhs_min = match assoc {
                Assoc::Right => prec,
                Assoc::Left | Assoc::Non => prec + 1,
            };
            let rhs = self.parse_expr(rhs_min)?;
            let op = self.constant(cname, pos)?;
            let partial = self.mk_app(op, lhs, pos)?;
            lhs = self.mk_app(partial, rhs, pos)?;
            if assoc == Assoc::Non {
                if let Some((tok, _, p2, _)) = infix_of(self.peek()) {
                    if p2 == prec {
                        return Err(ParseError::syntax(
                            self.here(),
                            format!("`{tok}` is not associative; add parentheses"),
                        ));
                    }
                }
            }
        }
        Ok(lhs)
    }

    fn is_exists_binder(&self) -> bool {
        if !matches!(self.peek_at(1), Tok::Ident(_)) {
            return false;
        }
        match self.peek_at(2) {
            Tok::Sym(".") => true,
            Tok::Sym("::") => {
                let mut depth = 0usize;
                let mut k = 3;
                loop {
                    match self.peek_at(k) {
                        Tok::Ident(_) | Tok::TyVar(_) | Tok::Sym("=>") | Tok::Sym(",") => {}
                        Tok::Sym("(") => depth += 1,
                        Tok::Sym(")") if depth == 0 => return false,
                        Tok::Sym(")") => depth -= 1,
                        Tok::Sym(".") => return depth == 0,
                        _ => return false,
                    }
                    k += 1;
                }
            }
            _ => false,
        }
    }

    fn parse_prefix(&mut self) -> Result<Typed, ParseError> {
        let pos = self.here();
        if self.is_sym("%") || self.is_sym("!") || (self.is_sym("?") && self.is_exists_binder()) {
            let binder = match self.advance() {
                Tok::Sym(s) => s,
                _ => unreachable!(),
            };
            let name = self.expect_ident()?;
            let ty = if self.eat_sym("::") {
                Self::from_hol(&self.parse_type()?)
            } else {
                self.fresh()
            };
            self.expect_sym(".")?;
            self.bound.push((name.as_str().into(), ty.clone()));
            let body = self.parse_expr(0);
            self.bound.pop();
            let body = body?;
            let abs_ty = Self::fun(ty.clone(), body.1.clone());
            let abs = (Pre::Abs(name.as_str().into(), ty, Box::new(body.0), pos), abs_ty);
            return match binder {
                "%" => Ok(abs),
                "!" | "?" => {
                    let q = if binder == "!" { ALL } else { EXISTS };
                    self.unify(&body_ty(&abs.1), &Self::bool_ty(), pos)?;
                    let c = self.constant(q, pos)?;
                    self.mk_app(c, abs, pos)
                }
                _ => unreachable!(),
            };
        }
        if self.eat_sym("~") {
            let arg = self.parse_expr(NEG_PREC + 1)?;
            let c = self.constant(NEG, pos)?;
            return self.mk_app(c, arg, pos);
        }
        self.parse_application()
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Ident(_) | Tok::Num(_) | Tok::Sym("(") => true,
            Tok::Sym("?") => !self.is_exists_binder(),
            _ => false,
        }
    }

    fn parse_application(&mut self) -> Result<Typed, ParseError> {
        if !self.starts_atom() {
            return Err(self.unexpected("term"));
        }
        let mut f = self.parse_atom()?;
        while self.starts_atom() {
            let pos = self.here();
            let x = self.parse_atom()?;
            f = self.mk_app(f, x, pos)?;
        }
        Ok(f)
    }

    fn parse_atom(&mut self) -> Result<Typed, ParseError> {
        let pos = self.here();
        match self.advance() {
            Tok::Ident(name) => self.identifier(&name, pos),
            Tok::Num(digits) => self.numeral(&digits, pos),
            Tok::Sym("?") => {
                let name: Name = self.expect_ident()?.as_str().into();
                let ty = match self.svars.get(&name) {
                    Some(t) => t.clone(),
                    None => {
                        let t = self.fresh();
                        self.svars.insert(name.clone(), t.clone());
                        t
                    }
                };
                Ok((Pre::SVar(name, ty.clone(), pos), ty))
            }
            Tok::Sym("(") => {
                let inner = self.parse_expr(0)?;
                if self.eat_sym("::") {
                    let ty = Self::from_hol(&self.parse_type()?);
                    self.unify(&inner.1, &ty, pos)?;
                }
                self.expect_sym(")")?;
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected("term"))
            }
        }
    }

    fn identifier(&mut self, name: &str, pos: usize) -> Result<Typed, ParseError> {
        if let Some(i) = self.bound.iter().rposition(|(n, _)| &**n == name) {
            let idx = self.bound.len() - 1 - i;
            return Ok((Pre::Bound(idx), self.bound[i].1.clone()));
        }
        if let Some(ty) = self.ctx.get(name) {
            let ty = Self::from_hol(ty);
            return Ok((Pre::Var(name.into(), ty.clone(), pos), ty));
        }
        if self.sig.has_const(name) {
            return self.constant(name, pos);
        }
        let key: Name = name.into();
        let ty = match self.free.get(&key) {
            Some(t) => t.clone(),
            None => {
                let t = self.fresh();
                self.free.insert(key.clone(), t.clone());
                t
            }
        };
        Ok((Pre::Var(key, ty.clone(), pos), ty))
    }

    fn numeral(&mut self, digits: &str, pos: usize) -> Result<Typed, ParseError> {
        for c in [numeral::ZERO, numeral::ONE, numeral::BIT0, numeral::BIT1] {
            if !self.sig.has_const(c) {
                return Err(ParseError::syntax(pos, format!("numerals need the constant `{c}`")));
            }
        }
        let n: BigUint = digits.parse().map_err(|_| ParseError::syntax(pos, "invalid numeral"))?;
        let t = numeral::mk_numeral(&n);
        Ok((Self::pre_of_closed(&t, pos), Self::from_hol(&numeral::nat_ty())))
    }

    /// Embeds a closed, fully typed term.
    fn pre_of_closed(t: &Term, pos: usize) -> Pre {
        use crate::kernel::TermKind as K;
        match t.kind() {
            K::Var(n, ty) => Pre::Var(n.clone(), Self::from_hol(ty), pos),
            K::SVar(n, ty) => Pre::SVar(n.clone(), Self::from_hol(ty), pos),
            K::Const(n, ty) => Pre::Const(n.clone(), Self::from_hol(ty), pos),
            K::Bound(i) => Pre::Bound(*i),
            K::App(f, x) => Pre::App(
                Box::new(Self::pre_of_closed(f, pos)),
                Box::new(Self::pre_of_closed(x, pos)),
            ),
            K::Abs(n, ty, b) => Pre::Abs(n.clone(), Self::from_hol(ty), Box::new(Self::pre_of_closed(b, pos)), pos),
        }
    }

    fn finalize(&self, pre: &Pre) -> Result<Term, ParseError> {
        Ok(match pre {
            Pre::Var(n, ty, pos) => Term::var(n.clone(), self.resolve(ty, *pos, &format!("`{n}`"))?),
            Pre::SVar(n, ty, pos) => Term::svar(n.clone(), self.resolve(ty, *pos, &format!("`?{n}`"))?),
            Pre::Const(n, ty, pos) => Term::constant(n.clone(), self.resolve(ty, *pos, &format!("`{n}`"))?),
            Pre::Bound(i) => Term::bound(*i),
            Pre::App(f, x) => Term::app(self.finalize(f)?, self.finalize(x)?),
            Pre::Abs(n, ty, b, pos) => Term::abs(
                n.clone(),
                self.resolve(ty, *pos, &format!("bound variable `{n}`"))?,
                self.finalize(b)?,
            ),
        })
    }

    fn term_expecting(&mut self, expected: Option<&HolType>) -> Result<Pre, ParseError> {
        let pos = self.here();
        let (pre, ty) = self.parse_expr(0)?;
        if let Some(e) = expected {
            let e = Self::from_hol(e);
            self.unify(&ty, &e, pos)?;
        }
        Ok(pre)
    }
}

fn body_ty(abs_ty: &IType) -> IType {
    match abs_ty {
        IType::App(_, args) => args[1].clone(),
        _ => unreachable!("abstraction type is a function type"),
    }
}

pub fn parse_type(s: &str, sig: &Signature) -> Result<HolType, ParseError> {
    let ctx = VarContext::new();
    let mut p = Parser::new(s, sig, &ctx)?;
    let ty = p.parse_type()?;
    p.expect_eof()?;
    Ok(ty)
}

pub fn parse_term(s: &str, ctx: &VarContext, sig: &Signature) -> Result<Term, ParseError> {
    parse_term_typed(s, ctx, sig, None)
}

/// Parses a term, optionally constraining its type.
pub fn parse_term_typed(
    s: &str,
    ctx: &VarContext,
    sig: &Signature,
    expected: Option<&HolType>,
) -> Result<Term, ParseError> {
    let mut p = Parser::new(s, sig, ctx)?;
    let pre = p.term_expecting(expected)?;
    p.expect_eof()?;
    p.finalize(&pre)
}

/// Parses a boolean term.
pub fn parse_prop(s: &str, ctx: &VarContext, sig: &Signature) -> Result<Term, ParseError> {
    parse_term_typed(s, ctx, sig, Some(&HolType::bool()))
}

/// `A1, ..., An |- C`; all parts share one inference context.
pub fn parse_sequent(s: &str, ctx: &VarContext, sig: &Signature) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(s, sig, ctx)?;
    let b = HolType::bool();
    let mut hyps = Vec::new();
    if !p.eat_sym("|-") {
        loop {
            hyps.push(p.term_expecting(Some(&b))?);
            if p.eat_sym(",") {
                continue;
            }
            p.expect_sym("|-")?;
            break;
        }
    }
    let prop = p.term_expecting(Some(&b))?;
    p.expect_eof()?;
    let hyps = hyps.iter().map(|h| p.finalize(h)).collect::<Result<Vec<_>, _>>()?;
    Ok(Sequent::new(hyps, p.finalize(&prop)?))
}

/// `{'a := T, A := t, ...}`. Keys with a quote are type variables; others
/// (optionally written `?A`) are schematic variables whose expected type is
/// supplied by `svar_type`.
pub fn parse_instantiation(
    s: &str,
    ctx: &VarContext,
    sig: &Signature,
    svar_type: &dyn Fn(&str) -> Option<HolType>,
) -> Result<(TypeInstantiation, TermInstantiation), ParseError> {
    let mut p = Parser::new(s, sig, ctx)?;
    let mut tyinst = TypeInstantiation::new();
    let mut terms = Vec::new();
    p.expect_sym("{")?;
    if !p.eat_sym("}") {
        loop {
            match p.peek().clone() {
                Tok::TyVar(v) => {
                    p.advance();
                    p.expect_sym(":=")?;
                    let ty = p.parse_type()?;
                    tyinst.insert(v.as_str(), ty);
                }
                _ => {
                    p.eat_sym("?");
                    let name = p.expect_ident()?;
                    p.expect_sym(":=")?;
                    let expected = svar_type(&name);
                    let pre = p.term_expecting(expected.as_ref())?;
                    terms.push((name, pre));
                }
            }
            if p.eat_sym(",") {
                continue;
            }
            p.expect_sym("}")?;
            break;
        }
    }
    p.expect_eof()?;
    let mut inst = TermInstantiation::new();
    for (name, pre) in &terms {
        inst.insert(name.as_str(), p.finalize(pre)?);
    }
    Ok((tyinst, inst))
}
