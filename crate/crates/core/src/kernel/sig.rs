use std::collections::BTreeMap;

use super::error::KernelError;
use super::inst::TypeInstantiation;
use super::term::{Term, TermKind, ALL, EQUALS, IMPLIES};
use super::types::{HolType, Name, TypeKind, BOOL, FUN};

/// Declared type constructors (with arity) and constants (with their most
/// general type).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    types: BTreeMap<Name, usize>,
    consts: BTreeMap<Name, HolType>,
}

impl Default for Signature {
    fn default() -> Self {
        Self::base()
    }
}

impl Signature {
    /// The primitive signature every theory starts from: `bool`, `fun`,
    /// equality, implication and universal quantification.
    pub fn base() -> Self {
        let a = HolType::var("a");
        let bool_ = HolType::bool();
        let mut sig = Signature {
            types: BTreeMap::new(),
            consts: BTreeMap::new(),
        };
        sig.types.insert(BOOL.into(), 0);
        sig.types.insert(FUN.into(), 2);
        sig.consts.insert(
            EQUALS.into(),
            HolType::fun_n([a.clone(), a.clone()], bool_.clone()),
        );
        sig.consts.insert(
            IMPLIES.into(),
            HolType::fun_n([bool_.clone(), bool_.clone()], bool_.clone()),
        );
        sig.consts.insert(ALL.into(), HolType::fun(HolType::fun(a, bool_.clone()), bool_));
        sig
    }

    pub fn add_type(&mut self, name: &str, arity: usize) -> Result<(), KernelError> {
        match self.types.get(name) {
            Some(&prev) if prev == arity => Ok(()),
            Some(&prev) => Err(KernelError::ArityMismatch {
                name: name.to_string(),
                expected: prev,
                got: arity,
            }),
            None => {
                self.types.insert(name.into(), arity);
                Ok(())
            }
        }
    }

    pub fn add_const(&mut self, name: &str, ty: HolType) -> Result<(), KernelError> {
        self.check_type(&ty)?;
        match self.consts.get(name) {
            Some(prev) if *prev == ty => Ok(()),
            Some(prev) => Err(KernelError::type_error(format!(
                "constant `{name}` already declared with type {prev}"
            ))),
            None => {
                self.consts.insert(name.into(), ty);
                Ok(())
            }
        }
    }

    /// Union of two signatures; conflicting declarations are errors.
    pub fn merge(&mut self, other: &Signature) -> Result<(), KernelError> {
        for (n, &a) in &other.types {
            self.add_type(n, a)?;
        }
        for (n, ty) in &other.consts {
            self.add_const(n, ty.clone())?;
        }
        Ok(())
    }

    pub fn type_arity(&self, name: &str) -> Option<usize> {
        self.types.get(name).copied()
    }

    pub fn const_type(&self, name: &str) -> Option<&HolType> {
        self.consts.get(name)
    }

    pub fn has_const(&self, name: &str) -> bool {
        self.consts.contains_key(name)
    }

    /// True if the declared type of `name` mentions type variables.
    pub fn is_polymorphic(&self, name: &str) -> bool {
        self.consts.get(name).is_some_and(HolType::has_vars)
    }

    pub fn constants(&self) -> impl Iterator<Item = (&Name, &HolType)> {
        self.consts.iter()
    }

    pub fn type_constructors(&self) -> impl Iterator<Item = (&Name, usize)> {
        self.types.iter().map(|(n, a)| (n, *a))
    }

    /// Every constructor is declared and applied to the right number of
    /// arguments.
    pub fn check_type(&self, ty: &HolType) -> Result<(), KernelError> {
        match ty.kind() {
            TypeKind::Var(_) => Ok(()),
            TypeKind::App(c, args) => {
                let arity = self
                    .types
                    .get(c)
                    .ok_or_else(|| KernelError::UnknownTypeConstructor(c.to_string()))?;
                if *arity != args.len() {
                    return Err(KernelError::ArityMismatch {
                        name: c.to_string(),
                        expected: *arity,
                        got: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check_type(a))
            }
        }
    }
}

/// Type of `t` under `sig`: constants must be declared and used at an
/// instance of their declared type, bound indices must be in range.
pub fn type_of(t: &Term, sig: &Signature) -> Result<HolType, KernelError> {
    let mut env = Vec::new();
    let mut path = Vec::new();
    type_of_rec(t, sig, &mut env, &mut path)
}

fn path_str(path: &[u8]) -> String {
    if path.is_empty() {
        "at root".to_string()
    } else {
        let p: Vec<String> = path.iter().map(|c| (*c as char).to_string()).collect();
        format!("at {}", p.join("."))
    }
}

// path letters: f = function part, x = argument, b = abstraction body
fn type_of_rec(
    t: &Term,
    sig: &Signature,
    env: &mut Vec<HolType>,
    path: &mut Vec<u8>,
) -> Result<HolType, KernelError> {
    match t.kind() {
        TermKind::Var(_, ty) | TermKind::SVar(_, ty) => {
            sig.check_type(ty)?;
            Ok(ty.clone())
        }
        TermKind::Const(n, ty) => {
            let decl = sig
                .const_type(n)
                .ok_or_else(|| KernelError::UnknownConstant(n.to_string()))?;
            sig.check_type(ty)?;
            TypeInstantiation::new().match_type(decl, ty).map_err(|_| {
                KernelError::type_error(format!(
                    "constant `{n}` used at type {ty}, not an instance of {decl} ({})",
                    path_str(path)
                ))
            })?;
            Ok(ty.clone())
        }
        TermKind::Bound(i) => env.len().checked_sub(i + 1).map(|k| env[k].clone()).ok_or_else(|| {
            KernelError::type_error(format!("bound index {i} out of range ({})", path_str(path)))
        }),
        TermKind::App(f, x) => {
            path.push(b'f');
            let fty = type_of_rec(f, sig, env, path)?;
            path.pop();
            path.push(b'x');
            let xty = type_of_rec(x, sig, env, path)?;
            path.pop();
            match fty.dest_fun() {
                Some((dom, cod)) if *dom == xty => Ok(cod.clone()),
                Some((dom, _)) => Err(KernelError::type_error(format!(
                    "argument of type {xty} where {dom} expected ({})",
                    path_str(path)
                ))),
                None => Err(KernelError::type_error(format!(
                    "application of non-function of type {fty} ({})",
                    path_str(path)
                ))),
            }
        }
        TermKind::Abs(_, ty, body) => {
            sig.check_type(ty)?;
            env.push(ty.clone());
            path.push(b'b');
            let r = type_of_rec(body, sig, env, path);
            path.pop();
            env.pop();
            Ok(HolType::fun(ty.clone(), r?))
        }
    }
}
