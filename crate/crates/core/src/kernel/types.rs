use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Interned-ish identifier shared by types and terms.
pub type Name = Arc<str>;

/// Simple type: a type variable or a constructor applied to arguments.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HolType(Arc<TypeKind>);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeKind {
    Var(Name),
    App(Name, Vec<HolType>),
}

pub const FUN: &str = "fun";
pub const BOOL: &str = "bool";

impl HolType {
    pub fn var(name: impl Into<Name>) -> Self {
        HolType(Arc::new(TypeKind::Var(name.into())))
    }

    pub fn app(cons: impl Into<Name>, args: Vec<HolType>) -> Self {
        HolType(Arc::new(TypeKind::App(cons.into(), args)))
    }

    pub fn base(cons: impl Into<Name>) -> Self {
        Self::app(cons, Vec::new())
    }

    pub fn bool() -> Self {
        Self::base(BOOL)
    }

    pub fn fun(dom: HolType, cod: HolType) -> Self {
        Self::app(FUN, vec![dom, cod])
    }

    /// `fun(a1, fun(a2, ... result))`
    pub fn fun_n(args: impl IntoIterator<Item = HolType>, result: HolType) -> Self {
        let args: Vec<_> = args.into_iter().collect();
        args.into_iter().rev().fold(result, |acc, a| HolType::fun(a, acc))
    }

    pub fn kind(&self) -> &TypeKind {
        &self.0
    }

    pub fn is_var(&self) -> bool {
        matches!(*self.0, TypeKind::Var(_))
    }

    pub fn is_bool(&self) -> bool {
        matches!(&*self.0, TypeKind::App(c, args) if &**c == BOOL && args.is_empty())
    }

    pub fn is_fun(&self) -> bool {
        self.dest_fun().is_some()
    }

    pub fn dest_fun(&self) -> Option<(&HolType, &HolType)> {
        match &*self.0 {
            TypeKind::App(c, args) if &**c == FUN && args.len() == 2 => Some((&args[0], &args[1])),
            _ => None,
        }
    }

    /// Range type after stripping `n` arrows.
    pub fn strip_fun(&self, n: usize) -> Option<&HolType> {
        let mut ty = self;
        for _ in 0..n {
            ty = ty.dest_fun()?.1;
        }
        Some(ty)
    }

    pub fn ptr_eq(&self, other: &HolType) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn type_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<Name>) {
        match &*self.0 {
            TypeKind::Var(n) => {
                out.insert(n.clone());
            }
            TypeKind::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn has_vars(&self) -> bool {
        match &*self.0 {
            TypeKind::Var(_) => true,
            TypeKind::App(_, args) => args.iter().any(HolType::has_vars),
        }
    }
}

impl fmt::Debug for HolType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_type(self))
    }
}

impl fmt::Display for HolType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_type(self))
    }
}
