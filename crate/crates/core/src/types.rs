//! Simple types of the language: functional (σ), predicate (π) and argument
//! (ρ) types over the base types ι (individuals) and o (truth values).

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Iota,
    O,
    Arrow(Box<Type>, Box<Type>),
}

impl Type {
    pub fn arrow(arg: Type, result: Type) -> Type {
        Type::Arrow(Box::new(arg), Box::new(result))
    }

    /// `ρ1 → … → ρn → o`.
    pub fn predicate(args: impl IntoIterator<Item = Type>) -> Type {
        let args: Vec<Type> = args.into_iter().collect();
        args.into_iter()
            .rev()
            .fold(Type::O, |acc, a| Type::arrow(a, acc))
    }

    /// `ι^n → ι` (just `ι` when `n = 0`).
    pub fn function(arity: usize) -> Type {
        (0..arity).fold(Type::Iota, |acc, _| Type::arrow(Type::Iota, acc))
    }

    /// `σ ::= ι | ι → σ`.
    pub fn is_functional(&self) -> bool {
        match self {
            Type::Iota => true,
            Type::O => false,
            Type::Arrow(a, r) => **a == Type::Iota && r.is_functional(),
        }
    }

    /// `π ::= o | ρ → π`.
    pub fn is_predicate(&self) -> bool {
        match self {
            Type::O => true,
            Type::Iota => false,
            Type::Arrow(a, r) => a.is_argument() && r.is_predicate(),
        }
    }

    /// `ρ ::= ι | π`.
    pub fn is_argument(&self) -> bool {
        *self == Type::Iota || self.is_predicate()
    }

    pub fn is_well_formed(&self) -> bool {
        self.is_functional() || self.is_predicate()
    }

    /// Splits a predicate type into its unique `ρ1 … ρn` prefix.
    pub fn predicate_args(&self) -> Option<Vec<&Type>> {
        if !self.is_predicate() {
            return None;
        }
        let mut args = Vec::new();
        let mut t = self;
        while let Type::Arrow(a, r) = t {
            args.push(a.as_ref());
            t = r;
        }
        Some(args)
    }

    /// Arity of a functional type `ι^n → ι`.
    pub fn function_arity(&self) -> Option<usize> {
        if !self.is_functional() {
            return None;
        }
        let mut n = 0;
        let mut t = self;
        while let Type::Arrow(_, r) = t {
            n += 1;
            t = r;
        }
        Some(n)
    }

    /// Types whose denotation can be enumerated over a finite universe:
    /// `ι`, `o`, and `ι^n → o`.
    pub fn is_enumerable(&self) -> bool {
        match self {
            Type::Iota | Type::O => true,
            Type::Arrow(..) => self
                .predicate_args()
                .is_some_and(|args| args.iter().all(|a| **a == Type::Iota)),
        }
    }

    /// Predicate types with at least one predicate-typed argument.
    pub fn is_higher_order(&self) -> bool {
        self.predicate_args()
            .is_some_and(|args| args.iter().any(|a| **a != Type::Iota))
    }

    /// Identifier-safe encoding, used to name per-type library predicates.
    pub fn mangle(&self) -> String {
        match self {
            Type::Iota => "i".into(),
            Type::O => "o".into(),
            Type::Arrow(a, r) => {
                let left = match **a {
                    Type::Arrow(..) => format!("x{}y", a.mangle()),
                    _ => a.mangle(),
                };
                format!("{left}_{}", r.mangle())
            }
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Iota => f.write_str("i"),
            Type::O => f.write_str("o"),
            Type::Arrow(a, r) => match **a {
                Type::Arrow(..) => write!(f, "({a}) -> {r}"),
                _ => write!(f, "{a} -> {r}"),
            },
        }
    }
}
