use indexmap::IndexMap;

use super::Span;
use crate::types::Type;

/// A λ- or ∃-bound argument variable with its type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Binder {
    pub name: String,
    pub ty: Type,
}

impl Binder {
    pub fn new(name: impl Into<String>, ty: Type) -> Self {
        Binder {
            name: name.into(),
            ty,
        }
    }
}

/// Untyped core expressions.
///
/// Names are resolved against the program signature: `Const` covers both
/// individual and predicate constants, and function symbols only occur
/// fully applied inside `FunApp`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    True,
    False,
    Var(String),
    Const(String),
    FunApp(String, Vec<Expr>),
    App(Box<Expr>, Box<Expr>),
    Lambda(Binder, Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
    Eq(Box<Expr>, Box<Expr>),
    Exists(Binder, Box<Expr>),
}

impl Expr {
    pub fn var(name: impl Into<String>) -> Self {
        Expr::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Expr::Const(name.into())
    }

    pub fn app(f: Expr, arg: Expr) -> Self {
        Expr::App(Box::new(f), Box::new(arg))
    }

    /// `f a1 ... an`.
    pub fn apply(f: Expr, args: impl IntoIterator<Item = Expr>) -> Self {
        args.into_iter().fold(f, Expr::app)
    }

    pub fn lambda(b: Binder, body: Expr) -> Self {
        Expr::Lambda(b, Box::new(body))
    }

    pub fn exists(b: Binder, body: Expr) -> Self {
        Expr::Exists(b, Box::new(body))
    }

    pub fn and(a: Expr, b: Expr) -> Self {
        Expr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Expr, b: Expr) -> Self {
        Expr::Or(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Self {
        Expr::Not(Box::new(e))
    }

    pub fn eq(a: Expr, b: Expr) -> Self {
        Expr::Eq(Box::new(a), Box::new(b))
    }

    /// Left-nested conjunction; `true` when empty.
    pub fn conj(parts: impl IntoIterator<Item = Expr>) -> Self {
        parts.into_iter().reduce(Expr::and).unwrap_or(Expr::True)
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        fn go(e: &Expr, bound: &mut Vec<String>, out: &mut Vec<String>) {
            match e {
                Expr::True | Expr::False | Expr::Const(_) => {}
                Expr::Var(v) => {
                    if !bound.contains(v) && !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                Expr::FunApp(_, args) => args.iter().for_each(|a| go(a, bound, out)),
                Expr::App(a, b) | Expr::And(a, b) | Expr::Or(a, b) | Expr::Eq(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Expr::Not(a) => go(a, bound, out),
                Expr::Lambda(bd, body) | Expr::Exists(bd, body) => {
                    bound.push(bd.name.clone());
                    go(body, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Names of all constants (individual or predicate) mentioned.
    pub fn constants(&self, out: &mut Vec<String>) {
        match self {
            Expr::True | Expr::False | Expr::Var(_) => {}
            Expr::Const(c) => {
                if !out.contains(c) {
                    out.push(c.clone());
                }
            }
            Expr::FunApp(_, args) => args.iter().for_each(|a| a.constants(out)),
            Expr::App(a, b) | Expr::And(a, b) | Expr::Or(a, b) | Expr::Eq(a, b) => {
                a.constants(out);
                b.constants(out);
            }
            Expr::Not(a) => a.constants(out),
            Expr::Lambda(_, body) | Expr::Exists(_, body) => body.constants(out),
        }
    }
}

/// Declared names of a program.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    /// Individual constants, in declaration order.
    pub constants: Vec<String>,
    pub functions: IndexMap<String, Type>,
    pub predicates: IndexMap<String, Type>,
}

impl Signature {
    pub fn is_predicate(&self, name: &str) -> bool {
        self.predicates.contains_key(name)
    }

    pub fn is_function(&self, name: &str) -> bool {
        self.functions.contains_key(name)
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.constants.iter().any(|c| c == name)
    }
}

/// A program clause `head <- body`. Equality ignores the source span.
#[derive(Debug, Clone)]
pub struct Clause {
    pub head: String,
    pub body: Expr,
    /// Location of the clause in its source, when parsed from text.
    pub span: Option<Span>,
}

impl PartialEq for Clause {
    fn eq(&self, other: &Self) -> bool {
        self.head == other.head && self.body == other.body
    }
}

impl Eq for Clause {}

impl Clause {
    pub fn new(head: impl Into<String>, body: Expr) -> Self {
        Clause {
            head: head.into(),
            body,
            span: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Program {
    pub signature: Signature,
    pub clauses: Vec<Clause>,
}

impl Program {
    pub fn clauses_for<'a>(&'a self, pred: &'a str) -> impl Iterator<Item = &'a Clause> + 'a {
        self.clauses.iter().filter(move |c| c.head == pred)
    }
}
