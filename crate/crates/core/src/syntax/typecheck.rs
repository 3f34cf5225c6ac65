use std::fmt;

use super::ast::{Binder, Expr, Program, Signature};
use super::core::pretty_expr;
use super::Span;
use crate::types::Type;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("{}`{name}` has type {ty}, which is not a valid {kind} type", at(.span))]
    BadDeclaration {
        name: String,
        ty: Type,
        kind: &'static str,
        span: Option<Span>,
    },
    #[error("{}clause head `{name}` is not a declared predicate", at(.span))]
    UndeclaredPredicate { name: String, span: Option<Span> },
    #[error("{}unbound variable `{name}` in clause for `{head}`", at(.span))]
    UnboundVariable {
        name: String,
        head: String,
        span: Option<Span>,
    },
    #[error("{}in clause for `{head}`: `{node}` has type {found}, expected {expected}", at(.span))]
    Mismatch {
        head: String,
        node: String,
        expected: String,
        found: String,
        span: Option<Span>,
    },
    #[error("{}in clause for `{head}`: {message} in `{node}`", at(.span))]
    Malformed {
        head: String,
        node: String,
        message: String,
        span: Option<Span>,
    },
    #[error("{}`{name}` ranges over {ty}, which cannot be enumerated over a finite universe", at(.span))]
    NonEnumerable {
        name: String,
        ty: Type,
        span: Option<Span>,
    },
}

fn at(span: &Option<Span>) -> String {
    span.map(|s| format!("{s}: ")).unwrap_or_default()
}

/// A type-annotated expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TExpr {
    pub kind: TKind,
    pub ty: Type,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TKind {
    True,
    False,
    IndVar(String),
    PredVar(String),
    IndConst(String),
    PredConst(String),
    FunApp(String, Vec<TExpr>),
    App(Box<TExpr>, Box<TExpr>),
    Lambda(Binder, Box<TExpr>),
    And(Box<TExpr>, Box<TExpr>),
    Or(Box<TExpr>, Box<TExpr>),
    Not(Box<TExpr>),
    Eq(Box<TExpr>, Box<TExpr>),
    Exists(Binder, Box<TExpr>),
}

impl TExpr {
    /// Visits this node and all of its descendants, parents first.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a TExpr)) {
        f(self);
        match &self.kind {
            TKind::FunApp(_, args) => args.iter().for_each(|a| a.walk(f)),
            TKind::App(a, b) | TKind::And(a, b) | TKind::Or(a, b) | TKind::Eq(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            TKind::Not(a) | TKind::Lambda(_, a) | TKind::Exists(_, a) => a.walk(f),
            _ => {}
        }
    }

    /// Erases the annotations.
    pub fn to_expr(&self) -> Expr {
        let b = |e: &TExpr| Box::new(e.to_expr());
        match &self.kind {
            TKind::True => Expr::True,
            TKind::False => Expr::False,
            TKind::IndVar(v) | TKind::PredVar(v) => Expr::Var(v.clone()),
            TKind::IndConst(c) | TKind::PredConst(c) => Expr::Const(c.clone()),
            TKind::FunApp(f, args) => {
                Expr::FunApp(f.clone(), args.iter().map(TExpr::to_expr).collect())
            }
            TKind::App(x, y) => Expr::App(b(x), b(y)),
            TKind::Lambda(bd, x) => Expr::Lambda(bd.clone(), b(x)),
            TKind::And(x, y) => Expr::And(b(x), b(y)),
            TKind::Or(x, y) => Expr::Or(b(x), b(y)),
            TKind::Not(x) => Expr::Not(b(x)),
            TKind::Eq(x, y) => Expr::Eq(b(x), b(y)),
            TKind::Exists(bd, x) => Expr::Exists(bd.clone(), b(x)),
        }
    }
}

impl fmt::Display for TExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pretty_expr(&self.to_expr()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedClause {
    pub head: String,
    pub body: TExpr,
    pub span: Option<Span>,
}

/// A program whose clause bodies have been checked against their heads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedProgram {
    pub program: Program,
    pub clauses: Vec<TypedClause>,
}

impl TypedProgram {
    pub fn signature(&self) -> &Signature {
        &self.program.signature
    }

    /// Rejects predicate argument types and λ/∃ binder types whose domains
    /// cannot be enumerated (anything other than `ι`, `o`, `ι^n → o`).
    pub fn check_enumerable(&self) -> Result<(), TypeError> {
        for (name, ty) in &self.program.signature.predicates {
            for arg in ty.predicate_args().unwrap_or_default() {
                if !arg.is_enumerable() {
                    let span = self
                        .clauses
                        .iter()
                        .find(|c| &c.head == name)
                        .and_then(|c| c.span);
                    return Err(TypeError::NonEnumerable {
                        name: name.clone(),
                        ty: arg.clone(),
                        span,
                    });
                }
            }
        }
        for c in &self.clauses {
            let mut bad = None;
            c.body.walk(&mut |e| {
                if let TKind::Lambda(b, _) | TKind::Exists(b, _) = &e.kind {
                    if bad.is_none() && !b.ty.is_enumerable() {
                        bad = Some(b.clone());
                    }
                }
            });
            if let Some(b) = bad {
                return Err(TypeError::NonEnumerable {
                    name: b.name,
                    ty: b.ty,
                    span: c.span,
                });
            }
        }
        Ok(())
    }

    pub fn has_function_symbols(&self) -> bool {
        !self.program.signature.functions.is_empty()
    }
}

/// Checks every clause body against the declared type of its head.
pub fn typecheck(p: &Program) -> Result<TypedProgram, TypeError> {
    let sig = &p.signature;
    for (name, ty) in &sig.predicates {
        if !ty.is_predicate() {
            return Err(TypeError::BadDeclaration {
                name: name.clone(),
                ty: ty.clone(),
                kind: "predicate",
                span: None,
            });
        }
    }
    for (name, ty) in &sig.functions {
        if !ty.is_functional() || ty.function_arity() == Some(0) {
            return Err(TypeError::BadDeclaration {
                name: name.clone(),
                ty: ty.clone(),
                kind: "function",
                span: None,
            });
        }
    }
    let mut clauses = Vec::with_capacity(p.clauses.len());
    for c in &p.clauses {
        let Some(head_ty) = sig.predicates.get(&c.head) else {
            return Err(TypeError::UndeclaredPredicate {
                name: c.head.clone(),
                span: c.span,
            });
        };
        let cx = Ctx {
            sig,
            head: &c.head,
            span: c.span,
        };
        let body = cx.check(&c.body, &mut Vec::new())?;
        if &body.ty != head_ty {
            return Err(cx.mismatch(&c.body, head_ty.to_string(), &body.ty));
        }
        clauses.push(TypedClause {
            head: c.head.clone(),
            body,
            span: c.span,
        });
    }
    Ok(TypedProgram {
        program: p.clone(),
        clauses,
    })
}

/// Type checks a standalone expression whose free variables are typed by `env`.
pub fn typecheck_expr(
    e: &Expr,
    sig: &Signature,
    env: &[(String, Type)],
) -> Result<TExpr, TypeError> {
    let cx = Ctx {
        sig,
        head: "<query>",
        span: None,
    };
    cx.check(e, &mut env.to_vec())
}

struct Ctx<'a> {
    sig: &'a Signature,
    head: &'a str,
    span: Option<Span>,
}

impl Ctx<'_> {
    fn mismatch(&self, node: &Expr, expected: impl Into<String>, found: &Type) -> TypeError {
        TypeError::Mismatch {
            head: self.head.to_string(),
            node: pretty_expr(node),
            expected: expected.into(),
            found: found.to_string(),
            span: self.span,
        }
    }

    fn malformed(&self, node: &Expr, message: impl Into<String>) -> TypeError {
        TypeError::Malformed {
            head: self.head.to_string(),
            node: pretty_expr(node),
            message: message.into(),
            span: self.span,
        }
    }

    fn check(&self, e: &Expr, env: &mut Vec<(String, Type)>) -> Result<TExpr, TypeError> {
        let node = |kind, ty| Ok(TExpr { kind, ty });
        match e {
            Expr::True => node(TKind::True, Type::O),
            Expr::False => node(TKind::False, Type::O),
            Expr::Var(v) => match env.iter().rev().find(|(n, _)| n == v) {
                Some((_, ty)) if *ty == Type::Iota => node(TKind::IndVar(v.clone()), Type::Iota),
                Some((_, ty)) => node(TKind::PredVar(v.clone()), ty.clone()),
                None => Err(TypeError::UnboundVariable {
                    name: v.clone(),
                    head: self.head.to_string(),
                    span: self.span,
                }),
            },
            Expr::Const(c) => {
                if let Some(ty) = self.sig.predicates.get(c) {
                    node(TKind::PredConst(c.clone()), ty.clone())
                } else if self.sig.is_function(c) {
                    Err(self.malformed(e, format!("function symbol `{c}` must be fully applied")))
                } else {
                    node(TKind::IndConst(c.clone()), Type::Iota)
                }
            }
            Expr::FunApp(f, args) => {
                let Some(arity) = self.sig.functions.get(f).and_then(Type::function_arity) else {
                    return Err(self.malformed(e, format!("`{f}` is not a function symbol")));
                };
                if arity != args.len() {
                    return Err(self.malformed(
                        e,
                        format!("`{f}` expects {arity} arguments, got {}", args.len()),
                    ));
                }
                let args = args
                    .iter()
                    .map(|a| {
                        let t = self.check(a, env)?;
                        if t.ty == Type::Iota {
                            Ok(t)
                        } else {
                            Err(self.mismatch(a, "i", &t.ty))
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                node(TKind::FunApp(f.clone(), args), Type::Iota)
            }
            Expr::App(f, a) => {
                let tf = self.check(f, env)?;
                let ta = self.check(a, env)?;
                match &tf.ty {
                    Type::Arrow(arg, res) if tf.ty.is_predicate() => {
                        if **arg != ta.ty {
                            return Err(self.mismatch(a, arg.to_string(), &ta.ty));
                        }
                        let res = (**res).clone();
                        node(TKind::App(Box::new(tf), Box::new(ta)), res)
                    }
                    _ => Err(self.mismatch(f, "a predicate type taking an argument", &tf.ty)),
                }
            }
            Expr::Lambda(b, body) | Expr::Exists(b, body) => {
                if !b.ty.is_argument() {
                    return Err(self.malformed(
                        e,
                        format!("bound variable `{}` has non-argument type {}", b.name, b.ty),
                    ));
                }
                env.push((b.name.clone(), b.ty.clone()));
                let tb = self.check(body, env);
                env.pop();
                let tb = tb?;
                if let Expr::Lambda(..) = e {
                    if !tb.ty.is_predicate() {
                        return Err(self.mismatch(body, "a predicate type", &tb.ty));
                    }
                    let ty = Type::arrow(b.ty.clone(), tb.ty.clone());
                    node(TKind::Lambda(b.clone(), Box::new(tb)), ty)
                } else {
                    if tb.ty != Type::O {
                        return Err(self.mismatch(body, "o", &tb.ty));
                    }
                    node(TKind::Exists(b.clone(), Box::new(tb)), Type::O)
                }
            }
            Expr::And(x, y) | Expr::Or(x, y) => {
                let tx = self.check(x, env)?;
                let ty_ = self.check(y, env)?;
                if !tx.ty.is_predicate() {
                    return Err(self.mismatch(x, "a predicate type", &tx.ty));
                }
                if ty_.ty != tx.ty {
                    return Err(self.mismatch(y, tx.ty.to_string(), &ty_.ty));
                }
                let ty = tx.ty.clone();
                let kind = if let Expr::And(..) = e {
                    TKind::And(Box::new(tx), Box::new(ty_))
                } else {
                    TKind::Or(Box::new(tx), Box::new(ty_))
                };
                node(kind, ty)
            }
            Expr::Not(x) => {
                let tx = self.check(x, env)?;
                if tx.ty != Type::O {
                    return Err(self.mismatch(x, "o", &tx.ty));
                }
                node(TKind::Not(Box::new(tx)), Type::O)
            }
            Expr::Eq(x, y) => {
                let tx = self.check(x, env)?;
                let ty_ = self.check(y, env)?;
                for (sub, t) in [(x, &tx), (y, &ty_)] {
                    if t.ty != Type::Iota {
                        return Err(self.mismatch(sub, "i", &t.ty));
                    }
                }
                node(TKind::Eq(Box::new(tx), Box::new(ty_)), Type::O)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_core, parse_core_expr};

    fn pred(args: usize) -> Type {
        Type::predicate(vec![Type::Iota; args])
    }

    #[test]
    fn subset_has_expected_type() {
        let p = parse_core(
            "pred subset : (i -> o) -> (i -> o) -> o.\n\
             subset <- \\P:i -> o. \\Q:i -> o. ~(exists X:i. P X & ~(Q X)).",
        )
        .unwrap();
        let t = typecheck(&p).unwrap();
        assert_eq!(t.clauses[0].body.ty, Type::predicate([pred(1), pred(1)]));
    }

    #[test]
    fn reflexive_equality_lambda() {
        let e = parse_core_expr("\\X:i. X = X", &Signature::default()).unwrap();
        assert_eq!(
            typecheck_expr(&e, &Signature::default(), &[]).unwrap().ty,
            pred(1)
        );
    }

    #[test]
    fn self_application_is_rejected() {
        let p = parse_core("pred p : i -> o.\npred q : o.\nq <- p p.").unwrap();
        let err = typecheck(&p).unwrap_err();
        assert!(
            matches!(&err, TypeError::Mismatch { node, expected, .. } if node == "p" && expected == "i"),
            "{err}"
        );
    }

    #[test]
    fn body_must_match_head_type() {
        let p = parse_core("pred p : i -> o.\np <- true.").unwrap();
        assert!(matches!(typecheck(&p), Err(TypeError::Mismatch { .. })));
    }

    #[test]
    fn unbound_and_undeclared() {
        let p = parse_core("pred p : o.\np <- X = a.").unwrap();
        assert!(matches!(
            typecheck(&p),
            Err(TypeError::UnboundVariable { .. })
        ));
        let p = parse_core("q <- true.").unwrap();
        assert!(matches!(
            typecheck(&p),
            Err(TypeError::UndeclaredPredicate { .. })
        ));
    }

    #[test]
    fn conjunction_at_predicate_type() {
        let p = parse_core("pred p : i -> o.\npred q : i -> o.\npred r : i -> o.\nr <- p & q.")
            .unwrap();
        let t = typecheck(&p).unwrap();
        assert!(matches!(t.clauses[0].body.kind, TKind::And(..)));
        assert_eq!(t.clauses[0].body.ty, pred(1));
    }

    #[test]
    fn non_enumerable_binder_is_flagged() {
        let p = parse_core("pred p : o.\np <- exists F:(i -> o) -> o. F (\\X:i. true).").unwrap();
        let t = typecheck(&p).unwrap();
        assert!(matches!(
            t.check_enumerable(),
            Err(TypeError::NonEnumerable { .. })
        ));
    }
}
