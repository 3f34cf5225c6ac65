//! Compilation of surface clauses into core clauses.
//!
//! `p(t1, …, tn) :- L1, …, Lm.` becomes `p <- \V1:ρ1. … \Vn:ρn. ∃Y…. C & L1 & … & Lm`
//! where head variables become the λ-parameters, other head arguments get a
//! fresh parameter plus an equality constraint `C`, and body-only variables
//! are existentially quantified. Argument types are inferred by unification.

use std::collections::{HashMap, HashSet};

use indexmap::{IndexMap, IndexSet};

use super::ast::{Binder, Clause, Expr, Program, Signature};
use super::surface::{Callee, Literal, SurfaceClause, SurfaceProgram, Term};
use super::Span;
use crate::types::Type;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompileError {
    #[error("{span}: `{name}` is used with {found} arguments but elsewhere with {expected}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
        span: Span,
    },
    #[error(
        "{span}: predicate constant `{arg}` in the head of a `{pred}` clause requires wadge mode"
    )]
    PredicateInHead {
        pred: String,
        arg: String,
        span: Span,
    },
    #[error("{span}: repeated higher-order head variable `{var}` in a `{pred}` clause requires wadge mode")]
    RepeatedPredicateVariable {
        pred: String,
        var: String,
        span: Span,
    },
    #[error("{span}: cannot infer a type: {message}")]
    Untypeable { message: String, span: Span },
    #[error("`{name}` is used both as {first} and as {second}")]
    NameClash {
        name: String,
        first: &'static str,
        second: &'static str,
    },
}

/// Compiles a surface program into a core program.
///
/// With `wadge_mode`, predicate constants and repeated predicate variables in
/// clause heads are replaced by fresh parameters constrained with injected
/// `equal_ρ`/`subset_ρ` predicates; otherwise they are rejected.
pub fn compile_surface(sp: &SurfaceProgram, wadge_mode: bool) -> Result<Program, CompileError> {
    let clauses: Vec<SurfaceClause> = sp.clauses.iter().map(name_anonymous).collect();
    let names = Names::collect(sp, &clauses)?;
    let types = Inference::run(sp, &clauses, &names)?;

    let mut library: IndexSet<Type> = IndexSet::new();
    let mut out = Vec::with_capacity(clauses.len());
    for (c, vars) in clauses.iter().zip(&types.clause_vars) {
        out.push(compile_clause(
            c,
            vars,
            &types.preds,
            &names,
            wadge_mode,
            &mut library,
        )?);
    }

    let mut signature = Signature {
        constants: names.constants.iter().cloned().collect(),
        functions: names
            .functions
            .iter()
            .map(|(f, n)| (f.clone(), Type::function(*n)))
            .collect(),
        predicates: types.preds.clone(),
    };
    for ty in &library {
        for (name, clause) in library_clauses(ty) {
            if signature.predicates.contains_key(&name) {
                return Err(CompileError::NameClash {
                    name,
                    first: "a user predicate",
                    second: "a library predicate",
                });
            }
            signature.predicates.insert(name, ty_of_library(ty));
            out.push(clause);
        }
    }
    Ok(Program {
        signature,
        clauses: out,
    })
}

/// Name of the injected equality predicate for argument type `ty`.
pub fn equal_name(ty: &Type) -> String {
    format!("equal_{}", ty.mangle())
}

/// Name of the injected inclusion predicate for argument type `ty`.
pub fn subset_name(ty: &Type) -> String {
    format!("subset_{}", ty.mangle())
}

fn ty_of_library(ty: &Type) -> Type {
    Type::predicate([ty.clone(), ty.clone()])
}

/// `subset_ρ <- \P. \Q. ~∃X1…Xn. P X1…Xn & ~(Q X1…Xn)` and
/// `equal_ρ <- \P. \Q. subset_ρ P Q & subset_ρ Q P`.
fn library_clauses(ty: &Type) -> Vec<(String, Clause)> {
    let args: Vec<Type> = ty
        .predicate_args()
        .unwrap_or_default()
        .into_iter()
        .cloned()
        .collect();
    let xs: Vec<Binder> = args
        .iter()
        .enumerate()
        .map(|(i, t)| Binder::new(format!("X{}", i + 1), t.clone()))
        .collect();
    let applied = |f: &str| Expr::apply(Expr::var(f), xs.iter().map(|b| Expr::var(b.name.clone())));
    let inner = Expr::and(applied("P"), Expr::not(applied("Q")));
    let quantified = xs
        .iter()
        .rev()
        .fold(inner, |acc, b| Expr::exists(b.clone(), acc));
    let params = |body: Expr| {
        Expr::lambda(
            Binder::new("P", ty.clone()),
            Expr::lambda(Binder::new("Q", ty.clone()), body),
        )
    };
    let subset = subset_name(ty);
    let call = |a: &str, b: &str| {
        Expr::apply(Expr::constant(subset.clone()), [Expr::var(a), Expr::var(b)])
    };
    let equal_body = Expr::and(call("P", "Q"), call("Q", "P"));
    vec![
        (
            equal_name(ty),
            Clause::new(equal_name(ty), params(equal_body)),
        ),
        (
            subset.clone(),
            Clause::new(subset.clone(), params(Expr::not(quantified))),
        ),
    ]
}

/// Gives every `_` occurrence its own variable name.
fn name_anonymous(c: &SurfaceClause) -> SurfaceClause {
    let taken: HashSet<String> = c.vars().into_iter().collect();
    let mut counter = 0usize;
    let mut fresh = || loop {
        counter += 1;
        let name = format!("_G{counter}");
        if !taken.contains(&name) {
            return name;
        }
    };
    fn term(t: &Term, fresh: &mut impl FnMut() -> String) -> Term {
        match t {
            Term::Var(v) if v == "_" => Term::Var(fresh()),
            Term::Fun(f, args) => {
                Term::Fun(f.clone(), args.iter().map(|a| term(a, fresh)).collect())
            }
            other => other.clone(),
        }
    }
    fn literal(l: &Literal, fresh: &mut impl FnMut() -> String) -> Literal {
        match l {
            Literal::Call { callee, args } => Literal::Call {
                callee: callee.clone(),
                args: args.iter().map(|a| term(a, fresh)).collect(),
            },
            Literal::Eq(a, b) => Literal::Eq(term(a, fresh), term(b, fresh)),
            Literal::Not(l) => Literal::Not(Box::new(literal(l, fresh))),
            other => other.clone(),
        }
    }
    let mut out = c.clone();
    out.head.args = c.head.args.iter().map(|a| term(a, &mut fresh)).collect();
    out.body = c.body.iter().map(|l| literal(l, &mut fresh)).collect();
    out
}

/// Classification of the names occurring in a surface program.
struct Names {
    /// Predicate arities in order of first appearance.
    preds: IndexMap<String, usize>,
    functions: IndexMap<String, usize>,
    constants: IndexSet<String>,
}

impl Names {
    fn collect(sp: &SurfaceProgram, clauses: &[SurfaceClause]) -> Result<Names, CompileError> {
        let mut preds: IndexMap<String, usize> = IndexMap::new();
        let mut note = |name: &str, arity: usize, span: Span| match preds.get(name) {
            Some(&n) if n != arity => Err(CompileError::ArityMismatch {
                name: name.to_string(),
                expected: n,
                found: arity,
                span,
            }),
            Some(_) => Ok(()),
            None => {
                preds.insert(name.to_string(), arity);
                Ok(())
            }
        };
        for (name, ty, span) in &sp.annotations {
            let Some(args) = ty.predicate_args() else {
                return Err(CompileError::Untypeable {
                    message: format!("annotation for `{name}` is not a predicate type"),
                    span: *span,
                });
            };
            note(name, args.len(), *span)?;
        }
        for c in clauses {
            note(&c.head.pred, c.head.args.len(), c.span)?;
            let mut calls = Vec::new();
            c.body.iter().for_each(|l| called_preds(l, &mut calls));
            for (p, n) in calls {
                note(&p, n, c.span)?;
            }
        }

        let mut functions: IndexMap<String, usize> = IndexMap::new();
        let mut constants = IndexSet::new();
        for c in clauses {
            let mut terms = Vec::new();
            c.head.args.iter().for_each(|t| terms.push(t));
            c.body.iter().for_each(|l| literal_terms(l, &mut terms));
            for t in terms {
                classify_term(t, &preds, &mut functions, &mut constants, c.span)?;
            }
        }
        for f in functions.keys() {
            if constants.contains(f) {
                return Err(CompileError::NameClash {
                    name: f.clone(),
                    first: "a function symbol",
                    second: "a constant",
                });
            }
        }
        Ok(Names {
            preds,
            functions,
            constants,
        })
    }
}

fn called_preds(l: &Literal, out: &mut Vec<(String, usize)>) {
    match l {
        Literal::Call {
            callee: Callee::Pred(p),
            args,
        } => out.push((p.clone(), args.len())),
        Literal::Not(l) => called_preds(l, out),
        _ => {}
    }
}

fn literal_terms<'a>(l: &'a Literal, out: &mut Vec<&'a Term>) {
    match l {
        Literal::Call { args, .. } => out.extend(args.iter()),
        Literal::Eq(a, b) => {
            out.push(a);
            out.push(b);
        }
        Literal::Not(l) => literal_terms(l, out),
        Literal::True | Literal::False => {}
    }
}

fn classify_term(
    t: &Term,
    preds: &IndexMap<String, usize>,
    functions: &mut IndexMap<String, usize>,
    constants: &mut IndexSet<String>,
    span: Span,
) -> Result<(), CompileError> {
    match t {
        Term::Var(_) => Ok(()),
        Term::Const(c) => {
            if !preds.contains_key(c) {
                constants.insert(c.clone());
            }
            Ok(())
        }
        Term::Fun(f, args) => {
            if preds.contains_key(f) {
                return Err(CompileError::NameClash {
                    name: f.clone(),
                    first: "a predicate",
                    second: "a function symbol",
                });
            }
            match functions.get(f) {
                Some(&n) if n != args.len() => {
                    return Err(CompileError::ArityMismatch {
                        name: f.clone(),
                        expected: n,
                        found: args.len(),
                        span,
                    });
                }
                Some(_) => {}
                None => {
                    functions.insert(f.clone(), args.len());
                }
            }
            args.iter()
                .try_for_each(|a| classify_term(a, preds, functions, constants, span))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Ty {
    Var(usize),
    Iota,
    O,
    Arrow(Box<Ty>, Box<Ty>),
}

impl Ty {
    fn from_type(t: &Type) -> Ty {
        match t {
            Type::Iota => Ty::Iota,
            Type::O => Ty::O,
            Type::Arrow(a, r) => Ty::Arrow(Box::new(Ty::from_type(a)), Box::new(Ty::from_type(r))),
        }
    }

    fn predicate(args: Vec<Ty>) -> Ty {
        args.into_iter()
            .rev()
            .fold(Ty::O, |acc, a| Ty::Arrow(Box::new(a), Box::new(acc)))
    }
}

#[derive(Default)]
struct Unifier {
    slots: Vec<Option<Ty>>,
}

impl Unifier {
    fn fresh(&mut self) -> Ty {
        self.slots.push(None);
        Ty::Var(self.slots.len() - 1)
    }

    fn shallow(&self, t: &Ty) -> Ty {
        let mut t = t.clone();
        while let Ty::Var(v) = t {
            match &self.slots[v] {
                Some(next) => t = next.clone(),
                None => break,
            }
        }
        t
    }

    fn occurs(&self, v: usize, t: &Ty) -> bool {
        match self.shallow(t) {
            Ty::Var(w) => v == w,
            Ty::Arrow(a, r) => self.occurs(v, &a) || self.occurs(v, &r),
            _ => false,
        }
    }

    fn unify(&mut self, a: &Ty, b: &Ty) -> bool {
        let (a, b) = (self.shallow(a), self.shallow(b));
        match (a, b) {
            (Ty::Var(v), Ty::Var(w)) if v == w => true,
            (Ty::Var(v), t) | (t, Ty::Var(v)) => {
                if self.occurs(v, &t) {
                    return false;
                }
                self.slots[v] = Some(t);
                true
            }
            (Ty::Iota, Ty::Iota) | (Ty::O, Ty::O) => true,
            (Ty::Arrow(a1, r1), Ty::Arrow(a2, r2)) => self.unify(&a1, &a2) && self.unify(&r1, &r2),
            _ => false,
        }
    }

    /// Resolves a type, defaulting unconstrained positions to `ι`.
    fn resolve(&self, t: &Ty) -> Type {
        match self.shallow(t) {
            Ty::Var(_) | Ty::Iota => Type::Iota,
            Ty::O => Type::O,
            Ty::Arrow(a, r) => Type::arrow(self.resolve(&a), self.resolve(&r)),
        }
    }
}

struct Inference {
    preds: IndexMap<String, Type>,
    clause_vars: Vec<HashMap<String, Type>>,
}

impl Inference {
    fn run(
        sp: &SurfaceProgram,
        clauses: &[SurfaceClause],
        names: &Names,
    ) -> Result<Inference, CompileError> {
        let mut u = Unifier::default();
        let mut pred_args: IndexMap<String, Vec<Ty>> = IndexMap::new();
        for (p, &n) in &names.preds {
            let args = (0..n).map(|_| u.fresh()).collect();
            pred_args.insert(p.clone(), args);
        }
        let pred_ty =
            |pred_args: &IndexMap<String, Vec<Ty>>, p: &str| Ty::predicate(pred_args[p].clone());

        for (name, ty, span) in &sp.annotations {
            let declared = Ty::from_type(ty);
            if !u.unify(&pred_ty(&pred_args, name), &declared) {
                return Err(CompileError::Untypeable {
                    message: format!("annotation for `{name}` conflicts with its use"),
                    span: *span,
                });
            }
        }

        let mut raw_vars: Vec<HashMap<String, Ty>> = Vec::new();
        for c in clauses {
            let mut vars: HashMap<String, Ty> = HashMap::new();
            for v in c.vars() {
                let t = u.fresh();
                vars.insert(v, t);
            }
            let fail = |what: String| CompileError::Untypeable {
                message: what,
                span: c.span,
            };
            let term_ty = |u: &mut Unifier, t: &Term| -> Result<Ty, CompileError> {
                term_type(u, t, &vars, &pred_args, names)
                    .ok_or_else(|| fail(format!("ill-typed term in a `{}` clause", c.head.pred)))
            };
            for (t, expected) in c.head.args.iter().zip(pred_args[&c.head.pred].clone()) {
                let ty = term_ty(&mut u, t)?;
                if !u.unify(&ty, &expected) {
                    return Err(fail(format!(
                        "head argument {} of `{}` has conflicting types",
                        describe(t),
                        c.head.pred
                    )));
                }
            }
            let mut stack: Vec<&Literal> = c.body.iter().collect();
            while let Some(l) = stack.pop() {
                match l {
                    Literal::True | Literal::False => {}
                    Literal::Not(inner) => stack.push(inner),
                    Literal::Eq(a, b) => {
                        for t in [a, b] {
                            let ty = term_ty(&mut u, t)?;
                            if !u.unify(&ty, &Ty::Iota) {
                                return Err(fail(format!(
                                    "{} appears in an equation but is not an individual",
                                    describe(t)
                                )));
                            }
                        }
                    }
                    Literal::Call { callee, args } => {
                        let arg_tys = args
                            .iter()
                            .map(|t| term_ty(&mut u, t))
                            .collect::<Result<Vec<_>, _>>()?;
                        let target = match callee {
                            Callee::Pred(p) => pred_ty(&pred_args, p),
                            Callee::Var(v) => vars[v].clone(),
                        };
                        if !u.unify(&target, &Ty::predicate(arg_tys)) {
                            let name = match callee {
                                Callee::Pred(p) | Callee::Var(p) => p,
                            };
                            return Err(fail(format!(
                                "call of `{name}` does not match its other uses"
                            )));
                        }
                    }
                }
            }
            raw_vars.push(vars);
        }

        let mut preds = IndexMap::new();
        for p in names.preds.keys() {
            let ty = u.resolve(&pred_ty(&pred_args, p));
            if !ty.is_predicate() {
                return Err(CompileError::Untypeable {
                    message: format!("`{p}` gets type {ty}, which is not a predicate type"),
                    span: Span::default(),
                });
            }
            preds.insert(p.clone(), ty);
        }
        let mut clause_vars = Vec::with_capacity(raw_vars.len());
        for (c, vars) in clauses.iter().zip(raw_vars) {
            let mut resolved = HashMap::new();
            for (v, t) in vars {
                let ty = u.resolve(&t);
                if !ty.is_argument() {
                    return Err(CompileError::Untypeable {
                        message: format!("variable `{v}` gets type {ty}"),
                        span: c.span,
                    });
                }
                resolved.insert(v, ty);
            }
            clause_vars.push(resolved);
        }
        Ok(Inference { preds, clause_vars })
    }
}

fn term_type(
    u: &mut Unifier,
    t: &Term,
    vars: &HashMap<String, Ty>,
    pred_args: &IndexMap<String, Vec<Ty>>,
    names: &Names,
) -> Option<Ty> {
    match t {
        Term::Var(v) => Some(vars[v].clone()),
        Term::Const(c) => Some(match pred_args.get(c) {
            Some(args) => Ty::predicate(args.clone()),
            None => Ty::Iota,
        }),
        Term::Fun(f, args) => {
            debug_assert!(names.functions.contains_key(f));
            for a in args {
                let ty = term_type(u, a, vars, pred_args, names)?;
                if !u.unify(&ty, &Ty::Iota) {
                    return None;
                }
            }
            Some(Ty::Iota)
        }
    }
}

fn describe(t: &Term) -> String {
    match t {
        Term::Var(v) | Term::Const(v) => format!("`{v}`"),
        Term::Fun(f, _) => format!("`{f}(…)`"),
    }
}

fn term_expr(t: &Term) -> Expr {
    match t {
        Term::Var(v) => Expr::var(v.clone()),
        Term::Const(c) => Expr::constant(c.clone()),
        Term::Fun(f, args) => Expr::FunApp(f.clone(), args.iter().map(term_expr).collect()),
    }
}

fn literal_expr(l: &Literal) -> Expr {
    match l {
        Literal::True => Expr::True,
        Literal::False => Expr::False,
        Literal::Call { callee, args } => {
            let head = match callee {
                Callee::Pred(p) => Expr::constant(p.clone()),
                Callee::Var(v) => Expr::var(v.clone()),
            };
            Expr::apply(head, args.iter().map(term_expr))
        }
        Literal::Eq(a, b) => Expr::eq(term_expr(a), term_expr(b)),
        Literal::Not(l) => Expr::not(literal_expr(l)),
    }
}

fn compile_clause(
    c: &SurfaceClause,
    vars: &HashMap<String, Type>,
    preds: &IndexMap<String, Type>,
    names: &Names,
    wadge: bool,
    library: &mut IndexSet<Type>,
) -> Result<Clause, CompileError> {
    let pred = &c.head.pred;
    let arg_tys: Vec<Type> = preds[pred]
        .predicate_args()
        .unwrap_or_default()
        .into_iter()
        .cloned()
        .collect();
    let mut taken: HashSet<String> = c.vars().into_iter().collect();
    let fresh = |taken: &mut HashSet<String>| {
        let mut i = 1usize;
        loop {
            let name = format!("V{i}");
            if taken.insert(name.clone()) {
                return name;
            }
            i += 1;
        }
    };

    let mut params: Vec<Binder> = Vec::new();
    let mut constraints: Vec<Expr> = Vec::new();
    for (t, ty) in c.head.args.iter().zip(&arg_tys) {
        match t {
            Term::Var(x) if !params.iter().any(|b| &b.name == x) => {
                params.push(Binder::new(x.clone(), ty.clone()))
            }
            _ => {
                let v = fresh(&mut taken);
                params.push(Binder::new(v.clone(), ty.clone()));
                let constraint = if *ty == Type::Iota {
                    Expr::eq(Expr::var(v), term_expr(t))
                } else if wadge {
                    library.insert(ty.clone());
                    Expr::apply(Expr::constant(equal_name(ty)), [Expr::var(v), term_expr(t)])
                } else {
                    return Err(match t {
                        Term::Var(x) => CompileError::RepeatedPredicateVariable {
                            pred: pred.clone(),
                            var: x.clone(),
                            span: c.span,
                        },
                        _ => CompileError::PredicateInHead {
                            pred: pred.clone(),
                            arg: describe(t).trim_matches('`').to_string(),
                            span: c.span,
                        },
                    });
                };
                constraints.push(constraint);
            }
        }
    }
    debug_assert!(names.preds.contains_key(pred));

    let existentials: Vec<Binder> = c
        .vars()
        .into_iter()
        .filter(|v| !params.iter().any(|b| &b.name == v))
        .map(|v| {
            let ty = vars[&v].clone();
            Binder::new(v, ty)
        })
        .collect();
    let body = Expr::conj(
        constraints
            .into_iter()
            .chain(c.body.iter().map(literal_expr)),
    );
    let body = existentials
        .into_iter()
        .rev()
        .fold(body, |acc, b| Expr::exists(b, acc));
    let body = params
        .into_iter()
        .rev()
        .fold(body, |acc, b| Expr::lambda(b, acc));
    Ok(Clause {
        head: pred.clone(),
        body,
        span: Some(c.span),
    })
}
