//! The core textual form: declarations followed by clauses `p <- expr.`
//!
//! ```text
//! const a, b.
//! pred p : i -> o.
//! p <- \X:i. ~(X = a).
//! ```

use std::fmt::Write as _;

use super::ast::{Binder, Clause, Expr, Program, Signature};
use super::lexer::{is_variable, lex, Cursor, Tok};
use super::{SyntaxError, SyntaxErrors};
use crate::types::Type;

const KEYWORDS: &[&str] = &["const", "func", "pred", "exists", "true", "false"];

/// Parses a core program. Constants used but not declared are added to the
/// signature in order of first use.
pub fn parse_core(src: &str) -> Result<Program, SyntaxErrors> {
    let mut cur = Cursor::new(lex(src)?);
    let mut sig = Signature::default();
    let mut clauses = Vec::new();
    let mut errors = Vec::new();

    while !cur.at_eof() {
        if let Err(e) = statement(&mut cur, &mut sig, &mut clauses) {
            errors.push(e);
            cur.recover();
        }
    }
    if !errors.is_empty() {
        return Err(SyntaxErrors(errors));
    }

    for c in &mut clauses {
        c.body = resolve_functions(std::mem::replace(&mut c.body, Expr::True), &sig);
    }
    let mut used = Vec::new();
    for c in &clauses {
        c.body.constants(&mut used);
    }
    for name in used {
        if !sig.is_predicate(&name) && !sig.is_function(&name) && !sig.is_constant(&name) {
            sig.constants.push(name);
        }
    }
    Ok(Program {
        signature: sig,
        clauses,
    })
}

/// Parses a single core expression against an existing signature.
pub fn parse_core_expr(src: &str, sig: &Signature) -> Result<Expr, SyntaxErrors> {
    let mut cur = Cursor::new(lex(src)?);
    let e = expr(&mut cur)?;
    if !cur.at_eof() {
        return Err(cur.unexpected("end of input").into());
    }
    Ok(resolve_functions(e, sig))
}

fn statement(
    cur: &mut Cursor,
    sig: &mut Signature,
    clauses: &mut Vec<Clause>,
) -> Result<(), SyntaxError> {
    let span = cur.span();
    if cur.is_keyword("const") {
        cur.next();
        loop {
            let (name, sp) = cur.ident()?;
            check_constant_name(&name, sp)?;
            if sig.is_constant(&name) {
                return Err(SyntaxError::new(
                    sp,
                    format!("constant `{name}` declared twice"),
                ));
            }
            sig.constants.push(name);
            if !cur.eat(&Tok::Comma) {
                break;
            }
        }
        cur.expect(&Tok::Dot)?;
    } else if cur.is_keyword("func") || cur.is_keyword("pred") {
        let is_pred = cur.is_keyword("pred");
        cur.next();
        let (name, sp) = cur.ident()?;
        check_constant_name(&name, sp)?;
        cur.expect(&Tok::Colon)?;
        let ty = type_expr(cur)?;
        cur.expect(&Tok::Dot)?;
        if sig.is_predicate(&name) || sig.is_function(&name) {
            return Err(SyntaxError::new(sp, format!("`{name}` declared twice")));
        }
        if is_pred {
            sig.predicates.insert(name, ty);
        } else {
            sig.functions.insert(name, ty);
        }
    } else {
        let (head, sp) = cur.ident()?;
        check_constant_name(&head, sp)?;
        cur.expect(&Tok::LeftArrow)?;
        let body = expr(cur)?;
        cur.expect(&Tok::Dot)?;
        clauses.push(Clause {
            head,
            body,
            span: Some(span),
        });
    }
    Ok(())
}

fn check_constant_name(name: &str, span: super::Span) -> Result<(), SyntaxError> {
    if is_variable(name) || KEYWORDS.contains(&name) {
        Err(SyntaxError::new(
            span,
            format!("`{name}` cannot name a constant"),
        ))
    } else {
        Ok(())
    }
}

pub(crate) fn type_expr(cur: &mut Cursor) -> Result<Type, SyntaxError> {
    let lhs = match cur.peek().clone() {
        Tok::Ident(s) if s == "i" => {
            cur.next();
            Type::Iota
        }
        Tok::Ident(s) if s == "o" => {
            cur.next();
            Type::O
        }
        Tok::LParen => {
            cur.next();
            let t = type_expr(cur)?;
            cur.expect(&Tok::RParen)?;
            t
        }
        _ => return Err(cur.unexpected("a type")),
    };
    if cur.eat(&Tok::Arrow) {
        Ok(Type::arrow(lhs, type_expr(cur)?))
    } else {
        Ok(lhs)
    }
}

fn binder(cur: &mut Cursor) -> Result<Binder, SyntaxError> {
    let (name, sp) = cur.ident()?;
    if !is_variable(&name) {
        return Err(SyntaxError::new(
            sp,
            format!("bound variable `{name}` must start with an upper-case letter"),
        ));
    }
    cur.expect(&Tok::Colon)?;
    let ty = type_expr(cur)?;
    cur.expect(&Tok::Dot)?;
    Ok(Binder { name, ty })
}

fn expr(cur: &mut Cursor) -> Result<Expr, SyntaxError> {
    let mut lhs = conjunction(cur)?;
    while cur.eat(&Tok::Bar) {
        lhs = Expr::or(lhs, conjunction(cur)?);
    }
    Ok(lhs)
}

fn conjunction(cur: &mut Cursor) -> Result<Expr, SyntaxError> {
    let mut lhs = equation(cur)?;
    while cur.eat(&Tok::Amp) {
        lhs = Expr::and(lhs, equation(cur)?);
    }
    Ok(lhs)
}

fn equation(cur: &mut Cursor) -> Result<Expr, SyntaxError> {
    let lhs = unary(cur)?;
    if cur.eat(&Tok::Eq) {
        Ok(Expr::eq(lhs, unary(cur)?))
    } else {
        Ok(lhs)
    }
}

fn unary(cur: &mut Cursor) -> Result<Expr, SyntaxError> {
    if cur.eat(&Tok::Tilde) {
        return Ok(Expr::not(unary(cur)?));
    }
    if cur.eat(&Tok::Backslash) {
        let b = binder(cur)?;
        return Ok(Expr::lambda(b, expr(cur)?));
    }
    if cur.is_keyword("exists") {
        cur.next();
        let b = binder(cur)?;
        return Ok(Expr::exists(b, expr(cur)?));
    }
    let mut e = atom(cur)?;
    while starts_atom(cur) {
        e = Expr::app(e, atom(cur)?);
    }
    Ok(e)
}

fn starts_atom(cur: &Cursor) -> bool {
    match cur.peek() {
        Tok::LParen => true,
        Tok::Ident(s) => !matches!(s.as_str(), "const" | "func" | "pred" | "exists"),
        _ => false,
    }
}

fn atom(cur: &mut Cursor) -> Result<Expr, SyntaxError> {
    match cur.peek().clone() {
        Tok::LParen => {
            cur.next();
            let e = expr(cur)?;
            cur.expect(&Tok::RParen)?;
            Ok(e)
        }
        Tok::Ident(s) if KEYWORDS.contains(&s.as_str()) => match s.as_str() {
            "true" => {
                cur.next();
                Ok(Expr::True)
            }
            "false" => {
                cur.next();
                Ok(Expr::False)
            }
            _ => Err(cur.unexpected("an expression")),
        },
        Tok::Ident(s) => {
            cur.next();
            Ok(if is_variable(&s) {
                Expr::Var(s)
            } else {
                Expr::Const(s)
            })
        }
        _ => Err(cur.unexpected("an expression")),
    }
}

/// Rewrites application spines headed by a function symbol into `FunApp`.
fn resolve_functions(e: Expr, sig: &Signature) -> Expr {
    fn spine(e: &Expr, sig: &Signature) -> Option<(String, Vec<Expr>)> {
        match e {
            Expr::Const(f) if sig.is_function(f) => Some((f.clone(), Vec::new())),
            Expr::App(f, a) => {
                let (name, mut args) = spine(f, sig)?;
                args.push(resolve_functions((**a).clone(), sig));
                Some((name, args))
            }
            _ => None,
        }
    }
    if let Some((f, args)) = spine(&e, sig) {
        return Expr::FunApp(f, args);
    }
    let r = |x: Box<Expr>| Box::new(resolve_functions(*x, sig));
    match e {
        Expr::App(a, b) => Expr::App(r(a), r(b)),
        Expr::And(a, b) => Expr::And(r(a), r(b)),
        Expr::Or(a, b) => Expr::Or(r(a), r(b)),
        Expr::Eq(a, b) => Expr::Eq(r(a), r(b)),
        Expr::Not(a) => Expr::Not(r(a)),
        Expr::Lambda(bd, a) => Expr::Lambda(bd, r(a)),
        Expr::Exists(bd, a) => Expr::Exists(bd, r(a)),
        Expr::FunApp(f, args) => Expr::FunApp(
            f,
            args.into_iter()
                .map(|a| resolve_functions(a, sig))
                .collect(),
        ),
        other => other,
    }
}

const BINDER: u8 = 0;
const OR: u8 = 1;
const AND: u8 = 2;
const EQ: u8 = 3;
const UNARY: u8 = 4;
const APP: u8 = 5;
const ATOM: u8 = 6;

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Lambda(..) | Expr::Exists(..) => BINDER,
        Expr::Or(..) => OR,
        Expr::And(..) => AND,
        Expr::Eq(..) => EQ,
        Expr::Not(..) => UNARY,
        Expr::App(..) => APP,
        Expr::FunApp(_, args) if !args.is_empty() => APP,
        _ => ATOM,
    }
}

/// Renders an expression in the core syntax accepted by [`parse_core_expr`].
pub fn pretty_expr(e: &Expr) -> String {
    let mut s = String::new();
    write_expr(&mut s, e, BINDER);
    s
}

fn write_expr(out: &mut String, e: &Expr, ctx: u8) {
    let prec = precedence(e);
    let parens = prec < ctx;
    if parens {
        out.push('(');
    }
    match e {
        Expr::True => out.push_str("true"),
        Expr::False => out.push_str("false"),
        Expr::Var(v) | Expr::Const(v) => out.push_str(v),
        Expr::FunApp(f, args) => {
            out.push_str(f);
            for a in args {
                out.push(' ');
                write_expr(out, a, ATOM);
            }
        }
        Expr::App(f, a) => {
            write_expr(out, f, APP);
            out.push(' ');
            write_expr(out, a, ATOM);
        }
        Expr::Lambda(b, body) | Expr::Exists(b, body) => {
            out.push_str(if matches!(e, Expr::Lambda(..)) {
                "\\"
            } else {
                "exists "
            });
            let _ = write!(out, "{}:{}. ", b.name, b.ty);
            write_expr(out, body, BINDER);
        }
        Expr::Or(a, b) => {
            write_expr(out, a, OR);
            out.push_str(" | ");
            write_expr(out, b, AND);
        }
        Expr::And(a, b) => {
            write_expr(out, a, AND);
            out.push_str(" & ");
            write_expr(out, b, EQ);
        }
        Expr::Eq(a, b) => {
            write_expr(out, a, UNARY);
            out.push_str(" = ");
            write_expr(out, b, UNARY);
        }
        Expr::Not(a) => {
            out.push('~');
            write_expr(out, a, UNARY);
        }
    }
    if parens {
        out.push(')');
    }
}

/// Renders a whole program in the format read by [`parse_core`].
pub fn pretty(p: &Program) -> String {
    let mut out = String::new();
    let sig = &p.signature;
    if !sig.constants.is_empty() {
        let _ = writeln!(out, "const {}.", sig.constants.join(", "));
    }
    for (f, ty) in &sig.functions {
        let _ = writeln!(out, "func {f} : {ty}.");
    }
    for (q, ty) in &sig.predicates {
        let _ = writeln!(out, "pred {q} : {ty}.");
    }
    for c in &p.clauses {
        let _ = writeln!(out, "{} <- {}.", c.head, pretty_expr(&c.body));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(src: &str) -> Program {
        let p = parse_core(src).unwrap();
        let again = parse_core(&pretty(&p)).unwrap();
        assert_eq!(p, again, "pretty output:\n{}", pretty(&p));
        p
    }

    #[test]
    fn parses_declarations_and_clauses() {
        let p = roundtrip("pred p : o.\np <- true.");
        assert_eq!(p.clauses.len(), 1);
        assert_eq!(p.clauses[0].body, Expr::True);
        assert_eq!(p.signature.predicates["p"], Type::O);
    }

    #[test]
    fn subset_definition_roundtrips() {
        let p = roundtrip(
            "pred subset : (i -> o) -> (i -> o) -> o.\n\
             subset <- \\P:i -> o. \\Q:i -> o. ~exists X:i. P X & ~(Q X).",
        );
        let Expr::Lambda(_, body) = &p.clauses[0].body else {
            panic!()
        };
        let Expr::Lambda(_, body) = &**body else {
            panic!()
        };
        let Expr::Not(inner) = &**body else {
            panic!("{body:?}")
        };
        assert!(matches!(**inner, Expr::Exists(..)));
    }

    #[test]
    fn precedence_and_associativity() {
        let sig = Signature::default();
        let e = parse_core_expr("a = b | ~p & q r s", &sig).unwrap();
        let expected = Expr::or(
            Expr::eq(Expr::constant("a"), Expr::constant("b")),
            Expr::and(
                Expr::not(Expr::constant("p")),
                Expr::apply(
                    Expr::constant("q"),
                    [Expr::constant("r"), Expr::constant("s")],
                ),
            ),
        );
        assert_eq!(e, expected);
        let right = Expr::and(
            Expr::constant("a"),
            Expr::and(Expr::constant("b"), Expr::constant("c")),
        );
        assert_eq!(pretty_expr(&right), "a & (b & c)");
        assert_eq!(parse_core_expr(&pretty_expr(&right), &sig).unwrap(), right);
    }

    #[test]
    fn binders_nested_in_operators_are_parenthesized() {
        let e = Expr::and(
            Expr::exists(Binder::new("X", Type::Iota), Expr::True),
            Expr::constant("p"),
        );
        let s = pretty_expr(&e);
        assert_eq!(s, "(exists X:i. true) & p");
        assert_eq!(parse_core_expr(&s, &Signature::default()).unwrap(), e);
    }

    #[test]
    fn function_symbols_resolve() {
        let p = roundtrip("func f : i -> i -> i.\npred p : i -> o.\np <- \\X:i. X = f a (f b c).");
        let Expr::Lambda(_, body) = &p.clauses[0].body else {
            panic!()
        };
        let Expr::Eq(_, rhs) = &**body else { panic!() };
        assert_eq!(
            **rhs,
            Expr::FunApp(
                "f".into(),
                vec![
                    Expr::constant("a"),
                    Expr::FunApp("f".into(), vec![Expr::constant("b"), Expr::constant("c")])
                ]
            )
        );
        assert_eq!(p.signature.constants, vec!["a", "b", "c"]);
    }

    #[test]
    fn reports_positioned_errors() {
        let err = parse_core("pred p : o.\np <- & q.\np <- .").unwrap_err();
        assert_eq!(err.0.len(), 2);
        assert_eq!(err.0[0].span.line, 2);
        assert_eq!(err.0[1].span.line, 3);
    }
}
