//! Prolog-like surface syntax.
//!
//! ```text
//! pred band : (i -> o) -> o.        % optional type annotation
//! singer(sally).
//! band(B) :- singer(S), B(S), not guitarist(S).
//! ```

use super::core::type_expr;
use super::lexer::{is_variable, lex, Cursor, Tok};
use super::{Span, SyntaxError, SyntaxErrors};
use crate::types::Type;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Const(String),
    Fun(String, Vec<Term>),
}

impl Term {
    pub fn vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Const(_) => {}
            Term::Fun(_, args) => args.iter().for_each(|a| a.vars(out)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Callee {
    Pred(String),
    Var(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Literal {
    True,
    False,
    Call { callee: Callee, args: Vec<Term> },
    Eq(Term, Term),
    Not(Box<Literal>),
}

impl Literal {
    pub fn vars(&self, out: &mut Vec<String>) {
        match self {
            Literal::True | Literal::False => {}
            Literal::Call { callee, args } => {
                if let Callee::Var(v) = callee {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                args.iter().for_each(|a| a.vars(out));
            }
            Literal::Eq(a, b) => {
                a.vars(out);
                b.vars(out);
            }
            Literal::Not(l) => l.vars(out),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfaceAtom {
    pub pred: String,
    pub args: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceClause {
    pub head: SurfaceAtom,
    pub body: Vec<Literal>,
    pub span: Span,
}

impl SurfaceClause {
    /// Variables in order of first occurrence, head first.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.head.args.iter().for_each(|a| a.vars(&mut out));
        self.body.iter().for_each(|l| l.vars(&mut out));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SurfaceProgram {
    /// `pred name : type.` annotations.
    pub annotations: Vec<(String, Type, Span)>,
    pub clauses: Vec<SurfaceClause>,
}

/// Parses surface text, collecting every syntax error with its position.
pub fn parse_surface(src: &str) -> Result<SurfaceProgram, SyntaxErrors> {
    let mut cur = Cursor::new(lex(src)?);
    let mut prog = SurfaceProgram::default();
    let mut errors = Vec::new();
    while !cur.at_eof() {
        if let Err(e) = item(&mut cur, &mut prog) {
            errors.push(e);
            cur.recover();
        }
    }
    if errors.is_empty() {
        Ok(prog)
    } else {
        Err(SyntaxErrors(errors))
    }
}

fn item(cur: &mut Cursor, prog: &mut SurfaceProgram) -> Result<(), SyntaxError> {
    let span = cur.span();
    if cur.is_keyword("pred")
        && matches!(cur.peek_at(1), Tok::Ident(_))
        && *cur.peek_at(2) == Tok::Colon
    {
        cur.next();
        let (name, _) = cur.ident()?;
        cur.expect(&Tok::Colon)?;
        let ty = type_expr(cur)?;
        cur.expect(&Tok::Dot)?;
        prog.annotations.push((name, ty, span));
        return Ok(());
    }
    let head = atom(cur)?;
    let mut body = Vec::new();
    if cur.eat(&Tok::ColonDash) {
        loop {
            body.push(literal(cur)?);
            if !cur.eat(&Tok::Comma) {
                break;
            }
        }
    }
    cur.expect(&Tok::Dot)?;
    prog.clauses.push(SurfaceClause { head, body, span });
    Ok(())
}

fn atom(cur: &mut Cursor) -> Result<SurfaceAtom, SyntaxError> {
    let (pred, sp) = cur.ident()?;
    if is_variable(&pred) || is_reserved(&pred) {
        return Err(SyntaxError::new(
            sp,
            format!("clause head must be a predicate name, found `{pred}`"),
        ));
    }
    let args = if *cur.peek() == Tok::LParen {
        arguments(cur)?
    } else {
        Vec::new()
    };
    Ok(SurfaceAtom { pred, args })
}

fn is_reserved(name: &str) -> bool {
    matches!(name, "not" | "true" | "false")
}

fn arguments(cur: &mut Cursor) -> Result<Vec<Term>, SyntaxError> {
    cur.expect(&Tok::LParen)?;
    let mut args = vec![term(cur)?];
    while cur.eat(&Tok::Comma) {
        args.push(term(cur)?);
    }
    cur.expect(&Tok::RParen)?;
    Ok(args)
}

fn term(cur: &mut Cursor) -> Result<Term, SyntaxError> {
    let (name, sp) = cur.ident()?;
    if is_reserved(&name) {
        return Err(SyntaxError::new(
            sp,
            format!("`{name}` cannot be used as a term"),
        ));
    }
    if is_variable(&name) {
        return Ok(Term::Var(name));
    }
    if *cur.peek() == Tok::LParen {
        Ok(Term::Fun(name, arguments(cur)?))
    } else {
        Ok(Term::Const(name))
    }
}

fn literal(cur: &mut Cursor) -> Result<Literal, SyntaxError> {
    if cur.is_keyword("not") {
        cur.next();
        return Ok(Literal::Not(Box::new(literal(cur)?)));
    }
    if cur.eat(&Tok::LParen) {
        let l = literal(cur)?;
        cur.expect(&Tok::RParen)?;
        return Ok(l);
    }
    if cur.is_keyword("true") {
        cur.next();
        return Ok(Literal::True);
    }
    if cur.is_keyword("false") {
        cur.next();
        return Ok(Literal::False);
    }
    let (name, sp) = cur.ident()?;
    let args = if *cur.peek() == Tok::LParen {
        Some(arguments(cur)?)
    } else {
        None
    };
    if cur.eat(&Tok::Eq) {
        let lhs = match (is_variable(&name), args) {
            (true, None) => Term::Var(name),
            (true, Some(_)) => {
                return Err(SyntaxError::new(
                    sp,
                    "a variable application cannot appear in an equation",
                ));
            }
            (false, None) => Term::Const(name),
            (false, Some(a)) => Term::Fun(name, a),
        };
        return Ok(Literal::Eq(lhs, term(cur)?));
    }
    let callee = if is_variable(&name) {
        Callee::Var(name)
    } else {
        Callee::Pred(name)
    };
    Ok(Literal::Call {
        callee,
        args: args.unwrap_or_default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_fact() {
        let p = parse_surface("p(a).").unwrap();
        assert_eq!(p.clauses.len(), 1);
        assert_eq!(p.clauses[0].head.args, vec![Term::Const("a".into())]);
        assert!(p.clauses[0].body.is_empty());
    }

    #[test]
    fn band_program_clauses() {
        let src = "band(B) :- singer(S), B(S), guitarist(G), B(G), drummer(D), B(D).\n\
                   two_singers(B) :- B(S1), B(S2), singer(S1), singer(S2), not(S1 = S2).\n\
                   single_singer_band(B) :- band(B), not two_singers(B).\n\
                   singer(sally). singer(steve).";
        let p = parse_surface(src).unwrap();
        assert_eq!(p.clauses.len(), 5);
        assert_eq!(
            p.clauses[1].body[4],
            Literal::Not(Box::new(Literal::Eq(
                Term::Var("S1".into()),
                Term::Var("S2".into())
            )))
        );
        assert_eq!(
            p.clauses[0].body[1],
            Literal::Call {
                callee: Callee::Var("B".into()),
                args: vec![Term::Var("S".into())]
            }
        );
    }

    #[test]
    fn incomplete_clause_is_an_error() {
        let err = parse_surface("p(X) :-").unwrap_err();
        assert_eq!(err.0.len(), 1);
        assert_eq!(err.0[0].span, Span { line: 1, column: 8 });
    }

    #[test]
    fn annotations_and_comments() {
        let p = parse_surface("% header\npred phi : (i -> o) -> o.\nphi(p). % trailing\n").unwrap();
        assert_eq!(p.annotations.len(), 1);
        assert_eq!(
            p.annotations[0].1,
            Type::predicate([Type::predicate([Type::Iota])])
        );
        assert_eq!(p.clauses.len(), 1);
    }

    #[test]
    fn collects_several_errors() {
        let err = parse_surface("p(.\nq :- r.\ns :- ,.\n").unwrap_err();
        assert_eq!(
            err.0.iter().map(|e| e.span.line).collect::<Vec<_>>(),
            vec![1, 3]
        );
    }

    #[test]
    fn predicate_named_pred_is_still_a_clause() {
        let p = parse_surface("pred(a).").unwrap();
        assert_eq!(p.clauses[0].head.pred, "pred");
    }
}
