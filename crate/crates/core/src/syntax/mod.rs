//! Surface and core syntax of H.
//!
//! Programs are written either in a Prolog-like surface form (`p(X) :- not q(X).`)
//! or directly in the core form (`p <- \X:i. ~(q X).`). Surface programs are
//! compiled to core programs, which are then type checked into [`TypedProgram`]s.

mod ast;
mod compile;
mod core;
mod lexer;
mod surface;
mod typecheck;

use std::fmt;

pub use self::ast::{Binder, Clause, Expr, Program, Signature};
pub use self::compile::{compile_surface, CompileError};
pub use self::core::{parse_core, parse_core_expr, pretty, pretty_expr};
pub use self::surface::{
    parse_surface, Callee, Literal, SurfaceAtom, SurfaceClause, SurfaceProgram, Term,
};
pub use self::typecheck::{
    typecheck, typecheck_expr, TExpr, TKind, TypeError, TypedClause, TypedProgram,
};

/// A 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{span}: {message}")]
pub struct SyntaxError {
    pub span: Span,
    pub message: String,
}

impl SyntaxError {
    pub fn new(span: Span, message: impl Into<String>) -> Self {
        SyntaxError {
            span,
            message: message.into(),
        }
    }
}

/// All syntax errors found in one input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxErrors(pub Vec<SyntaxError>);

impl fmt::Display for SyntaxErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for SyntaxErrors {}

impl From<SyntaxError> for SyntaxErrors {
    fn from(e: SyntaxError) -> Self {
        SyntaxErrors(vec![e])
    }
}
