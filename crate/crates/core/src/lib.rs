//! Extensional higher-order logic programming with negation.
//!
//! Programs of the language H are solved over a finite Herbrand universe in
//! an infinite-valued logic truncated at a bound κ. The minimum model is
//! built by a staged fixed-point procedure and collapses to the three-valued
//! well-founded model. Brute-force oracles for desk-scale validation live in
//! [`oracle`].

pub mod domains;
pub mod engine;
pub mod error;
pub mod oracle;
pub mod semantics;
pub mod syntax;
pub mod truth;
pub mod types;

pub use error::{Error, Result};
pub use truth::{Kappa, Level, Ordinal, ThreeValued, TruthError, TruthValue};
pub use types::Type;

/// Parses, compiles and type checks a program in the surface syntax.
pub fn load_surface(src: &str, wadge: bool) -> Result<syntax::TypedProgram> {
    let sp = syntax::parse_surface(src)?;
    let p = syntax::compile_surface(&sp, wadge)?;
    Ok(syntax::typecheck(&p)?)
}

/// Parses and type checks a program in the core syntax.
pub fn load_core(src: &str) -> Result<syntax::TypedProgram> {
    let p = syntax::parse_core(src)?;
    Ok(syntax::typecheck(&p)?)
}

/// Loads either syntax: text containing `<-` is read as core syntax.
pub fn load(src: &str, wadge: bool) -> Result<syntax::TypedProgram> {
    if src.contains("<-") {
        load_core(src)
    } else {
        load_surface(src, wadge)
    }
}
