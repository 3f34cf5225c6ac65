//! Brute-force and classical oracles for checking the engine on small
//! instances: exhaustive enumeration of interpretations, the minimum model as
//! the greatest lower bound of all models, grounding of first-order normal
//! programs, the alternating-fixpoint well-founded model, and a seeded
//! generator of random normal programs.

mod corpus;
mod enumerate;
mod ground;
mod wfs;

pub use corpus::{random_normal_program, CorpusParams};
pub use enumerate::{
    brute_min_model, default_budget, enumerate_interpretations, enumerate_models, Interpretations,
    DEFAULT_BUDGET,
};
pub use ground::{ground, GroundNormalProgram, GroundRule};
pub use wfs::{wfs_alternating_fixpoint, WellFounded};

use crate::domains::Universe;
use crate::syntax::{compile_surface, parse_surface};
use crate::Result;

/// The well-founded model of a first-order normal program in surface syntax,
/// grounded over the constants of the program.
pub fn well_founded(src: &str) -> Result<WellFounded> {
    let sp = parse_surface(src)?;
    let program = compile_surface(&sp, false)?;
    let universe = Universe::from_signature(&program.signature)?;
    Ok(wfs_alternating_fixpoint(&ground(&sp, &universe)?))
}
