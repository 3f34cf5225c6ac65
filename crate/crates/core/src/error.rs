use crate::syntax::{CompileError, SyntaxErrors, TypeError};
use crate::truth::TruthError;
use crate::types::Type;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("syntax error:\n{0}")]
    Syntax(#[from] SyntaxErrors),
    #[error("compile error: {0}")]
    Compile(#[from] CompileError),
    #[error("type error: {0}")]
    Type(TypeError),
    #[error(transparent)]
    Truth(#[from] TruthError),
    #[error("{what} has type {ty}, which cannot be enumerated over a finite universe")]
    NonEnumerableType { what: String, ty: Type },
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("the domain of {ty} has {size} elements, over the limit of {limit}")]
    DomainTooLarge { ty: Type, size: f64, limit: u64 },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("interpretations do not share a signature: {0}")]
    SignatureMismatch(String),
    #[error("function symbol `{0}` makes the Herbrand universe infinite")]
    InfiniteUniverse(String),
    #[error("stage {stage} did not settle within {cap} iterations")]
    StageDivergence { stage: u32, cap: usize },
    #[error("iterate {iteration} of stage {stage} is not above its predecessor at cell {cell}")]
    MonotonicityViolation {
        stage: u32,
        iteration: usize,
        cell: String,
    },
    #[error("the computed model is not a fixed point at cell {0}")]
    NotFixedPoint(String),
    #[error("the set of interpretations is empty")]
    EmptySet,
    #[error("enumeration needs {needed} interpretations, over the budget of {budget}")]
    BudgetExceeded { needed: f64, budget: u64 },
    #[error("no interpretation is a model")]
    NoModels,
    #[error("not a first-order normal program: {0}")]
    NotNormalFragment(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl From<TypeError> for Error {
    fn from(e: TypeError) -> Self {
        match e {
            TypeError::NonEnumerable { name, ty, span } => Error::NonEnumerableType {
                what: match span {
                    Some(s) => format!("{s}: `{name}`"),
                    None => format!("`{name}`"),
                },
                ty,
            },
            other => Error::Type(other),
        }
    }
}
