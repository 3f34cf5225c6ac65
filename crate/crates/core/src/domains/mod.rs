//! Finite semantic domains over a finite Herbrand universe.
//!
//! Truth values are stored as their position in the chain `V_κ` (a *code*),
//! so the chain order, join and meet are plain integer comparisons. The
//! elements of every enumerable domain are numbered: individuals by their
//! position in the [`Universe`], truth values by code, and tables of type
//! `ι^n → o` by reading their entries as the digits of a base-`|V_κ|` number,
//! first entry most significant.

mod denotation;
mod relation;
mod universe;

pub use denotation::{
    check_alpha_monotone, den_eq_alpha, den_glb_alpha, den_join, den_leq, den_lub_alpha, den_meet,
    den_restrict, den_sq_alpha, enumerate_domain, is_alpha_monotone, Denotation, Lazy, Suspension,
};
pub use relation::Relation;
pub use universe::Universe;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::truth::{Kappa, TruthValue};
use crate::types::Type;

/// A truth value's position in the chain `V_κ`.
pub type Code = u16;

/// Upper bound on the number of cells of a single table.
pub const MAX_CELLS: usize = 1 << 26;

/// Largest κ whose codes fit in [`Code`].
pub const MAX_KAPPA: u32 = (Code::MAX as u32 - 1) / 2;

pub fn encode(kappa: Kappa, v: TruthValue) -> Code {
    kappa.index_of(kappa.truncate(v)) as Code
}

pub fn decode(kappa: Kappa, c: Code) -> TruthValue {
    kappa.value_at(c as usize)
}

/// The denotation space of a type whose predicate arguments are enumerable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Domain {
    Individuals(usize),
    Truth(Kappa),
    Pred(Arc<Shape>),
}

impl Domain {
    pub fn of(ty: &Type, universe: usize, kappa: Kappa) -> Result<Domain> {
        match ty {
            Type::Iota => Ok(Domain::Individuals(universe)),
            Type::O => Ok(Domain::Truth(kappa)),
            Type::Arrow(..) => Ok(Domain::Pred(Arc::new(Shape::new(ty, universe, kappa)?))),
        }
    }

    pub fn ty(&self) -> Type {
        match self {
            Domain::Individuals(_) => Type::Iota,
            Domain::Truth(_) => Type::O,
            Domain::Pred(s) => s.ty.clone(),
        }
    }

    /// Number of elements, or `None` when it does not fit in a `usize`.
    pub fn size(&self) -> Option<usize> {
        match self {
            Domain::Individuals(n) => Some(*n),
            Domain::Truth(k) => Some(k.domain_size()),
            Domain::Pred(s) => s.domain_size(),
        }
    }

    /// The `i`-th element in canonical order.
    pub fn element(&self, i: usize) -> Denotation {
        match self {
            Domain::Individuals(_) => Denotation::Individual(i),
            Domain::Truth(k) => Denotation::Truth(decode(*k, i as Code)),
            Domain::Pred(s) => Denotation::Table(Relation::from_index(s.clone(), i)),
        }
    }

    /// Position of `d` in canonical order.
    pub fn index_of(&self, d: &Denotation) -> Result<usize> {
        match (self, d) {
            (Domain::Individuals(n), Denotation::Individual(i)) if i < n => Ok(*i),
            (Domain::Truth(k), Denotation::Truth(v)) if k.contains(*v) => Ok(k.index_of(*v)),
            (Domain::Pred(s), _) => {
                let r = d.table().ok_or_else(|| mismatch(self, d))?;
                if **r.shape() != **s {
                    return Err(mismatch(self, d));
                }
                r.index().ok_or_else(|| Error::DomainTooLarge {
                    ty: s.ty.clone(),
                    size: s.domain_size_f64(),
                    limit: usize::MAX as u64,
                })
            }
            _ => Err(mismatch(self, d)),
        }
    }

    pub fn kappa(&self) -> Option<Kappa> {
        match self {
            Domain::Individuals(_) => None,
            Domain::Truth(k) => Some(*k),
            Domain::Pred(s) => Some(s.kappa),
        }
    }

    pub(crate) fn conforms(&self, d: &Denotation) -> bool {
        match (self, d) {
            (Domain::Individuals(n), Denotation::Individual(i)) => i < n,
            (Domain::Truth(k), Denotation::Truth(v)) => k.contains(*v),
            (Domain::Pred(s), Denotation::Table(r)) => r.shape().same_as(s),
            (Domain::Pred(s), Denotation::Suspended(l)) => l.shape().same_as(s),
            _ => false,
        }
    }
}

pub(crate) fn mismatch(dom: &Domain, d: &Denotation) -> Error {
    Error::TypeMismatch(format!(
        "{d:?} is not an element of the domain of {}",
        dom.ty()
    ))
}

/// Cell layout of a predicate table: argument domains and mixed-radix strides
/// (first argument most significant).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    ty: Type,
    args: Vec<Domain>,
    strides: Vec<usize>,
    len: usize,
    kappa: Kappa,
}

impl Shape {
    pub fn new(ty: &Type, universe: usize, kappa: Kappa) -> Result<Shape> {
        if kappa.get() > MAX_KAPPA {
            return Err(Error::TypeMismatch(format!(
                "kappa {kappa} exceeds the supported maximum {MAX_KAPPA}"
            )));
        }
        let Some(arg_tys) = ty.predicate_args() else {
            return Err(Error::TypeMismatch(format!("{ty} is not a predicate type")));
        };
        let mut args = Vec::with_capacity(arg_tys.len());
        let mut sizes = Vec::with_capacity(arg_tys.len());
        for a in arg_tys {
            if !a.is_enumerable() {
                return Err(Error::NonEnumerableType {
                    what: format!("an argument of {ty}"),
                    ty: a.clone(),
                });
            }
            let d = Domain::of(a, universe, kappa)?;
            let size = d.size().filter(|s| *s <= MAX_CELLS);
            let Some(size) = size else {
                return Err(Error::DomainTooLarge {
                    ty: a.clone(),
                    size: domain_size_f64(&d),
                    limit: MAX_CELLS as u64,
                });
            };
            sizes.push(size);
            args.push(d);
        }
        let mut strides = vec![1usize; sizes.len()];
        let mut len = 1usize;
        for i in (0..sizes.len()).rev() {
            strides[i] = len;
            len = len
                .checked_mul(sizes[i])
                .filter(|l| *l <= MAX_CELLS)
                .ok_or_else(|| Error::DomainTooLarge {
                    ty: ty.clone(),
                    size: sizes.iter().map(|s| *s as f64).product(),
                    limit: MAX_CELLS as u64,
                })?;
        }
        Ok(Shape {
            ty: ty.clone(),
            args,
            strides,
            len,
            kappa,
        })
    }

    pub fn ty(&self) -> &Type {
        &self.ty
    }

    pub fn args(&self) -> &[Domain] {
        &self.args
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    /// Number of cells.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn kappa(&self) -> Kappa {
        self.kappa
    }

    /// Number of distinct tables of this shape, `|V_κ|^len`.
    pub fn domain_size(&self) -> Option<usize> {
        u32::try_from(self.len)
            .ok()
            .and_then(|l| self.kappa.domain_size().checked_pow(l))
    }

    fn domain_size_f64(&self) -> f64 {
        (self.kappa.domain_size() as f64).powf(self.len as f64)
    }

    /// Cell index of an argument tuple given as element indices.
    pub fn cell(&self, args: &[usize]) -> usize {
        args.iter().zip(&self.strides).map(|(a, s)| a * s).sum()
    }

    /// Argument element indices of a cell.
    pub fn cell_args(&self, mut cell: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|s| {
                let a = cell / s;
                cell %= s;
                a
            })
            .collect()
    }

    /// Shape of the tables obtained by fixing the first `skip` arguments.
    pub fn suffix(&self, skip: usize) -> Shape {
        let mut ty = &self.ty;
        for _ in 0..skip {
            if let Type::Arrow(_, r) = ty {
                ty = r;
            }
        }
        let args = self.args[skip..].to_vec();
        let strides = self.strides[skip..].to_vec();
        let len = if skip == 0 {
            self.len
        } else {
            self.strides[skip - 1]
        };
        Shape {
            ty: ty.clone(),
            args,
            strides,
            len,
            kappa: self.kappa,
        }
    }

    pub(crate) fn same_as(&self, other: &Shape) -> bool {
        self == other
    }
}

fn domain_size_f64(d: &Domain) -> f64 {
    match d {
        Domain::Pred(s) => s.domain_size_f64(),
        other => other.size().unwrap_or(usize::MAX) as f64,
    }
}

/// Renders an element of an argument domain as used in cell keys.
pub fn render_element(dom: &Domain, index: usize, universe: &Universe) -> String {
    match dom {
        Domain::Individuals(_) => universe.name(index).to_string(),
        Domain::Truth(k) => decode(*k, index as Code).to_string(),
        Domain::Pred(s) => Relation::from_index(s.clone(), index).render(universe),
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} cells)", self.ty, self.len)
    }
}
