use std::fmt;
use std::sync::{Arc, OnceLock};

use super::{mismatch, Domain, Relation, Shape, Universe};
use crate::error::{Error, Result};
use crate::truth::{Kappa, Level, TruthValue};
use crate::types::Type;

/// Upper bound on the number of elements [`enumerate_domain`] materializes.
pub const ENUMERATION_LIMIT: usize = 10_000_000;

/// A table computed on demand.
pub trait Lazy: Send + Sync {
    fn shape(&self) -> &Arc<Shape>;
    fn compute(&self) -> Relation;
}

/// A lazily tabulated predicate denotation; forcing happens at most once.
#[derive(Clone)]
pub struct Suspension {
    inner: Arc<SuspensionInner>,
}

struct SuspensionInner {
    lazy: Box<dyn Lazy>,
    memo: OnceLock<Relation>,
}

impl Suspension {
    pub fn new(lazy: impl Lazy + 'static) -> Suspension {
        Suspension {
            inner: Arc::new(SuspensionInner {
                lazy: Box::new(lazy),
                memo: OnceLock::new(),
            }),
        }
    }

    pub fn shape(&self) -> &Arc<Shape> {
        self.inner.lazy.shape()
    }

    pub fn force(&self) -> &Relation {
        self.inner.memo.get_or_init(|| self.inner.lazy.compute())
    }

    pub fn is_forced(&self) -> bool {
        self.inner.memo.get().is_some()
    }
}

impl fmt::Debug for Suspension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.inner.memo.get() {
            Some(r) => write!(f, "Suspended({r:?})"),
            None => write!(f, "Suspended(<{}>)", self.shape().ty()),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Denotation {
    /// Index into the universe.
    Individual(usize),
    Truth(TruthValue),
    Table(Relation),
    Suspended(Suspension),
}

impl Denotation {
    /// The table behind a predicate denotation, forcing suspensions.
    pub fn table(&self) -> Option<Relation> {
        match self {
            Denotation::Table(r) => Some(r.clone()),
            Denotation::Suspended(s) => Some(s.force().clone()),
            _ => None,
        }
    }

    pub fn truth(&self) -> Option<TruthValue> {
        match self {
            Denotation::Truth(v) => Some(*v),
            _ => None,
        }
    }

    pub fn individual(&self) -> Option<usize> {
        match self {
            Denotation::Individual(i) => Some(*i),
            _ => None,
        }
    }

    /// Replaces a suspension by its table.
    pub fn forced(&self) -> Denotation {
        match self {
            Denotation::Suspended(s) => Denotation::Table(s.force().clone()),
            other => other.clone(),
        }
    }

    pub fn render(&self, universe: &Universe) -> String {
        match self {
            Denotation::Individual(i) => universe.name(*i).to_string(),
            Denotation::Truth(v) => v.to_string(),
            Denotation::Table(r) => r.render(universe),
            Denotation::Suspended(s) => s.force().render(universe),
        }
    }
}

impl PartialEq for Denotation {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Denotation::Individual(a), Denotation::Individual(b)) => a == b,
            (Denotation::Truth(a), Denotation::Truth(b)) => a == b,
            _ => match (self.table(), other.table()) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            },
        }
    }
}

/// All elements of an enumerable type, in canonical order.
pub fn enumerate_domain(ty: &Type, universe: &Universe, kappa: Kappa) -> Result<Vec<Denotation>> {
    if !ty.is_enumerable() {
        return Err(Error::NonEnumerableType {
            what: "the enumerated type".into(),
            ty: ty.clone(),
        });
    }
    let dom = Domain::of(ty, universe.len(), kappa)?;
    match dom.size() {
        Some(n) if n <= ENUMERATION_LIMIT => Ok((0..n).map(|i| dom.element(i)).collect()),
        _ => Err(Error::DomainTooLarge {
            ty: ty.clone(),
            size: f64::INFINITY,
            limit: ENUMERATION_LIMIT as u64,
        }),
    }
}

enum Operand {
    Ind(usize),
    Val(TruthValue),
    Tab(Relation),
}

fn operand(dom: &Domain, d: &Denotation) -> Result<Operand> {
    if !dom.conforms(d) {
        return Err(mismatch(dom, d));
    }
    Ok(match d {
        Denotation::Individual(i) => Operand::Ind(*i),
        Denotation::Truth(v) => Operand::Val(*v),
        _ => Operand::Tab(d.table().expect("conforming predicate denotation")),
    })
}

fn compare(
    dom: &Domain,
    a: &Denotation,
    b: &Denotation,
    on_values: impl Fn(TruthValue, TruthValue) -> bool,
) -> Result<bool> {
    Ok(match (operand(dom, a)?, operand(dom, b)?) {
        (Operand::Ind(x), Operand::Ind(y)) => x == y,
        (Operand::Val(x), Operand::Val(y)) => on_values(x, y),
        (Operand::Tab(x), Operand::Tab(y)) => {
            x.values().zip(y.values()).all(|(v, w)| on_values(v, w))
        }
        _ => unreachable!("operands conform to the same domain"),
    })
}

/// Pointwise `≤`; individuals are only related to themselves.
pub fn den_leq(dom: &Domain, a: &Denotation, b: &Denotation) -> Result<bool> {
    compare(dom, a, b, |v, w| v <= w)
}

/// Pointwise `⊑_α`.
pub fn den_sq_alpha(dom: &Domain, a: &Denotation, b: &Denotation, alpha: Level) -> Result<bool> {
    compare(dom, a, b, |v, w| v.sq_alpha(w, alpha))
}

/// Pointwise `=_α`.
pub fn den_eq_alpha(dom: &Domain, a: &Denotation, b: &Denotation, alpha: Level) -> Result<bool> {
    compare(dom, a, b, |v, w| v.eq_alpha(w, alpha))
}

/// Applies `f` entrywise to a family of truth values or tables of one domain.
fn pointwise(
    dom: &Domain,
    ds: &[Denotation],
    f: impl Fn(Kappa, &[TruthValue]) -> Result<TruthValue>,
) -> Result<Denotation> {
    match dom {
        Domain::Individuals(_) => Err(Error::TypeMismatch(
            "individuals do not form a lattice".into(),
        )),
        Domain::Truth(k) => {
            let mut vals = Vec::with_capacity(ds.len());
            for d in ds {
                match operand(dom, d)? {
                    Operand::Val(v) => vals.push(v),
                    _ => unreachable!(),
                }
            }
            Ok(Denotation::Truth(k.truncate(f(*k, &vals)?)))
        }
        Domain::Pred(shape) => {
            let mut tables = Vec::with_capacity(ds.len());
            for d in ds {
                match operand(dom, d)? {
                    Operand::Tab(r) => tables.push(r),
                    _ => unreachable!(),
                }
            }
            let k = shape.kappa();
            let mut column = Vec::with_capacity(tables.len());
            let mut out = Vec::with_capacity(shape.len());
            for cell in 0..shape.len() {
                column.clear();
                column.extend(tables.iter().map(|t| t.get(cell)));
                out.push(f(k, &column)?);
            }
            Ok(Denotation::Table(Relation::from_values(shape.clone(), out)))
        }
    }
}

/// Pointwise least upper bound; the empty join is the bottom.
pub fn den_join(dom: &Domain, ds: &[Denotation]) -> Result<Denotation> {
    pointwise(dom, ds, |_, vs| Ok(crate::truth::join(vs.iter().copied())))
}

/// Pointwise greatest lower bound; the empty meet is the top.
pub fn den_meet(dom: &Domain, ds: &[Denotation]) -> Result<Denotation> {
    pointwise(dom, ds, |_, vs| Ok(crate::truth::meet(vs.iter().copied())))
}

/// Pointwise `d|_α` in the truncated domain.
pub fn den_restrict(dom: &Domain, d: &Denotation, alpha: Level) -> Result<Denotation> {
    pointwise(dom, std::slice::from_ref(d), |k, vs| {
        Ok(k.restrict_saturating(vs[0], alpha)?)
    })
}

/// Pointwise `⨆_α` in the truncated domain.
pub fn den_lub_alpha(dom: &Domain, ds: &[Denotation], alpha: Level) -> Result<Denotation> {
    pointwise(dom, ds, |k, vs| Ok(k.lub_alpha_saturating(vs, alpha)?))
}

/// Pointwise `⨅_α` in the truncated domain.
pub fn den_glb_alpha(dom: &Domain, ds: &[Denotation], alpha: Level) -> Result<Denotation> {
    pointwise(dom, ds, |k, vs| Ok(k.glb_alpha_saturating(vs, alpha)?))
}

fn result_domain(shape: &Shape) -> Domain {
    if shape.arity() == 1 {
        Domain::Truth(shape.kappa())
    } else {
        Domain::Pred(Arc::new(shape.suffix(1)))
    }
}

/// Checks that `d`, viewed as a curried function, maps `⊑_α`-related
/// arguments to `⊑_α`-related results, at every level of currying.
pub fn check_alpha_monotone(dom: &Domain, d: &Denotation, alpha: Level) -> Result<bool> {
    let Domain::Pred(shape) = dom else {
        return Ok(true);
    };
    if shape.arity() == 0 {
        return Ok(true);
    }
    let table = match operand(dom, d)? {
        Operand::Tab(r) => r,
        _ => unreachable!(),
    };
    let arg_dom = &shape.args()[0];
    let n = arg_dom.size().ok_or_else(|| Error::NonEnumerableType {
        what: "an argument".into(),
        ty: arg_dom.ty(),
    })?;
    let args: Vec<Denotation> = (0..n).map(|i| arg_dom.element(i)).collect();
    let results: Vec<Denotation> = (0..n).map(|i| table.apply(i)).collect();
    let res_dom = result_domain(shape);
    for r in &results {
        if !check_alpha_monotone(&res_dom, r, alpha)? {
            return Ok(false);
        }
    }
    for (x, fx) in args.iter().zip(&results) {
        for (y, fy) in args.iter().zip(&results) {
            if den_sq_alpha(arg_dom, x, y, alpha)? && !den_sq_alpha(&res_dom, fx, fy, alpha)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// [`check_alpha_monotone`] at every `α < κ`.
pub fn is_alpha_monotone(dom: &Domain, d: &Denotation) -> Result<bool> {
    let Some(k) = dom.kappa() else {
        return Ok(true);
    };
    for alpha in k.alphas() {
        if !check_alpha_monotone(dom, d, alpha)? {
            return Ok(false);
        }
    }
    Ok(true)
}
