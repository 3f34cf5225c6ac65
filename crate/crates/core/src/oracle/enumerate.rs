use std::sync::Arc;

use crate::domains::{is_alpha_monotone, Code, Domain};
use crate::engine::glb_interpretations;
use crate::semantics::{HerbrandSpace, Interpretation, Semantics};
use crate::syntax::TypedProgram;
use crate::truth::Kappa;
use crate::{Error, Result};

/// Enumeration budget used when `EXTENSIA_BUDGET` is unset.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// The enumeration budget, read from `EXTENSIA_BUDGET` when set.
pub fn default_budget() -> u64 {
    std::env::var("EXTENSIA_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

enum Choices {
    /// Every table over the predicate's cells.
    All { cells: usize, count: usize },
    /// The α-monotone tables of a higher-order predicate.
    Listed(Vec<Arc<[Code]>>),
}

impl Choices {
    fn count(&self) -> usize {
        match self {
            Choices::All { count, .. } => *count,
            Choices::Listed(v) => v.len(),
        }
    }

    fn table(&self, index: usize, base: usize) -> Arc<[Code]> {
        match self {
            Choices::All { cells, .. } => {
                let mut t = vec![0; *cells];
                let mut v = index;
                for d in t.iter_mut().rev() {
                    *d = (v % base) as Code;
                    v /= base;
                }
                t.into()
            }
            Choices::Listed(v) => v[index].clone(),
        }
    }
}

/// A pull-based stream of every interpretation over a space, in canonical
/// order: the first predicate varies slowest, and within a table the first
/// cell varies slowest. Higher-order predicates range over their
/// α-monotone tables only.
pub struct Interpretations {
    space: Arc<HerbrandSpace>,
    choices: Vec<Choices>,
    counter: Vec<usize>,
    done: bool,
}

/// Streams all interpretations over `space`, refusing when `|V|^N` exceeds
/// `budget`.
pub fn enumerate_interpretations(
    space: &Arc<HerbrandSpace>,
    budget: u64,
) -> Result<Interpretations> {
    let base = space.kappa().domain_size();
    let needed = (base as f64).powi(space.total_cells() as i32);
    if needed > budget as f64 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut choices = Vec::with_capacity(space.preds().len());
    for info in space.preds() {
        let cells = info.shape.len();
        let count = base.pow(cells as u32);
        if info.ty.is_higher_order() {
            let dom = Domain::Pred(info.shape.clone());
            let mut listed = Vec::new();
            for i in 0..count {
                let d = dom.element(i);
                if is_alpha_monotone(&dom, &d)? {
                    listed.push(d.table().expect("predicate element").shared_codes().clone());
                }
            }
            choices.push(Choices::Listed(listed));
        } else {
            choices.push(Choices::All { cells, count });
        }
    }
    let done = choices.iter().any(|c| c.count() == 0);
    let counter = vec![0; choices.len()];
    Ok(Interpretations {
        space: space.clone(),
        choices,
        counter,
        done,
    })
}

impl Iterator for Interpretations {
    type Item = Interpretation;

    fn next(&mut self) -> Option<Interpretation> {
        if self.done {
            return None;
        }
        let base = self.space.kappa().domain_size();
        let tables = self
            .choices
            .iter()
            .zip(&self.counter)
            .map(|(c, &i)| c.table(i, base))
            .collect();
        let item = Interpretation::from_tables(&self.space, tables);
        self.done = true;
        for (digit, c) in self.counter.iter_mut().zip(&self.choices).rev() {
            *digit += 1;
            if *digit < c.count() {
                self.done = false;
                break;
            }
            *digit = 0;
        }
        Some(item)
    }
}

/// Every enumerated interpretation that is a model of the program.
pub fn enumerate_models(sem: &Semantics, budget: u64) -> Result<Vec<Interpretation>> {
    let mut models = Vec::new();
    for m in enumerate_interpretations(sem.space(), budget)? {
        if sem.is_model(&m)? {
            models.push(m);
        }
    }
    Ok(models)
}

/// The minimum model as the greatest lower bound of all models, checked to
/// be a model itself.
pub fn brute_min_model(p: &TypedProgram, kappa: Kappa, budget: u64) -> Result<Interpretation> {
    let sem = Semantics::new(p, kappa)?;
    let models = enumerate_models(&sem, budget)?;
    if models.is_empty() {
        return Err(Error::NoModels);
    }
    let glb = glb_interpretations(&models)?;
    if !sem.is_model(&glb)? {
        return Err(Error::Invariant(
            "the greatest lower bound of all models is not a model".into(),
        ));
    }
    Ok(glb)
}
