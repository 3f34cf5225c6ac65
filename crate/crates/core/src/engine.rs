//! The staged least-fixed-point procedure, the three-valued collapse, and the
//! staged greatest lower bound of a set of interpretations.
//!
//! Stage `α` starts from the previous stage's limit with every cell that has
//! not yet stabilized reset to `F_α`, and iterates `T_P` until two consecutive
//! iterates are `=_α`. Cells whose limit value has order exactly `α` are then
//! final. Cells that never stabilize receive `0`.

use std::fmt;
use std::sync::Arc;

use crate::domains::{decode, encode, Code};
use crate::error::{Error, Result};
use crate::semantics::{HerbrandSpace, Interpretation, Semantics};
use crate::syntax::{TExpr, TKind, TypedProgram};
use crate::truth::{Kappa, Level, Ordinal, TruthError, TruthValue};
use crate::types::Type;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KappaChoice {
    #[default]
    Auto,
    Explicit(Level),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IterationCap {
    /// `2 · cells + 2`.
    #[default]
    Auto,
    Explicit(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EngineConfig {
    pub kappa: KappaChoice,
    pub iteration_cap: IterationCap,
    pub trace: bool,
    /// Report [`TruthError::LevelOverflow`] instead of assigning `0` when the
    /// stages run out before the procedure has provably settled.
    pub strict_kappa: bool,
}

impl EngineConfig {
    pub fn with_kappa(kappa: Level) -> EngineConfig {
        EngineConfig {
            kappa: KappaChoice::Explicit(kappa),
            ..EngineConfig::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    Iterate {
        stage: Level,
        iteration: usize,
        changed: usize,
    },
    StageEnd {
        stage: Level,
        stabilized: Vec<String>,
    },
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEvent::Iterate {
                stage,
                iteration,
                changed,
            } => {
                write!(f, "stage {stage} iteration {iteration}: {changed} changed")
            }
            TraceEvent::StageEnd { stage, stabilized } => {
                write!(
                    f,
                    "stage {stage} end: stabilized [{}]",
                    stabilized.join(", ")
                )
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub model: Interpretation,
    /// Per predicate and cell: the stage at which the cell stabilized, or
    /// `None` when it was assigned `0`.
    pub stabilized_at: Vec<Vec<Option<Level>>>,
    pub stages_used: Level,
    pub iterations: usize,
    pub kappa: Kappa,
    pub trace: Vec<TraceEvent>,
}

impl SolveResult {
    pub fn cells(&self) -> usize {
        self.stabilized_at.iter().map(Vec::len).sum()
    }
}

/// Stage bound for `p`: one level per cell of each predicate with only
/// individual arguments, one per remaining predicate, plus one.
pub fn auto_kappa(p: &TypedProgram) -> Result<Level> {
    let sig = p.signature();
    if let Some(f) = sig.functions.keys().next() {
        return Err(Error::InfiniteUniverse(f.clone()));
    }
    let u = sig.constants.len().max(1);
    let mut total: u64 = 1;
    for ty in sig.predicates.values() {
        let args = ty.predicate_args().unwrap_or_default();
        let n = if args.iter().all(|a| **a == Type::Iota) {
            (u as u64).saturating_pow(args.len() as u32)
        } else {
            1
        };
        total = total.saturating_add(n);
    }
    Ok(total.min(crate::domains::MAX_KAPPA as u64) as Level)
}

/// True when every predicate takes only individuals and every bound variable
/// is an individual.
pub fn is_first_order(p: &TypedProgram) -> bool {
    let preds_ok = p.signature().predicates.values().all(|t| {
        t.predicate_args()
            .is_some_and(|a| a.iter().all(|x| **x == Type::Iota))
    });
    preds_ok
        && p.clauses.iter().all(|c| {
            let mut ok = true;
            c.body.walk(&mut |e| {
                if let TKind::Lambda(b, _) | TKind::Exists(b, _) = &e.kind {
                    ok &= b.ty == Type::Iota;
                }
            });
            ok
        })
}

/// Deepest nesting of `~` in any clause body.
pub fn negation_depth(p: &TypedProgram) -> Level {
    fn depth(e: &TExpr) -> Level {
        match &e.kind {
            TKind::Not(x) => 1 + depth(x),
            TKind::App(a, b) | TKind::And(a, b) | TKind::Or(a, b) | TKind::Eq(a, b) => {
                depth(a).max(depth(b))
            }
            TKind::Lambda(_, x) | TKind::Exists(_, x) => depth(x),
            TKind::FunApp(_, args) => args.iter().map(depth).max().unwrap_or(0),
            _ => 0,
        }
    }
    p.clauses.iter().map(|c| depth(&c.body)).max().unwrap_or(0)
}

/// Resolves the configured κ for `p`.
pub fn resolve_kappa(p: &TypedProgram, cfg: &EngineConfig) -> Result<Kappa> {
    let k = match cfg.kappa {
        KappaChoice::Auto => auto_kappa(p)?,
        KappaChoice::Explicit(k) => k,
    };
    Ok(Kappa::new(k)?)
}

/// The minimum model `M_P` of a type-checked program.
pub fn least_model(p: &TypedProgram, cfg: &EngineConfig) -> Result<SolveResult> {
    let kappa = resolve_kappa(p, cfg)?;
    let sem = Semantics::new(p, kappa)?;
    solve(&sem, cfg)
}

/// Runs the staged procedure on prepared semantics (κ is taken from `sem`).
pub fn solve(sem: &Semantics, cfg: &EngineConfig) -> Result<SolveResult> {
    let space = sem.space().clone();
    let kappa = sem.kappa();
    let k = kappa.get();
    let first_order = is_first_order(sem.program());
    let depth = negation_depth(sem.program());
    let total = space.total_cells();
    let cap = match cfg.iteration_cap {
        IterationCap::Auto => 2 * total + 2,
        IterationCap::Explicit(n) => n,
    };

    let mut tables: Vec<Vec<Code>> = space
        .preds()
        .iter()
        .map(|p| vec![0; p.shape.len()])
        .collect();
    let mut stabilized: Vec<Vec<Option<Level>>> =
        tables.iter().map(|t| vec![None; t.len()]).collect();
    let mut open: Vec<Vec<usize>> = tables.iter().map(|t| (0..t.len()).collect()).collect();
    let mut trace = Vec::new();
    let mut iterations = 0usize;
    let mut max_stable: Option<Level> = None;
    let mut stages_used = 0;
    let mut settled = false;

    for alpha in 0..k {
        stages_used = alpha + 1;
        let reset = encode(kappa, TruthValue::False(alpha));
        for (p, cells) in open.iter().enumerate() {
            for &c in cells {
                tables[p][c] = reset;
            }
        }
        let mut iteration = 0;
        loop {
            iteration += 1;
            iterations += 1;
            if iteration > cap {
                return Err(Error::StageDivergence { stage: alpha, cap });
            }
            let current = snapshot(&space, &tables);
            let mut next = tables.clone();
            {
                let mut ce = sem.cell_evaluator(&current);
                for (p, cells) in open.iter().enumerate() {
                    for &c in cells {
                        next[p][c] = ce.eval(p, c);
                    }
                }
            }
            let mut changed = 0;
            let mut settled_stage = true;
            for (p, cells) in open.iter().enumerate() {
                for &c in cells {
                    let (old, new) = (decode(kappa, tables[p][c]), decode(kappa, next[p][c]));
                    if old != new {
                        changed += 1;
                    }
                    if !old.sq_alpha(new, alpha) {
                        return Err(Error::MonotonicityViolation {
                            stage: alpha,
                            iteration,
                            cell: space.cell_label(p, c),
                        });
                    }
                    settled_stage &= old.eq_alpha(new, alpha);
                }
            }
            tables = next;
            if cfg.trace {
                trace.push(TraceEvent::Iterate {
                    stage: alpha,
                    iteration,
                    changed,
                });
            }
            if settled_stage {
                break;
            }
        }

        let mut newly = Vec::new();
        for (p, cells) in open.iter_mut().enumerate() {
            cells.retain(|&c| {
                if decode(kappa, tables[p][c]).order() == Ordinal::Finite(alpha) {
                    stabilized[p][c] = Some(alpha);
                    newly.push(space.cell_label(p, c));
                    false
                } else {
                    true
                }
            });
        }
        if !newly.is_empty() {
            max_stable = Some(alpha);
        }
        let stabilized_any = !newly.is_empty();
        if cfg.trace {
            trace.push(TraceEvent::StageEnd {
                stage: alpha,
                stabilized: newly,
            });
        }
        if open.iter().all(Vec::is_empty) {
            settled = true;
            break;
        }
        if first_order && !stabilized_any && alpha > max_stable.unwrap_or(0) + depth {
            settled = true;
            break;
        }
    }

    if !settled && cfg.strict_kappa && open.iter().any(|c| !c.is_empty()) {
        return Err(TruthError::LevelOverflow {
            level: k as u64,
            kappa: k,
        }
        .into());
    }
    let zero = encode(kappa, TruthValue::Zero);
    for (p, cells) in open.iter().enumerate() {
        for &c in cells {
            tables[p][c] = zero;
        }
    }
    let model = snapshot(&space, &tables);
    let check = sem.tp_step(&model);
    if let Some((p, c)) = model
        .cells()
        .find(|&(p, c)| check.code(p, c) != model.code(p, c))
    {
        return Err(Error::NotFixedPoint(space.cell_label(p, c)));
    }
    Ok(SolveResult {
        model,
        stabilized_at: stabilized,
        stages_used,
        iterations,
        kappa,
        trace,
    })
}

fn snapshot(space: &Arc<HerbrandSpace>, tables: &[Vec<Code>]) -> Interpretation {
    Interpretation::from_tables(space, tables.iter().map(|t| t.as_slice().into()).collect())
}

/// Collapses every `T_α` to `T0` and every `F_α` to `F0`.
pub fn collapse(m: &Interpretation) -> Interpretation {
    m.collapse()
}

/// The `⊑`-greatest lower bound of a nonempty set of interpretations, built
/// stage by stage: at each `α` the members agreeing (`=_β`) with every
/// earlier stage result are combined with `⨅_α`; the final result is the
/// pointwise meet of all stage results.
pub fn glb_interpretations(ms: &[Interpretation]) -> Result<Interpretation> {
    let first = ms.first().ok_or(Error::EmptySet)?;
    let space = first.space().clone();
    for m in ms {
        if !m.same_space(first) {
            return Err(Error::SignatureMismatch(
                "interpretations over different spaces".into(),
            ));
        }
    }
    let kappa = first.kappa();
    let mut stage_results: Vec<Interpretation> = Vec::new();
    let mut alive: Vec<&Interpretation> = ms.iter().collect();
    let mut column = Vec::with_capacity(ms.len());
    for alpha in kappa.alphas() {
        if alpha > 0 {
            let prev = &stage_results[alpha as usize - 1];
            let beta = alpha - 1;
            alive.retain(|m| crate::semantics::interp_eq_alpha(m, prev, beta).unwrap_or(false));
        }
        let x = if alive.is_empty() {
            Interpretation::from_fn(&space, |p, c| {
                crate::truth::meet(stage_results.iter().map(|r| r.get(p, c)))
            })
        } else {
            let mut err = None;
            let x = Interpretation::from_fn(&space, |p, c| {
                column.clear();
                column.extend(alive.iter().map(|m| m.get(p, c)));
                kappa
                    .glb_alpha_saturating(&column, alpha)
                    .unwrap_or_else(|e| {
                        err.get_or_insert(e);
                        TruthValue::Zero
                    })
            });
            if let Some(e) = err {
                return Err(e.into());
            }
            x
        };
        stage_results.push(x);
    }
    Ok(Interpretation::from_fn(&space, |p, c| {
        crate::truth::meet(stage_results.iter().map(|r| r.get(p, c)))
    }))
}
