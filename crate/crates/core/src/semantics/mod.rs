//! Herbrand interpretations, expression evaluation and the immediate
//! consequence operator `T_P`.

mod eval;
mod lower;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{Map, Value};

use self::eval::Evaluator;
use self::lower::{Lowerer, Node, TabInfo};
use crate::domains::{
    decode, encode, Code, Denotation, Domain, Lazy, Relation, Shape, Suspension, Universe,
};
use crate::error::{Error, Result};
use crate::syntax::{Signature, TExpr, TypedProgram};
use crate::truth::{Kappa, Level, TruthValue};
use crate::types::Type;

#[derive(Debug, Clone)]
pub struct PredInfo {
    pub name: String,
    pub ty: Type,
    pub shape: Arc<Shape>,
    sizes: Vec<usize>,
}

/// The predicates of a program with their cell layouts over a universe.
#[derive(Debug)]
pub struct HerbrandSpace {
    universe: Universe,
    kappa: Kappa,
    preds: Vec<PredInfo>,
    index: HashMap<String, usize>,
}

impl HerbrandSpace {
    pub fn new(sig: &Signature, kappa: Kappa) -> Result<HerbrandSpace> {
        let universe = Universe::from_signature(sig)?;
        let mut preds = Vec::with_capacity(sig.predicates.len());
        let mut index = HashMap::new();
        for (name, ty) in &sig.predicates {
            let shape = Arc::new(Shape::new(ty, universe.len(), kappa)?);
            let sizes = shape
                .args()
                .iter()
                .map(|d| d.size().expect("argument domains are bounded"))
                .collect();
            index.insert(name.clone(), preds.len());
            preds.push(PredInfo {
                name: name.clone(),
                ty: ty.clone(),
                shape,
                sizes,
            });
        }
        Ok(HerbrandSpace {
            universe,
            kappa,
            preds,
            index,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn kappa(&self) -> Kappa {
        self.kappa
    }

    pub fn preds(&self) -> &[PredInfo] {
        &self.preds
    }

    pub fn pred_id(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn total_cells(&self) -> usize {
        self.preds.iter().map(|p| p.shape.len()).sum()
    }

    /// Human-readable cell name such as `p(a,b)`, or `p` for a proposition.
    pub fn cell_label(&self, pred: usize, cell: usize) -> String {
        let p = &self.preds[pred];
        if p.shape.arity() == 0 {
            p.name.clone()
        } else {
            format!(
                "{}{}",
                p.name,
                Relation::cell_key(&p.shape, cell, &self.universe)
            )
        }
    }

    /// Finds a cell from its label, e.g. `q(b)`.
    pub fn find_cell(&self, label: &str) -> Option<(usize, usize)> {
        let name = label.split('(').next()?.trim();
        let pred = self.pred_id(name)?;
        (0..self.preds[pred].shape.len())
            .find(|&c| self.cell_label(pred, c) == label)
            .map(|c| (pred, c))
    }

    fn same_as(&self, other: &HerbrandSpace) -> bool {
        std::ptr::eq(self, other)
            || (self.kappa == other.kappa
                && self.universe == other.universe
                && self.preds.len() == other.preds.len()
                && self
                    .preds
                    .iter()
                    .zip(&other.preds)
                    .all(|(a, b)| a.name == b.name && a.shape == b.shape))
    }

    fn neg_table(&self) -> Vec<Code> {
        let k = self.kappa;
        k.values().map(|v| encode(k, k.neg_saturating(v))).collect()
    }
}

/// An assignment of a truth value to every cell of every predicate.
#[derive(Clone)]
pub struct Interpretation {
    space: Arc<HerbrandSpace>,
    tables: Vec<Arc<[Code]>>,
}

impl Interpretation {
    pub fn constant(space: &Arc<HerbrandSpace>, v: TruthValue) -> Interpretation {
        let c = encode(space.kappa, v);
        let tables = space
            .preds
            .iter()
            .map(|p| vec![c; p.shape.len()].into())
            .collect();
        Interpretation {
            space: space.clone(),
            tables,
        }
    }

    /// The interpretation assigning `F0` everywhere.
    pub fn bottom(space: &Arc<HerbrandSpace>) -> Interpretation {
        Interpretation::constant(space, TruthValue::FALSE)
    }

    pub fn from_fn(
        space: &Arc<HerbrandSpace>,
        mut f: impl FnMut(usize, usize) -> TruthValue,
    ) -> Interpretation {
        let k = space.kappa;
        let tables = space
            .preds
            .iter()
            .enumerate()
            .map(|(p, info)| {
                (0..info.shape.len())
                    .map(|c| encode(k, f(p, c)))
                    .collect::<Vec<_>>()
                    .into()
            })
            .collect();
        Interpretation {
            space: space.clone(),
            tables,
        }
    }

    pub(crate) fn from_tables(
        space: &Arc<HerbrandSpace>,
        tables: Vec<Arc<[Code]>>,
    ) -> Interpretation {
        debug_assert!(tables
            .iter()
            .zip(&space.preds)
            .all(|(t, p)| t.len() == p.shape.len()));
        Interpretation {
            space: space.clone(),
            tables,
        }
    }

    pub fn space(&self) -> &Arc<HerbrandSpace> {
        &self.space
    }

    pub fn kappa(&self) -> Kappa {
        self.space.kappa
    }

    /// Whether both interpretations range over the same cells and κ.
    pub fn same_space(&self, other: &Interpretation) -> bool {
        self.space.same_as(&other.space)
    }

    pub fn code(&self, pred: usize, cell: usize) -> Code {
        self.tables[pred][cell]
    }

    pub fn get(&self, pred: usize, cell: usize) -> TruthValue {
        decode(self.space.kappa, self.tables[pred][cell])
    }

    /// Value of a cell given by label, e.g. `get_cell("q(b)")`.
    pub fn get_cell(&self, label: &str) -> Option<TruthValue> {
        self.space.find_cell(label).map(|(p, c)| self.get(p, c))
    }

    pub fn relation(&self, pred: usize) -> Relation {
        Relation::new(
            self.space.preds[pred].shape.clone(),
            self.tables[pred].clone(),
        )
    }

    /// `(pred, cell)` pairs in canonical order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.tables
            .iter()
            .enumerate()
            .flat_map(|(p, t)| (0..t.len()).map(move |c| (p, c)))
    }

    pub fn values(&self) -> impl Iterator<Item = TruthValue> + '_ {
        self.cells().map(|(p, c)| self.get(p, c))
    }

    pub fn map(&self, mut f: impl FnMut(TruthValue) -> TruthValue) -> Interpretation {
        Interpretation::from_fn(&self.space, |p, c| f(self.get(p, c)))
    }

    /// Projects onto the three values `T0`, `F0` and `0`.
    pub fn collapse(&self) -> Interpretation {
        self.map(TruthValue::collapse)
    }

    /// `{pred: {cell-key: {"sign":…,"level":…}}}`.
    pub fn to_json(&self) -> Value {
        self.json_with(|v| serde_json::to_value(v).expect("truth values serialize"))
    }

    /// `{pred: {cell-key: "True"|"False"|"Undef"}}`.
    pub fn to_collapsed_json(&self) -> Value {
        self.json_with(|v| Value::String(v.three_valued().label().to_string()))
    }

    fn json_with(&self, f: impl Fn(TruthValue) -> Value) -> Value {
        let mut out = Map::new();
        for (p, info) in self.space.preds.iter().enumerate() {
            let mut cells = Map::new();
            for c in 0..info.shape.len() {
                cells.insert(
                    Relation::cell_key(&info.shape, c, &self.space.universe),
                    f(self.get(p, c)),
                );
            }
            out.insert(info.name.clone(), Value::Object(cells));
        }
        Value::Object(out)
    }
}

impl PartialEq for Interpretation {
    fn eq(&self, other: &Self) -> bool {
        self.space.same_as(&other.space) && self.tables == other.tables
    }
}

impl Eq for Interpretation {}

impl fmt::Debug for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Interpretation {{ ")?;
        for (i, (p, c)) in self.cells().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {}", self.space.cell_label(p, c), self.get(p, c))?;
        }
        f.write_str(" }")
    }
}

impl fmt::Display for Interpretation {
    /// One `label = value` line per cell.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, c) in self.cells() {
            writeln!(f, "{} = {}", self.space.cell_label(p, c), self.get(p, c))?;
        }
        Ok(())
    }
}

fn check_same(i: &Interpretation, j: &Interpretation) -> Result<()> {
    if i.space.same_as(&j.space) {
        Ok(())
    } else {
        Err(Error::SignatureMismatch(
            "interpretations over different predicates, universes or kappa".into(),
        ))
    }
}

fn all_cells(
    i: &Interpretation,
    j: &Interpretation,
    f: impl Fn(TruthValue, TruthValue) -> bool,
) -> Result<bool> {
    check_same(i, j)?;
    let k = i.kappa();
    Ok(i.tables.iter().zip(&j.tables).all(|(a, b)| {
        a.iter()
            .zip(b.iter())
            .all(|(&x, &y)| f(decode(k, x), decode(k, y)))
    }))
}

/// Pointwise `I ≤ J`.
pub fn interp_leq(i: &Interpretation, j: &Interpretation) -> Result<bool> {
    check_same(i, j)?;
    Ok(i.tables
        .iter()
        .zip(&j.tables)
        .all(|(a, b)| a.iter().zip(b.iter()).all(|(x, y)| x <= y)))
}

/// Pointwise `I ⊑_α J`.
pub fn interp_sq_alpha(i: &Interpretation, j: &Interpretation, alpha: Level) -> Result<bool> {
    all_cells(i, j, |v, w| v.sq_alpha(w, alpha))
}

/// Pointwise `I =_α J`.
pub fn interp_eq_alpha(i: &Interpretation, j: &Interpretation, alpha: Level) -> Result<bool> {
    all_cells(i, j, |v, w| v.eq_alpha(w, alpha))
}

/// The global order `I ⊑ J`: equal, or `I ⊏_α J` at the least `α` where they
/// are not `=_α`.
pub fn interp_sq(i: &Interpretation, j: &Interpretation) -> Result<bool> {
    check_same(i, j)?;
    if i.tables == j.tables {
        return Ok(true);
    }
    for alpha in i.kappa().alphas() {
        if !interp_eq_alpha(i, j, alpha)? {
            return interp_sq_alpha(i, j, alpha);
        }
    }
    Ok(false)
}

/// Bindings of argument variables to denotations.
#[derive(Debug, Clone, Default)]
pub struct State {
    bindings: Vec<(String, Type, Denotation)>,
}

impl State {
    pub fn new() -> State {
        State::default()
    }

    /// `s[V/d]`.
    pub fn bind(mut self, name: impl Into<String>, ty: Type, d: Denotation) -> State {
        let name = name.into();
        self.bindings.retain(|(n, _, _)| *n != name);
        self.bindings.push((name, ty, d));
        self
    }

    pub fn get(&self, name: &str) -> Option<&Denotation> {
        self.bindings
            .iter()
            .find(|(n, _, _)| n == name)
            .map(|(_, _, d)| d)
    }

    pub fn types(&self) -> Vec<(String, Type)> {
        self.bindings
            .iter()
            .map(|(n, t, _)| (n.clone(), t.clone()))
            .collect()
    }
}

struct LoweredClause {
    body: Node,
}

/// A type-checked program prepared for evaluation at a fixed κ.
pub struct Semantics {
    space: Arc<HerbrandSpace>,
    program: TypedProgram,
    clauses: Vec<LoweredClause>,
    by_pred: Vec<Vec<usize>>,
    slots: usize,
    neg: Vec<Code>,
}

impl Semantics {
    /// Rejects function symbols and non-enumerable types, then lowers every clause.
    pub fn new(program: &TypedProgram, kappa: Kappa) -> Result<Semantics> {
        if let Some(f) = program.signature().functions.keys().next() {
            return Err(Error::InfiniteUniverse(f.clone()));
        }
        program.check_enumerable()?;
        let space = Arc::new(HerbrandSpace::new(program.signature(), kappa)?);
        let mut clauses = Vec::with_capacity(program.clauses.len());
        let mut by_pred = vec![Vec::new(); space.preds.len()];
        let mut slots = 0;
        for c in &program.clauses {
            let mut lw = Lowerer::new(&space);
            let body = lw.truth(&c.body)?;
            slots = slots.max(lw.slots);
            let pred = space
                .pred_id(&c.head)
                .expect("typechecked heads are declared");
            by_pred[pred].push(clauses.len());
            clauses.push(LoweredClause { body });
        }
        let neg = space.neg_table();
        Ok(Semantics {
            space,
            program: program.clone(),
            clauses,
            by_pred,
            slots,
            neg,
        })
    }

    pub fn space(&self) -> &Arc<HerbrandSpace> {
        &self.space
    }

    pub fn program(&self) -> &TypedProgram {
        &self.program
    }

    pub fn kappa(&self) -> Kappa {
        self.space.kappa
    }

    pub fn bottom(&self) -> Interpretation {
        Interpretation::bottom(&self.space)
    }

    /// Whether `pred` has at least one clause.
    pub fn has_clauses(&self, pred: usize) -> bool {
        !self.by_pred[pred].is_empty()
    }

    pub(crate) fn cell_evaluator<'a>(&'a self, i: &'a Interpretation) -> CellEvaluator<'a> {
        CellEvaluator {
            sem: self,
            ev: Evaluator::new(&i.tables, &self.neg, self.slots),
        }
    }

    /// `T_P(I)` at one cell.
    pub fn tp_cell(&self, i: &Interpretation, pred: usize, cell: usize) -> TruthValue {
        let mut ce = self.cell_evaluator(i);
        decode(self.kappa(), ce.eval(pred, cell))
    }

    /// `T_P(I)`: per predicate, the join of its clause bodies; `F0` without clauses.
    pub fn tp_step(&self, i: &Interpretation) -> Interpretation {
        let mut ce = self.cell_evaluator(i);
        let tables = self
            .space
            .preds
            .iter()
            .enumerate()
            .map(|(p, info)| {
                (0..info.shape.len())
                    .map(|c| ce.eval(p, c))
                    .collect::<Vec<_>>()
                    .into()
            })
            .collect();
        Interpretation::from_tables(&self.space, tables)
    }

    /// `M` is a model iff `T_P(M) ≤ M`.
    pub fn is_model(&self, m: &Interpretation) -> Result<bool> {
        check_same(m, &self.bottom())?;
        let mut ce = self.cell_evaluator(m);
        for (p, t) in m.tables.iter().enumerate() {
            for (c, &v) in t.iter().enumerate() {
                if ce.eval(p, c) > v {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `⟦e⟧_s(I)`. Predicate-typed results are returned suspended.
    pub fn eval(&self, e: &TExpr, i: &Interpretation, s: &State) -> Result<Denotation> {
        check_same(i, &self.bottom())?;
        let mut lw = Lowerer::new(&self.space);
        let mut env = Vec::new();
        for (name, ty, d) in &s.bindings {
            let table = lw.binder_table(ty)?;
            let slot = lw.bind(name, ty);
            let dom = Domain::of(ty, self.space.universe.len(), self.kappa())?;
            env.push((slot, dom.index_of(d)?, table));
        }
        let kappa = self.kappa();
        match &e.ty {
            Type::Iota => {
                let arg = lw.value(e)?;
                let mut ev = Evaluator::new(&i.tables, &self.neg, lw.slots);
                bind_all(&mut ev, &env);
                Ok(Denotation::Individual(ev.value(&arg)))
            }
            Type::O => {
                let node = lw.truth(e)?;
                let mut ev = Evaluator::new(&i.tables, &self.neg, lw.slots);
                bind_all(&mut ev, &env);
                Ok(Denotation::Truth(decode(kappa, ev.truth(&node))))
            }
            ty => {
                let node = lw.truth(e)?;
                let info = lw.tab_info(ty)?;
                let shape = match Domain::of(ty, self.space.universe.len(), kappa)? {
                    Domain::Pred(s) => s,
                    _ => unreachable!(),
                };
                Ok(Denotation::Suspended(Suspension::new(Pending {
                    shape,
                    info,
                    node,
                    slots: lw.slots,
                    env,
                    tables: i.tables.clone(),
                    neg: self.neg.clone(),
                })))
            }
        }
    }

    /// [`Semantics::eval`] with any suspension forced.
    pub fn eval_forced(&self, e: &TExpr, i: &Interpretation, s: &State) -> Result<Denotation> {
        Ok(self.eval(e, i, s)?.forced())
    }
}

pub(crate) struct CellEvaluator<'a> {
    sem: &'a Semantics,
    ev: Evaluator<'a>,
}

impl CellEvaluator<'_> {
    /// Code of `T_P(I)` at a cell.
    pub fn eval(&mut self, pred: usize, cell: usize) -> Code {
        let info = &self.sem.space.preds[pred];
        let base = self.ev.stack.len();
        let strides = info.shape.strides();
        for i in (0..strides.len()).rev() {
            self.ev.stack.push((cell / strides[i]) % info.sizes[i]);
        }
        let mut r: Code = 0;
        for &ci in &self.sem.by_pred[pred] {
            r = r.max(self.ev.truth(&self.sem.clauses[ci].body));
            if r == self.ev.top {
                break;
            }
        }
        self.ev.stack.truncate(base);
        r
    }
}

type Bindings = Vec<(usize, usize, Option<Arc<TabInfo>>)>;

fn bind_all(ev: &mut Evaluator<'_>, env: &Bindings) {
    for (slot, value, table) in env {
        ev.bind(*slot, *value, table.as_deref());
    }
}

struct Pending {
    shape: Arc<Shape>,
    info: Arc<TabInfo>,
    node: Node,
    slots: usize,
    env: Bindings,
    tables: Vec<Arc<[Code]>>,
    neg: Vec<Code>,
}

impl Lazy for Pending {
    fn shape(&self) -> &Arc<Shape> {
        &self.shape
    }

    fn compute(&self) -> Relation {
        let mut ev = Evaluator::new(&self.tables, &self.neg, self.slots);
        bind_all(&mut ev, &self.env);
        let mut data = Vec::with_capacity(self.info.len);
        ev.for_each_cell(&self.node, &self.info, |c| data.push(c));
        Relation::new(self.shape.clone(), data)
    }
}
