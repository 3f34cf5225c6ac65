use std::fmt;
use std::sync::Arc;

use serde_json::{Map, Value};

use super::{decode, encode, render_element, Code, Denotation, Shape, Universe};
use crate::truth::{Kappa, TruthValue};

/// A fully materialized predicate table: one truth value per cell.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    shape: Arc<Shape>,
    data: Arc<[Code]>,
}

impl Relation {
    pub fn new(shape: Arc<Shape>, data: impl Into<Arc<[Code]>>) -> Relation {
        let data = data.into();
        assert_eq!(
            data.len(),
            shape.len(),
            "table size does not match its shape"
        );
        Relation { shape, data }
    }

    pub fn from_values(
        shape: Arc<Shape>,
        values: impl IntoIterator<Item = TruthValue>,
    ) -> Relation {
        let k = shape.kappa();
        let data: Vec<Code> = values.into_iter().map(|v| encode(k, v)).collect();
        Relation::new(shape, data)
    }

    pub fn constant(shape: Arc<Shape>, v: TruthValue) -> Relation {
        let c = encode(shape.kappa(), v);
        let data = vec![c; shape.len()];
        Relation::new(shape, data)
    }

    /// The table numbered `index` in the canonical enumeration of its shape.
    pub fn from_index(shape: Arc<Shape>, mut index: usize) -> Relation {
        let base = shape.kappa().domain_size();
        let mut data = vec![0 as Code; shape.len()];
        for slot in data.iter_mut().rev() {
            *slot = (index % base) as Code;
            index /= base;
        }
        Relation::new(shape, data)
    }

    /// Position in the canonical enumeration, if it fits in a `usize`.
    pub fn index(&self) -> Option<usize> {
        let base = self.kappa().domain_size();
        self.data.iter().try_fold(0usize, |acc, &c| {
            acc.checked_mul(base)?.checked_add(c as usize)
        })
    }

    pub fn shape(&self) -> &Arc<Shape> {
        &self.shape
    }

    pub fn kappa(&self) -> Kappa {
        self.shape.kappa()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn codes(&self) -> &[Code] {
        &self.data
    }

    pub fn shared_codes(&self) -> &Arc<[Code]> {
        &self.data
    }

    pub fn get(&self, cell: usize) -> TruthValue {
        decode(self.kappa(), self.data[cell])
    }

    pub fn values(&self) -> impl Iterator<Item = TruthValue> + '_ {
        let k = self.kappa();
        self.data.iter().map(move |&c| decode(k, c))
    }

    /// Value at a full argument tuple of element indices.
    pub fn lookup(&self, args: &[usize]) -> TruthValue {
        self.get(self.shape.cell(args))
    }

    /// Applies the table to its first argument.
    pub fn apply(&self, arg: usize) -> Denotation {
        if self.shape.arity() == 1 {
            return Denotation::Truth(self.get(arg));
        }
        let stride = self.shape.strides()[0];
        let sub = Arc::new(self.shape.suffix(1));
        Denotation::Table(Relation::new(
            sub,
            &self.data[arg * stride..(arg + 1) * stride],
        ))
    }

    pub fn map(&self, mut f: impl FnMut(TruthValue) -> TruthValue) -> Relation {
        let k = self.kappa();
        let data: Vec<Code> = self
            .data
            .iter()
            .map(|&c| encode(k, f(decode(k, c))))
            .collect();
        Relation::new(self.shape.clone(), data)
    }

    /// Key of a cell: its argument tuple, e.g. `(a,b)`, or `()` for a proposition.
    pub fn cell_key(shape: &Shape, cell: usize, universe: &Universe) -> String {
        let parts: Vec<String> = shape
            .cell_args(cell)
            .into_iter()
            .zip(shape.args())
            .map(|(a, d)| render_element(d, a, universe))
            .collect();
        format!("({})", parts.join(","))
    }

    /// Compact rendering such as `{a:T0,b:F1}`; multi-argument keys are tuples.
    pub fn render(&self, universe: &Universe) -> String {
        let single = self.shape.arity() == 1;
        let entries: Vec<String> = (0..self.len())
            .map(|cell| {
                let key = if single {
                    render_element(&self.shape.args()[0], cell, universe)
                } else {
                    Relation::cell_key(&self.shape, cell, universe)
                };
                format!("{key}:{}", self.get(cell))
            })
            .collect();
        format!("{{{}}}", entries.join(","))
    }

    /// Nested JSON objects keyed by argument, one level per argument position.
    pub fn to_nested_json(&self, universe: &Universe) -> Value {
        let dom = &self.shape.args()[0];
        let mut map = Map::new();
        let size = dom.size().unwrap_or(0);
        for a in 0..size {
            let key = render_element(dom, a, universe);
            let value = match self.apply(a) {
                Denotation::Truth(v) => serde_json::to_value(v).expect("truth values serialize"),
                Denotation::Table(r) => r.to_nested_json(universe),
                _ => unreachable!("applying a table yields a table or a truth value"),
            };
            map.insert(key, value);
        }
        Value::Object(map)
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation<{}>[", self.shape.ty())?;
        for (i, v) in self.values().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}
