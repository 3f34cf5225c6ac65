//! Lowering of typed expressions to a slot-based form evaluated over codes.
//!
//! Every value is a `usize`: an individual's universe index, a truth code, or
//! a table's index in the canonical enumeration of its domain. An expression
//! of type `ρ1 → … → ρn → o` is evaluated *applied*: its `n` arguments sit on
//! top of the argument stack, first argument topmost.

use std::collections::HashMap;
use std::sync::Arc;

use super::HerbrandSpace;
use crate::domains::{Domain, MAX_CELLS};
use crate::error::{Error, Result};
use crate::syntax::{TExpr, TKind};
use crate::types::Type;

/// Cell layout of a predicate-typed value.
#[derive(Debug)]
pub(crate) struct TabInfo {
    pub arity: usize,
    pub len: usize,
    pub base: usize,
    pub strides: Arc<[usize]>,
    /// `base^(len - 1 - cell)`: weight of each cell's digit in the table index.
    /// Argument indices of every cell, `arity` entries per cell.
    pub cell_args: Arc<[usize]>,
}

#[derive(Debug)]
pub(crate) enum Node {
    Top,
    Bottom,
    /// A bound variable used as a value.
    Slot(usize),
    /// An individual constant used as a value.
    Ind(usize),
    /// A predicate constant applied to the arguments on the stack.
    Pred {
        id: usize,
        strides: Arc<[usize]>,
    },
    /// A truth-typed variable.
    SlotTruth(usize),
    /// A predicate variable applied to the arguments on the stack; reads the
    /// digits decoded when the variable was bound.
    SlotPred {
        slot: usize,
        strides: Arc<[usize]>,
    },
    Apply {
        head: Box<Node>,
        args: Vec<Arg>,
    },
    Lambda {
        slot: usize,
        body: Box<Node>,
        table: Option<Arc<TabInfo>>,
    },
    And(Vec<Node>),
    Or(Vec<Node>),
    Not(Box<Node>),
    Eq(Box<Node>, Box<Node>),
    Exists {
        slot: usize,
        size: usize,
        body: Box<Node>,
        table: Option<Arc<TabInfo>>,
    },
}

#[derive(Debug)]
pub(crate) enum ArgKind {
    /// The node yields the value directly (`Slot` or `Ind`).
    Direct,
    /// A truth-typed expression; its value is its code.
    Truth,
    /// A predicate-typed expression, tabulated to its index.
    Table(Arc<TabInfo>),
}

#[derive(Debug)]
pub(crate) struct Arg {
    pub node: Node,
    pub kind: ArgKind,
}

/// Upper bound on the size of a quantified domain.
pub(crate) const MAX_QUANTIFIED: usize = 50_000_000;

pub(crate) struct Lowerer<'a> {
    space: &'a HerbrandSpace,
    scope: Vec<(String, usize, Type)>,
    pub slots: usize,
    infos: HashMap<Type, Arc<TabInfo>>,
}

impl<'a> Lowerer<'a> {
    pub fn new(space: &'a HerbrandSpace) -> Self {
        Lowerer {
            space,
            scope: Vec::new(),
            slots: 0,
            infos: HashMap::new(),
        }
    }

    /// Binds a free variable to a fresh slot, returning the slot.
    pub fn bind(&mut self, name: &str, ty: &Type) -> usize {
        let slot = self.slots;
        self.slots += 1;
        self.scope.push((name.to_string(), slot, ty.clone()));
        slot
    }

    pub fn tab_info(&mut self, ty: &Type) -> Result<Arc<TabInfo>> {
        if let Some(info) = self.infos.get(ty) {
            return Ok(info.clone());
        }
        let shape = match Domain::of(ty, self.space.universe.len(), self.space.kappa)? {
            Domain::Pred(s) => s,
            _ => return Err(Error::TypeMismatch(format!("{ty} is not a predicate type"))),
        };
        let base = self.space.kappa.domain_size();
        let len = shape.len();
        if shape.domain_size().is_none() {
            return Err(Error::DomainTooLarge {
                ty: ty.clone(),
                size: (base as f64).powf(len as f64),
                limit: usize::MAX as u64,
            });
        }
        let mut cell_args = Vec::with_capacity(len * shape.arity());
        for cell in 0..len {
            cell_args.extend(shape.cell_args(cell));
        }
        let info = Arc::new(TabInfo {
            arity: shape.arity(),
            len,
            base,
            strides: shape.strides().into(),
            cell_args: cell_args.into(),
        });
        self.infos.insert(ty.clone(), info.clone());
        Ok(info)
    }

    fn lookup(&self, name: &str) -> Result<usize> {
        self.scope
            .iter()
            .rev()
            .find(|(n, _, _)| n == name)
            .map(|(_, s, _)| *s)
            .ok_or_else(|| Error::UnboundVariable(name.to_string()))
    }

    fn binder_size(&self, ty: &Type) -> Result<usize> {
        if !ty.is_enumerable() {
            return Err(Error::NonEnumerableType {
                what: "a bound variable".into(),
                ty: ty.clone(),
            });
        }
        Domain::of(ty, self.space.universe.len(), self.space.kappa)?
            .size()
            .filter(|s| *s <= MAX_QUANTIFIED)
            .ok_or_else(|| Error::DomainTooLarge {
                ty: ty.clone(),
                size: f64::INFINITY,
                limit: MAX_QUANTIFIED as u64,
            })
    }

    /// Layout of a predicate-typed binder, whose digits are decoded on binding.
    pub fn binder_table(&mut self, ty: &Type) -> Result<Option<Arc<TabInfo>>> {
        match ty {
            Type::Arrow(..) => Ok(Some(self.tab_info(ty)?)),
            _ => Ok(None),
        }
    }

    /// Lowers an expression used in an applied position.
    pub fn truth(&mut self, e: &TExpr) -> Result<Node> {
        Ok(match &e.kind {
            TKind::True => Node::Top,
            TKind::False => Node::Bottom,
            TKind::PredConst(p) => {
                let id = self
                    .space
                    .pred_id(p)
                    .ok_or_else(|| Error::TypeMismatch(format!("unknown predicate `{p}`")))?;
                Node::Pred {
                    id,
                    strides: self.space.preds[id].shape.strides().into(),
                }
            }
            TKind::PredVar(v) if e.ty == Type::O => Node::SlotTruth(self.lookup(v)?),
            TKind::PredVar(v) => Node::SlotPred {
                slot: self.lookup(v)?,
                strides: self.tab_info(&e.ty)?.strides.clone(),
            },
            TKind::App(..) => {
                let mut args = Vec::new();
                let mut head = e;
                while let TKind::App(f, a) = &head.kind {
                    args.push(a.as_ref());
                    head = f;
                }
                args.reverse();
                let head = self.truth(head)?;
                let args = args
                    .into_iter()
                    .map(|a| self.value(a))
                    .collect::<Result<Vec<_>>>()?;
                Node::Apply {
                    head: Box::new(head),
                    args,
                }
            }
            TKind::Lambda(b, body) => {
                self.binder_size(&b.ty)?;
                let table = self.binder_table(&b.ty)?;
                let slot = self.bind(&b.name, &b.ty);
                let body = self.truth(body);
                self.scope.pop();
                Node::Lambda {
                    slot,
                    body: Box::new(body?),
                    table,
                }
            }
            TKind::Exists(b, body) => {
                let size = self.binder_size(&b.ty)?;
                let table = self.binder_table(&b.ty)?;
                let slot = self.bind(&b.name, &b.ty);
                let body = self.truth(body);
                self.scope.pop();
                Node::Exists {
                    slot,
                    size,
                    body: Box::new(body?),
                    table,
                }
            }
            TKind::And(..) | TKind::Or(..) => {
                let is_and = matches!(e.kind, TKind::And(..));
                let mut parts = Vec::new();
                self.flatten(e, is_and, &mut parts)?;
                if is_and {
                    Node::And(parts)
                } else {
                    Node::Or(parts)
                }
            }
            TKind::Not(x) => Node::Not(Box::new(self.truth(x)?)),
            TKind::Eq(x, y) => {
                Node::Eq(Box::new(self.individual(x)?), Box::new(self.individual(y)?))
            }
            TKind::FunApp(f, _) => return Err(Error::InfiniteUniverse(f.clone())),
            TKind::IndVar(_) | TKind::IndConst(_) => {
                return Err(Error::TypeMismatch(format!(
                    "individual `{e}` used as a predicate"
                )))
            }
        })
    }

    fn flatten(&mut self, e: &TExpr, is_and: bool, out: &mut Vec<Node>) -> Result<()> {
        match (&e.kind, is_and) {
            (TKind::And(x, y), true) | (TKind::Or(x, y), false) => {
                self.flatten(x, is_and, out)?;
                self.flatten(y, is_and, out)
            }
            _ => {
                out.push(self.truth(e)?);
                Ok(())
            }
        }
    }

    fn individual(&mut self, e: &TExpr) -> Result<Node> {
        match &e.kind {
            TKind::IndVar(v) => Ok(Node::Slot(self.lookup(v)?)),
            TKind::IndConst(c) => self
                .space
                .universe
                .index_of(c)
                .map(Node::Ind)
                .ok_or_else(|| Error::TypeMismatch(format!("`{c}` is not in the universe"))),
            TKind::FunApp(f, _) => Err(Error::InfiniteUniverse(f.clone())),
            _ => Err(Error::TypeMismatch(format!("`{e}` is not an individual"))),
        }
    }

    /// Lowers an expression used as an argument.
    pub fn value(&mut self, e: &TExpr) -> Result<Arg> {
        match (&e.kind, &e.ty) {
            (_, Type::Iota) => Ok(Arg {
                node: self.individual(e)?,
                kind: ArgKind::Direct,
            }),
            (TKind::PredVar(v), _) => Ok(Arg {
                node: Node::Slot(self.lookup(v)?),
                kind: ArgKind::Direct,
            }),
            (_, Type::O) => Ok(Arg {
                node: self.truth(e)?,
                kind: ArgKind::Truth,
            }),
            (_, ty) => {
                let info = self.tab_info(ty)?;
                if info.len > MAX_CELLS {
                    return Err(Error::DomainTooLarge {
                        ty: ty.clone(),
                        size: info.len as f64,
                        limit: MAX_CELLS as u64,
                    });
                }
                Ok(Arg {
                    node: self.truth(e)?,
                    kind: ArgKind::Table(info),
                })
            }
        }
    }
}
