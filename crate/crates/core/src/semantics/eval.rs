use std::sync::Arc;

use super::lower::{Arg, ArgKind, Node, TabInfo};
use crate::domains::Code;

/// Evaluates lowered nodes against a fixed set of predicate tables.
pub(crate) struct Evaluator<'a> {
    pub tables: &'a [Arc<[Code]>],
    pub neg: &'a [Code],
    pub top: Code,
    pub env: Vec<usize>,
    /// Decoded entries of predicate-typed slots.
    pub digits: Vec<Vec<Code>>,
    pub stack: Vec<usize>,
}

impl<'a> Evaluator<'a> {
    pub fn new(tables: &'a [Arc<[Code]>], neg: &'a [Code], slots: usize) -> Self {
        let top = (neg.len() - 1) as Code;
        Evaluator {
            tables,
            neg,
            top,
            env: vec![0; slots],
            digits: vec![Vec::new(); slots],
            stack: Vec::with_capacity(16),
        }
    }

    /// Binds `slot` to `value`, decoding table entries when `table` is given.
    pub fn bind(&mut self, slot: usize, value: usize, table: Option<&TabInfo>) {
        self.env[slot] = value;
        if let Some(info) = table {
            let digits = &mut self.digits[slot];
            digits.clear();
            digits.resize(info.len, 0);
            let mut v = value;
            for d in digits.iter_mut().rev() {
                *d = (v % info.base) as Code;
                v /= info.base;
            }
        }
    }

    /// Value of `node` applied to the arguments on top of the stack.
    pub fn truth(&mut self, node: &Node) -> Code {
        match node {
            Node::Top => self.top,
            Node::Bottom => 0,
            Node::Pred { id, strides } => {
                let top = self.stack.len();
                let mut cell = 0;
                for (i, s) in strides.iter().enumerate() {
                    cell += self.stack[top - 1 - i] * s;
                }
                self.tables[*id][cell]
            }
            Node::SlotTruth(slot) => self.env[*slot] as Code,
            Node::SlotPred { slot, strides } => {
                let top = self.stack.len();
                let mut cell = 0;
                for (i, s) in strides.iter().enumerate() {
                    cell += self.stack[top - 1 - i] * s;
                }
                self.digits[*slot][cell]
            }
            Node::Apply { head, args } => {
                let base = self.stack.len();
                for a in args.iter().rev() {
                    let v = self.value(a);
                    self.stack.push(v);
                }
                let r = self.truth(head);
                self.stack.truncate(base);
                r
            }
            Node::Lambda { slot, body, table } => {
                let v = self.stack.pop().expect("lambda applied to an argument");
                self.bind(*slot, v, table.as_deref());
                let r = self.truth(body);
                self.stack.push(v);
                r
            }
            Node::And(parts) => {
                let mut r = self.top;
                for p in parts {
                    r = r.min(self.truth(p));
                    if r == 0 {
                        break;
                    }
                }
                r
            }
            Node::Or(parts) => {
                let mut r = 0;
                for p in parts {
                    r = r.max(self.truth(p));
                    if r == self.top {
                        break;
                    }
                }
                r
            }
            Node::Not(x) => {
                let c = self.truth(x);
                self.neg[c as usize]
            }
            Node::Eq(x, y) => {
                if self.direct(x) == self.direct(y) {
                    self.top
                } else {
                    0
                }
            }
            Node::Exists {
                slot,
                size,
                body,
                table,
            } => {
                let mut r = 0;
                for d in 0..*size {
                    self.bind(*slot, d, table.as_deref());
                    r = r.max(self.truth(body));
                    if r == self.top {
                        break;
                    }
                }
                r
            }
            Node::Slot(_) | Node::Ind(_) => unreachable!("value node in applied position"),
        }
    }

    fn direct(&self, node: &Node) -> usize {
        match node {
            Node::Slot(s) => self.env[*s],
            Node::Ind(c) => *c,
            _ => unreachable!("not a direct value"),
        }
    }

    pub fn value(&mut self, arg: &Arg) -> usize {
        match &arg.kind {
            ArgKind::Direct => self.direct(&arg.node),
            ArgKind::Truth => self.truth(&arg.node) as usize,
            ArgKind::Table(info) => self.tabulate(&arg.node, info),
        }
    }

    /// Index of the table denoted by `node`.
    pub fn tabulate(&mut self, node: &Node, info: &TabInfo) -> usize {
        let mut acc = 0usize;
        self.for_each_cell(node, info, |c| acc = acc * info.base + c as usize);
        acc
    }

    /// Evaluates `node` at every cell of `info` in order.
    pub fn for_each_cell(&mut self, node: &Node, info: &TabInfo, mut f: impl FnMut(Code)) {
        let base = self.stack.len();
        for cell in 0..info.len {
            let args = &info.cell_args[cell * info.arity..(cell + 1) * info.arity];
            self.stack.extend(args.iter().rev());
            let c = self.truth(node);
            self.stack.truncate(base);
            f(c);
        }
    }
}
