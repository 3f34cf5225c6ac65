use std::collections::HashSet;

use indexmap::{IndexMap, IndexSet};

use crate::domains::Universe;
use crate::syntax::{Callee, Literal, SurfaceProgram, Term};
use crate::{Error, Result};

/// A ground rule `head :- pos, not neg`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundRule {
    pub head: usize,
    pub pos: Vec<usize>,
    pub neg: Vec<usize>,
}

/// A propositional normal program over the ground atoms of a first-order one.
/// Atoms are labelled like interpretation cells: `p` or `p(a,b)`.
#[derive(Debug, Clone, Default)]
pub struct GroundNormalProgram {
    pub atoms: IndexSet<String>,
    pub rules: Vec<GroundRule>,
}

impl GroundNormalProgram {
    fn atom(&mut self, label: String) -> usize {
        self.atoms.insert_full(label).0
    }
}

fn label(pred: &str, args: &[usize], u: &Universe) -> String {
    if args.is_empty() {
        pred.to_string()
    } else {
        let names: Vec<&str> = args.iter().map(|&a| u.name(a)).collect();
        format!("{pred}({})", names.join(","))
    }
}

struct Grounder<'a> {
    universe: &'a Universe,
    preds: HashSet<&'a str>,
    vars: Vec<String>,
}

impl Grounder<'_> {
    fn term(&self, t: &Term, binding: &[usize]) -> Result<usize> {
        match t {
            Term::Var(v) => Ok(binding[self
                .vars
                .iter()
                .position(|x| x == v)
                .expect("clause variable")]),
            Term::Const(c) if self.preds.contains(c.as_str()) => Err(Error::NotNormalFragment(
                format!("predicate `{c}` used as an argument"),
            )),
            Term::Const(c) => self.universe.index_of(c).ok_or_else(|| {
                Error::NotNormalFragment(format!("constant `{c}` is not in the universe"))
            }),
            Term::Fun(f, _) => Err(Error::InfiniteUniverse(f.clone())),
        }
    }

    fn check(&self, lit: &Literal) -> Result<()> {
        match lit {
            Literal::Call {
                callee: Callee::Var(v),
                ..
            } => Err(Error::NotNormalFragment(format!(
                "variable `{v}` is called as a predicate"
            ))),
            Literal::Not(inner) if matches!(**inner, Literal::Not(_)) => {
                Err(Error::NotNormalFragment("nested negation".into()))
            }
            Literal::Not(inner) => self.check(inner),
            _ => Ok(()),
        }
    }
}

enum Ground {
    Holds,
    Fails,
    Pos(String),
    Neg(String),
}

impl Grounder<'_> {
    fn literal(&self, lit: &Literal, binding: &[usize]) -> Result<Ground> {
        Ok(match lit {
            Literal::True => Ground::Holds,
            Literal::False => Ground::Fails,
            Literal::Call {
                callee: Callee::Pred(p),
                args,
            } => {
                let args = args
                    .iter()
                    .map(|t| self.term(t, binding))
                    .collect::<Result<Vec<_>>>()?;
                Ground::Pos(label(p, &args, self.universe))
            }
            Literal::Call {
                callee: Callee::Var(v),
                ..
            } => {
                return Err(Error::NotNormalFragment(format!(
                    "variable `{v}` is called as a predicate"
                )))
            }
            Literal::Eq(a, b) => {
                if self.term(a, binding)? == self.term(b, binding)? {
                    Ground::Holds
                } else {
                    Ground::Fails
                }
            }
            Literal::Not(inner) => match self.literal(inner, binding)? {
                Ground::Holds => Ground::Fails,
                Ground::Fails => Ground::Holds,
                Ground::Pos(a) => Ground::Neg(a),
                Ground::Neg(_) => return Err(Error::NotNormalFragment("nested negation".into())),
            },
        })
    }
}

fn note_arity<'a>(arities: &mut IndexMap<&'a str, usize>, name: &'a str, n: usize) -> Result<()> {
    match arities.get(name) {
        Some(&m) if m != n => Err(Error::NotNormalFragment(format!(
            "`{name}` is used with arities {m} and {n}"
        ))),
        Some(_) => Ok(()),
        None => {
            arities.insert(name, n);
            Ok(())
        }
    }
}

fn body_calls<'a>(lit: &'a Literal, out: &mut Vec<(&'a str, usize)>) {
    match lit {
        Literal::Call {
            callee: Callee::Pred(p),
            args,
        } => out.push((p, args.len())),
        Literal::Not(inner) => body_calls(inner, out),
        _ => {}
    }
}

/// All instantiations of the rules of a first-order normal program with
/// constants from `universe`. Every atom of every predicate is listed, so
/// atoms without rules appear as well, in the same order as interpretation
/// cells.
pub fn ground(surface: &SurfaceProgram, universe: &Universe) -> Result<GroundNormalProgram> {
    for (name, ty, _) in &surface.annotations {
        if ty.is_higher_order() || ty.predicate_args().is_none() {
            return Err(Error::NotNormalFragment(format!("`{name}` has type {ty}")));
        }
    }
    let mut arities: IndexMap<&str, usize> = IndexMap::new();
    for c in &surface.clauses {
        note_arity(&mut arities, &c.head.pred, c.head.args.len())?;
        let mut calls = Vec::new();
        c.body.iter().for_each(|l| body_calls(l, &mut calls));
        for (p, n) in calls {
            note_arity(&mut arities, p, n)?;
        }
    }
    let mut g = Grounder {
        universe,
        preds: arities.keys().copied().collect(),
        vars: Vec::new(),
    };
    for c in &surface.clauses {
        c.body.iter().try_for_each(|l| g.check(l))?;
    }

    let mut out = GroundNormalProgram::default();
    for (&p, &n) in &arities {
        for_each_tuple(universe.len(), n, |args| {
            out.atom(label(p, args, universe));
        });
    }
    for c in &surface.clauses {
        g.vars = c.vars();
        let mut result: Result<()> = Ok(());
        for_each_tuple(universe.len(), g.vars.len(), |binding| {
            if result.is_err() {
                return;
            }
            result = (|| {
                let head_args = c
                    .head
                    .args
                    .iter()
                    .map(|t| g.term(t, binding))
                    .collect::<Result<Vec<_>>>()?;
                let head = out.atom(label(&c.head.pred, &head_args, universe));
                let mut rule = GroundRule {
                    head,
                    pos: Vec::new(),
                    neg: Vec::new(),
                };
                for lit in &c.body {
                    match g.literal(lit, binding)? {
                        Ground::Holds => {}
                        Ground::Fails => return Ok(()),
                        Ground::Pos(a) => rule.pos.push(out.atom(a)),
                        Ground::Neg(a) => rule.neg.push(out.atom(a)),
                    }
                }
                out.rules.push(rule);
                Ok(())
            })();
        });
        result?;
    }
    Ok(out)
}

/// Calls `f` on every tuple in `0..n` of length `len`, first position slowest.
fn for_each_tuple(n: usize, len: usize, mut f: impl FnMut(&[usize])) {
    if len > 0 && n == 0 {
        return;
    }
    let mut t = vec![0; len];
    loop {
        f(&t);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}
