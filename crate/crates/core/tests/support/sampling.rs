//! Sampling of interpretation pairs related by `⊑_α`, with higher-order
//! predicates given α-monotone tables.

use std::sync::LazyLock;

use extensia_core::domains::{den_sq_alpha, is_alpha_monotone, Denotation, Domain, Relation};
use extensia_core::oracle::{random_normal_program, CorpusParams};
use extensia_core::semantics::{interp_sq_alpha, Interpretation, Semantics, State};
use extensia_core::syntax::{TExpr, TKind};
use extensia_core::{load_surface, Kappa, TruthValue, Type};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BAND: &str = "
band(B) :- singer(S), B(S), guitarist(G), B(G).
singer(a).
guitarist(b).
solo(B) :- band(B), not two(B).
two(B) :- B(X), B(Y), singer(X), singer(Y), not(X = Y).
";

const WADGE: &str = "p(a).\nq(a).\nphi(p).\nq(X) :- phi(q).";

pub struct Case {
    pub sem: Semantics,
    pub subexprs: Vec<(TExpr, Vec<(String, Type)>)>,
}

fn collect(e: &TExpr, env: &mut Vec<(String, Type)>, out: &mut Vec<(TExpr, Vec<(String, Type)>)>) {
    out.push((e.clone(), env.clone()));
    match &e.kind {
        TKind::FunApp(_, args) => args.iter().for_each(|a| collect(a, env, out)),
        TKind::App(a, b) | TKind::And(a, b) | TKind::Or(a, b) | TKind::Eq(a, b) => {
            collect(a, env, out);
            collect(b, env, out);
        }
        TKind::Not(a) => collect(a, env, out),
        TKind::Lambda(b, body) | TKind::Exists(b, body) => {
            env.push((b.name.clone(), b.ty.clone()));
            collect(body, env, out);
            env.pop();
        }
        _ => {}
    }
}

fn case(src: &str, wadge: bool, kappa: u32) -> Case {
    let p = load_surface(src, wadge).unwrap();
    let sem = Semantics::new(&p, Kappa::new(kappa).unwrap()).unwrap();
    let mut subexprs = Vec::new();
    for c in &p.clauses {
        collect(&c.body, &mut Vec::new(), &mut subexprs);
    }
    Case { sem, subexprs }
}

pub static CASES: LazyLock<Vec<Case>> = LazyLock::new(|| {
    let mut v = vec![
        case("p.\nr :- not p.\ns :- not q.", false, 4),
        case("p :- not p.\nq :- not r.\nr :- not q.", false, 3),
        case(
            "q(X) :- not r(X).\nr(a).\np :- q(X), not p.\ns(b).",
            false,
            3,
        ),
        case(BAND, false, 2),
        case(WADGE, true, 2),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        v.push(case(
            &random_normal_program(&mut rng, CorpusParams::default()),
            false,
            3,
        ));
    }
    v
});

/// A monotone map on truth values, stored by chain index.
type Unary = Vec<TruthValue>;

/// Compositions of at most two monotone primitives, deduplicated.
fn unary_maps(k: Kappa) -> Vec<Unary> {
    let vs: Vec<TruthValue> = k.values().collect();
    let mut prims: Vec<Box<dyn Fn(TruthValue) -> TruthValue>> =
        vec![Box::new(|x| x), Box::new(move |x| k.neg_saturating(x))];
    for b in k.alphas() {
        prims.push(Box::new(move |x| k.restrict_saturating(x, b).unwrap()));
    }
    for &c in &vs {
        prims.push(Box::new(move |_| c));
        prims.push(Box::new(move |x| x.join(c)));
        prims.push(Box::new(move |x| x.meet(c)));
    }
    let mut out: Vec<Unary> = Vec::new();
    for f in &prims {
        for g in &prims {
            let m: Unary = vs.iter().map(|&x| f(g(x))).collect();
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    let dom = Domain::of(&Type::predicate([Type::O]), 1, k).unwrap();
    let shape = match &dom {
        Domain::Pred(s) => s.clone(),
        _ => unreachable!(),
    };
    out.retain(|m| {
        is_alpha_monotone(
            &dom,
            &Denotation::Table(Relation::from_values(shape.clone(), m.clone())),
        )
        .unwrap()
    });
    out
}

fn apply(k: Kappa, g: &Unary, v: TruthValue) -> TruthValue {
    g[k.index_of(v)]
}

/// A random α-monotone function of the arguments of a cell: a join or meet
/// of monotone maps applied to single argument entries.
enum Term {
    Const(TruthValue),
    Entry { arg: usize, entry: usize, g: usize },
    ByIndividual { arg: usize, values: Vec<TruthValue> },
    Join(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
}

fn random_term(
    args: &[Domain],
    maps: &[Unary],
    k: Kappa,
    depth: u32,
    rng: &mut ChaCha8Rng,
) -> Term {
    let vs: Vec<TruthValue> = k.values().collect();
    if depth > 0 && rng.gen_bool(0.5) {
        let a = Box::new(random_term(args, maps, k, depth - 1, rng));
        let b = Box::new(random_term(args, maps, k, depth - 1, rng));
        return if rng.gen_bool(0.5) {
            Term::Join(a, b)
        } else {
            Term::Meet(a, b)
        };
    }
    if args.is_empty() || rng.gen_bool(0.15) {
        return Term::Const(*vs.choose(rng).unwrap());
    }
    let arg = rng.gen_range(0..args.len());
    match &args[arg] {
        Domain::Individuals(n) => Term::ByIndividual {
            arg,
            values: (0..*n).map(|_| *vs.choose(rng).unwrap()).collect(),
        },
        Domain::Truth(_) => Term::Entry {
            arg,
            entry: 0,
            g: rng.gen_range(0..maps.len()),
        },
        Domain::Pred(shape) => Term::Entry {
            arg,
            entry: rng.gen_range(0..shape.len()),
            g: rng.gen_range(0..maps.len()),
        },
    }
}

fn eval_term(t: &Term, args: &[Domain], cell: &[usize], maps: &[Unary], k: Kappa) -> TruthValue {
    match t {
        Term::Const(v) => *v,
        Term::ByIndividual { arg, values } => values[cell[*arg]],
        Term::Entry { arg, entry, g } => {
            let v = match &args[*arg] {
                Domain::Truth(_) => k.value_at(cell[*arg]),
                Domain::Pred(shape) => Relation::from_index(shape.clone(), cell[*arg]).get(*entry),
                Domain::Individuals(_) => unreachable!(),
            };
            apply(k, &maps[*g], v)
        }
        Term::Join(a, b) => {
            eval_term(a, args, cell, maps, k).join(eval_term(b, args, cell, maps, k))
        }
        Term::Meet(a, b) => {
            eval_term(a, args, cell, maps, k).meet(eval_term(b, args, cell, maps, k))
        }
    }
}

/// A random interpretation, with α-monotone tables for higher-order
/// predicates, and one above it in `⊑_α`.
pub fn related_pair(
    sem: &Semantics,
    alpha: u32,
    rng: &mut ChaCha8Rng,
) -> (Interpretation, Interpretation) {
    let k = sem.kappa();
    let values: Vec<_> = k.values().collect();
    let maps = unary_maps(k);
    let raising: Vec<&Unary> = maps
        .iter()
        .filter(|g| values.iter().all(|&x| x.sq_alpha(apply(k, g, x), alpha)))
        .collect();
    let preds = sem.space().preds();
    let terms: Vec<Option<Term>> = preds
        .iter()
        .map(|p| {
            p.ty.is_higher_order()
                .then(|| random_term(p.shape.args(), &maps, k, 2, rng))
        })
        .collect();
    let cells: Vec<Vec<Vec<usize>>> = preds
        .iter()
        .map(|p| (0..p.shape.len()).map(|c| p.shape.cell_args(c)).collect())
        .collect();
    let i = Interpretation::from_fn(sem.space(), |p, c| match &terms[p] {
        Some(t) => eval_term(t, preds[p].shape.args(), &cells[p][c], &maps, k),
        None => *values.choose(rng).unwrap(),
    });
    let lifts: Vec<&Unary> = preds
        .iter()
        .map(|_| *raising.choose(rng).unwrap())
        .collect();
    let j = Interpretation::from_fn(sem.space(), |p, c| {
        let v = i.get(p, c);
        if terms[p].is_some() {
            apply(k, lifts[p], v)
        } else {
            let above: Vec<_> = values
                .iter()
                .copied()
                .filter(|&w| v.sq_alpha(w, alpha))
                .collect();
            *above.choose(rng).unwrap()
        }
    });
    (i, j)
}

pub fn random_state(sem: &Semantics, env: &[(String, Type)], rng: &mut ChaCha8Rng) -> State {
    let mut s = State::new();
    for (name, ty) in env {
        let dom = Domain::of(ty, sem.space().universe().len(), sem.kappa()).unwrap();
        let d = dom.element(rng.gen_range(0..dom.size().unwrap()));
        s = s.bind(name.clone(), ty.clone(), d);
    }
    s
}

/// Checks `T_P` and the evaluation of every non-individual subexpression of
/// case `which` on one sampled pair.
pub fn check_pair(which: usize, alpha_seed: u32, seed: u64) -> Result<(), String> {
    let case = &CASES[which % CASES.len()];
    let sem = &case.sem;
    let alpha = alpha_seed % sem.kappa().get();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (i, j) = related_pair(sem, alpha, &mut rng);
    let fail = |what: String| Err(format!("case {which}, alpha {alpha}, seed {seed}: {what}"));
    if !interp_sq_alpha(&i, &j, alpha).unwrap() {
        return fail("sampled pair is not related".into());
    }
    for (p, info) in sem.space().preds().iter().enumerate() {
        let dom = Domain::Pred(info.shape.clone());
        for m in [&i, &j] {
            if !is_alpha_monotone(&dom, &Denotation::Table(m.relation(p))).unwrap() {
                return fail(format!("sampled table of {} is not monotone", info.name));
            }
        }
    }
    if !interp_sq_alpha(&sem.tp_step(&i), &sem.tp_step(&j), alpha).unwrap() {
        return fail("T_P".into());
    }
    for (e, env) in &case.subexprs {
        if e.ty == Type::Iota {
            continue;
        }
        let s = random_state(sem, env, &mut rng);
        let di = sem.eval_forced(e, &i, &s).unwrap();
        let dj = sem.eval_forced(e, &j, &s).unwrap();
        let dom = Domain::of(&e.ty, sem.space().universe().len(), sem.kappa()).unwrap();
        if !den_sq_alpha(&dom, &di, &dj, alpha).unwrap() {
            return fail(format!("evaluation of {e}"));
        }
        if matches!(di, Denotation::Table(_)) && !is_alpha_monotone(&dom, &di).unwrap() {
            return fail(format!("{e} denotes a non-monotone table"));
        }
    }
    Ok(())
}
