use rand::seq::SliceRandom;
use rand::Rng;

/// Size limits for generated programs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusParams {
    /// Upper bound on the number of ground atoms.
    pub max_atoms: usize,
    pub max_rules: usize,
    pub max_body: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            max_atoms: 6,
            max_rules: 10,
            max_body: 3,
        }
    }
}

const CONSTANTS: [&str; 2] = ["a", "b"];
const VARIABLES: [&str; 2] = ["X", "Y"];

/// A random first-order normal program in surface syntax. Propositional
/// predicates are named `p0, p1, ...` and unary ones `u0, u1, ...`; unary
/// predicates range over the constants `a` and `b`, which two `u0(c) :- false.`
/// rules put in the universe. Those rules count towards `max_rules`.
pub fn random_normal_program(rng: &mut impl Rng, params: CorpusParams) -> String {
    let max_unary = params.max_atoms.saturating_sub(1) / CONSTANTS.len();
    let unary = rng.gen_range(0..=max_unary);
    let props = rng.gen_range(1..=params.max_atoms - unary * CONSTANTS.len());
    let preds: Vec<(String, bool)> = (0..props)
        .map(|i| (format!("p{i}"), false))
        .chain((0..unary).map(|i| (format!("u{i}"), true)))
        .collect();
    let reserved = if unary > 0 { CONSTANTS.len() } else { 0 };
    let rules = rng.gen_range(1..=params.max_rules - reserved);
    let mut out = String::new();
    for _ in 0..rules {
        let (head, unary_head) = preds.choose(rng).expect("nonempty predicate list");
        out.push_str(head);
        if *unary_head {
            out.push_str(&format!("({})", argument(rng)));
        }
        let body = rng.gen_range(0..=params.max_body);
        let lits: Vec<String> = (0..body)
            .map(|_| {
                let (p, u) = preds.choose(rng).expect("nonempty predicate list");
                let atom = if *u {
                    format!("{p}({})", argument(rng))
                } else {
                    p.clone()
                };
                if rng.gen_bool(0.4) {
                    format!("not {atom}")
                } else {
                    atom
                }
            })
            .collect();
        if !lits.is_empty() {
            out.push_str(" :- ");
            out.push_str(&lits.join(", "));
        }
        out.push_str(".\n");
    }
    if unary > 0 {
        for c in CONSTANTS {
            out.push_str(&format!("u0({c}) :- false.\n"));
        }
    }
    out
}

fn argument(rng: &mut impl Rng) -> &'static str {
    if rng.gen_bool(0.6) {
        VARIABLES.choose(rng).copied().expect("nonempty")
    } else {
        CONSTANTS.choose(rng).copied().expect("nonempty")
    }
}
