use indexmap::IndexMap;
use serde_json::{Map, Value};

use crate::truth::ThreeValued;

use super::GroundNormalProgram;

/// A three-valued assignment to the atoms of a ground program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellFounded {
    pub values: IndexMap<String, ThreeValued>,
}

impl WellFounded {
    pub fn get(&self, atom: &str) -> Option<ThreeValued> {
        self.values.get(atom).copied()
    }

    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .values
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.label().into())))
            .collect();
        Value::Object(map)
    }
}

/// Least model of the reduct of `g` by `assumed`: rules with a negated atom in
/// `assumed` are dropped and the other negative literals are erased.
fn reduct_least_model(g: &GroundNormalProgram, assumed: &[bool]) -> Vec<bool> {
    let mut truth = vec![false; g.atoms.len()];
    loop {
        let mut changed = false;
        for r in &g.rules {
            if truth[r.head]
                || r.neg.iter().any(|&a| assumed[a])
                || !r.pos.iter().all(|&a| truth[a])
            {
                continue;
            }
            truth[r.head] = true;
            changed = true;
        }
        if !changed {
            return truth;
        }
    }
}

/// The well-founded model by the alternating fixpoint: underestimates of the
/// true atoms and overestimates of the possible atoms are refined until both
/// settle.
pub fn wfs_alternating_fixpoint(g: &GroundNormalProgram) -> WellFounded {
    let mut under = vec![false; g.atoms.len()];
    loop {
        let over = reduct_least_model(g, &under);
        let next = reduct_least_model(g, &over);
        if next == under {
            let values = g
                .atoms
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let v = match (under[i], over[i]) {
                        (true, _) => ThreeValued::True,
                        (false, true) => ThreeValued::Undef,
                        (false, false) => ThreeValued::False,
                    };
                    (a.clone(), v)
                })
                .collect();
            return WellFounded { values };
        }
        under = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::Universe;
    use crate::oracle::ground;
    use crate::syntax::parse_surface;
    use ThreeValued::*;

    fn wfs(src: &str) -> WellFounded {
        let sp = parse_surface(src).unwrap();
        wfs_alternating_fixpoint(&ground(&sp, &Universe::new(["c0"]).unwrap()).unwrap())
    }

    #[test]
    fn overview_program() {
        let m = wfs("p.\nr :- not p.\ns :- not q.");
        assert_eq!(m.get("p"), Some(True));
        assert_eq!(m.get("q"), Some(False));
        assert_eq!(m.get("r"), Some(False));
        assert_eq!(m.get("s"), Some(True));
    }

    #[test]
    fn self_negation_is_undefined() {
        assert_eq!(wfs("p :- not p.").get("p"), Some(Undef));
    }

    #[test]
    fn positive_program_is_its_least_model() {
        let m = wfs("p :- q.\nq.\nr :- r.");
        assert_eq!(m.get("p"), Some(True));
        assert_eq!(m.get("q"), Some(True));
        assert_eq!(m.get("r"), Some(False));
    }

    #[test]
    fn even_loop_is_undefined() {
        let m = wfs("p :- not q.\nq :- not p.");
        assert_eq!(m.get("p"), Some(Undef));
        assert_eq!(m.get("q"), Some(Undef));
    }

    #[test]
    fn json_uses_labels() {
        assert_eq!(wfs("p :- not p.").to_json().to_string(), r#"{"p":"Undef"}"#);
    }
}
