//! Basic-model laws on the truncated truth domain, checked against
//! definitions restated here.

use extensia_core::truth::{Kappa, Level, TruthValue};
use TruthValue::{False as F, True as T, Zero};

pub fn order(v: TruthValue) -> u64 {
    match v {
        F(l) | T(l) => l as u64,
        Zero => u64::MAX,
    }
}

/// `v ⊑_α w` by its three defining clauses.
pub fn sq(v: TruthValue, w: TruthValue, a: Level) -> bool {
    let a64 = a as u64;
    (v == w && order(v) < a64)
        || (v == F(a) && order(w) >= a64)
        || (w == T(a) && order(v) >= a64)
        || (order(v) > a64 && order(w) > a64)
}

pub fn eq(v: TruthValue, w: TruthValue, a: Level) -> bool {
    sq(v, w, a) && sq(w, v, a)
}

pub fn in_cone(x: TruthValue, y: TruthValue, a: Level) -> bool {
    (0..a).all(|b| eq(x, y, b))
}

/// `⨆_α X` within `(x]_α` by search: the upper bound below every other
/// upper bound in both `⊑_α` and `≤`.
pub fn brute_lub(k: Kappa, x: TruthValue, xs: &[TruthValue], a: Level) -> Option<TruthValue> {
    let cone: Vec<TruthValue> = k.values().filter(|&y| in_cone(x, y, a)).collect();
    let ubs: Vec<TruthValue> = cone
        .iter()
        .copied()
        .filter(|&z| xs.iter().all(|&m| sq(m, z, a)))
        .collect();
    ubs.iter()
        .copied()
        .find(|&y| ubs.iter().all(|&z| sq(y, z, a) && y <= z))
}

pub fn brute_glb(k: Kappa, x: TruthValue, xs: &[TruthValue], a: Level) -> Option<TruthValue> {
    let cone: Vec<TruthValue> = k.values().filter(|&y| in_cone(x, y, a)).collect();
    let lbs: Vec<TruthValue> = cone
        .iter()
        .copied()
        .filter(|&z| xs.iter().all(|&m| sq(z, m, a)))
        .collect();
    lbs.iter()
        .copied()
        .find(|&y| lbs.iter().all(|&z| sq(z, y, a) && z <= y))
}

pub fn restrict(k: Kappa, v: TruthValue, a: Level) -> TruthValue {
    k.restrict_saturating(v, a).unwrap()
}

pub fn subsets(vs: &[TruthValue]) -> impl Iterator<Item = Vec<TruthValue>> + '_ {
    (0u32..1 << vs.len()).map(move |mask| {
        (0..vs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| vs[i])
            .collect()
    })
}

pub fn library_relations_match_their_definitions(k: Kappa) {
    let vs: Vec<TruthValue> = k.values().collect();
    for &v in &vs {
        for &w in &vs {
            for a in k.alphas() {
                assert_eq!(v.sq_alpha(w, a), sq(v, w, a), "{v} ⊑_{a} {w}");
                assert_eq!(v.eq_alpha(w, a), eq(v, w, a), "{v} =_{a} {w}");
            }
        }
    }
}

pub fn preorders_are_reflexive_and_transitive(k: Kappa) {
    let vs: Vec<TruthValue> = k.values().collect();
    for a in k.alphas() {
        for &x in &vs {
            assert!(sq(x, x, a));
            for &y in &vs {
                for &z in &vs {
                    if sq(x, y, a) && sq(y, z, a) {
                        assert!(sq(x, z, a), "{x} {y} {z} at {a}");
                    }
                }
            }
        }
    }
}

pub fn axiom_lower_stages_agree(k: Kappa) {
    let vs: Vec<TruthValue> = k.values().collect();
    for &x in &vs {
        for &y in &vs {
            for b in k.alphas() {
                if x.sq_alpha(y, b) {
                    for a in 0..b {
                        assert!(x.eq_alpha(y, a), "{x} ⊑_{b} {y} but not =_{a}");
                    }
                }
            }
        }
    }
}

pub fn axiom_agreement_everywhere_is_equality(k: Kappa) {
    let vs: Vec<TruthValue> = k.values().collect();
    for &x in &vs {
        for &y in &vs {
            if k.alphas().all(|a| x.eq_alpha(y, a)) {
                assert_eq!(x, y);
            }
        }
    }
}

pub fn axiom_stage_bounds_are_minimal(k: Kappa) {
    let vs: Vec<TruthValue> = k.values().collect();
    for a in k.alphas() {
        for &x in &vs {
            let cone: Vec<TruthValue> = vs.iter().copied().filter(|&y| in_cone(x, y, a)).collect();
            for xs in subsets(&cone) {
                if xs.is_empty() && order(x) < a as u64 {
                    continue;
                }
                let lub = k.lub_alpha_saturating(&xs, a).unwrap();
                assert_eq!(
                    Some(lub),
                    brute_lub(k, x, &xs, a),
                    "⨆_{a} {xs:?} in cone of {x}"
                );
                let glb = k.glb_alpha_saturating(&xs, a).unwrap();
                assert_eq!(
                    Some(glb),
                    brute_glb(k, x, &xs, a),
                    "⨅_{a} {xs:?} in cone of {x}"
                );
            }
        }
    }
}

pub fn axiom_joins_preserve_stage_order(k: Kappa) {
    let vs: Vec<TruthValue> = k.values().collect();
    for a in k.alphas() {
        let pairs: Vec<(TruthValue, TruthValue)> = vs
            .iter()
            .flat_map(|&x| vs.iter().map(move |&y| (x, y)))
            .filter(|&(x, y)| sq(x, y, a))
            .collect();
        for &(x1, y1) in &pairs {
            for &(x2, y2) in &pairs {
                assert!(sq(x1.join(x2), y1.join(y2), a));
                assert!(sq(x1.meet(x2), y1.meet(y2), a));
            }
        }
    }
}

pub fn global_order_is_a_complete_lattice(k: Kappa) {
    let vs: Vec<TruthValue> = k.values().collect();
    let below =
        |x: TruthValue, y: TruthValue| x == y || k.alphas().any(|a| sq(x, y, a) && !eq(x, y, a));
    for &x in &vs {
        for &y in &vs {
            if below(x, y) && below(y, x) {
                assert_eq!(x, y);
            }
            for &z in &vs {
                if below(x, y) && below(y, z) {
                    assert!(below(x, z));
                }
            }
        }
    }
    for xs in subsets(&vs) {
        let ubs: Vec<TruthValue> = vs
            .iter()
            .copied()
            .filter(|&u| xs.iter().all(|&m| below(m, u)))
            .collect();
        assert!(
            ubs.iter().any(|&u| ubs.iter().all(|&v| below(u, v))),
            "no least upper bound of {xs:?}"
        );
    }
}

pub fn restriction_identities(k: Kappa) {
    let vs: Vec<TruthValue> = k.values().collect();
    for &x in &vs {
        let mut join = F(0);
        for a in k.alphas() {
            let xa = restrict(k, x, a);
            assert!(eq(x, xa, a));
            assert_eq!(Some(xa), brute_lub(k, x, &[x], a));
            join = join.join(xa);
            for b in k.alphas() {
                let xb = restrict(k, x, b);
                assert_eq!(restrict(k, xa, b), restrict(k, x, a.min(b)));
                if a < b {
                    assert!(eq(xa, xb, a));
                    assert!(xa <= xb);
                }
            }
            for &y in &vs {
                let ya = restrict(k, y, a);
                assert_eq!(eq(x, y, a), xa == ya);
                assert_eq!(eq(x, y, a), eq(xa, ya, a));
                assert_eq!(sq(x, y, a), sq(xa, ya, a));
                if sq(x, y, a) {
                    assert!(xa <= ya);
                }
            }
        }
        assert_eq!(join, x);
    }
}

pub fn restricted_values_compare_across_stages(k: Kappa) {
    let vs: Vec<TruthValue> = k.values().collect();
    for &x in &vs {
        for &y in &vs {
            for a in k.alphas() {
                for b in k.alphas().filter(|&b| b != a) {
                    let lhs = sq(restrict(k, x, b), restrict(k, y, b), a);
                    let rhs = (b < a && restrict(k, x, b) == restrict(k, y, b))
                        || (b > a && sq(restrict(k, x, a), restrict(k, y, a), a));
                    assert_eq!(lhs, rhs, "x={x} y={y} α={a} β={b}");
                    if b < a {
                        assert_eq!(restrict(k, x, b) == restrict(k, y, b), eq(x, y, b));
                    }
                }
            }
        }
    }
}

pub fn negation_is_monotone_at_every_stage(k: Kappa) {
    let vs: Vec<TruthValue> = k.values().collect();
    for a in k.alphas() {
        for &x in &vs {
            for &y in &vs {
                if sq(x, y, a) {
                    assert!(
                        sq(k.neg_saturating(x), k.neg_saturating(y), a),
                        "~ at {a}: {x} {y}"
                    );
                }
            }
        }
    }
}
