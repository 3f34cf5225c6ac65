//! Basic-model laws on small predicate domains.

use extensia_core::domains::{
    den_eq_alpha, den_glb_alpha, den_join, den_leq, den_lub_alpha, den_restrict, den_sq_alpha,
    enumerate_domain, is_alpha_monotone, Denotation, Domain, Universe,
};
use extensia_core::{Kappa, Level, Type};

pub struct Space {
    pub kappa: Kappa,
    pub dom: Domain,
    pub elems: Vec<Denotation>,
}

pub fn space(ty: &Type, universe: usize, kappa: Level) -> Space {
    let names: Vec<String> = (0..universe).map(|i| format!("c{i}")).collect();
    let u = Universe::new(names).unwrap();
    let kappa = Kappa::new(kappa).unwrap();
    let dom = Domain::of(ty, u.len(), kappa).unwrap();
    let elems = if ty.is_enumerable() {
        enumerate_domain(ty, &u, kappa).unwrap()
    } else {
        (0..dom.size().unwrap()).map(|i| dom.element(i)).collect()
    };
    Space { kappa, dom, elems }
}

pub fn io() -> Type {
    Type::predicate([Type::Iota])
}

/// `⟦i -> o⟧` for every universe of size at most 2 and κ at most 3.
pub fn small_spaces() -> Vec<Space> {
    let mut out = Vec::new();
    for u in 1..=2 {
        for k in 1..=3 {
            out.push(space(&io(), u, k));
        }
    }
    out
}

impl Space {
    pub fn sq(&self, a: &Denotation, b: &Denotation, alpha: Level) -> bool {
        den_sq_alpha(&self.dom, a, b, alpha).unwrap()
    }

    pub fn eq(&self, a: &Denotation, b: &Denotation, alpha: Level) -> bool {
        den_eq_alpha(&self.dom, a, b, alpha).unwrap()
    }

    pub fn leq(&self, a: &Denotation, b: &Denotation) -> bool {
        den_leq(&self.dom, a, b).unwrap()
    }

    pub fn in_cone(&self, x: &Denotation, y: &Denotation, alpha: Level) -> bool {
        (0..alpha).all(|b| self.eq(x, y, b))
    }

    pub fn below(&self, a: &Denotation, b: &Denotation) -> bool {
        a == b
            || self
                .kappa
                .alphas()
                .any(|al| self.sq(a, b, al) && !self.eq(a, b, al))
    }
}

pub fn element_counts(s: &Space) {
    let n = s.dom.size().unwrap();
    assert_eq!(s.elems.len(), n);
    assert!(s
        .elems
        .iter()
        .all(|d| is_alpha_monotone(&s.dom, d).unwrap()));
}

pub fn axiom_stage_bounds_on_small_families(s: &Space) {
    for alpha in s.kappa.alphas() {
        for x in &s.elems {
            let cone: Vec<&Denotation> =
                s.elems.iter().filter(|y| s.in_cone(x, y, alpha)).collect();
            let mut families: Vec<Vec<Denotation>> = Vec::new();
            for (i, a) in cone.iter().enumerate() {
                families.push(vec![(*a).clone()]);
                for b in &cone[i + 1..] {
                    families.push(vec![(*a).clone(), (*b).clone()]);
                }
            }
            for xs in families {
                let lub = den_lub_alpha(&s.dom, &xs, alpha).unwrap();
                assert!(s.in_cone(x, &lub, alpha));
                assert!(xs.iter().all(|m| s.sq(m, &lub, alpha)));
                for z in &cone {
                    if xs.iter().all(|m| s.sq(m, z, alpha)) {
                        assert!(s.sq(&lub, z, alpha) && s.leq(&lub, z));
                    }
                }
                let glb = den_glb_alpha(&s.dom, &xs, alpha).unwrap();
                assert!(s.in_cone(x, &glb, alpha));
                assert!(xs.iter().all(|m| s.sq(&glb, m, alpha)));
                for z in &cone {
                    if xs.iter().all(|m| s.sq(z, m, alpha)) {
                        assert!(s.sq(z, &glb, alpha) && s.leq(z, &glb));
                    }
                }
            }
        }
    }
}

pub fn axiom_joins_preserve_stage_order(s: &Space) {
    for alpha in s.kappa.alphas() {
        let pairs: Vec<(&Denotation, &Denotation)> = s
            .elems
            .iter()
            .flat_map(|x| s.elems.iter().map(move |y| (x, y)))
            .filter(|(x, y)| s.sq(x, y, alpha))
            .collect();
        for (x1, y1) in &pairs {
            for (x2, y2) in pairs.iter().step_by(3) {
                let xj = den_join(&s.dom, &[(*x1).clone(), (*x2).clone()]).unwrap();
                let yj = den_join(&s.dom, &[(*y1).clone(), (*y2).clone()]).unwrap();
                assert!(s.sq(&xj, &yj, alpha));
            }
        }
    }
}

pub fn global_order_has_pairwise_bounds(s: &Space) {
    for x in &s.elems {
        for y in &s.elems {
            let ubs: Vec<&Denotation> = s
                .elems
                .iter()
                .filter(|u| s.below(x, u) && s.below(y, u))
                .collect();
            assert!(ubs.iter().any(|u| ubs.iter().all(|v| s.below(u, v))));
            let lbs: Vec<&Denotation> = s
                .elems
                .iter()
                .filter(|l| s.below(l, x) && s.below(l, y))
                .collect();
            assert!(lbs.iter().any(|l| lbs.iter().all(|v| s.below(v, l))));
        }
    }
}

pub fn restriction_is_the_singleton_bound(s: &Space) {
    for x in &s.elems {
        for alpha in s.kappa.alphas() {
            let r = den_restrict(&s.dom, x, alpha).unwrap();
            assert_eq!(
                r,
                den_lub_alpha(&s.dom, std::slice::from_ref(x), alpha).unwrap()
            );
            assert!(s.eq(x, &r, alpha));
        }
    }
}

pub fn axioms_on_pairs(s: &Space) {
    for x in &s.elems {
        for y in &s.elems {
            for b in s.kappa.alphas() {
                if s.sq(x, y, b) {
                    assert!((0..b).all(|a| s.eq(x, y, a)));
                }
            }
            if s.kappa.alphas().all(|a| s.eq(x, y, a)) {
                assert_eq!(x, y);
            }
        }
    }
}
