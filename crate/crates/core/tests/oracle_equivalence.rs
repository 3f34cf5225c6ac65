use extensia_core::engine::{least_model, EngineConfig};
use extensia_core::oracle::{
    brute_min_model, enumerate_models, random_normal_program, well_founded, CorpusParams,
    DEFAULT_BUDGET,
};
use extensia_core::semantics::{interp_sq, Semantics};
use extensia_core::{load_surface, Kappa};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn corpus(seed: u64, n: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| random_normal_program(&mut rng, CorpusParams::default()))
        .collect()
}

#[test]
fn collapse_agrees_with_well_founded_model() {
    for src in corpus(2024, 200) {
        let p = load_surface(&src, false).unwrap();
        let r = least_model(&p, &EngineConfig::default()).unwrap();
        let wfs = well_founded(&src).unwrap();
        let space = r.model.space();
        for (pred, cell) in r.model.cells() {
            let label = space.cell_label(pred, cell);
            assert_eq!(
                Some(r.model.get(pred, cell).three_valued()),
                wfs.get(&label),
                "cell {label} of\n{src}"
            );
        }
    }
}

#[test]
fn brute_force_agrees_with_engine_on_tiny_programs() {
    let params = CorpusParams {
        max_atoms: 3,
        max_rules: 5,
        max_body: 2,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..40 {
        let src = random_normal_program(&mut rng, params);
        let p = load_surface(&src, false).unwrap();
        for k in 1..=3 {
            let kappa = Kappa::new(k).unwrap();
            let engine = least_model(&p, &EngineConfig::with_kappa(k)).unwrap().model;
            let brute = brute_min_model(&p, kappa, DEFAULT_BUDGET).unwrap();
            assert_eq!(engine.to_json(), brute.to_json(), "kappa {k}\n{src}");
            let sem = Semantics::new(&p, kappa).unwrap();
            for m in enumerate_models(&sem, DEFAULT_BUDGET).unwrap() {
                assert!(interp_sq(&engine, &m).unwrap(), "kappa {k}\n{src}");
            }
        }
    }
}

#[test]
#[ignore]
fn corpus_statistics() {
    let (mut undef, mut deep, mut cells) = (0, 0, 0);
    for src in corpus(2024, 200) {
        let p = load_surface(&src, false).unwrap();
        let r = least_model(&p, &EngineConfig::default()).unwrap();
        for v in r.model.values() {
            cells += 1;
            undef += (v == extensia_core::TruthValue::Zero) as usize;
            deep += v.level().is_some_and(|l| l >= 2) as usize;
        }
    }
    eprintln!("cells={cells} undef={undef} level>=2={deep}");
    eprintln!("{}", corpus(2024, 3).join("---\n"));
}
