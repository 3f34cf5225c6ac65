//! Solver benchmarks.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use extensia_bench::{corpus, BAND, OVERVIEW, WADGE};
use extensia_core::engine::{least_model, EngineConfig};
use extensia_core::load;
use extensia_core::oracle::well_founded;

fn fixtures(c: &mut Criterion) {
    let overview = load(OVERVIEW, false).unwrap();
    c.bench_function("solve/overview", |b| {
        b.iter(|| least_model(black_box(&overview), &EngineConfig::default()).unwrap())
    });
    let wadge = load(WADGE, true).unwrap();
    c.bench_function("solve/wadge", |b| {
        b.iter(|| least_model(black_box(&wadge), &EngineConfig::default()).unwrap())
    });
    let band = load(BAND, false).unwrap();
    let mut group = c.benchmark_group("solve/band");
    group.sample_size(10);
    for kappa in [2, 3] {
        group.bench_function(format!("kappa{kappa}"), |b| {
            b.iter(|| least_model(black_box(&band), &EngineConfig::with_kappa(kappa)).unwrap())
        });
    }
    group.finish();
}

fn corpus_wfs(c: &mut Criterion) {
    let programs = corpus(50, 7);
    let typed: Vec<_> = programs.iter().map(|p| load(p, false).unwrap()).collect();
    c.bench_function("corpus/wfs", |b| {
        b.iter(|| {
            for p in &programs {
                black_box(well_founded(p).unwrap());
            }
        })
    });
    c.bench_function("corpus/solve", |b| {
        b.iter(|| {
            for p in &typed {
                black_box(least_model(p, &EngineConfig::default()).unwrap());
            }
        })
    });
}

criterion_group!(benches, fixtures, corpus_wfs);
criterion_main!(benches);
