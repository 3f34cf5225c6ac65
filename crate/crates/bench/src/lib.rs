//! Benchmark fixtures.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use extensia_core::oracle::{random_normal_program, CorpusParams};

pub const OVERVIEW: &str = include_str!("../../core/fixtures/overview.hl");
pub const WADGE: &str = include_str!("../../core/fixtures/wadge.hl");
pub const BAND: &str = include_str!("../../core/fixtures/band.hl");

/// A fixed corpus of random normal programs.
pub fn corpus(n: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| random_normal_program(&mut rng, CorpusParams::default()))
        .collect()
}
