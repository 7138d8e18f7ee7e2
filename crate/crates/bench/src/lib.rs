//! Shared fixtures for the criterion benches.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dirmax::gridops::GridFunction;

pub fn random_grid(n: usize, seed: u64) -> GridFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<f64> = (0..n * n).map(|_| rng.gen_range(0.0..1.0)).collect();
    GridFunction::new(n, n as f64, samples).unwrap()
}
