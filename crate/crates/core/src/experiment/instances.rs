//! Small random instances for checks and demonstrations.

use std::sync::Arc;

use rand::Rng;
use rand_distr::{Distribution, Uniform};

use crate::dataset::Dataset;
use crate::objective::{LogDetObjective, WeightedCoverage};
use crate::seed;
use crate::solver::Knapsack;
use crate::Result;

/// `n` items over a universe of `universe` elements with weights in `[0.1, 1]`. Each item covers
/// between one and `max_cover` elements chosen uniformly.
pub fn random_coverage(n: usize, universe: usize, max_cover: usize, seed: u64) -> Result<WeightedCoverage> {
    let mut rng = seed::rng(seed);
    let weights: Vec<f64> = (0..universe).map(|_| rng.random_range(0.1..=1.0)).collect();
    let covers = (0..n)
        .map(|_| {
            let size = rng.random_range(1..=max_cover.clamp(1, universe.max(1)));
            rand::seq::index::sample(&mut rng, universe, size).into_vec()
        })
        .collect();
    WeightedCoverage::new(covers, weights)
}

/// `n` points uniform in `[0, 1]^dim`.
pub fn random_points(n: usize, dim: usize, seed: u64) -> Result<Dataset> {
    let mut rng = seed::rng(seed);
    let unit = Uniform::new(0.0, 1.0).expect("valid range");
    let values: Vec<f64> = (0..n * dim).map(|_| unit.sample(&mut rng)).collect();
    Dataset::from_flat(values, dim)
}

/// Log-determinant objective with default kernel parameters over [`random_points`].
pub fn random_logdet(n: usize, dim: usize, seed: u64) -> Result<LogDetObjective> {
    Ok(LogDetObjective::with_defaults(Arc::new(random_points(n, dim, seed)?)))
}

/// Weights in `[0.1, 1]` and a budget of `budget_fraction` of the total weight.
pub fn random_knapsack(n: usize, budget_fraction: f64, seed: u64) -> Result<Knapsack> {
    let mut rng = seed::rng(seed);
    let weights: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..=1.0)).collect();
    let budget = budget_fraction * weights.iter().sum::<f64>();
    Knapsack::new(weights, budget)
}
