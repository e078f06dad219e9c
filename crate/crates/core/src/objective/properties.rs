//! Randomized checks of the oracle contract: non-negativity, monotonicity, submodularity, and
//! agreement between the incremental and from-scratch evaluation paths.
//!
//! All differences here are computed from scratch with [`Objective::value`], so the checks do not
//! depend on the incremental code they are used to validate.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::objective::Objective;
use crate::{seed, ItemId, Result};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PropertyReport {
    pub trials: usize,
    pub negative_values: usize,
    pub monotonicity_violations: usize,
    pub submodularity_violations: usize,
    /// Largest `Δ(e, Y) − Δ(e, X)` observed over the trials, for `X ⊆ Y`.
    pub worst_submodularity_gap: f64,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.negative_values == 0
            && self.monotonicity_violations == 0
            && self.submodularity_violations == 0
    }
}

fn random_subset<R: Rng>(rng: &mut R, pool: &[ItemId], max_len: usize) -> Vec<ItemId> {
    let len = rng.random_range(0..=max_len.min(pool.len()));
    pool.choose_multiple(rng, len).copied().collect()
}

/// Draws `trials` random triples `X ⊆ Y`, `e ∉ Y` of at most `max_set` items and checks
/// `f ≥ 0`, `Δ(e, X) ≥ −tol` and `Δ(e, X) ≥ Δ(e, Y) − tol`.
pub fn check_monotone_submodular<O: Objective>(
    oracle: &O,
    trials: usize,
    max_set: usize,
    tol: f64,
    seed: u64,
) -> Result<PropertyReport> {
    let n = oracle.ground_size();
    let mut rng = seed::rng(seed);
    let mut report = PropertyReport {
        trials,
        worst_submodularity_gap: f64::NEG_INFINITY,
        ..Default::default()
    };
    if n < 1 {
        return Ok(report);
    }
    let mut items: Vec<ItemId> = (0..n).collect();
    for _ in 0..trials {
        items.shuffle(&mut rng);
        let (e, rest) = items.split_first().expect("nonempty");
        let y = random_subset(&mut rng, rest, max_set);
        let x = random_subset(&mut rng, &y, y.len());
        let fx = oracle.value(&x)?;
        let fy = oracle.value(&y)?;
        let fxe = oracle.value(&[x.as_slice(), &[*e]].concat())?;
        let fye = oracle.value(&[y.as_slice(), &[*e]].concat())?;
        if [fx, fy, fxe, fye].iter().any(|&v| v < -tol) {
            report.negative_values += 1;
        }
        let (dx, dy) = (fxe - fx, fye - fy);
        if dx < -tol || dy < -tol || fy < fx - tol {
            report.monotonicity_violations += 1;
        }
        if dx < dy - tol {
            report.submodularity_violations += 1;
        }
        report.worst_submodularity_gap = report.worst_submodularity_gap.max(dy - dx);
    }
    Ok(report)
}

/// Largest absolute difference between the incremental value and the from-scratch value
/// along `chains` random insertion chains of `length` items each.
pub fn incremental_drift<O: Objective>(oracle: &O, chains: usize, length: usize, seed: u64) -> Result<f64> {
    let n = oracle.ground_size();
    let mut rng = seed::rng(seed);
    let mut worst = 0f64;
    let mut items: Vec<ItemId> = (0..n).collect();
    for _ in 0..chains {
        items.shuffle(&mut rng);
        let mut state = oracle.empty_state();
        for (i, &e) in items.iter().take(length).enumerate() {
            let gain = oracle.gain(&state, e);
            let before = oracle.state_value(&state);
            oracle.state_insert(&mut state, e);
            let incremental = oracle.state_value(&state);
            let scratch = oracle.value(&items[..=i])?;
            worst = worst
                .max((incremental - scratch).abs())
                .max((before + gain - scratch).abs());
        }
    }
    Ok(worst)
}
