//! Monte Carlo check of the per-round loss bound
//! `E[f(C ∩ ∪S_i)] ≥ f(C) − (1 + β)·E[max_i f(S_i)]`
//! for a random partition of `B` into `L` parts, `S_i` the solver output on part `i` and any
//! `C ⊆ B` with `|C| ≤ k`.

use crate::partition::partition_with_rng;
use crate::seed;
use crate::solver::{Constraint, SolverKind};
use crate::objective::Objective;
use crate::{Error, ItemId, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PruningLossReport {
    pub trials: usize,
    pub beta: f64,
    /// `f(C)`.
    pub full_value: f64,
    /// Mean of `f(C ∩ ∪S_i)` over the partitions.
    pub mean_retained: f64,
    /// Mean of `max_i f(S_i)` over the partitions.
    pub mean_best_machine: f64,
    /// Three standard errors of the per-trial `f(C ∩ ∪S_i) + (1 + β)·max_i f(S_i)`.
    pub slack: f64,
}

impl PruningLossReport {
    /// Right-hand side `f(C) − (1 + β)·E[max_i f(S_i)]`.
    pub fn bound(&self) -> f64 {
        self.full_value - (1.0 + self.beta) * self.mean_best_machine
    }

    pub fn holds(&self) -> bool {
        self.mean_retained + self.slack >= self.bound()
    }
}

#[allow(clippy::too_many_arguments)]
pub fn check_pruning_loss<O: Objective>(
    oracle: &O,
    b: &[ItemId],
    parts: usize,
    c: &[ItemId],
    k: usize,
    solver: SolverKind,
    trials: usize,
    seed: u64,
) -> Result<PruningLossReport> {
    let beta = solver
        .beta_nice()
        .ok_or_else(|| Error::InvalidParameter(format!("{solver} is not known to be β-nice")))?
        .beta;
    if c.len() > k || c.iter().any(|e| !b.contains(e)) {
        return Err(Error::InvalidParameter(
            "C must be a subset of B with at most k items".into(),
        ));
    }
    if trials < 2 {
        return Err(Error::InvalidParameter("need at least two trials".into()));
    }
    let constraint = Constraint::cardinality(k);
    let full_value = oracle.value(c)?;

    let mut retained = Vec::with_capacity(trials);
    let mut best = Vec::with_capacity(trials);
    for trial in 0..trials {
        let mut rng = seed::substream(seed, &[trial as u64]);
        let split = partition_with_rng(b, parts, &mut rng)?;
        let mut kept = Vec::new();
        let mut top = 0f64;
        for (i, part) in split.iter().enumerate() {
            let out = solver.run(oracle, part, &constraint, seed::derive_seed(seed, &[trial as u64, i as u64]))?;
            top = top.max(out.value);
            kept.extend(out.selected.iter().filter(|e| c.contains(e)));
        }
        retained.push(oracle.value(&kept)?);
        best.push(top);
    }

    let n = trials as f64;
    let mean = |xs: &[f64]| xs.iter().sum::<f64>() / n;
    let combined: Vec<f64> = retained
        .iter()
        .zip(&best)
        .map(|(r, m)| r + (1.0 + beta) * m)
        .collect();
    let mu = mean(&combined);
    let var = combined.iter().map(|x| (x - mu) * (x - mu)).sum::<f64>() / (n - 1.0);
    Ok(PruningLossReport {
        trials,
        beta,
        full_value,
        mean_retained: mean(&retained),
        mean_best_machine: mean(&best),
        slack: 3.0 * (var / n).sqrt(),
    })
}
