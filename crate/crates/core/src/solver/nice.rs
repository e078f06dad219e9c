use rand::seq::IndexedRandom;
use rand::Rng;

use crate::objective::Objective;
use crate::solver::{Constraint, SolverKind, SolverResult};
use crate::{seed, Error, ItemId, Result};

const TOLERANCE: f64 = 1e-9;
const MAX_COUNTEREXAMPLES: usize = 8;

/// A trial where one of the two properties failed.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub input: Vec<ItemId>,
    /// The unselected item removed from (or probed against) the input.
    pub probe: ItemId,
    pub output: Vec<ItemId>,
    pub output_without_probe: Vec<ItemId>,
    pub probe_gain: f64,
    pub gain_bound: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BetaNiceReport {
    pub trials: usize,
    /// Trials with at least one unselected item to probe.
    pub checked: usize,
    /// `A(T \ {x}) ≠ A(T)`.
    pub consistency_violations: usize,
    /// `f(A(T) ∪ {x}) − f(A(T)) > β·f(A(T))/k`.
    pub gain_violations: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl BetaNiceReport {
    pub fn passed(&self) -> bool {
        self.consistency_violations == 0 && self.gain_violations == 0
    }
}

/// Probes the two β-nice properties of `algorithm` on `trials` random inputs `T ⊆ ground`
/// (each item kept with probability ½) and a random unselected `x ∈ T \ A(T)`:
///
/// 1. rerunning on `T \ {x}` yields exactly the same set;
/// 2. the gain of `x` on top of `A(T)` is at most `β·f(A(T))/k` (within 1e−9).
pub fn check_beta_nice<O, A>(
    oracle: &O,
    ground: &[ItemId],
    k: usize,
    beta: f64,
    trials: usize,
    seed: u64,
    algorithm: A,
) -> Result<BetaNiceReport>
where
    O: Objective,
    A: Fn(&[ItemId]) -> Result<SolverResult>,
{
    if k == 0 || !(beta > 0.0) {
        return Err(Error::InvalidParameter("need k ≥ 1 and β > 0".into()));
    }
    let mut rng = seed::rng(seed);
    let mut report = BetaNiceReport {
        trials,
        ..Default::default()
    };
    if ground.is_empty() {
        return Ok(report);
    }
    for _ in 0..trials {
        let input = loop {
            let t: Vec<ItemId> = ground.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
            if !t.is_empty() {
                break t;
            }
        };
        let output = algorithm(&input)?.sorted_selection();
        let unselected: Vec<ItemId> = input.iter().copied().filter(|e| !output.contains(e)).collect();
        let Some(&probe) = unselected.choose(&mut rng) else {
            continue;
        };
        report.checked += 1;

        let without: Vec<ItemId> = input.iter().copied().filter(|&e| e != probe).collect();
        let output_without_probe = algorithm(&without)?.sorted_selection();
        let probe_gain = oracle.marginal(probe, &output)?;
        let gain_bound = beta * oracle.value(&output)? / k as f64;

        let inconsistent = output_without_probe != output;
        let too_large = probe_gain > gain_bound + TOLERANCE;
        report.consistency_violations += usize::from(inconsistent);
        report.gain_violations += usize::from(too_large);
        if (inconsistent || too_large) && report.counterexamples.len() < MAX_COUNTEREXAMPLES {
            report.counterexamples.push(Counterexample {
                input,
                probe,
                output,
                output_without_probe,
                probe_gain,
                gain_bound,
            });
        }
    }
    Ok(report)
}

/// [`check_beta_nice`] for a registered solver with its declared β under a cardinality-`k`
/// constraint. Solvers without a β-nice guarantee are rejected.
pub fn check_solver_beta_nice<O: Objective>(
    solver: SolverKind,
    oracle: &O,
    ground: &[ItemId],
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<BetaNiceReport> {
    let spec = solver
        .beta_nice()
        .ok_or_else(|| Error::InvalidParameter(format!("{solver} is not known to be β-nice")))?;
    let constraint = Constraint::cardinality(k);
    check_beta_nice(oracle, ground, k, spec.beta, trials, seed, |t| {
        solver.run(oracle, t, &constraint, 0)
    })
}
