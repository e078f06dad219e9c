//! The self-check battery behind the `check` subcommand.

use std::sync::Arc;

use crate::dataset::{synth_gaussian_mixture, MixtureSpec};
use crate::distree::check_pruning_loss;
use crate::experiment::instances::{random_coverage, random_logdet};
use crate::objective::properties::{check_monotone_submodular, incremental_drift};
use crate::objective::{ExemplarObjective, Objective};
use crate::seed::derive_seed;
use crate::solver::{brute_force_opt, check_solver_beta_nice, Constraint, SolverKind};
use crate::{ItemId, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        CheckOutcome {
            name: name.into(),
            passed,
            detail,
        }
    }
}

/// Oracle properties, β-niceness of the deterministic solvers and the per-round loss bound on
/// small random instances. `trials` scales every randomized check.
pub fn self_check(seed: u64, trials: usize) -> Result<Vec<CheckOutcome>> {
    let trials = trials.max(2);
    let mut out = Vec::new();

    let points = Arc::new(synth_gaussian_mixture(&MixtureSpec::new(150, 5, 6, 0.2, seed))?);
    let exemplar = ExemplarObjective::exact(points);
    let logdet = random_logdet(80, 4, derive_seed(seed, &[1]))?;
    let coverage = random_coverage(40, 60, 6, derive_seed(seed, &[2]))?;

    for (name, report) in [
        ("exemplar properties", check_monotone_submodular(&exemplar, trials, 10, 1e-12, seed)?),
        ("logdet properties", check_monotone_submodular(&logdet, trials, 10, 1e-12, seed)?),
        ("coverage properties", check_monotone_submodular(&coverage, trials, 10, 1e-12, seed)?),
    ] {
        out.push(CheckOutcome::new(
            name,
            report.passed(),
            format!(
                "{} trials, {} negative, {} non-monotone, {} non-submodular",
                report.trials,
                report.negative_values,
                report.monotonicity_violations,
                report.submodularity_violations
            ),
        ));
    }

    let drift = incremental_drift(&logdet, 3, 20, seed)?.max(incremental_drift(&exemplar, 3, 20, seed)?);
    out.push(CheckOutcome::new(
        "incremental agreement",
        drift <= 1e-9,
        format!("largest drift {drift:.3e}"),
    ));

    let ground: Vec<ItemId> = (0..coverage.ground_size()).collect();
    for solver in [SolverKind::Lazy, SolverKind::Threshold { eps: 0.1 }] {
        let report = check_solver_beta_nice(solver, &coverage, &ground, 5, trials, seed)?;
        out.push(CheckOutcome::new(
            &format!("{solver} β-nice"),
            report.passed(),
            format!(
                "{} checked, {} inconsistent, {} gain violations",
                report.checked, report.consistency_violations, report.gain_violations
            ),
        ));
    }

    let small = random_coverage(15, 20, 4, derive_seed(seed, &[3]))?;
    let b: Vec<ItemId> = (0..15).collect();
    let opt = brute_force_opt(&small, &b, &Constraint::cardinality(3))?;
    let loss = check_pruning_loss(&small, &b, 3, &opt.selected, 3, SolverKind::Lazy, trials, seed)?;
    out.push(CheckOutcome::new(
        "pruning loss bound",
        loss.holds(),
        format!(
            "retained {:.4} + slack {:.4} vs bound {:.4}",
            loss.mean_retained,
            loss.slack,
            loss.bound()
        ),
    ));
    Ok(out)
}
