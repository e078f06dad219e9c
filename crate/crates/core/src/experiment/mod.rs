//! Experiment sweeps: a configuration names a dataset, an objective, cardinalities, capacities,
//! algorithms and seeds; [`run_experiment`] evaluates every combination and returns a
//! [`ResultTable`] whose CSV form is stable across reruns apart from the timing column.

mod checks;
mod config;
pub mod instances;
mod table;

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

pub use checks::{self_check, CheckOutcome};
pub use config::{Algorithm, ExperimentConfig, ExperimentPlan, ObjectiveChoice, OneOrMany, Seeds};
pub use table::{
    format_float, summary_csv, AggregateRow, ResultRow, ResultTable, Stats, CAPACITY_VIOLATION, CSV_HEADER,
    SUMMARY_HEADER,
};

use crate::distree::{rand_greedi, random_baseline, tree_compress, TreeConfig};
use crate::objective::{ExemplarObjective, LogDetObjective, Objective};
use crate::seed::derive_seed;
use crate::solver::{lazy_greedy, Constraint, SolverResult};
use crate::{Error, ItemId, Result};

/// Builds the dataset and objective described by `plan` and runs every cell.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<ResultTable> {
    let data = plan.config.load_dataset()?;
    match plan.objective {
        ObjectiveChoice::Exemplar { eval_size, eval_seed } => {
            let oracle = ExemplarObjective::with_eval_subsample(data, eval_size, eval_seed)?;
            run_with_oracle(&oracle, plan)
        }
        ObjectiveChoice::LogDet {
            bandwidth,
            noise,
            distance,
        } => {
            let oracle = LogDetObjective::new(data, bandwidth, noise)?.with_distance(distance);
            run_with_oracle(&oracle, plan)
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Cell {
    algorithm: Algorithm,
    k: usize,
    mu: Option<usize>,
    seed: u64,
}

/// Runs every cell of `plan` against an already built objective.
pub fn run_with_oracle<O: Objective>(oracle: &O, plan: &ExperimentPlan) -> Result<ResultTable> {
    let n = oracle.ground_size();
    let ground: Vec<ItemId> = (0..n).collect();
    let mut reference = BTreeMap::new();
    let mut greedy_runs = BTreeMap::new();
    for &k in &plan.ks {
        if k > n {
            return Err(Error::config("k", format!("k = {k} exceeds the {n} items of the dataset")));
        }
        let start = Instant::now();
        let out = lazy_greedy(oracle, &ground, &Constraint::cardinality(k));
        reference.insert(k, out.value);
        greedy_runs.insert(k, (out, start.elapsed().as_secs_f64() * 1e3));
    }

    let mut cells = Vec::new();
    for &k in &plan.ks {
        for &algorithm in &plan.algorithms {
            let mus = if algorithm.uses_capacity() {
                plan.config.capacities(k).into_iter().map(Some).collect()
            } else if algorithm == Algorithm::Greedy {
                vec![Some(n)]
            } else {
                vec![None]
            };
            for mu in mus {
                for &seed in &plan.seeds {
                    cells.push(Cell { algorithm, k, mu, seed });
                }
            }
        }
    }

    let run = |cell: &Cell| -> Result<ResultRow> {
        let start = Instant::now();
        let outcome: Option<(SolverResult, usize)> = match cell.algorithm {
            Algorithm::Greedy => {
                let (out, ms) = &greedy_runs[&cell.k];
                return Ok(row(plan, cell, Some((out.clone(), 1)), reference[&cell.k], *ms));
            }
            Algorithm::Random => Some((random_baseline(oracle, cell.k, derive_seed(cell.seed, &[cell.k as u64]))?, 1)),
            Algorithm::Tree(solver) => {
                let cfg = TreeConfig::new(cell.k, cell.mu.expect("capacity"))
                    .with_solver(solver)
                    .with_seed(cell.seed);
                let report = tree_compress(oracle, &cfg)?;
                let rounds = report.round_count();
                Some((with_total_calls(report.best, report.total_oracle_calls), rounds))
            }
            Algorithm::RandGreedi(solver) => {
                let mu = cell.mu.expect("capacity");
                let cfg = TreeConfig::new(cell.k, mu).with_solver(solver).with_seed(cell.seed);
                match rand_greedi(oracle, n.div_ceil(mu).max(1), &cfg) {
                    Ok(report) => {
                        let rounds = report.round_count();
                        Some((with_total_calls(report.best, report.total_oracle_calls), rounds))
                    }
                    Err(Error::CapacityViolation { .. }) => None,
                    Err(e) => return Err(e),
                }
            }
        };
        let ms = start.elapsed().as_secs_f64() * 1e3;
        Ok(row(plan, cell, outcome, reference[&cell.k], ms))
    };

    let rows: Vec<ResultRow> = if plan.config.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(plan.config.workers)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(|| cells.par_iter().map(run).collect::<Result<_>>())?
    } else {
        cells.iter().map(run).collect::<Result<_>>()?
    };
    Ok(ResultTable { rows, n, reference })
}

fn with_total_calls(mut best: SolverResult, calls: u64) -> SolverResult {
    best.oracle_calls = calls;
    best
}

fn row(plan: &ExperimentPlan, cell: &Cell, outcome: Option<(SolverResult, usize)>, reference: f64, wall_ms: f64) -> ResultRow {
    let (value, rel_err_pct, rounds, oracle_calls) = match outcome {
        Some((out, rounds)) => {
            let rel = if reference > 0.0 {
                100.0 * (reference - out.value) / reference
            } else {
                0.0
            };
            (Some(out.value), Some(rel), rounds, out.oracle_calls)
        }
        None => (None, None, 0, 0),
    };
    ResultRow {
        dataset: plan.config.dataset_label(),
        objective: plan.objective.name().into(),
        algorithm: cell.algorithm.label(plan.solver),
        k: cell.k,
        mu: cell.mu,
        seed: cell.seed,
        value,
        rel_err_pct,
        rounds,
        oracle_calls,
        wall_ms,
    }
}

/// One point of a capacity curve: solution quality relative to centralized greedy.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub algorithm: String,
    pub k: usize,
    pub mu: Option<usize>,
    pub runs: usize,
    pub violations: usize,
    pub mean_ratio: f64,
    pub stdev_ratio: f64,
    pub mean_rounds: f64,
    /// `√(n·k)`, the smallest capacity at which two rounds can suffice.
    pub sqrt_nk: f64,
    /// Whether `⌈n/µ⌉·k ≤ µ`, so the first-round union fits on one machine.
    pub two_round_capable: bool,
}

pub const SWEEP_HEADER: &str =
    "algorithm,k,mu,runs,violations,mean_ratio,stdev_ratio,mean_rounds,sqrt_nk,two_round_capable";

/// Runs `plan` and reduces it to one [`SweepPoint`] per algorithm, `k` and capacity.
pub fn capacity_sweep(plan: &ExperimentPlan) -> Result<(ResultTable, Vec<SweepPoint>)> {
    let table = run_experiment(plan)?;
    let points = sweep_points(&table);
    Ok((table, points))
}

pub fn sweep_points(table: &ResultTable) -> Vec<SweepPoint> {
    let n = table.n;
    table
        .aggregate()
        .into_iter()
        .map(|a| SweepPoint {
            sqrt_nk: ((n * a.k) as f64).sqrt(),
            two_round_capable: a.mu.is_some_and(|mu| n.div_ceil(mu) * a.k <= mu),
            algorithm: a.algorithm,
            k: a.k,
            mu: a.mu,
            runs: a.runs,
            violations: a.violations,
            mean_ratio: a.ratio.mean,
            stdev_ratio: a.ratio.stdev,
            mean_rounds: a.rounds.mean,
        })
        .collect()
}

pub fn sweep_csv(points: &[SweepPoint]) -> String {
    let f = |x: f64| if x.is_nan() { String::new() } else { format_float(x) };
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for p in points {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            p.algorithm,
            p.k,
            p.mu.map(|m| m.to_string()).unwrap_or_default(),
            p.runs,
            p.violations,
            f(p.mean_ratio),
            f(p.stdev_ratio),
            f(p.mean_rounds),
            f(p.sqrt_nk),
            p.two_round_capable,
        ));
    }
    out
}

/// Writes `results.csv` and `summary.csv` into `dir`, creating it if needed.
pub fn write_outputs(table: &ResultTable, dir: impl AsRef<Path>) -> Result<()> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    table.write_csv(dir.join("results.csv"))?;
    let summary = dir.join("summary.csv");
    std::fs::write(&summary, summary_csv(&table.aggregate())).map_err(|e| Error::io(&summary, e))
}
