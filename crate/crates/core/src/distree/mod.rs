//! Tree-based compression over simulated machines of fixed capacity.
//!
//! Round `t` starts from the surviving items `A_t` (initially the whole ground set), provisions
//! `m_t = ⌈|A_t|/µ⌉` machines, partitions `A_t` across them with
//! [`balanced_random_partition`](crate::partition::balanced_random_partition), and lets every
//! machine compress its part with the configured solver. The union of the machine outputs is
//! `A_{t+1}`. The run ends after the round in which a single machine held all of `A_t`, and the
//! best output of any machine in any round is returned.
//!
//! Every random draw is keyed by `(master_seed, round)` or `(master_seed, round, machine)` and
//! made before machines run, so the result does not depend on the number of worker threads.

mod baselines;
mod loss_bound;
mod report;

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;

pub use baselines::{rand_greedi, random_baseline};
pub use loss_bound::{check_pruning_loss, PruningLossReport};

use crate::objective::Objective;
use crate::partition::balanced_random_partition;
use crate::seed::derive_seed;
use crate::solver::{Constraint, Knapsack, SolverKind, SolverResult};
use crate::{Error, ItemId, Result};

/// Upper bound on the number of rounds for `n` items, output size `k` and capacity `µ > k`:
/// `⌈log_{µ/k}(n/µ)⌉ + 1` when `n > µ`, otherwise 1. Evaluated in exact integer arithmetic.
pub fn round_count(n: usize, k: usize, mu: usize) -> Result<usize> {
    if k == 0 || mu <= k {
        return Err(Error::CapacityNotAboveK { k, mu });
    }
    if n <= mu {
        return Ok(1);
    }
    // smallest j with (µ/k)^j ≥ n/µ, i.e. µ^(j+1) ≥ n·k^j
    let (n_big, k_big, mu_big) = (BigUint::from(n), BigUint::from(k), BigUint::from(mu));
    let reaches = |j: u32| mu_big.pow(j + 1) >= &n_big * k_big.pow(j);
    let estimate = ((n as f64 / mu as f64).ln() / (mu as f64 / k as f64).ln()).ceil();
    let mut j = if estimate.is_finite() && estimate > 0.0 {
        estimate as u32
    } else {
        1
    };
    while j > 0 && reaches(j - 1) {
        j -= 1;
    }
    while !reaches(j) {
        j += 1;
    }
    Ok(j as usize + 1)
}

/// Rounds taken when every machine returns exactly `k` items: `a_0 = n`,
/// `a_{t+1} = ⌈a_t/µ⌉·k`, counted until a single machine holds the active set.
///
/// Unlike [`round_count`] this accounts for the rounding of `⌈a_t/µ⌉`, so it can exceed
/// [`round_count`] by one or more rounds (for instance `n = 100, k = 5, µ = 23` takes 3 rounds
/// while [`round_count`] gives 2). Requires `µ ≥ 2k`, which guarantees the active set shrinks
/// while more than one machine is needed.
pub fn worst_case_rounds(n: usize, k: usize, mu: usize) -> Result<usize> {
    if k == 0 || mu < 2 * k {
        return Err(Error::InvalidParameter(format!(
            "worst-case round count needs µ ≥ 2k, got k = {k}, µ = {mu}"
        )));
    }
    let (mut active, mut rounds) = (n, 1);
    while active > mu {
        active = active.div_ceil(mu) * k;
        rounds += 1;
    }
    Ok(rounds)
}

/// When the round loop stops.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Termination {
    /// After the first round that ran on a single machine.
    #[default]
    SingleMachine,
    /// After exactly [`round_count`] rounds, as in the fixed-`r` pseudocode.
    FixedRounds,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TreeConfig {
    /// Maximum output size of a machine.
    pub k: usize,
    /// Machine capacity in items.
    pub mu: usize,
    /// Optional knapsack on top of the cardinality bound `k`.
    pub knapsack: Option<Arc<Knapsack>>,
    pub solver: SolverKind,
    pub master_seed: u64,
    pub max_rounds_guard: usize,
    /// Worker threads used for the machines of one round.
    pub workers: usize,
    pub termination: Termination,
}

impl TreeConfig {
    pub fn new(k: usize, mu: usize) -> Self {
        TreeConfig {
            k,
            mu,
            knapsack: None,
            solver: SolverKind::Lazy,
            master_seed: 0,
            max_rounds_guard: 64,
            workers: 1,
            termination: Termination::SingleMachine,
        }
    }

    /// Knapsack-constrained run where `k` is the largest feasible set size within `ground`.
    pub fn for_knapsack(knapsack: Arc<Knapsack>, ground: &[ItemId], mu: usize) -> Self {
        let k = knapsack.max_feasible_size(ground);
        TreeConfig {
            knapsack: Some(knapsack),
            ..TreeConfig::new(k, mu)
        }
    }

    pub fn with_solver(mut self, solver: SolverKind) -> Self {
        self.solver = solver;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_termination(mut self, termination: Termination) -> Self {
        self.termination = termination;
        self
    }

    pub fn constraint(&self) -> Constraint {
        match &self.knapsack {
            Some(kn) => Constraint::both(self.k, kn.clone()),
            None => Constraint::cardinality(self.k),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 || self.mu <= self.k {
            return Err(Error::CapacityNotAboveK {
                k: self.k,
                mu: self.mu,
            });
        }
        if self.workers == 0 || self.max_rounds_guard == 0 {
            return Err(Error::InvalidParameter(
                "workers and max_rounds_guard must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MachineSummary {
    pub machine: usize,
    pub input_size: usize,
    pub output_size: usize,
    pub value: f64,
    pub oracle_calls: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoundTrace {
    pub t: usize,
    pub input_size: usize,
    pub machines: Vec<MachineSummary>,
    pub output_size: usize,
}

impl RoundTrace {
    pub fn machine_count(&self) -> usize {
        self.machines.len()
    }
}

#[derive(Clone, Debug)]
pub struct ExecutionReport {
    pub rounds: Vec<RoundTrace>,
    pub best: SolverResult,
    pub total_oracle_calls: u64,
    pub wall_time: Duration,
}

impl ExecutionReport {
    pub fn round_count(&self) -> usize {
        self.rounds.len()
    }

    pub fn machine_counts(&self) -> Vec<usize> {
        self.rounds.iter().map(RoundTrace::machine_count).collect()
    }
}

impl PartialEq for ExecutionReport {
    /// Equality ignores wall time.
    fn eq(&self, other: &Self) -> bool {
        self.rounds == other.rounds
            && self.best == other.best
            && self.total_oracle_calls == other.total_oracle_calls
    }
}

/// Runs the tree over the whole ground set `0..n` of `oracle`.
pub fn tree_compress<O: Objective>(oracle: &O, cfg: &TreeConfig) -> Result<ExecutionReport> {
    let ground: Vec<ItemId> = (0..oracle.ground_size()).collect();
    tree_compress_on(oracle, &ground, cfg)
}

pub fn tree_compress_on<O: Objective>(oracle: &O, ground: &[ItemId], cfg: &TreeConfig) -> Result<ExecutionReport> {
    cfg.validate()?;
    let start = Instant::now();
    let fixed_rounds = match cfg.termination {
        Termination::FixedRounds => Some(round_count(ground.len(), cfg.k, cfg.mu)?),
        Termination::SingleMachine => None,
    };
    let mut run = Run::new(oracle, cfg)?;
    let mut active = ground.to_vec();
    active.sort_unstable();
    active.dedup();

    for t in 0.. {
        if t >= cfg.max_rounds_guard {
            return Err(Error::RoundGuard { rounds: t });
        }
        let machines = active.len().div_ceil(cfg.mu).max(1);
        active = run.round(t, &active, machines)?;
        let done = match fixed_rounds {
            Some(r) => t + 1 >= r,
            None => machines == 1,
        };
        if done {
            break;
        }
    }
    Ok(run.finish(start))
}

/// State of one execution: the best set so far and the trace.
pub(crate) struct Run<'a, O: Objective> {
    oracle: &'a O,
    cfg: &'a TreeConfig,
    constraint: Constraint,
    pool: Option<rayon::ThreadPool>,
    best: SolverResult,
    rounds: Vec<RoundTrace>,
    calls: u64,
}

impl<'a, O: Objective> Run<'a, O> {
    pub(crate) fn new(oracle: &'a O, cfg: &'a TreeConfig) -> Result<Self> {
        let pool = if cfg.workers > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.workers)
                .build()
                .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
            Some(pool)
        } else {
            None
        };
        Ok(Run {
            oracle,
            cfg,
            constraint: cfg.constraint(),
            pool,
            best: SolverResult::default(),
            rounds: Vec::new(),
            calls: 0,
        })
    }

    /// Runs round `t` on `machines` machines and returns the union of their outputs.
    pub(crate) fn round(&mut self, t: usize, items: &[ItemId], machines: usize) -> Result<Vec<ItemId>> {
        let plan = balanced_random_partition(items, machines, derive_seed(self.cfg.master_seed, &[t as u64]))?;
        if let Some(part) = plan.parts.iter().find(|p| p.len() > self.cfg.mu) {
            return Err(Error::CapacityViolation {
                needed: part.len(),
                mu: self.cfg.mu,
            });
        }
        let solve = |(i, part): (usize, &Vec<ItemId>)| {
            let seed = derive_seed(self.cfg.master_seed, &[t as u64, i as u64]);
            self.cfg.solver.run(self.oracle, part, &self.constraint, seed)
        };
        let outputs: Vec<SolverResult> = match &self.pool {
            Some(pool) => pool.install(|| plan.parts.par_iter().enumerate().map(solve).collect::<Result<_>>())?,
            None => plan.parts.iter().enumerate().map(solve).collect::<Result<_>>()?,
        };

        let mut next = Vec::new();
        let mut summaries = Vec::with_capacity(outputs.len());
        for (i, (part, out)) in plan.parts.iter().zip(outputs).enumerate() {
            summaries.push(MachineSummary {
                machine: i,
                input_size: part.len(),
                output_size: out.selected.len(),
                value: out.value,
                oracle_calls: out.oracle_calls,
            });
            self.calls += out.oracle_calls;
            next.extend_from_slice(&out.selected);
            if out.value > self.best.value {
                self.best = out;
            }
        }
        next.sort_unstable();
        self.rounds.push(RoundTrace {
            t,
            input_size: items.len(),
            machines: summaries,
            output_size: next.len(),
        });
        Ok(next)
    }

    pub(crate) fn finish(self, start: Instant) -> ExecutionReport {
        ExecutionReport {
            rounds: self.rounds,
            best: self.best,
            total_oracle_calls: self.calls,
            wall_time: start.elapsed(),
        }
    }
}
