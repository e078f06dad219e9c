use std::time::Instant;

use crate::distree::{ExecutionReport, Run, TreeConfig};
use crate::objective::Objective;
use crate::solver::SolverResult;
use crate::{seed, Error, ItemId, Result};

/// Two-round baseline: a random balanced partition onto `machines` machines, the configured
/// solver on every machine, then the solver again on the union of the partial solutions.
/// The best of all partial solutions and the final one is returned.
///
/// Partitioning and per-machine seeds follow the same keying as [`tree_compress`](super::tree_compress),
/// so with `machines = ⌈n/µ⌉` and a matched seed the two produce identical first rounds.
///
/// The union has to fit on one machine. If `machines·k > µ`, or a first-round part would exceed
/// `µ`, the run is refused with [`Error::CapacityViolation`].
pub fn rand_greedi<O: Objective>(oracle: &O, machines: usize, cfg: &TreeConfig) -> Result<ExecutionReport> {
    cfg.validate()?;
    if machines == 0 {
        return Err(Error::InvalidParameter("at least one machine is required".into()));
    }
    let n = oracle.ground_size();
    let union_bound = machines * cfg.k;
    if union_bound > cfg.mu {
        return Err(Error::CapacityViolation {
            needed: union_bound,
            mu: cfg.mu,
        });
    }
    let part_bound = n.div_ceil(machines);
    if part_bound > cfg.mu {
        return Err(Error::CapacityViolation {
            needed: part_bound,
            mu: cfg.mu,
        });
    }
    let start = Instant::now();
    let ground: Vec<ItemId> = (0..n).collect();
    let mut run = Run::new(oracle, cfg)?;
    let union = run.round(0, &ground, machines)?;
    run.round(1, &union, 1)?;
    Ok(run.finish(start))
}

/// A uniformly random `k`-subset, evaluated once.
pub fn random_baseline<O: Objective>(oracle: &O, k: usize, seed: u64) -> Result<SolverResult> {
    let n = oracle.ground_size();
    if k > n {
        return Err(Error::InvalidParameter(format!(
            "cannot pick {k} items out of {n}"
        )));
    }
    let selected = rand::seq::index::sample(&mut seed::rng(seed), n, k).into_vec();
    let value = oracle.value(&selected)?;
    Ok(SolverResult {
        selected,
        value,
        oracle_calls: 1,
        gains: Vec::new(),
    })
}
