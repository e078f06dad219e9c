//! Single-machine compression subprocedures.
//!
//! Every solver starts from the empty set and breaks ties between equal gains in favour of the
//! smallest item id, which keeps the output independent of items it did not select.

mod brute;
mod constraint;
mod greedy;
mod lazy;
mod nice;
mod stochastic;
mod threshold;

use std::fmt;
use std::str::FromStr;

pub use brute::{brute_force_opt, BRUTE_FORCE_LIMIT};
pub use constraint::{Constraint, Knapsack};
pub use greedy::{greedy, greedy_with_tie_break, TieBreak};
pub use lazy::lazy_greedy;
pub use nice::{check_beta_nice, check_solver_beta_nice, BetaNiceReport, Counterexample};
pub use stochastic::{stochastic_greedy, stochastic_sample_size};
pub use threshold::threshold_greedy;

use crate::objective::Objective;
use crate::{Error, ItemId, Result};

/// Output of one solver invocation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolverResult {
    /// Items in selection order.
    pub selected: Vec<ItemId>,
    pub value: f64,
    /// Oracle calls made by this invocation.
    pub oracle_calls: u64,
    /// Marginal gain of each item at the moment it was selected.
    pub gains: Vec<f64>,
}

impl SolverResult {
    pub fn sorted_selection(&self) -> Vec<ItemId> {
        let mut s = self.selected.clone();
        s.sort_unstable();
        s
    }
}

/// Registered compression subprocedures.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SolverKind {
    Greedy,
    Lazy,
    Threshold { eps: f64 },
    Stochastic { eps: f64 },
}

/// A solver together with its niceness parameter β.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BetaNiceSpec {
    pub solver: SolverKind,
    pub beta: f64,
}

impl SolverKind {
    /// β for solvers known to be β-nice: 1 for (lazy) greedy, `1 + 2ε` for threshold greedy.
    /// Stochastic greedy carries no such guarantee.
    pub fn beta_nice(&self) -> Option<BetaNiceSpec> {
        let beta = match *self {
            SolverKind::Greedy | SolverKind::Lazy => 1.0,
            SolverKind::Threshold { eps } => 1.0 + 2.0 * eps,
            SolverKind::Stochastic { .. } => return None,
        };
        Some(BetaNiceSpec { solver: *self, beta })
    }

    pub fn is_deterministic(&self) -> bool {
        !matches!(self, SolverKind::Stochastic { .. })
    }

    /// Runs the solver on `ground`. `seed` is only consumed by stochastic greedy.
    /// Threshold and stochastic greedy support cardinality constraints only.
    pub fn run<O: Objective>(
        &self,
        oracle: &O,
        ground: &[ItemId],
        constraint: &Constraint,
        seed: u64,
    ) -> Result<SolverResult> {
        let cardinality = || match (constraint.max_items(), constraint.knapsack_ref()) {
            (Some(k), None) => Ok(k),
            _ => Err(Error::InvalidParameter(format!(
                "{self} supports cardinality constraints only"
            ))),
        };
        match *self {
            SolverKind::Greedy => Ok(greedy(oracle, ground, constraint)),
            SolverKind::Lazy => Ok(lazy_greedy(oracle, ground, constraint)),
            SolverKind::Threshold { eps } => threshold_greedy(oracle, ground, cardinality()?, eps),
            SolverKind::Stochastic { eps } => {
                stochastic_greedy(oracle, ground, cardinality()?, eps, seed)
            }
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverKind::Greedy => write!(f, "greedy"),
            SolverKind::Lazy => write!(f, "lazy"),
            SolverKind::Threshold { eps } => write!(f, "threshold:{eps}"),
            SolverKind::Stochastic { eps } => write!(f, "stochastic:{eps}"),
        }
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    /// Accepts `greedy`, `lazy`, `threshold:EPS` and `stochastic:EPS`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((name, arg)) => (name, Some(arg)),
            None => (s, None),
        };
        let eps = || -> Result<f64> {
            let raw = arg.ok_or_else(|| Error::InvalidParameter(format!("{name} needs :EPS")))?;
            let eps: f64 = raw
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad eps {raw:?}")))?;
            check_eps(eps)?;
            Ok(eps)
        };
        match (name, arg) {
            ("greedy", None) => Ok(SolverKind::Greedy),
            ("lazy", None) => Ok(SolverKind::Lazy),
            ("threshold", _) => Ok(SolverKind::Threshold { eps: eps()? }),
            ("stochastic", _) => Ok(SolverKind::Stochastic { eps: eps()? }),
            _ => Err(Error::InvalidParameter(format!("unknown solver {s:?}"))),
        }
    }
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("eps must lie in (0, 1), got {eps}")))
    }
}

/// Counts the oracle calls of one solver invocation.
pub(crate) struct Session<'a, O: Objective> {
    pub oracle: &'a O,
    pub calls: u64,
}

impl<'a, O: Objective> Session<'a, O> {
    pub fn new(oracle: &'a O) -> Self {
        Session { oracle, calls: 0 }
    }

    pub fn gain(&mut self, state: &O::State, item: ItemId) -> f64 {
        self.calls += 1;
        self.oracle.gain(state, item)
    }

    pub fn finish(self, state: &O::State, selected: Vec<ItemId>, gains: Vec<f64>) -> SolverResult {
        SolverResult {
            value: self.oracle.state_value(state),
            selected,
            oracle_calls: self.calls,
            gains,
        }
    }
}

/// Ascending, deduplicated copy of `ground`.
pub(crate) fn sorted_ground(ground: &[ItemId]) -> Vec<ItemId> {
    let mut g = ground.to_vec();
    g.sort_unstable();
    g.dedup();
    g
}
