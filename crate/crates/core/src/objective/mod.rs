//! Value oracles for monotone non-negative submodular set functions.
//!
//! An [`Objective`] exposes two evaluation paths: a from-scratch [`Objective::value`] and an
//! incremental path where a solver keeps a [`Objective::State`] for its current set and asks for
//! marginal gains against it. Both paths are counted as oracle calls.

mod coverage;
mod exemplar;
mod logdet;
pub mod properties;

use std::sync::atomic::{AtomicU64, Ordering};

pub use coverage::WeightedCoverage;
pub use exemplar::{ExemplarObjective, DEFAULT_EVAL_SIZE};
pub use logdet::{KernelDistance, LogDetObjective};

use crate::{Error, ItemId, Result};

/// Monotone counter of oracle calls, shared by every solver that evaluates the same objective.
#[derive(Debug, Default)]
pub struct CallCounter(AtomicU64);

impl CallCounter {
    pub fn add(&self, calls: u64) {
        self.0.fetch_add(calls, Ordering::Relaxed);
    }

    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }
}

pub trait Objective: Sync {
    /// Incremental evaluation state for one growing set.
    type State: Clone + Send;

    /// Number of items; valid ids are `0..ground_size()`.
    fn ground_size(&self) -> usize;

    fn empty_state(&self) -> Self::State;

    /// `f(S ∪ {item}) − f(S)` for the set `S` held by `state`. Uncounted.
    fn state_gain(&self, state: &Self::State, item: ItemId) -> f64;

    fn state_insert(&self, state: &mut Self::State, item: ItemId);

    fn state_value(&self, state: &Self::State) -> f64;

    /// `f(set)` from scratch. `set` holds distinct, valid ids. Uncounted.
    fn set_value(&self, set: &[ItemId]) -> f64;

    fn counter(&self) -> &CallCounter;

    /// Marginal gain against an incremental state, counted as one oracle call.
    fn gain(&self, state: &Self::State, item: ItemId) -> f64 {
        self.counter().add(1);
        self.state_gain(state, item)
    }

    /// `f(set)`, counted as one oracle call. Duplicate ids are treated as one item.
    fn value(&self, set: &[ItemId]) -> Result<f64> {
        let set = self.checked_set(set)?;
        self.counter().add(1);
        Ok(self.set_value(&set))
    }

    /// `f(set ∪ {item}) − f(set)` through the incremental path, counted as one oracle call.
    fn marginal(&self, item: ItemId, set: &[ItemId]) -> Result<f64> {
        let set = self.checked_set(set)?;
        self.check_item(item)?;
        if set.contains(&item) {
            return Err(Error::ItemInSet(item));
        }
        let state = self.state_of(&set);
        Ok(self.gain(&state, item))
    }

    /// State holding `set`, built without counting calls.
    fn state_of(&self, set: &[ItemId]) -> Self::State {
        let mut state = self.empty_state();
        for &e in set {
            self.state_insert(&mut state, e);
        }
        state
    }

    fn eval_count(&self) -> u64 {
        self.counter().get()
    }

    fn check_item(&self, item: ItemId) -> Result<()> {
        if item < self.ground_size() {
            Ok(())
        } else {
            Err(Error::UnknownItem(item))
        }
    }

    fn checked_set(&self, set: &[ItemId]) -> Result<Vec<ItemId>> {
        let mut out = Vec::with_capacity(set.len());
        for &e in set {
            self.check_item(e)?;
            if !out.contains(&e) {
                out.push(e);
            }
        }
        Ok(out)
    }
}

pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}
