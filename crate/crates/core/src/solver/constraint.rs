use std::sync::Arc;

use crate::{Error, ItemId, Result};

/// Knapsack family `{A : Σ_{i∈A} w_i ≤ b}` with one weight per item id.
#[derive(Clone, Debug, PartialEq)]
pub struct Knapsack {
    weights: Vec<f64>,
    budget: f64,
}

impl Knapsack {
    pub fn new(weights: Vec<f64>, budget: f64) -> Result<Self> {
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) || !(budget >= 0.0) {
            return Err(Error::InvalidParameter(
                "knapsack weights and budget must be non-negative".into(),
            ));
        }
        Ok(Knapsack { weights, budget })
    }

    pub fn weight(&self, item: ItemId) -> f64 {
        self.weights[item]
    }

    pub fn budget(&self) -> f64 {
        self.budget
    }

    pub fn total(&self, set: &[ItemId]) -> f64 {
        set.iter().map(|&i| self.weights[i]).sum()
    }

    /// Size of the largest feasible subset of `ground`: the count of lightest items that fit.
    pub fn max_feasible_size(&self, ground: &[ItemId]) -> usize {
        let mut w: Vec<f64> = ground.iter().map(|&i| self.weights[i]).collect();
        w.sort_by(f64::total_cmp);
        let mut used = 0.0;
        w.iter()
            .take_while(|&&x| {
                used += x;
                used <= self.budget
            })
            .count()
    }
}

/// Hereditary feasibility family: at most `k` items and/or a knapsack budget.
/// The empty set is always feasible.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Constraint {
    max_items: Option<usize>,
    knapsack: Option<Arc<Knapsack>>,
}

impl Constraint {
    pub fn cardinality(k: usize) -> Self {
        Constraint {
            max_items: Some(k),
            knapsack: None,
        }
    }

    pub fn knapsack(knapsack: Arc<Knapsack>) -> Self {
        Constraint {
            max_items: None,
            knapsack: Some(knapsack),
        }
    }

    pub fn both(k: usize, knapsack: Arc<Knapsack>) -> Self {
        Constraint {
            max_items: Some(k),
            knapsack: Some(knapsack),
        }
    }

    pub fn max_items(&self) -> Option<usize> {
        self.max_items
    }

    pub fn knapsack_ref(&self) -> Option<&Arc<Knapsack>> {
        self.knapsack.as_ref()
    }

    /// Whether the cardinality bound is reached.
    pub fn saturated(&self, count: usize) -> bool {
        self.max_items.is_some_and(|k| count >= k)
    }

    /// Whether a set of `count` items with total weight `used` stays feasible after adding `item`.
    pub fn admits(&self, count: usize, used: f64, item: ItemId) -> bool {
        !self.saturated(count)
            && self
                .knapsack
                .as_ref()
                .is_none_or(|kn| used + kn.weight(item) <= kn.budget)
    }

    pub fn is_feasible(&self, set: &[ItemId]) -> bool {
        self.max_items.is_none_or(|k| set.len() <= k)
            && self.knapsack.as_ref().is_none_or(|kn| kn.total(set) <= kn.budget)
    }

    pub(crate) fn weight_of(&self, item: ItemId) -> f64 {
        self.knapsack.as_ref().map_or(0.0, |kn| kn.weight(item))
    }
}
