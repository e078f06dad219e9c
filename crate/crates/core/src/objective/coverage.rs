use crate::objective::{CallCounter, Objective};
use crate::{Error, ItemId, Result};

/// Weighted set coverage: item `i` covers a subset of a finite universe and
/// `f(S)` is the total weight of the union of the covered subsets.
///
/// With pairwise disjoint cover sets the function is modular, which is how
/// [`WeightedCoverage::modular`] is built.
#[derive(Debug)]
pub struct WeightedCoverage {
    covers: Vec<Vec<usize>>,
    weights: Vec<f64>,
    calls: CallCounter,
}

impl WeightedCoverage {
    pub fn new(covers: Vec<Vec<usize>>, weights: Vec<f64>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "universe weight {w} is not a non-negative finite number"
            )));
        }
        let mut covers = covers;
        for c in &mut covers {
            c.sort_unstable();
            c.dedup();
            if let Some(&u) = c.iter().find(|&&u| u >= weights.len()) {
                return Err(Error::InvalidParameter(format!(
                    "universe element {u} out of range"
                )));
            }
        }
        Ok(WeightedCoverage {
            covers,
            weights,
            calls: CallCounter::default(),
        })
    }

    /// Item `i` alone covers universe element `i` with weight `weights[i]`.
    pub fn modular(weights: &[f64]) -> Result<Self> {
        let covers = (0..weights.len()).map(|i| vec![i]).collect();
        WeightedCoverage::new(covers, weights.to_vec())
    }

    pub fn covers(&self, item: ItemId) -> &[usize] {
        &self.covers[item]
    }

    pub fn universe_size(&self) -> usize {
        self.weights.len()
    }
}

impl Objective for WeightedCoverage {
    type State = Vec<bool>;

    fn ground_size(&self) -> usize {
        self.covers.len()
    }

    fn empty_state(&self) -> Vec<bool> {
        vec![false; self.weights.len()]
    }

    fn state_gain(&self, covered: &Vec<bool>, item: ItemId) -> f64 {
        self.covers[item]
            .iter()
            .filter(|&&u| !covered[u])
            .map(|&u| self.weights[u])
            .sum()
    }

    fn state_insert(&self, covered: &mut Vec<bool>, item: ItemId) {
        for &u in &self.covers[item] {
            covered[u] = true;
        }
    }

    fn state_value(&self, covered: &Vec<bool>) -> f64 {
        covered
            .iter()
            .zip(&self.weights)
            .filter(|(c, _)| **c)
            .map(|(_, w)| w)
            .sum()
    }

    fn set_value(&self, set: &[ItemId]) -> f64 {
        let mut union: Vec<usize> = set.iter().flat_map(|&i| self.covers[i].iter().copied()).collect();
        union.sort_unstable();
        union.dedup();
        union.iter().map(|&u| self.weights[u]).sum()
    }

    fn counter(&self) -> &CallCounter {
        &self.calls
    }
}
