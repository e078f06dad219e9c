use std::sync::Arc;

use crate::dataset::Dataset;
use crate::objective::{squared_distance, CallCounter, Objective};
use crate::{Error, ItemId, Result};

/// Default size of the fixed evaluation subsample.
pub const DEFAULT_EVAL_SIZE: usize = 10_000;

/// Exemplar-based clustering: the reduction in mean squared-distance quantization error
/// obtained by adding the exemplars `S` to the auxiliary zero vector `e0`,
///
/// `f(S) = L({e0}) − L(S ∪ {e0})`, with `L(A) = mean_{x ∈ E} min_{v ∈ A} ‖x − v‖²`
///
/// where `E` is the evaluation set (the full data or a fixed subsample of it).
#[derive(Debug)]
pub struct ExemplarObjective {
    ground: Arc<Dataset>,
    eval: Dataset,
    // squared distance of every evaluation point to e0
    base: Vec<f64>,
    base_loss: f64,
    calls: CallCounter,
}

impl ExemplarObjective {
    pub fn new(ground: Arc<Dataset>, eval: Dataset) -> Result<Self> {
        if ground.dim() != eval.dim() {
            return Err(Error::InvalidParameter(format!(
                "evaluation set has dimension {}, ground set {}",
                eval.dim(),
                ground.dim()
            )));
        }
        let zero = vec![0.0; eval.dim()];
        let base: Vec<f64> = eval.rows().map(|x| squared_distance(x, &zero)).collect();
        let base_loss = mean(&base);
        Ok(ExemplarObjective {
            ground,
            eval,
            base,
            base_loss,
            calls: CallCounter::default(),
        })
    }

    /// Evaluates against every item of `ground`.
    pub fn exact(ground: Arc<Dataset>) -> Self {
        let eval = (*ground).clone();
        ExemplarObjective::new(ground, eval).expect("same dimension")
    }

    /// Evaluates against a fixed uniform subsample of `min(n, eval_size)` items.
    pub fn with_eval_subsample(ground: Arc<Dataset>, eval_size: usize, seed: u64) -> Result<Self> {
        let m = eval_size.min(ground.len());
        let eval = ground.subsample(m, seed)?;
        ExemplarObjective::new(ground, eval)
    }

    pub fn eval_set(&self) -> &Dataset {
        &self.eval
    }

    pub fn ground(&self) -> &Arc<Dataset> {
        &self.ground
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

impl Objective for ExemplarObjective {
    /// Per evaluation point, the current distance to the closest element of `S ∪ {e0}`.
    type State = Vec<f64>;

    fn ground_size(&self) -> usize {
        self.ground.len()
    }

    fn empty_state(&self) -> Vec<f64> {
        self.base.clone()
    }

    fn state_gain(&self, mins: &Vec<f64>, item: ItemId) -> f64 {
        let e = self.ground.row(item);
        let mut total = 0.0;
        for (x, &best) in self.eval.rows().zip(mins) {
            let dist = squared_distance(x, e);
            if dist < best {
                total += best - dist;
            }
        }
        total / self.eval.len() as f64
    }

    fn state_insert(&self, mins: &mut Vec<f64>, item: ItemId) {
        let e = self.ground.row(item);
        for (x, best) in self.eval.rows().zip(mins.iter_mut()) {
            let dist = squared_distance(x, e);
            if dist < *best {
                *best = dist;
            }
        }
    }

    fn state_value(&self, mins: &Vec<f64>) -> f64 {
        self.base_loss - mean(mins)
    }

    fn set_value(&self, set: &[ItemId]) -> f64 {
        let mins: Vec<f64> = self
            .eval
            .rows()
            .zip(&self.base)
            .map(|(x, &to_zero)| {
                set.iter()
                    .map(|&v| squared_distance(x, self.ground.row(v)))
                    .fold(to_zero, f64::min)
            })
            .collect();
        self.base_loss - mean(&mins)
    }

    fn counter(&self) -> &CallCounter {
        &self.calls
    }
}
