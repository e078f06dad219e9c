use std::str::FromStr;
use std::sync::Arc;

use crate::dataset::Dataset;
use crate::objective::{squared_distance, CallCounter, Objective};
use crate::{Error, ItemId, Result};

/// Pivots below this trigger a from-scratch refactorization.
const PIVOT_FLOOR: f64 = 1e-12;

/// Distance term in the exponent of the squared-exponential kernel.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum KernelDistance {
    /// `K(x, y) = exp(−‖x − y‖² / h²)`
    #[default]
    Squared,
    /// `K(x, y) = exp(−‖x − y‖ / h²)`
    Euclidean,
}

impl FromStr for KernelDistance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "squared" => Ok(KernelDistance::Squared),
            "euclidean" => Ok(KernelDistance::Euclidean),
            other => Err(Error::InvalidParameter(format!("unknown kernel distance {other:?}"))),
        }
    }
}

/// Information gain of an active set under a Gaussian process prior:
/// `f(S) = ½ log det(I + σ⁻² Σ_{S,S})` with `Σ_{S,S}[i][j] = K(e_i, e_j)`.
#[derive(Debug)]
pub struct LogDetObjective {
    data: Arc<Dataset>,
    bandwidth: f64,
    noise: f64,
    distance: KernelDistance,
    calls: CallCounter,
}

/// Cholesky factor of `I + σ⁻² Σ_{S,S}`, grown one row per inserted item.
#[derive(Clone, Debug, Default)]
pub struct LogDetState {
    items: Vec<ItemId>,
    rows: Vec<Vec<f64>>,
    half_logdet: f64,
}

impl LogDetObjective {
    pub const DEFAULT_BANDWIDTH: f64 = 0.5;
    pub const DEFAULT_NOISE: f64 = 1.0;

    pub fn new(data: Arc<Dataset>, bandwidth: f64, noise: f64) -> Result<Self> {
        if !(bandwidth > 0.0 && bandwidth.is_finite()) || !(noise > 0.0 && noise.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "bandwidth {bandwidth} and noise {noise} must be positive"
            )));
        }
        Ok(LogDetObjective {
            data,
            bandwidth,
            noise,
            distance: KernelDistance::Squared,
            calls: CallCounter::default(),
        })
    }

    pub fn with_defaults(data: Arc<Dataset>) -> Self {
        LogDetObjective::new(data, Self::DEFAULT_BANDWIDTH, Self::DEFAULT_NOISE).expect("valid defaults")
    }

    pub fn with_distance(mut self, distance: KernelDistance) -> Self {
        self.distance = distance;
        self
    }

    pub fn kernel(&self, a: ItemId, b: ItemId) -> f64 {
        let d2 = squared_distance(self.data.row(a), self.data.row(b));
        let h2 = self.bandwidth * self.bandwidth;
        match self.distance {
            KernelDistance::Squared => (-d2 / h2).exp(),
            KernelDistance::Euclidean => (-d2.sqrt() / h2).exp(),
        }
    }

    fn scaled_kernel(&self, a: ItemId, b: ItemId) -> f64 {
        self.kernel(a, b) / (self.noise * self.noise)
    }

    /// Solves `L c = σ⁻² k_S(item)` and returns `c` with the Schur pivot `1 + σ⁻²K(e,e) − ‖c‖²`.
    fn extend(&self, state: &LogDetState, item: ItemId) -> (Vec<f64>, f64) {
        let mut c = Vec::with_capacity(state.items.len() + 1);
        for (i, row) in state.rows.iter().enumerate() {
            let rhs = self.scaled_kernel(item, state.items[i]);
            let partial: f64 = row[..i].iter().zip(&c).map(|(l, x)| l * x).sum();
            c.push((rhs - partial) / row[i]);
        }
        let pivot = 1.0 + self.scaled_kernel(item, item) - c.iter().map(|x| x * x).sum::<f64>();
        (c, pivot)
    }

    fn factorize(&self, set: &[ItemId]) -> LogDetState {
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(set.len());
        let mut half_logdet = 0.0;
        for (i, &a) in set.iter().enumerate() {
            let mut row = Vec::with_capacity(i + 1);
            for j in 0..i {
                let m = self.scaled_kernel(a, set[j]);
                let partial: f64 = row[..j].iter().zip(&rows[j][..j]).map(|(x, y)| x * y).sum();
                row.push((m - partial) / rows[j][j]);
            }
            let diag = 1.0 + self.scaled_kernel(a, a) - row.iter().map(|x| x * x).sum::<f64>();
            // I + σ⁻²Σ ⪰ I, so a tiny pivot can only be rounding noise
            let diag = diag.max(PIVOT_FLOOR).sqrt();
            half_logdet += diag.ln();
            row.push(diag);
            rows.push(row);
        }
        LogDetState {
            items: set.to_vec(),
            rows,
            half_logdet,
        }
    }
}

impl Objective for LogDetObjective {
    type State = LogDetState;

    fn ground_size(&self) -> usize {
        self.data.len()
    }

    fn empty_state(&self) -> LogDetState {
        LogDetState::default()
    }

    fn state_gain(&self, state: &LogDetState, item: ItemId) -> f64 {
        let (_, pivot) = self.extend(state, item);
        if pivot < PIVOT_FLOOR {
            let mut set = state.items.clone();
            set.push(item);
            return self.factorize(&set).half_logdet - state.half_logdet;
        }
        0.5 * pivot.ln()
    }

    fn state_insert(&self, state: &mut LogDetState, item: ItemId) {
        let (mut c, pivot) = self.extend(state, item);
        if pivot < PIVOT_FLOOR {
            let mut set = std::mem::take(&mut state.items);
            set.push(item);
            *state = self.factorize(&set);
            return;
        }
        let diag = pivot.sqrt();
        state.half_logdet += diag.ln();
        c.push(diag);
        state.rows.push(c);
        state.items.push(item);
    }

    fn state_value(&self, state: &LogDetState) -> f64 {
        state.half_logdet
    }

    fn set_value(&self, set: &[ItemId]) -> f64 {
        self.factorize(set).half_logdet
    }

    fn counter(&self) -> &CallCounter {
        &self.calls
    }
}
