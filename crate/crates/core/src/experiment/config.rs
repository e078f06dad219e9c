use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use serde::Deserialize;

use crate::dataset::{synth_gaussian_mixture, Dataset, MixtureSpec, TextFormat};
use crate::objective::KernelDistance;
use crate::solver::SolverKind;
use crate::{Error, Result};

/// Experiment description, read from a flat `key = value` file (TOML syntax; lists in brackets).
///
/// ```text
/// dataset = "synthetic"          # or a path to a CSV / whitespace file
/// n = 2000
/// d = 10
/// clusters = 20
/// spread = 0.1
/// objective = "exemplar"         # or "logdet"
/// k = [50, 100]
/// mu_multiples = [2, 4, 8, 16]   # capacities as multiples of k
/// mu = [1000]                    # absolute capacities
/// algorithms = ["greedy", "tree", "rand_greedi", "random", "tree/stochastic:0.5"]
/// seeds = 10                     # a count (0..10) or an explicit list
/// ```
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub dataset: String,
    pub format: String,
    pub header: bool,
    pub n: usize,
    pub d: usize,
    pub clusters: usize,
    pub spread: f64,
    /// Cluster-size imbalance of the synthetic mixture; 0 is uniform.
    pub skew: f64,
    pub data_seed: u64,
    /// `none`, `item` (per row) or `feature` (per column).
    pub normalize: String,
    pub objective: String,
    pub eval_size: usize,
    pub eval_seed: u64,
    pub bandwidth: f64,
    pub noise: f64,
    pub kernel: String,
    pub k: OneOrMany,
    pub mu: Vec<usize>,
    pub mu_multiples: Vec<usize>,
    pub algorithms: Vec<String>,
    pub solver: String,
    pub seeds: Seeds,
    pub out: PathBuf,
    pub workers: usize,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum OneOrMany {
    One(usize),
    Many(Vec<usize>),
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Seeds {
    Count(u64),
    List(Vec<u64>),
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            dataset: "synthetic".into(),
            format: "csv".into(),
            header: false,
            n: 2000,
            d: 10,
            clusters: 10,
            spread: 0.1,
            skew: 0.0,
            data_seed: 0,
            normalize: "none".into(),
            objective: "exemplar".into(),
            eval_size: crate::objective::DEFAULT_EVAL_SIZE,
            eval_seed: 0,
            bandwidth: 0.5,
            noise: 1.0,
            kernel: "squared".into(),
            k: OneOrMany::One(10),
            mu: Vec::new(),
            mu_multiples: vec![2, 4, 8],
            algorithms: vec!["greedy".into(), "tree".into(), "random".into()],
            solver: "lazy".into(),
            seeds: Seeds::Count(10),
            out: PathBuf::from("results"),
            workers: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ObjectiveChoice {
    Exemplar { eval_size: usize, eval_seed: u64 },
    LogDet { bandwidth: f64, noise: f64, distance: KernelDistance },
}

impl ObjectiveChoice {
    pub fn name(&self) -> &'static str {
        match self {
            ObjectiveChoice::Exemplar { .. } => "exemplar",
            ObjectiveChoice::LogDet { .. } => "logdet",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Algorithm {
    /// Centralized solver on the full ground set.
    Greedy,
    Random,
    Tree(SolverKind),
    RandGreedi(SolverKind),
}

impl Algorithm {
    pub fn uses_capacity(&self) -> bool {
        matches!(self, Algorithm::Tree(_) | Algorithm::RandGreedi(_))
    }

    /// Label used in result tables.
    pub fn label(&self, default_solver: SolverKind) -> String {
        match self {
            Algorithm::Greedy => "greedy".into(),
            Algorithm::Random => "random".into(),
            Algorithm::Tree(s) if *s == default_solver => "tree".into(),
            Algorithm::Tree(s) => format!("tree/{s}"),
            Algorithm::RandGreedi(s) if *s == default_solver => "rand_greedi".into(),
            Algorithm::RandGreedi(s) => format!("rand_greedi/{s}"),
        }
    }

    fn parse(raw: &str, default_solver: SolverKind) -> Result<Self> {
        let (name, solver) = match raw.split_once('/') {
            Some((name, s)) => (name, SolverKind::from_str(s)?),
            None => (raw, default_solver),
        };
        match name {
            "greedy" if !raw.contains('/') => Ok(Algorithm::Greedy),
            "random" if !raw.contains('/') => Ok(Algorithm::Random),
            "tree" => Ok(Algorithm::Tree(solver)),
            "rand_greedi" => Ok(Algorithm::RandGreedi(solver)),
            _ => Err(Error::InvalidParameter(format!("unknown algorithm {raw:?}"))),
        }
    }
}

/// A validated configuration with every string field resolved.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentPlan {
    pub config: ExperimentConfig,
    pub objective: ObjectiveChoice,
    pub solver: SolverKind,
    pub algorithms: Vec<Algorithm>,
    pub ks: Vec<usize>,
    pub seeds: Vec<u64>,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let field = e
                .message()
                .split('`')
                .nth(1)
                .unwrap_or("<config>")
                .to_string();
            Error::config(field, e.to_string().trim())
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        ExperimentConfig::from_toml_str(&text)
    }

    pub fn ks(&self) -> Vec<usize> {
        match &self.k {
            OneOrMany::One(k) => vec![*k],
            OneOrMany::Many(ks) => ks.clone(),
        }
    }

    pub fn seed_list(&self) -> Vec<u64> {
        match &self.seeds {
            Seeds::Count(c) => (0..*c).collect(),
            Seeds::List(l) => l.clone(),
        }
    }

    /// Capacities used for `k`: absolute values followed by multiples of `k`, ascending.
    pub fn capacities(&self, k: usize) -> Vec<usize> {
        let mut mus: Vec<usize> = self
            .mu
            .iter()
            .copied()
            .chain(self.mu_multiples.iter().map(|m| m * k))
            .collect();
        mus.sort_unstable();
        mus.dedup();
        mus
    }

    pub fn validate(&self) -> Result<ExperimentPlan> {
        let solver = SolverKind::from_str(&self.solver).map_err(|e| Error::config("solver", e.to_string()))?;
        let objective = match self.objective.as_str() {
            "exemplar" => {
                if self.eval_size == 0 {
                    return Err(Error::config("eval_size", "must be at least 1"));
                }
                ObjectiveChoice::Exemplar {
                    eval_size: self.eval_size,
                    eval_seed: self.eval_seed,
                }
            }
            "logdet" => {
                if !(self.bandwidth > 0.0) {
                    return Err(Error::config("bandwidth", "must be positive"));
                }
                if !(self.noise > 0.0) {
                    return Err(Error::config("noise", "must be positive"));
                }
                let distance = KernelDistance::from_str(&self.kernel)
                    .map_err(|e| Error::config("kernel", e.to_string()))?;
                ObjectiveChoice::LogDet {
                    bandwidth: self.bandwidth,
                    noise: self.noise,
                    distance,
                }
            }
            other => {
                return Err(Error::config(
                    "objective",
                    format!("expected \"exemplar\" or \"logdet\", got {other:?}"),
                ))
            }
        };
        TextFormat::from_str(&self.format).map_err(|e| Error::config("format", e.to_string()))?;
        if !["none", "item", "feature"].contains(&self.normalize.as_str()) {
            return Err(Error::config(
                "normalize",
                format!("expected none, item or feature, got {:?}", self.normalize),
            ));
        }
        if self.dataset == "synthetic" {
            if self.n == 0 || self.d == 0 || self.clusters == 0 {
                return Err(Error::config("n", "n, d and clusters must be at least 1"));
            }
            if !(self.spread >= 0.0) {
                return Err(Error::config("spread", "must be non-negative"));
            }
            if !(self.skew >= 0.0) {
                return Err(Error::config("skew", "must be non-negative"));
            }
        }
        let algorithms = self
            .algorithms
            .iter()
            .map(|a| Algorithm::parse(a, solver))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::config("algorithms", e.to_string()))?;
        if algorithms.is_empty() {
            return Err(Error::config("algorithms", "at least one algorithm is required"));
        }
        let ks = self.ks();
        if ks.is_empty() || ks.contains(&0) {
            return Err(Error::config("k", "every k must be at least 1"));
        }
        if algorithms.iter().any(Algorithm::uses_capacity) {
            for &k in &ks {
                let mus = self.capacities(k);
                if mus.is_empty() {
                    return Err(Error::config("mu", "distributed algorithms need at least one capacity"));
                }
                if let Some(bad) = mus.iter().find(|&&mu| mu <= k) {
                    return Err(Error::config("mu", format!("capacity {bad} must exceed k = {k}")));
                }
            }
        }
        let seeds = self.seed_list();
        if seeds.is_empty() {
            return Err(Error::config("seeds", "at least one seed is required"));
        }
        if self.workers == 0 {
            return Err(Error::config("workers", "must be at least 1"));
        }
        Ok(ExperimentPlan {
            config: self.clone(),
            objective,
            solver,
            algorithms,
            ks,
            seeds,
        })
    }

    /// Short dataset label for result tables.
    pub fn dataset_label(&self) -> String {
        if self.dataset == "synthetic" {
            return "synthetic".into();
        }
        Path::new(&self.dataset)
            .file_stem()
            .map(|s| s.to_string_lossy().replace(',', "_"))
            .unwrap_or_else(|| "dataset".into())
    }

    pub fn load_dataset(&self) -> Result<Arc<Dataset>> {
        let raw = if self.dataset == "synthetic" {
            synth_gaussian_mixture(
                &MixtureSpec::new(self.n, self.d, self.clusters, self.spread, self.data_seed).with_skew(self.skew),
            )?
        } else {
            Dataset::load_dense(&self.dataset, TextFormat::from_str(&self.format)?, self.header)?
        };
        let ds = match self.normalize.as_str() {
            "item" => raw.normalize(),
            "feature" => raw.normalize_features(),
            _ => raw,
        };
        Ok(Arc::new(ds))
    }
}
