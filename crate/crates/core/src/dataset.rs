//! Dense-vector ground sets.

use std::fmt;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use rand::Rng;
use rand_distr::weighted::WeightedIndex;
use rand_distr::{Distribution, Normal};

use crate::{seed, Error, ItemId, Result};

/// Cell separator of a dense text file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TextFormat {
    Csv,
    Whitespace,
}

impl FromStr for TextFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TextFormat::Csv),
            "whitespace" | "ws" => Ok(TextFormat::Whitespace),
            other => Err(Error::InvalidParameter(format!("unknown format {other:?}"))),
        }
    }
}

/// `n` items, each a finite vector in `R^d`. Item ids are `0..n` and never change.
///
/// A dataset produced by [`Dataset::subsample`] remembers the id each item had in its source.
#[derive(Clone, PartialEq)]
pub struct Dataset {
    values: Vec<f64>,
    dim: usize,
    origin: Vec<usize>,
}

impl fmt::Debug for Dataset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Dataset")
            .field("n", &self.len())
            .field("d", &self.dim)
            .finish()
    }
}

impl Dataset {
    /// Builds a dataset from a row-major buffer of `values.len() / dim` rows.
    pub fn from_flat(values: Vec<f64>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        if values.is_empty() {
            return Err(Error::NoRows);
        }
        if !values.len().is_multiple_of(dim) {
            return Err(Error::RaggedRow {
                row: values.len() / dim,
                expected: dim,
                found: values.len() % dim,
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: pos / dim });
        }
        let n = values.len() / dim;
        Ok(Dataset {
            values,
            dim,
            origin: (0..n).collect(),
        })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let first = rows.first().ok_or(Error::NoRows)?.as_ref().len();
        let mut values = Vec::with_capacity(rows.len() * first);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != first {
                return Err(Error::RaggedRow {
                    row: i,
                    expected: first,
                    found: row.len(),
                });
            }
            values.extend_from_slice(row);
        }
        Dataset::from_flat(values, first)
    }

    pub fn len(&self) -> usize {
        self.origin.len()
    }

    pub fn is_empty(&self) -> bool {
        self.origin.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, id: ItemId) -> &[f64] {
        &self.values[id * self.dim..(id + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.dim)
    }

    /// Row-major values.
    pub fn as_flat(&self) -> &[f64] {
        &self.values
    }

    /// Id of each item in the dataset this one was drawn from.
    pub fn origin_ids(&self) -> &[usize] {
        &self.origin
    }

    /// Reads one item per line. Blank lines are skipped; `header` skips the first line.
    pub fn load_dense(path: impl AsRef<Path>, format: TextFormat, header: bool) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Dataset::parse_dense(&text, format, header)
    }

    pub fn parse_dense(text: &str, format: TextFormat, header: bool) -> Result<Self> {
        let mut values = Vec::new();
        let mut dim = None;
        let lines = text.lines().enumerate().skip(usize::from(header));
        for (row, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let cells: Vec<&str> = match format {
                TextFormat::Csv => line.split(',').map(str::trim).collect(),
                TextFormat::Whitespace => line.split_whitespace().collect(),
            };
            let expected = *dim.get_or_insert(cells.len());
            if cells.len() != expected {
                return Err(Error::RaggedRow {
                    row,
                    expected,
                    found: cells.len(),
                });
            }
            for (column, cell) in cells.iter().enumerate() {
                let v: f64 = cell.parse().map_err(|_| Error::NonNumeric {
                    row,
                    column,
                    cell: cell.to_string(),
                })?;
                if !v.is_finite() {
                    return Err(Error::NonFinite { row });
                }
                values.push(v);
            }
        }
        match dim {
            None => Err(Error::NoRows),
            Some(d) => Dataset::from_flat(values, d),
        }
    }

    /// Writes the dataset as headerless CSV with round-trip float formatting.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = BufWriter::new(file);
        for row in self.rows() {
            let line = row.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
            writeln!(out, "{line}").map_err(|e| Error::io(path, e))?;
        }
        out.flush().map_err(|e| Error::io(path, e))
    }

    /// Subtracts each row's mean, then scales the row to unit Euclidean norm.
    /// Rows that are zero after centering stay zero.
    pub fn normalize(&self) -> Dataset {
        let mut values = self.values.clone();
        let d = self.dim as f64;
        for row in values.chunks_exact_mut(self.dim) {
            let mean = row.iter().sum::<f64>() / d;
            row.iter_mut().for_each(|v| *v -= mean);
            let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 0.0 {
                row.iter_mut().for_each(|v| *v /= norm);
            }
        }
        Dataset {
            values,
            dim: self.dim,
            origin: self.origin.clone(),
        }
    }

    /// Column-wise variant: every feature is centered and scaled to unit norm across items.
    pub fn normalize_features(&self) -> Dataset {
        let n = self.len() as f64;
        let mut values = self.values.clone();
        for j in 0..self.dim {
            let column = || (0..self.len()).map(|i| i * self.dim + j);
            let mean = column().map(|p| values[p]).sum::<f64>() / n;
            column().for_each(|p| values[p] -= mean);
            let norm = column().map(|p| values[p] * values[p]).sum::<f64>().sqrt();
            if norm > 0.0 {
                column().for_each(|p| values[p] /= norm);
            }
        }
        Dataset {
            values,
            dim: self.dim,
            origin: self.origin.clone(),
        }
    }

    /// `m` distinct items drawn uniformly without replacement, kept in their original order.
    pub fn subsample(&self, m: usize, seed: u64) -> Result<Dataset> {
        if m == 0 || m > self.len() {
            return Err(Error::SubsampleTooLarge {
                requested: m,
                available: self.len(),
            });
        }
        let mut picked = rand::seq::index::sample(&mut seed::rng(seed), self.len(), m).into_vec();
        picked.sort_unstable();
        let mut values = Vec::with_capacity(m * self.dim);
        for &i in &picked {
            values.extend_from_slice(self.row(i));
        }
        Ok(Dataset {
            values,
            dim: self.dim,
            origin: picked.iter().map(|&i| self.origin[i]).collect(),
        })
    }
}

/// Parameters of a synthetic Gaussian mixture.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixtureSpec {
    pub n: usize,
    pub dim: usize,
    pub clusters: usize,
    pub spread: f64,
    pub seed: u64,
    /// Cluster `j` (0-based) is picked with probability proportional to `(j + 1)^(-skew)`;
    /// 0 picks clusters uniformly.
    pub skew: f64,
}

impl MixtureSpec {
    pub fn new(n: usize, dim: usize, clusters: usize, spread: f64, seed: u64) -> Self {
        MixtureSpec {
            n,
            dim,
            clusters,
            spread,
            seed,
            skew: 0.0,
        }
    }

    pub fn with_skew(mut self, skew: f64) -> Self {
        self.skew = skew;
        self
    }
}

/// Cluster centers uniform in `[-1, 1]^d`; each point picks a center at random (see
/// [`MixtureSpec::skew`]) and is displaced by isotropic Gaussian noise with standard deviation
/// `spread`.
pub fn synth_gaussian_mixture(spec: &MixtureSpec) -> Result<Dataset> {
    let MixtureSpec {
        n,
        dim,
        clusters,
        spread,
        seed,
        skew,
    } = *spec;
    if n == 0 || dim == 0 || clusters == 0 {
        return Err(Error::InvalidParameter(
            "n, d and clusters must be at least 1".into(),
        ));
    }
    if !(skew >= 0.0) {
        return Err(Error::InvalidParameter(format!("skew must be non-negative, got {skew}")));
    }
    let noise = Normal::new(0.0, spread)
        .map_err(|e| Error::InvalidParameter(format!("spread {spread}: {e}")))?;
    let mut rng = seed::rng(seed);
    let centers: Vec<f64> = (0..clusters * dim)
        .map(|_| rng.random_range(-1.0..=1.0))
        .collect();
    let pick = if skew > 0.0 {
        let weights = (0..clusters).map(|j| ((j + 1) as f64).powf(-skew));
        Some(WeightedIndex::new(weights).map_err(|e| Error::InvalidParameter(format!("skew {skew}: {e}")))?)
    } else {
        None
    };
    let mut values = Vec::with_capacity(n * dim);
    for _ in 0..n {
        let c = match &pick {
            Some(w) => w.sample(&mut rng),
            None => rng.random_range(0..clusters),
        };
        for &x in &centers[c * dim..(c + 1) * dim] {
            values.push(x + noise.sample(&mut rng));
        }
    }
    Dataset::from_flat(values, dim)
}
