use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::{Error, Result};

pub const CSV_HEADER: &str = "dataset,objective,algorithm,k,mu,seed,value,rel_err_pct,rounds,oracle_calls,wall_ms";

/// Marker written in the `value` column when a baseline cannot run under the capacity.
pub const CAPACITY_VIOLATION: &str = "capacity-violation";

/// Formats a float with 9 significant digits, switching to exponent notation for very small or
/// very large magnitudes and dropping trailing zeros.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub dataset: String,
    pub objective: String,
    pub algorithm: String,
    pub k: usize,
    /// Capacity; `None` for the random baseline.
    pub mu: Option<usize>,
    pub seed: u64,
    /// `None` when the algorithm could not run under the capacity.
    pub value: Option<f64>,
    /// `100·(f_greedy − value)/f_greedy`. Negative when the algorithm beats greedy.
    pub rel_err_pct: Option<f64>,
    pub rounds: usize,
    pub oracle_calls: u64,
    pub wall_ms: f64,
}

impl ResultRow {
    pub fn csv_line(&self) -> String {
        let opt = |v: Option<f64>| v.map(format_float).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.dataset,
            self.objective,
            self.algorithm,
            self.k,
            self.mu.map(|m| m.to_string()).unwrap_or_default(),
            self.seed,
            self.value
                .map(format_float)
                .unwrap_or_else(|| CAPACITY_VIOLATION.to_string()),
            opt(self.rel_err_pct),
            self.rounds,
            self.oracle_calls,
            format_float(self.wall_ms),
        )
    }

    fn parse(line: &str, row: usize) -> Result<Self> {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 11 {
            return Err(Error::RaggedRow {
                row,
                expected: 11,
                found: cells.len(),
            });
        }
        let bad = |column: usize| Error::NonNumeric {
            row,
            column,
            cell: cells[column].to_string(),
        };
        let opt_f64 = |column: usize| -> Result<Option<f64>> {
            match cells[column] {
                "" | CAPACITY_VIOLATION => Ok(None),
                s => s.parse().map(Some).map_err(|_| bad(column)),
            }
        };
        Ok(ResultRow {
            dataset: cells[0].into(),
            objective: cells[1].into(),
            algorithm: cells[2].into(),
            k: cells[3].parse().map_err(|_| bad(3))?,
            mu: match cells[4] {
                "" => None,
                s => Some(s.parse().map_err(|_| bad(4))?),
            },
            seed: cells[5].parse().map_err(|_| bad(5))?,
            value: opt_f64(6)?,
            rel_err_pct: opt_f64(7)?,
            rounds: cells[8].parse().map_err(|_| bad(8))?,
            oracle_calls: cells[9].parse().map_err(|_| bad(9))?,
            wall_ms: cells[10].parse().map_err(|_| bad(10))?,
        })
    }
}

/// Rows of one experiment plus the centralized reference value per `k`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ResultTable {
    pub rows: Vec<ResultRow>,
    /// Ground set size.
    pub n: usize,
    /// Centralized greedy value per `k`.
    pub reference: BTreeMap<usize, f64>,
}

impl ResultTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.csv_line());
            out.push('\n');
        }
        out
    }

    /// CSV text without the wall-clock column, for reproducibility comparisons.
    pub fn to_csv_without_timing(&self) -> String {
        self.to_csv()
            .lines()
            .map(|l| l.rsplit_once(',').map_or(l, |(head, _)| head))
            .fold(String::new(), |mut acc, l| {
                acc.push_str(l);
                acc.push('\n');
                acc
            })
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_csv()).map_err(|e| Error::io(path, e))
    }

    /// Parses rows written by [`ResultTable::to_csv`]. `n` and `reference` are left empty.
    pub fn parse_csv(text: &str) -> Result<Vec<ResultRow>> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        match lines.next() {
            Some((_, header)) if header.trim() == CSV_HEADER => {}
            _ => return Err(Error::config("header", format!("expected {CSV_HEADER:?}"))),
        }
        lines.map(|(i, l)| ResultRow::parse(l.trim(), i)).collect()
    }

    /// Mean and standard deviation per `(algorithm, k, mu)`, in first-appearance order.
    pub fn aggregate(&self) -> Vec<AggregateRow> {
        let mut order: Vec<(String, usize, Option<usize>)> = Vec::new();
        let mut groups: BTreeMap<(String, usize, Option<usize>), Vec<&ResultRow>> = BTreeMap::new();
        for row in &self.rows {
            let key = (row.algorithm.clone(), row.k, row.mu);
            if !groups.contains_key(&key) {
                order.push(key.clone());
            }
            groups.entry(key).or_default().push(row);
        }
        order
            .into_iter()
            .map(|key| {
                let rows = &groups[&key];
                let values: Vec<f64> = rows.iter().filter_map(|r| r.value).collect();
                let errs: Vec<f64> = rows.iter().filter_map(|r| r.rel_err_pct).collect();
                let ratios: Vec<f64> = match self.reference.get(&key.1) {
                    Some(&g) if g > 0.0 => values.iter().map(|v| v / g).collect(),
                    _ => Vec::new(),
                };
                let rounds: Vec<f64> = rows.iter().filter(|r| r.value.is_some()).map(|r| r.rounds as f64).collect();
                let calls: Vec<f64> = rows
                    .iter()
                    .filter(|r| r.value.is_some())
                    .map(|r| r.oracle_calls as f64)
                    .collect();
                AggregateRow {
                    algorithm: key.0,
                    k: key.1,
                    mu: key.2,
                    runs: rows.len(),
                    violations: rows.len() - values.len(),
                    value: Stats::of(&values),
                    rel_err_pct: Stats::of(&errs),
                    ratio: Stats::of(&ratios),
                    rounds: Stats::of(&rounds),
                    oracle_calls: Stats::of(&calls),
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Stats {
    pub mean: f64,
    /// Sample standard deviation; 0 for fewer than two values.
    pub stdev: f64,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Stats {
    pub fn of(xs: &[f64]) -> Stats {
        if xs.is_empty() {
            return Stats {
                mean: f64::NAN,
                stdev: f64::NAN,
                min: f64::NAN,
                max: f64::NAN,
                count: 0,
            };
        }
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let stdev = if xs.len() > 1 {
            (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Stats {
            mean,
            stdev,
            min: xs.iter().copied().fold(f64::INFINITY, f64::min),
            max: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            count: xs.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AggregateRow {
    pub algorithm: String,
    pub k: usize,
    pub mu: Option<usize>,
    pub runs: usize,
    /// Runs refused for exceeding the capacity.
    pub violations: usize,
    pub value: Stats,
    pub rel_err_pct: Stats,
    /// Value divided by the centralized reference.
    pub ratio: Stats,
    pub rounds: Stats,
    pub oracle_calls: Stats,
}

pub const SUMMARY_HEADER: &str =
    "algorithm,k,mu,runs,violations,mean_value,stdev_value,mean_rel_err_pct,max_rel_err_pct,mean_ratio,stdev_ratio,mean_rounds,mean_oracle_calls";

pub fn summary_csv(rows: &[AggregateRow]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for r in rows {
        let f = |x: f64| if x.is_nan() { String::new() } else { format_float(x) };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.algorithm,
            r.k,
            r.mu.map(|m| m.to_string()).unwrap_or_default(),
            r.runs,
            r.violations,
            f(r.value.mean),
            f(r.value.stdev),
            f(r.rel_err_pct.mean),
            f(r.rel_err_pct.max),
            f(r.ratio.mean),
            f(r.ratio.stdev),
            f(r.rounds.mean),
            f(r.oracle_calls.mean),
        );
    }
    out
}
