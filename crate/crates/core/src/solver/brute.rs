use crate::objective::Objective;
use crate::solver::{sorted_ground, Constraint, SolverResult};
use crate::{Error, ItemId, Result};

/// Largest search space [`brute_force_opt`] accepts: `C(n, k)` sets under a cardinality
/// constraint, `2^n` sets otherwise.
pub const BRUTE_FORCE_LIMIT: u128 = 1_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn search_space(n: usize, constraint: &Constraint) -> u128 {
    match constraint.max_items() {
        Some(k) => binomial(n, k.min(n)),
        None if n >= 127 => u128::MAX,
        None => 1u128 << n,
    }
}

/// Exact maximizer over all feasible subsets of `ground`, enumerated in lexicographic order of
/// their ascending id sequences; the first set attaining the maximum wins.
///
/// Every candidate is evaluated from scratch with [`Objective::value`].
pub fn brute_force_opt<O: Objective>(oracle: &O, ground: &[ItemId], constraint: &Constraint) -> Result<SolverResult> {
    let ground = sorted_ground(ground);
    let count = search_space(ground.len(), constraint);
    if count > BRUTE_FORCE_LIMIT {
        return Err(Error::InstanceTooLarge {
            count,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut search = Search {
        oracle,
        ground: &ground,
        constraint,
        current: Vec::new(),
        best: Vec::new(),
        best_value: f64::NEG_INFINITY,
        calls: 0,
    };
    search.visit(0)?;
    Ok(SolverResult {
        selected: search.best,
        value: search.best_value,
        oracle_calls: search.calls,
        gains: Vec::new(),
    })
}

struct Search<'a, O> {
    oracle: &'a O,
    ground: &'a [ItemId],
    constraint: &'a Constraint,
    current: Vec<ItemId>,
    best: Vec<ItemId>,
    best_value: f64,
    calls: u64,
}

impl<O: Objective> Search<'_, O> {
    fn visit(&mut self, start: usize) -> Result<()> {
        let v = self.oracle.value(&self.current)?;
        self.calls += 1;
        if v > self.best_value {
            self.best_value = v;
            self.best = self.current.clone();
        }
        for i in start..self.ground.len() {
            self.current.push(self.ground[i]);
            // hereditary: an infeasible set has no feasible supersets
            if self.constraint.is_feasible(&self.current) {
                self.visit(i + 1)?;
            }
            self.current.pop();
        }
        Ok(())
    }
}
