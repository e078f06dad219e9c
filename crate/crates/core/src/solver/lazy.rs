use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::objective::Objective;
use crate::solver::{sorted_ground, Constraint, Session, SolverResult};
use crate::ItemId;

struct Candidate {
    bound: f64,
    item: ItemId,
    // number of selected items when `bound` was computed
    fresh_at: usize,
}

impl Candidate {
    fn key(&self) -> (f64, Reverse<ItemId>) {
        (self.bound, Reverse(self.item))
    }
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, ia) = self.key();
        let (b, ib) = other.key();
        a.total_cmp(&b).then(ia.cmp(&ib))
    }
}

/// Lazy greedy: keeps stale marginal gains in a max-heap and re-evaluates only the top until it
/// is fresh. On a submodular objective stale gains are upper bounds, so the selection (set and
/// order, lowest id first among ties) is the same as [`greedy`](super::greedy).
pub fn lazy_greedy<O: Objective>(oracle: &O, ground: &[ItemId], constraint: &Constraint) -> SolverResult {
    let mut session = Session::new(oracle);
    let mut state = oracle.empty_state();
    let mut selected = Vec::new();
    let mut gains = Vec::new();
    let mut used = 0.0;

    let mut heap: BinaryHeap<Candidate> = sorted_ground(ground)
        .into_iter()
        .filter(|&e| constraint.admits(0, 0.0, e))
        .map(|item| Candidate {
            bound: session.gain(&state, item),
            item,
            fresh_at: 0,
        })
        .collect();

    while !constraint.saturated(selected.len()) {
        let Some(mut top) = heap.pop() else { break };
        if !constraint.admits(selected.len(), used, top.item) {
            // knapsack room only shrinks
            continue;
        }
        if top.fresh_at == selected.len() {
            if top.bound <= 0.0 {
                break;
            }
            oracle.state_insert(&mut state, top.item);
            used += constraint.weight_of(top.item);
            selected.push(top.item);
            gains.push(top.bound);
        } else {
            top.bound = session.gain(&state, top.item);
            top.fresh_at = selected.len();
            heap.push(top);
        }
    }
    session.finish(&state, selected, gains)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::WeightedCoverage;
    use crate::solver::greedy;

    #[test]
    fn coverage_instance_matches_greedy() {
        let f = WeightedCoverage::new(
            vec![vec![1, 2], vec![2, 3], vec![3]],
            vec![0.0, 1.0, 1.0, 1.0],
        )
        .unwrap();
        let c = Constraint::cardinality(2);
        let lazy = lazy_greedy(&f, &[0, 1, 2], &c);
        let eager = greedy(&f, &[0, 1, 2], &c);
        assert_eq!(lazy.selected, vec![0, 1]);
        assert_eq!(lazy.selected, eager.selected);
        assert_eq!(lazy.value, 3.0);
        assert!(lazy.oracle_calls <= eager.oracle_calls);
    }

    #[test]
    fn ties_go_to_lowest_id() {
        let f = WeightedCoverage::modular(&[1.0, 2.0, 2.0, 2.0]).unwrap();
        let r = lazy_greedy(&f, &[3, 2, 1, 0], &Constraint::cardinality(2));
        assert_eq!(r.selected, vec![1, 2]);
    }
}
