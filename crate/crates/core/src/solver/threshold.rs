use crate::objective::Objective;
use crate::solver::{check_eps, sorted_ground, Session, SolverResult};
use crate::{ItemId, Result};

/// Descending-threshold greedy for a cardinality constraint `k`.
///
/// Thresholds start at `d = max_e f({e})` and shrink by a factor `1 − ε` while they stay at or
/// above `(ε/k)·d`. Each threshold makes one pass over the items in ascending id order and adds
/// every item whose current gain reaches it, until `k` items are selected.
pub fn threshold_greedy<O: Objective>(oracle: &O, ground: &[ItemId], k: usize, eps: f64) -> Result<SolverResult> {
    check_eps(eps)?;
    let ground = sorted_ground(ground);
    let mut session = Session::new(oracle);
    let mut state = oracle.empty_state();
    let mut selected = Vec::new();
    let mut gains = Vec::new();
    if k == 0 || ground.is_empty() {
        return Ok(session.finish(&state, selected, gains));
    }

    let top = ground
        .iter()
        .map(|&e| session.gain(&state, e))
        .fold(f64::NEG_INFINITY, f64::max);
    if top <= 0.0 {
        return Ok(session.finish(&state, selected, gains));
    }

    let floor = eps / k as f64 * top;
    let mut in_set = vec![false; ground.len()];
    let mut tau = top;
    'schedule: while tau >= floor {
        for (pos, &e) in ground.iter().enumerate() {
            if in_set[pos] {
                continue;
            }
            let g = session.gain(&state, e);
            if g >= tau {
                oracle.state_insert(&mut state, e);
                in_set[pos] = true;
                selected.push(e);
                gains.push(g);
                if selected.len() == k {
                    break 'schedule;
                }
            }
        }
        tau *= 1.0 - eps;
    }
    Ok(session.finish(&state, selected, gains))
}
