use crate::objective::Objective;
use crate::solver::{check_eps, sorted_ground, Session, SolverResult};
use crate::{seed, ItemId, Result};

/// Per-step sample size `⌈(n/k)·ln(1/ε)⌉` for a ground set of `n` items.
pub fn stochastic_sample_size(n: usize, k: usize, eps: f64) -> usize {
    if k == 0 {
        return 0;
    }
    ((n as f64 / k as f64) * (1.0 / eps).ln()).ceil() as usize
}

/// Stochastic greedy: each of `k` steps evaluates a uniform sample (without replacement) of the
/// remaining items and adds the best one, lowest id first among ties.
///
/// A step whose sample has no positive gain adds nothing; once the sample covers every
/// remaining item such a step ends the run, as in greedy.
pub fn stochastic_greedy<O: Objective>(
    oracle: &O,
    ground: &[ItemId],
    k: usize,
    eps: f64,
    seed: u64,
) -> Result<SolverResult> {
    check_eps(eps)?;
    let mut remaining = sorted_ground(ground);
    let sample_size = stochastic_sample_size(remaining.len(), k, eps);
    let mut rng = seed::rng(seed);
    let mut session = Session::new(oracle);
    let mut state = oracle.empty_state();
    let mut selected = Vec::new();
    let mut gains = Vec::new();

    for _ in 0..k {
        if remaining.is_empty() {
            break;
        }
        let s = sample_size.min(remaining.len());
        let full = s == remaining.len();
        let mut sample: Vec<usize> = if full {
            (0..remaining.len()).collect()
        } else {
            rand::seq::index::sample(&mut rng, remaining.len(), s).into_vec()
        };
        sample.sort_unstable();
        let mut best: Option<(usize, f64)> = None;
        for &pos in &sample {
            let g = session.gain(&state, remaining[pos]);
            if best.is_none_or(|(_, bg)| g > bg) {
                best = Some((pos, g));
            }
        }
        match best {
            Some((pos, g)) if g > 0.0 => {
                let e = remaining.remove(pos);
                oracle.state_insert(&mut state, e);
                selected.push(e);
                gains.push(g);
            }
            _ if full => break,
            _ => {}
        }
    }
    Ok(session.finish(&state, selected, gains))
}
