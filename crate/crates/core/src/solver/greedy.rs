use crate::objective::Objective;
use crate::solver::{sorted_ground, Constraint, Session, SolverResult};
use crate::ItemId;

/// Rule for choosing among items with exactly equal marginal gain.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    #[default]
    LowestId,
    HighestId,
    /// Lowest id when the input has an odd number of items, highest id otherwise. The choice
    /// depends on items the solver never selects; it exists to exercise the β-nice checker.
    SizeParity,
}

/// Classic greedy: repeatedly adds the feasible item of maximum marginal gain, lowest id first
/// among ties. Stops once the constraint is saturated or no feasible item has positive gain.
pub fn greedy<O: Objective>(oracle: &O, ground: &[ItemId], constraint: &Constraint) -> SolverResult {
    greedy_with_tie_break(oracle, ground, constraint, TieBreak::LowestId)
}

pub fn greedy_with_tie_break<O: Objective>(
    oracle: &O,
    ground: &[ItemId],
    constraint: &Constraint,
    tie_break: TieBreak,
) -> SolverResult {
    let mut remaining = sorted_ground(ground);
    let prefer_later = match tie_break {
        TieBreak::LowestId => false,
        TieBreak::HighestId => true,
        TieBreak::SizeParity => remaining.len() % 2 == 0,
    };
    let mut session = Session::new(oracle);
    let mut state = oracle.empty_state();
    let mut selected = Vec::new();
    let mut gains = Vec::new();
    let mut used = 0.0;

    while !constraint.saturated(selected.len()) {
        remaining.retain(|&e| constraint.admits(selected.len(), used, e));
        let mut best: Option<(usize, f64)> = None;
        for (pos, &e) in remaining.iter().enumerate() {
            let g = session.gain(&state, e);
            let take = match best {
                None => true,
                Some((_, bg)) => g > bg || (prefer_later && g == bg),
            };
            if take {
                best = Some((pos, g));
            }
        }
        let Some((pos, g)) = best else { break };
        if g <= 0.0 {
            break;
        }
        let e = remaining.remove(pos);
        oracle.state_insert(&mut state, e);
        used += constraint.weight_of(e);
        selected.push(e);
        gains.push(g);
    }
    session.finish(&state, selected, gains)
}
