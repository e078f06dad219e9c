//! Probes the two niceness properties of each solver, and shows the checker catching a greedy
//! whose tie-breaking depends on the input.
//!
//! cargo run --release --example beta_nice_check

use treecompress::experiment::instances::random_logdet;
use treecompress::objective::WeightedCoverage;
use treecompress::solver::{
    check_beta_nice, check_solver_beta_nice, greedy_with_tie_break, Constraint, SolverKind, TieBreak,
};

fn main() -> treecompress::Result<()> {
    let f = random_logdet(40, 3, 1)?;
    let ground: Vec<usize> = (0..40).collect();
    for solver in [SolverKind::Greedy, SolverKind::Lazy, SolverKind::Threshold { eps: 0.1 }] {
        let r = check_solver_beta_nice(solver, &f, &ground, 5, 300, 2)?;
        println!(
            "{:<14} checked {:3}  consistency violations {}  gain violations {}",
            solver.to_string(), r.checked, r.consistency_violations, r.gain_violations
        );
    }

    let ties = WeightedCoverage::modular(&[1.0; 6])?;
    let ground: Vec<usize> = (0..6).collect();
    let constraint = Constraint::cardinality(2);
    let r = check_beta_nice(&ties, &ground, 2, 1.0, 100, 3, |t| {
        Ok(greedy_with_tie_break(&ties, t, &constraint, TieBreak::SizeParity))
    })?;
    println!("size-parity ties: {} consistency violations", r.consistency_violations);
    if let Some(c) = r.counterexamples.first() {
        println!(
            "  input {:?} gives {:?}; without {} it gives {:?}",
            c.input, c.output, c.probe, c.output_without_probe
        );
    }
    Ok(())
}
