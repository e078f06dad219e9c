//! Stochastic greedy on the machines trades a little value for far fewer oracle calls.
//! Also prints the per-machine trace of one run.
//!
//! cargo run --release --example stochastic_tree

use std::sync::Arc;

use treecompress::dataset::{synth_gaussian_mixture, MixtureSpec};
use treecompress::distree::{tree_compress, TreeConfig};
use treecompress::objective::ExemplarObjective;
use treecompress::solver::SolverKind;

fn main() -> treecompress::Result<()> {
    let n = 4000;
    let k = 20;
    let data = Arc::new(synth_gaussian_mixture(&MixtureSpec::new(n, 5, 20, 0.05, 3))?);
    let f = ExemplarObjective::with_eval_subsample(data, 1000, 3)?;

    let solvers = [
        SolverKind::Greedy,
        SolverKind::Lazy,
        SolverKind::Stochastic { eps: 0.5 },
        SolverKind::Stochastic { eps: 0.2 },
    ];
    for solver in solvers {
        let report = tree_compress(&f, &TreeConfig::new(k, 200).with_solver(solver).with_seed(4))?;
        println!(
            "{:<16} value {:.6}  calls {:7}  rounds {}",
            solver.to_string(),
            report.best.value,
            report.total_oracle_calls,
            report.round_count()
        );
    }

    let small = tree_compress(&f, &TreeConfig::new(k, 1000).with_solver(SolverKind::Stochastic { eps: 0.5 }))?;
    print!("{}", small.trace_text());
    Ok(())
}
