//! Active set selection with the log-determinant objective, comparing the per-machine solvers
//! inside the tree.
//!
//! cargo run --release --example active_set_logdet

use std::sync::Arc;

use treecompress::dataset::{synth_gaussian_mixture, MixtureSpec};
use treecompress::distree::{tree_compress, TreeConfig};
use treecompress::objective::{LogDetObjective, Objective};
use treecompress::solver::{lazy_greedy, Constraint, SolverKind};

fn main() -> treecompress::Result<()> {
    let n = 2000;
    let k = 30;
    let data = Arc::new(synth_gaussian_mixture(&MixtureSpec::new(n, 6, 8, 0.08, 5))?);
    let f = LogDetObjective::with_defaults(data);

    let ground: Vec<usize> = (0..n).collect();
    let central = lazy_greedy(&f, &ground, &Constraint::cardinality(k));
    println!("{:<16} value {:.6}", "central lazy", central.value);

    let solvers = [
        SolverKind::Greedy,
        SolverKind::Lazy,
        SolverKind::Threshold { eps: 0.1 },
        SolverKind::Stochastic { eps: 0.2 },
    ];
    for solver in solvers {
        let before = f.eval_count();
        let report = tree_compress(&f, &TreeConfig::new(k, 4 * k).with_solver(solver).with_seed(7))?;
        println!(
            "{:<16} value {:.6}  ratio {:.4}  rounds {}  calls {}",
            format!("tree/{solver}"),
            report.best.value,
            report.best.value / central.value,
            report.round_count(),
            f.eval_count() - before
        );
    }
    Ok(())
}
