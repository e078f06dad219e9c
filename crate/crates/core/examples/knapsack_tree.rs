//! The tree under a knapsack constraint, checked against exhaustive search on small instances.
//!
//! cargo run --release --example knapsack_tree

use std::sync::Arc;

use treecompress::distree::{round_count, tree_compress, TreeConfig};
use treecompress::experiment::instances::{random_coverage, random_knapsack};
use treecompress::solver::{brute_force_opt, greedy, Constraint, SolverKind};

fn main() -> treecompress::Result<()> {
    let n = 16;
    for seed in 0..8 {
        let f = random_coverage(n, 30, 5, seed)?;
        let knapsack = Arc::new(random_knapsack(n, 0.25, seed)?);
        let ground: Vec<usize> = (0..n).collect();
        let constraint = Constraint::knapsack(knapsack.clone());

        let opt = brute_force_opt(&f, &ground, &constraint)?;
        let central = greedy(&f, &ground, &constraint);
        let cfg = TreeConfig::for_knapsack(knapsack, &ground, 0).with_solver(SolverKind::Greedy);
        let cfg = TreeConfig { mu: 2 * cfg.k, ..cfg }.with_seed(seed);
        let tree = tree_compress(&f, &cfg)?;
        println!(
            "seed {seed}: k {}  mu {}  r {}  opt {:.3}  greedy {:.3}  tree {:.3}  feasible {}",
            cfg.k,
            cfg.mu,
            round_count(n, cfg.k, cfg.mu)?,
            opt.value,
            central.value,
            tree.best.value,
            constraint.is_feasible(&tree.best.selected)
        );
    }
    Ok(())
}
