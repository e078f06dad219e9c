//! Exemplar clustering on a synthetic Gaussian mixture: centralized greedy, the tree at a few
//! capacities, and a random subset.
//!
//! cargo run --release --example exemplar_clustering

use std::sync::Arc;

use treecompress::dataset::{synth_gaussian_mixture, MixtureSpec};
use treecompress::distree::{random_baseline, tree_compress, TreeConfig};
use treecompress::objective::ExemplarObjective;
use treecompress::solver::{lazy_greedy, Constraint};

fn main() -> treecompress::Result<()> {
    let n = 5000;
    let k = 25;
    let data = Arc::new(synth_gaussian_mixture(&MixtureSpec::new(n, 8, 40, 0.05, 1))?);
    let f = ExemplarObjective::with_eval_subsample(data, 2000, 2)?;

    let ground: Vec<usize> = (0..n).collect();
    let central = lazy_greedy(&f, &ground, &Constraint::cardinality(k));
    println!("greedy   value {:.6}  calls {}", central.value, central.oracle_calls);

    for mu in [2 * k, 4 * k, 8 * k] {
        let report = tree_compress(&f, &TreeConfig::new(k, mu).with_seed(3))?;
        let rel = 100.0 * (central.value - report.best.value) / central.value;
        println!(
            "tree     mu {mu:4}  value {:.6}  rel err {rel:6.3}%  rounds {}  machines {:?}",
            report.best.value,
            report.round_count(),
            report.machine_counts()
        );
    }

    let random = random_baseline(&f, k, 4)?;
    let rel = 100.0 * (central.value - random.value) / central.value;
    println!("random   value {:.6}  rel err {rel:6.3}%", random.value);
    Ok(())
}
