//! The two-round baseline refuses capacities below about sqrt(n k); the tree keeps going with
//! more rounds.
//!
//! cargo run --release --example rand_greedi_breakdown

use std::sync::Arc;

use treecompress::dataset::{synth_gaussian_mixture, MixtureSpec};
use treecompress::distree::{rand_greedi, tree_compress, TreeConfig};
use treecompress::objective::ExemplarObjective;
use treecompress::Error;

fn main() -> treecompress::Result<()> {
    let n = 4000;
    let k = 20;
    let data = Arc::new(synth_gaussian_mixture(&MixtureSpec::new(n, 5, 25, 0.05, 9))?);
    let f = ExemplarObjective::with_eval_subsample(data, 1000, 9)?;
    println!("sqrt(n k) = {:.1}", ((n * k) as f64).sqrt());

    for mu in [40, 80, 160, 320, 640] {
        let cfg = TreeConfig::new(k, mu).with_seed(1);
        let tree = tree_compress(&f, &cfg)?;
        let baseline = match rand_greedi(&f, n.div_ceil(mu), &cfg) {
            Ok(r) => format!("{:.6}", r.best.value),
            Err(Error::CapacityViolation { needed, mu }) => format!("refused ({needed} items > {mu})"),
            Err(e) => return Err(e),
        };
        println!(
            "mu {mu:4}  tree {:.6} in {} rounds  rand_greedi {baseline}",
            tree.best.value,
            tree.round_count()
        );
    }
    Ok(())
}
