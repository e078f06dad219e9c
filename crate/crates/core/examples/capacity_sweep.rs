//! Solution quality as the machine capacity grows, driven by an experiment configuration.
//!
//! cargo run --release --example capacity_sweep

use treecompress::experiment::{capacity_sweep, sweep_csv, ExperimentConfig};

const CONFIG: &str = r#"
n = 3000
d = 6
clusters = 30
spread = 0.05
objective = "exemplar"
eval_size = 1000
k = 10
mu = [20, 40, 80, 160, 320, 640, 3000]
algorithms = ["tree", "rand_greedi", "random"]
seeds = 3
"#;

fn main() -> treecompress::Result<()> {
    let plan = ExperimentConfig::from_toml_str(CONFIG)?.validate()?;
    let (_, points) = capacity_sweep(&plan)?;
    print!("{}", sweep_csv(&points));
    Ok(())
}
