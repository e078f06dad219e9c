use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use treecompress::dataset::{synth_gaussian_mixture, MixtureSpec};
use treecompress::experiment::{
    capacity_sweep, run_experiment, self_check, summary_csv, sweep_csv, write_outputs, ExperimentConfig,
    ExperimentPlan, OneOrMany, Seeds,
};
use treecompress::Error;

#[derive(Parser)]
#[command(name = "treecompress", version, about = "Capacity-bounded distributed submodular maximization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every cell of an experiment and write results.csv and summary.csv.
    Run(RunArgs),
    /// Like `run`, and additionally write the capacity curve to sweep.csv.
    Sweep(RunArgs),
    /// Run the randomized self-checks.
    Check {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Write a synthetic Gaussian-mixture dataset as CSV.
    Gen {
        #[arg(long, default_value_t = 2000)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        d: usize,
        #[arg(long, default_value_t = 10)]
        clusters: usize,
        #[arg(long, default_value_t = 0.1)]
        spread: f64,
        #[arg(long, default_value_t = 0.0)]
        skew: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "synthetic.csv")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    config: PathBuf,
    /// Run a single seed instead of the configured ones.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    solver: Option<String>,
    #[arg(long)]
    objective: Option<String>,
    /// Absolute capacities; replaces both `mu` and `mu_multiples`.
    #[arg(long, value_delimiter = ',')]
    mu: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    k: Option<Vec<usize>>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn plan(&self) -> Result<ExperimentPlan, Error> {
        let mut cfg = ExperimentConfig::load(&self.config)?;
        if let Some(seed) = self.seed {
            cfg.seeds = Seeds::List(vec![seed]);
        }
        if let Some(w) = self.workers {
            cfg.workers = w;
        }
        if let Some(s) = &self.solver {
            cfg.solver = s.clone();
        }
        if let Some(o) = &self.objective {
            cfg.objective = o.clone();
        }
        if let Some(mu) = &self.mu {
            cfg.mu = mu.clone();
            cfg.mu_multiples.clear();
        }
        if let Some(k) = &self.k {
            cfg.k = OneOrMany::Many(k.clone());
        }
        if let Some(out) = &self.out {
            cfg.out = out.clone();
        }
        cfg.validate()
    }
}

const CONFIG_ERROR: u8 = 1;
const RUNTIME_ERROR: u8 = 2;

fn fail(code: u8, e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(code)
}

fn classify(e: &Error) -> u8 {
    match e {
        Error::Config { .. } => CONFIG_ERROR,
        _ => RUNTIME_ERROR,
    }
}

fn run(args: &RunArgs, sweep: bool) -> ExitCode {
    let plan = match args.plan() {
        Ok(p) => p,
        Err(e) => return fail(CONFIG_ERROR, &e),
    };
    let result = if sweep {
        capacity_sweep(&plan).map(|(t, p)| (t, Some(p)))
    } else {
        run_experiment(&plan).map(|t| (t, None))
    };
    let (table, points) = match result {
        Ok(r) => r,
        Err(e) => return fail(classify(&e), &e),
    };
    let out = &plan.config.out;
    if let Err(e) = write_outputs(&table, out) {
        return fail(RUNTIME_ERROR, &e);
    }
    match points {
        Some(points) => {
            let path = out.join("sweep.csv");
            let text = sweep_csv(&points);
            if let Err(e) = std::fs::write(&path, &text) {
                return fail(RUNTIME_ERROR, &Error::io(&path, e));
            }
            print!("{text}");
        }
        None => print!("{}", summary_csv(&table.aggregate())),
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { CONFIG_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Run(args) => run(&args, false),
        Command::Sweep(args) => run(&args, true),
        Command::Check { seed, trials } => match self_check(seed, trials) {
            Ok(outcomes) => {
                for o in &outcomes {
                    println!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
                }
                if outcomes.iter().all(|o| o.passed) {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(RUNTIME_ERROR)
                }
            }
            Err(e) => fail(classify(&e), &e),
        },
        Command::Gen {
            n,
            d,
            clusters,
            spread,
            skew,
            seed,
            out,
        } => {
            let spec = MixtureSpec::new(n, d, clusters, spread, seed).with_skew(skew);
            match synth_gaussian_mixture(&spec).and_then(|ds| ds.write_csv(&out)) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e @ Error::InvalidParameter(_)) => fail(CONFIG_ERROR, &e),
                Err(e) => fail(RUNTIME_ERROR, &e),
            }
        }
    }
}
