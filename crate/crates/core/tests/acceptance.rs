//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and exits non-zero if
//! any criterion fails. Pass criterion numbers as arguments to run a subset.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use treecompress::dataset::{synth_gaussian_mixture, Dataset, MixtureSpec};
use treecompress::distree::{check_pruning_loss, rand_greedi, round_count, tree_compress, TreeConfig};
use treecompress::experiment::instances::{random_coverage, random_knapsack, random_logdet};
use treecompress::experiment::{run_experiment, ExperimentConfig, ResultTable};
use treecompress::objective::properties::check_monotone_submodular;
use treecompress::objective::{ExemplarObjective, LogDetObjective, Objective, WeightedCoverage};
use treecompress::seed::derive_seed;
use treecompress::solver::{
    brute_force_opt, check_solver_beta_nice, greedy, lazy_greedy, stochastic_greedy, stochastic_sample_size,
    Constraint, SolverKind,
};
use treecompress::{ItemId, Result};

type Verdict = Result<(bool, String)>;

fn ground(n: usize) -> Vec<ItemId> {
    (0..n).collect()
}

fn mixture(n: usize, dim: usize, clusters: usize, spread: f64, seed: u64) -> Arc<Dataset> {
    Arc::new(synth_gaussian_mixture(&MixtureSpec::new(n, dim, clusters, spread, seed)).unwrap())
}

/// Tree output equals centralized lazy greedy whenever one machine holds everything.
fn degeneration() -> Verdict {
    let mut mismatches = 0;
    let mut checked = 0;
    for i in 0..20u64 {
        let n = 60 + 20 * (i as usize % 8);
        let k = 3 + i as usize % 6;
        let mu = n + (i as usize % 3) * 17;
        let cfg = TreeConfig::new(k, mu).with_seed(i);
        let same = |f: &dyn Fn() -> Result<(Vec<ItemId>, Vec<ItemId>, f64, f64)>| -> Result<bool> {
            let (a, b, va, vb) = f()?;
            Ok(a == b && va == vb)
        };
        let ok = match i % 3 {
            0 => {
                let f = ExemplarObjective::exact(mixture(n, 5, 6, 0.2, i));
                same(&|| run_pair(&f, &cfg))?
            }
            1 => {
                let f = random_logdet(n, 3, i)?;
                same(&|| run_pair(&f, &cfg))?
            }
            _ => {
                let f = random_coverage(n, 2 * n, 6, i)?;
                same(&|| run_pair(&f, &cfg))?
            }
        };
        checked += 1;
        mismatches += usize::from(!ok);
    }
    Ok((mismatches == 0, format!("{checked} instances, {mismatches} mismatches")))
}

fn run_pair<O: Objective>(f: &O, cfg: &TreeConfig) -> Result<(Vec<ItemId>, Vec<ItemId>, f64, f64)> {
    let n = f.ground_size();
    let tree = tree_compress(f, cfg)?;
    let central = lazy_greedy(f, &ground(n), &Constraint::cardinality(cfg.k));
    Ok((tree.best.selected, central.selected, tree.best.value, central.value))
}

/// For √(nk) ≤ µ < n the tree runs exactly two rounds and matches the two-round baseline.
fn two_round_regime() -> Verdict {
    let (n, k) = (2000, 20);
    let f = ExemplarObjective::with_eval_subsample(mixture(n, 10, 20, 0.2, 7), 10_000, 0)?;
    let mut bad_rounds = 0;
    let mut mismatches = 0;
    let mut runs = 0;
    for mu in [200, 201, 250, 333, 400, 667, 1000, 1999] {
        for seed in 0..3 {
            let cfg = TreeConfig::new(k, mu).with_seed(seed);
            let tree = tree_compress(&f, &cfg)?;
            let base = rand_greedi(&f, n.div_ceil(mu), &cfg)?;
            runs += 1;
            bad_rounds += usize::from(tree.round_count() != 2);
            mismatches += usize::from(tree.best.value != base.best.value || tree.best.selected != base.best.selected);
        }
    }
    Ok((
        bad_rounds == 0 && mismatches == 0,
        format!("{runs} runs, {bad_rounds} not two rounds, {mismatches} differ from rand_greedi"),
    ))
}

/// Observed rounds never exceed the bound; n = 160, k = 10, µ = 20 uses 8, 4, 2, 1 machines.
fn round_bound() -> Verdict {
    let mut cells = 0;
    let mut violations = Vec::new();
    for n in [100, 1000, 10_000] {
        let f = ExemplarObjective::with_eval_subsample(mixture(n, 10, 25, 0.2, n as u64), 1000, 1)?;
        for k in [5, 20] {
            let sqrt_nk = ((n * k) as f64).sqrt().ceil() as usize;
            for mu in [2 * k, 4 * k, 8 * k, sqrt_nk] {
                let report = tree_compress(&f, &TreeConfig::new(k, mu).with_seed(cells as u64))?;
                let bound = round_count(n, k, mu)?;
                cells += 1;
                if report.round_count() > bound {
                    violations.push(format!("n={n} k={k} mu={mu}: {} > {bound}", report.round_count()));
                }
            }
        }
    }
    let f = ExemplarObjective::exact(mixture(160, 10, 8, 0.2, 3));
    let fig = tree_compress(&f, &TreeConfig::new(10, 20))?;
    let counts = fig.machine_counts();
    let fig_ok = fig.round_count() == 4 && counts == [8, 4, 2, 1];
    Ok((
        violations.is_empty() && fig_ok,
        format!(
            "{cells} cells, {} over the bound {:?}; n=160 k=10 mu=20 machines {counts:?}",
            violations.len(),
            violations
        ),
    ))
}

/// Per-instance `f(S) ≥ OPT/(2r)` and a mean ratio of at least 0.9 against brute force.
fn approximation_vs_brute_force() -> Verdict {
    let mut ratios = Vec::new();
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    for i in 0..200u64 {
        let n = 10 + (i as usize % 9);
        let k = 1 + (i as usize / 9) % 3;
        let mu = 2 * k;
        let cfg = TreeConfig::new(k, mu).with_seed(derive_seed(i, &[4]));
        let (tree, opt) = if i % 2 == 0 {
            let f = random_coverage(n, 3 * n, 5, i)?;
            (tree_compress(&f, &cfg)?.best.value, brute_force_opt(&f, &ground(n), &Constraint::cardinality(k))?.value)
        } else {
            let f = random_logdet(n, 2, i)?;
            (tree_compress(&f, &cfg)?.best.value, brute_force_opt(&f, &ground(n), &Constraint::cardinality(k))?.value)
        };
        let r = round_count(n, k, mu)? as f64;
        if tree < opt / (2.0 * r) {
            violations += 1;
        }
        let ratio = tree / opt;
        worst = worst.min(ratio);
        ratios.push(ratio);
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    Ok((
        violations == 0 && mean >= 0.9,
        format!("200 instances, {violations} below OPT/(2r), mean ratio {mean:.4}, worst {worst:.4}"),
    ))
}

/// Tree within 2% of centralized greedy on average; random subsets at least 20% worse.
fn relative_error() -> Verdict {
    let exemplar = ExperimentConfig::from_toml_str(
        r#"
        n = 20000
        d = 10
        clusters = 100
        spread = 0.02
        objective = "exemplar"
        eval_size = 10000
        k = [50, 100]
        mu_multiples = [4, 8, 16]
        algorithms = ["tree", "random"]
        seeds = 10
        "#,
    )?;
    let logdet = ExperimentConfig::from_toml_str(
        r#"
        n = 5000
        d = 10
        clusters = 5
        spread = 0.06
        objective = "logdet"
        k = [50, 100]
        mu_multiples = [4, 8, 16]
        algorithms = ["tree", "random"]
        seeds = 10
        "#,
    )?;
    let mut ok = true;
    let mut detail = Vec::new();
    for cfg in [exemplar, logdet] {
        let table: ResultTable = run_experiment(&cfg.validate()?)?;
        for row in table.aggregate() {
            let err = row.rel_err_pct.mean;
            let pass = match row.algorithm.as_str() {
                "random" => err >= 20.0,
                _ => err <= 2.0,
            };
            ok &= pass;
            detail.push(format!(
                "{} {} k={} mu={}: {err:.3}%",
                cfg.objective,
                row.algorithm,
                row.k,
                row.mu.map(|m| m.to_string()).unwrap_or_else(|| "-".into())
            ));
        }
    }
    Ok((ok, detail.join("; ")))
}

/// Zero β-nice violations over 500 trials for greedy and threshold greedy.
fn beta_nice() -> Verdict {
    let coverage = random_coverage(40, 80, 6, 11)?;
    let logdet = random_logdet(40, 3, 12)?;
    let g = ground(40);
    let mut detail = Vec::new();
    let mut ok = true;
    for solver in [SolverKind::Greedy, SolverKind::Threshold { eps: 0.1 }] {
        for (name, report) in [
            ("coverage", check_solver_beta_nice(solver, &coverage, &g, 5, 500, 1)?),
            ("logdet", check_solver_beta_nice(solver, &logdet, &g, 5, 500, 2)?),
        ] {
            ok &= report.passed() && report.trials == 500;
            detail.push(format!(
                "{solver}/{name}: {} checked, {}+{} violations",
                report.checked, report.consistency_violations, report.gain_violations
            ));
        }
    }
    Ok((ok, detail.join("; ")))
}

/// `E[f(C ∩ ∪S_i)] ≥ f(C) − 2·E[max_i f(S_i)]` within three standard errors.
fn pruning_loss() -> Verdict {
    let mut failures = 0;
    let mut tightest = f64::INFINITY;
    for i in 0..50u64 {
        let b = ground(15);
        let report = if i % 2 == 0 {
            let f = random_coverage(15, 20, 4, 100 + i)?;
            let opt = brute_force_opt(&f, &b, &Constraint::cardinality(3))?;
            check_pruning_loss(&f, &b, 3, &opt.selected, 3, SolverKind::Greedy, 2000, i)?
        } else {
            let f = random_logdet(15, 2, 100 + i)?;
            let opt = brute_force_opt(&f, &b, &Constraint::cardinality(3))?;
            check_pruning_loss(&f, &b, 3, &opt.selected, 3, SolverKind::Greedy, 2000, i)?
        };
        failures += usize::from(!report.holds());
        tightest = tightest.min(report.mean_retained + report.slack - report.bound());
    }
    Ok((failures == 0, format!("50 instances, {failures} failures, tightest margin {tightest:.4}")))
}

/// Lazy greedy and full-sample stochastic greedy reproduce greedy; greedy picks the exact top-k
/// of a modular function.
fn solver_equivalences() -> Verdict {
    let mut lazy_mismatch = 0;
    let mut stochastic_mismatch = 0;
    for i in 0..200u64 {
        let n = 30 + (i as usize % 5) * 10;
        let k = 2 + (i as usize % 7);
        let c = Constraint::cardinality(k);
        let check = |f: &dyn Fn(&Constraint) -> (Vec<ItemId>, Vec<ItemId>, Vec<ItemId>)| f(&c);
        let (g, l, s) = match i % 3 {
            0 => {
                let f = random_coverage(n, 2 * n, 5, i)?;
                check(&|c| triple(&f, n, c, k, i))
            }
            1 => {
                let f = random_logdet(n, 3, i)?;
                check(&|c| triple(&f, n, c, k, i))
            }
            _ => {
                let f = ExemplarObjective::exact(mixture(n, 4, 5, 0.3, i));
                check(&|c| triple(&f, n, c, k, i))
            }
        };
        lazy_mismatch += usize::from(g != l);
        stochastic_mismatch += usize::from(g != s);
    }
    let mut modular_mismatch = 0;
    for i in 0..100u64 {
        let mut rng = treecompress::seed::rng(i);
        let weights: Vec<f64> = (0..25).map(|_| rand::Rng::random_range(&mut rng, 0.0..10.0)).collect();
        let k = 1 + i as usize % 10;
        let f = WeightedCoverage::modular(&weights)?;
        let mut top: Vec<ItemId> = ground(25);
        top.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]).then(a.cmp(&b)));
        top.truncate(k);
        modular_mismatch += usize::from(greedy(&f, &ground(25), &Constraint::cardinality(k)).selected != top);
    }
    Ok((
        lazy_mismatch == 0 && stochastic_mismatch == 0 && modular_mismatch == 0,
        format!(
            "lazy {lazy_mismatch}/200, stochastic {stochastic_mismatch}/200, modular top-k {modular_mismatch}/100 mismatches"
        ),
    ))
}

fn triple<O: Objective>(f: &O, n: usize, c: &Constraint, k: usize, seed: u64) -> (Vec<ItemId>, Vec<ItemId>, Vec<ItemId>) {
    let g = greedy(f, &ground(n), c).selected;
    let l = lazy_greedy(f, &ground(n), c).selected;
    // ln(1/ε) ≥ k makes every per-step sample the whole remaining ground set
    let eps = (-(k as f64) - 1.0).exp();
    assert!(stochastic_sample_size(n, k, eps) >= n);
    let s = stochastic_greedy(f, &ground(n), k, eps, seed).unwrap().selected;
    (g, l, s)
}

/// Property suites over 1000 triples per objective and the hand-computed values.
fn objective_correctness() -> Verdict {
    let exemplar = ExemplarObjective::with_eval_subsample(mixture(300, 6, 8, 0.3, 5), 200, 5)?;
    let logdet = random_logdet(120, 3, 6)?;
    let coverage = random_coverage(100, 150, 8, 7)?;
    let mut detail = Vec::new();
    let mut ok = true;
    for (name, report) in [
        ("exemplar", check_monotone_submodular(&exemplar, 1000, 12, 1e-9, 1)?),
        ("logdet", check_monotone_submodular(&logdet, 1000, 12, 1e-9, 2)?),
        ("coverage", check_monotone_submodular(&coverage, 1000, 12, 1e-9, 3)?),
    ] {
        ok &= report.passed() && report.trials == 1000;
        detail.push(format!(
            "{name}: {}/{}/{} violations",
            report.negative_values, report.monotonicity_violations, report.submodularity_violations
        ));
    }

    let one = LogDetObjective::with_defaults(Arc::new(Dataset::from_rows(&[[0.0, 0.0], [0.0, 0.0]])?));
    let two = ExemplarObjective::exact(Arc::new(Dataset::from_rows(&[[1.0, 0.0], [-1.0, 0.0]])?));
    let hand = [
        (one.value(&[0])?, 0.5 * 2f64.ln()),
        (one.value(&[0, 1])?, 0.5 * 3f64.ln()),
        (two.value(&[0])?, 0.5),
        (two.value(&[0, 1])?, 1.0),
    ];
    let worst = hand.iter().map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    ok &= worst <= 1e-12;
    detail.push(format!("hand values max error {worst:.1e}"));
    Ok((ok, detail.join("; ")))
}

/// Under a knapsack, tree with greedy reaches `(α_emp/r)·OPT` on every instance.
fn knapsack_constraint() -> Verdict {
    struct Case {
        tree: f64,
        central: f64,
        opt: f64,
        r: usize,
    }
    let mut cases = Vec::new();
    for i in 0..100u64 {
        let n = 10 + i as usize % 6;
        let kn = Arc::new(random_knapsack(n, 0.25, 500 + i)?);
        let g = ground(n);
        let k = kn.max_feasible_size(&g);
        // µ ≥ 2k guarantees every multi-machine round shrinks the active set
        let mu = 2 * k;
        let cfg = TreeConfig::for_knapsack(kn.clone(), &g, mu)
            .with_solver(SolverKind::Greedy)
            .with_seed(i);
        let r = round_count(n, k, mu)?;
        let full = Constraint::knapsack(kn.clone());
        let case = |f: &dyn Fn() -> Result<(f64, f64, f64)>| -> Result<Case> {
            let (tree, central, opt) = f()?;
            Ok(Case { tree, central, opt, r })
        };
        cases.push(if i % 2 == 0 {
            let f = random_coverage(n, 2 * n, 5, 900 + i)?;
            case(&|| {
                Ok((
                    tree_compress(&f, &cfg)?.best.value,
                    greedy(&f, &g, &full).value,
                    brute_force_opt(&f, &g, &full)?.value,
                ))
            })?
        } else {
            let f = random_logdet(n, 2, 900 + i)?;
            case(&|| {
                Ok((
                    tree_compress(&f, &cfg)?.best.value,
                    greedy(&f, &g, &full).value,
                    brute_force_opt(&f, &g, &full)?.value,
                ))
            })?
        });
    }
    let alpha = cases.iter().map(|c| c.central / c.opt).fold(f64::INFINITY, f64::min);
    let violations = cases.iter().filter(|c| c.tree < alpha / c.r as f64 * c.opt).count();
    let mean = cases.iter().map(|c| c.tree / c.opt).sum::<f64>() / cases.len() as f64;
    let max_r = cases.iter().map(|c| c.r).max().unwrap_or(0);
    Ok((
        violations == 0,
        format!("100 instances, alpha_emp {alpha:.4}, max r {max_r}, {violations} violations, mean ratio {mean:.4}"),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("degeneration at mu >= n", degeneration),
        ("two-round regime", two_round_regime),
        ("round bound", round_bound),
        ("approximation vs brute force", approximation_vs_brute_force),
        ("relative error vs centralized greedy", relative_error),
        ("beta-nice solvers", beta_nice),
        ("pruning loss Monte Carlo", pruning_loss),
        ("solver equivalences", solver_equivalences),
        ("objective correctness", objective_correctness),
        ("knapsack constraint", knapsack_constraint),
    ];
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let (pass, detail) = match check() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!pass);
        println!(
            "{} criterion {id:>2} {name} ({:.1}s): {detail}",
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
