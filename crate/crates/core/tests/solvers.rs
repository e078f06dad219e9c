use std::sync::Arc;

use proptest::prelude::*;
use treecompress::dataset::{synth_gaussian_mixture, MixtureSpec};
use treecompress::experiment::instances::{random_coverage, random_knapsack, random_logdet};
use treecompress::objective::{ExemplarObjective, Objective, WeightedCoverage};
use treecompress::solver::{
    brute_force_opt, check_beta_nice, check_solver_beta_nice, greedy, greedy_with_tie_break, lazy_greedy,
    stochastic_greedy, stochastic_sample_size, threshold_greedy, Constraint, Knapsack, SolverKind, TieBreak,
};
use treecompress::Error;

const ONE_MINUS_INV_E: f64 = 1.0 - 1.0 / std::f64::consts::E;

fn ground(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn xyz() -> WeightedCoverage {
    WeightedCoverage::new(vec![vec![1, 2], vec![2, 3], vec![3]], vec![0.0, 1.0, 1.0, 1.0]).unwrap()
}

#[test]
fn modular_greedy_takes_top_two() {
    let f = WeightedCoverage::modular(&[5.0, 3.0, 1.0]).unwrap();
    let r = greedy(&f, &ground(3), &Constraint::cardinality(2));
    assert_eq!(r.selected, vec![0, 1]);
    assert_eq!(r.value, 8.0);
    let opt = brute_force_opt(&f, &ground(3), &Constraint::cardinality(2)).unwrap();
    assert_eq!((opt.sorted_selection(), opt.value), (vec![0, 1], 8.0));
}

#[test]
fn coverage_example_matches_brute_force() {
    let f = xyz();
    let c = Constraint::cardinality(2);
    let g = greedy(&f, &ground(3), &c);
    let l = lazy_greedy(&f, &ground(3), &c);
    let opt = brute_force_opt(&f, &ground(3), &c).unwrap();
    assert_eq!(g.selected, vec![0, 1]);
    assert_eq!(g.value, 3.0);
    assert_eq!(opt.value, 3.0);
    assert_eq!(l.selected, g.selected);
    assert!(l.oracle_calls <= g.oracle_calls);
}

#[test]
fn knapsack_example_picks_the_heavy_item() {
    let f = WeightedCoverage::modular(&[3.0, 3.0, 10.0]).unwrap();
    let c = Constraint::knapsack(Arc::new(Knapsack::new(vec![2.0, 2.0, 3.0], 4.0).unwrap()));
    let r = greedy(&f, &ground(3), &c);
    assert_eq!((r.selected.clone(), r.value), (vec![2], 10.0));
    assert!(c.is_feasible(&r.selected));
    let opt = brute_force_opt(&f, &ground(3), &c).unwrap();
    assert_eq!(opt.value, 10.0);
}

#[test]
fn threshold_hand_example_and_large_eps() {
    let f = WeightedCoverage::modular(&[5.0, 3.0, 1.0]).unwrap();
    let r = threshold_greedy(&f, &ground(3), 2, 0.1).unwrap();
    assert_eq!(r.sorted_selection(), vec![0, 1]);
    let coarse = threshold_greedy(&f, &ground(3), 2, 0.99).unwrap();
    assert!(coarse.selected.len() <= 2 && coarse.value >= 5.0);
    assert!(threshold_greedy(&f, &ground(3), 2, 1.0).is_err());
    assert!(threshold_greedy(&f, &ground(3), 2, 0.0).is_err());
}

#[test]
fn empty_ground_gives_empty_result() {
    let f = xyz();
    let r = greedy(&f, &[], &Constraint::cardinality(2));
    assert!(r.selected.is_empty() && r.value == 0.0);
    assert!(lazy_greedy(&f, &[], &Constraint::cardinality(2)).selected.is_empty());
}

proptest! {
    #[test]
    fn lazy_matches_greedy_exactly(seed in any::<u64>(), n in 1usize..40, k in 1usize..8, logdet in any::<bool>()) {
        let c = Constraint::cardinality(k);
        let (g, l) = if logdet {
            let f = random_logdet(n, 2, seed).unwrap();
            (greedy(&f, &ground(n), &c), lazy_greedy(&f, &ground(n), &c))
        } else {
            let f = random_coverage(n, 30, 5, seed).unwrap();
            (greedy(&f, &ground(n), &c), lazy_greedy(&f, &ground(n), &c))
        };
        prop_assert_eq!(&g.selected, &l.selected);
        prop_assert!((g.value - l.value).abs() <= 1e-12);
        prop_assert!(l.oracle_calls <= g.oracle_calls);
    }

    #[test]
    fn solver_outputs_are_feasible_and_consistent(seed in any::<u64>(), n in 1usize..30, k in 1usize..6) {
        let f = random_logdet(n, 2, seed).unwrap();
        let c = Constraint::cardinality(k);
        let kinds = [
            SolverKind::Greedy,
            SolverKind::Lazy,
            SolverKind::Threshold { eps: 0.2 },
            SolverKind::Stochastic { eps: 0.3 },
        ];
        for kind in kinds {
            let r = kind.run(&f, &ground(n), &c, seed).unwrap();
            prop_assert!(r.selected.len() <= k);
            prop_assert!((f.value(&r.selected).unwrap() - r.value).abs() <= 1e-9);
            if matches!(kind, SolverKind::Greedy | SolverKind::Lazy) {
                for w in r.gains.windows(2) {
                    prop_assert!(w[1] <= w[0] + 1e-9);
                }
            }
        }
    }

    #[test]
    fn knapsack_greedy_is_feasible(seed in any::<u64>(), n in 1usize..25) {
        let f = random_coverage(n, 30, 5, seed).unwrap();
        let c = Constraint::knapsack(Arc::new(random_knapsack(n, 0.3, seed).unwrap()));
        let r = greedy(&f, &ground(n), &c);
        prop_assert!(c.is_feasible(&r.selected));
        prop_assert_eq!(&lazy_greedy(&f, &ground(n), &c).selected, &r.selected);
    }

    #[test]
    fn greedy_on_modular_is_exact_top_k(weights in prop::collection::vec(0.0f64..10.0, 1..20), k in 1usize..6) {
        let f = WeightedCoverage::modular(&weights).unwrap();
        let r = greedy(&f, &ground(weights.len()), &Constraint::cardinality(k));
        let mut sorted = weights.clone();
        sorted.sort_by(|a, b| b.total_cmp(a));
        let top: f64 = sorted.iter().take(k).filter(|w| **w > 0.0).sum();
        prop_assert!((r.value - top).abs() <= 1e-9);
    }
}

#[test]
fn lazy_saves_calls_on_exemplar_instances() {
    let mut strictly_fewer = 0;
    for seed in 0..100 {
        let ds = Arc::new(synth_gaussian_mixture(&MixtureSpec::new(500, 5, 10, 0.2, seed)).unwrap());
        let f = ExemplarObjective::with_eval_subsample(ds, 200, seed).unwrap();
        let c = Constraint::cardinality(20);
        let g = greedy(&f, &ground(500), &c);
        let l = lazy_greedy(&f, &ground(500), &c);
        assert_eq!(g.selected, l.selected);
        strictly_fewer += usize::from(l.oracle_calls < g.oracle_calls);
    }
    assert!(strictly_fewer >= 99, "{strictly_fewer}");
}

#[test]
fn stochastic_is_seeded_and_close_to_greedy() {
    let ds = Arc::new(synth_gaussian_mixture(&MixtureSpec::new(1000, 5, 20, 0.2, 7)).unwrap());
    let f = ExemplarObjective::with_eval_subsample(ds, 500, 7).unwrap();
    let all = ground(1000);
    let a = stochastic_greedy(&f, &all, 50, 0.5, 3).unwrap();
    let b = stochastic_greedy(&f, &all, 50, 0.5, 3).unwrap();
    assert_eq!(a.selected, b.selected);
    let g = lazy_greedy(&f, &all, &Constraint::cardinality(50)).value;
    let mean = (0..20)
        .map(|s| stochastic_greedy(&f, &all, 50, 0.5, s).unwrap().value)
        .sum::<f64>()
        / 20.0;
    assert!(mean >= 0.95 * g, "{mean} vs {g}");
}

#[test]
fn stochastic_with_full_sample_is_greedy() {
    let f = random_coverage(12, 20, 4, 5).unwrap();
    // ln(1/eps) large enough that every step sees every remaining item
    let eps = 1e-9;
    assert!(stochastic_sample_size(12, 3, eps) >= 12);
    let s = stochastic_greedy(&f, &ground(12), 3, eps, 1).unwrap();
    assert_eq!(s.selected, greedy(&f, &ground(12), &Constraint::cardinality(3)).selected);
    assert_eq!(stochastic_sample_size(1000, 50, 0.5), 14);
}

#[test]
fn greedy_and_threshold_approximation_against_brute_force() {
    for seed in 0..200 {
        let n = 8 + (seed as usize % 8);
        let k = 1 + (seed as usize % 3);
        let f = random_coverage(n, 25, 6, seed).unwrap();
        let c = Constraint::cardinality(k);
        let opt = brute_force_opt(&f, &ground(n), &c).unwrap().value;
        let g = greedy(&f, &ground(n), &c).value;
        assert!(g >= ONE_MINUS_INV_E * opt - 1e-9, "seed {seed}: {g} vs {opt}");
        let eps = 0.1;
        let t = threshold_greedy(&f, &ground(n), k, eps).unwrap().value;
        assert!(t >= (ONE_MINUS_INV_E - eps) * opt - 1e-9, "seed {seed}: {t} vs {opt}");
    }
}

#[test]
fn brute_force_guard() {
    let f = random_coverage(60, 30, 4, 0).unwrap();
    assert!(matches!(
        brute_force_opt(&f, &ground(60), &Constraint::cardinality(10)),
        Err(Error::InstanceTooLarge { .. })
    ));
}

#[test]
fn greedy_and_threshold_are_nice() {
    let f = random_coverage(40, 60, 6, 9).unwrap();
    for kind in [SolverKind::Greedy, SolverKind::Lazy, SolverKind::Threshold { eps: 0.1 }] {
        let r = check_solver_beta_nice(kind, &f, &ground(40), 5, 500, 2).unwrap();
        assert!(r.passed() && r.checked > 400, "{kind}: {r:?}");
    }
    assert!(check_solver_beta_nice(SolverKind::Stochastic { eps: 0.5 }, &f, &ground(40), 5, 10, 0).is_err());
}

#[test]
fn inconsistent_tie_breaking_is_caught() {
    // four items of equal gain: the chosen one depends on which other items are present
    let f = WeightedCoverage::modular(&[1.0; 4]).unwrap();
    let c = Constraint::cardinality(1);
    let run = |tb| {
        check_beta_nice(&f, &ground(4), 1, 1.0, 200, 5, |t| {
            Ok(greedy_with_tie_break(&f, t, &c, tb))
        })
        .unwrap()
    };
    let parity = run(TieBreak::SizeParity);
    assert!(parity.consistency_violations > 0, "{parity:?}");
    assert!(!parity.counterexamples.is_empty());
    assert!(run(TieBreak::HighestId).passed());
    assert!(run(TieBreak::LowestId).passed());
}
