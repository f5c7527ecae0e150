use std::time::Duration;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sukp_core::i2pls::{
    escape, explore, greedy_initial_solution, Deadline, FrequencyVector, GreedyScan,
};
use sukp_core::{
    bench, brute_force, format_table, generate_instance, run, SearchParams, TableFormat,
};

#[test]
fn explore_usually_reaches_optimum_on_twelve_items() {
    let inst = generate_instance(12, 12, 0.15, 0.75, 17).unwrap();
    let opt = brute_force(&inst, 25).unwrap().optimal_profit;
    let params = SearchParams::default();
    let hits = (0..50)
        .filter(|&seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut freq = FrequencyVector::new(inst.num_items());
            let start = greedy_initial_solution(&inst, GreedyScan::Continue);
            let best = explore(
                start,
                &inst,
                &params,
                &mut freq,
                &mut rng,
                Deadline::never(),
            );
            assert!(best.profit() <= opt);
            best.profit() == opt
        })
        .count();
    assert!(hits >= 45, "{hits}/50");
}

#[test]
fn bench_best_matches_brute_force() {
    let inst = generate_instance(15, 15, 0.10, 0.75, 2).unwrap();
    let opt = brute_force(&inst, 25).unwrap().optimal_profit;
    let params = SearchParams::default().with_time_budget(Duration::from_secs(2));
    let stats = bench(&inst, &params, 10, 0, 1).unwrap();
    assert_eq!(stats.f_best, opt);
    assert!(stats.f_avg <= stats.f_best as f64);
    assert!(stats.per_run.iter().all(|r| r.feasible));
}

#[test]
fn run_never_below_greedy() {
    for seed in 0..5 {
        let inst = generate_instance(60, 55, 0.10, 0.85, seed).unwrap();
        let greedy = greedy_initial_solution(&inst, GreedyScan::Continue).profit();
        let params = SearchParams {
            max_outer_iterations: Some(3),
            ..SearchParams::default().with_seed(seed)
        };
        let res = run(&inst, &params).unwrap();
        assert!(res.best_profit >= greedy);
        assert!(res.best.is_feasible(&inst));
        assert_eq!(res.trace.last().map(|p| p.profit), Some(res.best_profit));
    }
}

#[test]
fn csv_table_reparses_to_stats() {
    let inst = generate_instance(10, 10, 0.2, 0.75, 1).unwrap();
    let params = SearchParams {
        max_outer_iterations: Some(2),
        ..SearchParams::default()
    };
    let stats = bench(&inst, &params, 4, 3, 1).unwrap();
    let text = format_table(&[("x".to_string(), stats.clone())], TableFormat::Csv).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let row = reader.records().next().unwrap().unwrap();
    assert_eq!(&row[0], "x");
    assert_eq!(row[1].parse::<u64>().unwrap(), stats.f_best);
    assert!((row[2].parse::<f64>().unwrap() - stats.f_avg).abs() <= 0.005);
    assert!((row[3].parse::<f64>().unwrap() - stats.std).abs() <= 0.005);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn escape_output_is_feasible_and_maximal(seed: u64, eta in 0.05f64..=1.0) {
        let inst = generate_instance(25, 20, 0.15, 0.6, seed).unwrap();
        let best = greedy_initial_solution(&inst, GreedyScan::Continue);
        let freq = FrequencyVector::new(inst.num_items());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let out = escape(&best, &inst, eta, &freq, &mut rng);
        prop_assert!(out.is_feasible(&inst));
        prop_assert!(out.is_consistent(&inst));
        for i in out.unselected_items() {
            prop_assert!(out.weight() + out.add_delta(&inst, i) > inst.capacity());
        }
    }
}
