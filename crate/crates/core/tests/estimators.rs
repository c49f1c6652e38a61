mod common;

use ggmnet::estimators::glasso::{glasso_fit_from, kkt_residual, objective};
use ggmnet::estimators::lpc::neighborhood_cap;
use ggmnet::estimators::{
    glasso_edges, glasso_fit, lpc_reconstruct, GlassoConfig, LpcConfig, LpcEngine, RidgeConfig, RidgeScores,
};
use ggmnet::graphgen::{erdos_renyi, AdjacencyMatrix};
use ggmnet::numerics::{empirical_covariance, pearson_matrix, scale_matrix, DataMatrix, SymmetricMatrix};
use ggmnet::synth::{sample_gaussian, synthesize};

fn simulated(p: usize, n: usize, seed: u64) -> (AdjacencyMatrix, DataMatrix) {
    let adj = erdos_renyi(p, 0.1, seed).unwrap();
    let draw = synthesize(&adj, seed).unwrap();
    (adj, sample_gaussian(&draw.sigma, n, seed).unwrap())
}

fn max_off_diagonal(s: &SymmetricMatrix) -> f64 {
    s.max_abs_off_diagonal()
}

#[test]
fn local_partial_correlation_matches_residual_regression() {
    let (_, x) = simulated(12, 40, 3);
    let engine = LpcEngine::new(&x).unwrap();
    for (i, j) in [(0, 1), (2, 7), (4, 11), (5, 6)] {
        let z = engine.neighborhood(i, j, 0.2);
        assert!(z.len() <= neighborhood_cap(x.n()));
        let (rho, used) = engine.local_partial_correlation(i, j, &z).unwrap();
        assert_eq!(used, z.len());
        let mut cols = vec![i, j];
        cols.extend(&z);
        let sub = x.select_columns(&cols).unwrap();
        let oracle = common::sample_residual_partial_correlation(&sub, 0, 1);
        assert!((rho - oracle).abs() < 1e-9, "({i},{j}) {rho} vs {oracle}");
    }
}

#[test]
fn empty_neighborhood_gives_pearson_correlation() {
    let (_, x) = simulated(8, 30, 5);
    let engine = LpcEngine::new(&x).unwrap();
    let r = pearson_matrix(&x).unwrap();
    for (i, j) in [(0, 1), (3, 6)] {
        let (rho, used) = engine.local_partial_correlation(i, j, &[]).unwrap();
        assert_eq!(used, 0);
        assert!((rho - r.get(i, j)).abs() < 1e-12);
    }
}

#[test]
fn neighborhood_is_ranked_and_capped() {
    let (_, x) = simulated(30, 10, 9);
    let engine = LpcEngine::new(&x).unwrap();
    let z = engine.neighborhood(0, 1, 0.999);
    assert_eq!(z.len(), neighborhood_cap(10));
    assert!(!z.contains(&0) && !z.contains(&1));
    let r = engine.correlation();
    let score = |k: usize| r.get(0, k).abs().max(r.get(1, k).abs());
    assert!(z.windows(2).all(|w| score(w[0]) >= score(w[1])));
}

fn relabel(x: &DataMatrix, perm: &[usize]) -> DataMatrix {
    x.select_columns(perm).unwrap()
}

#[test]
fn lpc_decisions_follow_relabeling() {
    let (_, x) = simulated(15, 30, 11);
    let perm: Vec<usize> = (0..15).map(|k| (k * 7) % 15).collect();
    let cfg = LpcConfig::default();
    let a = lpc_reconstruct(&x, &cfg).unwrap();
    let b = lpc_reconstruct(&relabel(&x, &perm), &cfg).unwrap();
    for u in 0..15 {
        for v in (u + 1)..15 {
            let (da, db) = (a.get(perm[u].min(perm[v]), perm[u].max(perm[v])), b.get(u, v));
            assert_eq!(da.decided, db.decided);
            assert!((da.statistic - db.statistic).abs() < 1e-10);
        }
    }
}

#[test]
fn ridge_decisions_follow_relabeling() {
    let (_, x) = simulated(12, 10, 13);
    let perm: Vec<usize> = (0..12).rev().collect();
    let cfg = RidgeConfig { null_reps: 5, ..Default::default() };
    let a = RidgeScores::compute(&x, &cfg, 4).unwrap();
    let keys: Vec<u64> = perm.iter().map(|&k| k as u64).collect();
    let b = RidgeScores::compute_with_keys(&relabel(&x, &perm), &cfg, 4, &keys).unwrap();
    let (da, db) = (a.decide(0.05), b.decide(0.05));
    for u in 0..12 {
        for v in (u + 1)..12 {
            let ea = da.get(perm[u].min(perm[v]), perm[u].max(perm[v]));
            let eb = db.get(u, v);
            assert!((ea.statistic - eb.statistic).abs() < 1e-10);
            assert!((ea.p_value.unwrap() - eb.p_value.unwrap()).abs() < 1e-12);
        }
    }
}

#[test]
fn ridge_sweep_is_nested() {
    let (_, x) = simulated(20, 15, 17);
    let scores = RidgeScores::compute(&x, &RidgeConfig { null_reps: 4, ..Default::default() }, 1).unwrap();
    assert_eq!(scores.pool_size, 4 * 190);
    let mut prev = scores.decide(1e-4);
    for alpha in [0.01, 0.05, 0.2, 0.6, 1.0] {
        let next = scores.decide(alpha);
        for (a, b) in prev.decisions().iter().zip(next.decisions()) {
            assert!(!a.decided || b.decided);
        }
        prev = next;
    }
}

#[test]
fn lpc_sweep_is_nested_for_fixed_screening() {
    let (_, x) = simulated(20, 25, 19);
    let mut prev = lpc_reconstruct(&x, &LpcConfig { alpha: 0.1, alpha_lpc: 1e-4 }).unwrap();
    for alpha_lpc in [0.01, 0.05, 0.3, 0.9] {
        let next = lpc_reconstruct(&x, &LpcConfig { alpha: 0.1, alpha_lpc }).unwrap();
        for (a, b) in prev.decisions().iter().zip(next.decisions()) {
            assert!(!a.decided || b.decided);
        }
        prev = next;
    }
}

fn random_problem(k: u64) -> (SymmetricMatrix, f64) {
    let p = 5 + (k % 26) as usize;
    let n = p + 5 + (k % 7) as usize * 3;
    let (_, x) = simulated(p, n, 100 + k);
    let s = empirical_covariance(&x, true);
    let s = if k % 2 == 0 { scale_matrix(&s).unwrap() } else { s };
    let lambda = max_off_diagonal(&s) * (0.05 + 0.9 * ((k * 37 % 100) as f64 / 100.0));
    (s, lambda)
}

#[test]
fn glasso_satisfies_optimality_conditions() {
    for k in 0..50 {
        let (s, lambda) = random_problem(k);
        let cfg = GlassoConfig { lambda, tol: 1e-7, max_outer: 500, record_trace: false };
        let fit = glasso_fit(&s, &cfg).unwrap();
        let kkt = kkt_residual(&s, &fit);
        assert!(kkt <= 1e-3, "problem {k}: p={} λ={lambda} KKT {kkt}", s.dim());
    }
}

#[test]
fn glasso_objective_trace_is_monotone() {
    for k in 0..20 {
        let (s, lambda) = random_problem(k);
        let cfg = GlassoConfig { lambda, tol: 1e-7, max_outer: 500, record_trace: true };
        let fit = glasso_fit(&s, &cfg).unwrap();
        let t = &fit.objective_trace;
        assert!(!t.is_empty());
        for w in t.windows(2) {
            assert!(w[1] <= w[0] + 1e-9 * w[0].abs().max(1.0), "problem {k}: {} then {}", w[0], w[1]);
        }
        let final_obj = objective(&s, &fit.precision, lambda).unwrap();
        assert!((final_obj - t[t.len() - 1]).abs() < 1e-6 * final_obj.abs().max(1.0));
    }
}

#[test]
fn glasso_saturates_at_the_largest_covariance() {
    for k in 0..10 {
        let (s, _) = random_problem(k);
        let lambda = max_off_diagonal(&s);
        let fit = glasso_fit(&s, &GlassoConfig::with_lambda(lambda)).unwrap();
        assert_eq!(glasso_edges(&fit.precision, 0.0).edge_count(), 0, "problem {k}");
        for i in 0..s.dim() {
            assert!((fit.precision.get(i, i) - 1.0 / (s.get(i, i) + lambda)).abs() < 1e-12);
        }
    }
}

#[test]
fn glasso_warm_start_reaches_the_same_solution() {
    let (s, lambda) = random_problem(8);
    let cfg = GlassoConfig { lambda, tol: 1e-8, max_outer: 500, record_trace: false };
    let cold = glasso_fit(&s, &cfg).unwrap();
    let warm_from = glasso_fit(&s, &GlassoConfig { lambda: lambda * 1.5, ..cfg }).unwrap();
    let warm = glasso_fit_from(&s, &cfg, Some(&warm_from.precision)).unwrap();
    assert!(cold.precision.max_abs_diff(&warm.precision) < 1e-4);
    assert_eq!(
        glasso_edges(&cold.precision, 1e-6).decided_edges(),
        glasso_edges(&warm.precision, 1e-6).decided_edges()
    );
}

#[test]
fn glasso_edges_shrink_with_penalty() {
    let (_, x) = simulated(25, 40, 23);
    let s = scale_matrix(&empirical_covariance(&x, true)).unwrap();
    let counts: Vec<usize> = [0.05, 0.15, 0.3, 0.6]
        .iter()
        .map(|&l| glasso_edges(&glasso_fit(&s, &GlassoConfig::with_lambda(l)).unwrap().precision, 1e-12).edge_count())
        .collect();
    assert!(counts.windows(2).all(|w| w[0] >= w[1]), "{counts:?}");
}
