use ggmnet::estimators::{all_pairs, EdgeDecision, EdgeDecisionSet, Method};
use ggmnet::eval::{
    auc, average_curves, benchmark, compare_networks, confusion, roc_sweep, select_threshold_by_edge_ratio,
    BenchmarkCell, BenchmarkSpec, RocCurve, RocPoint, SweepGrids, SweepSettings,
};
use ggmnet::graphgen::{AdjacencyMatrix, GraphModel, GraphSpec};
use ggmnet::rng;
use proptest::prelude::*;
use rand::Rng as _;

fn set_from(p: usize, edges: &[(usize, usize)], method: Method) -> EdgeDecisionSet {
    let decisions = all_pairs(p)
        .into_iter()
        .map(|(i, j)| EdgeDecision { i, j, statistic: 0.0, p_value: None, decided: edges.contains(&(i, j)), undecidable: false })
        .collect();
    EdgeDecisionSet::new(p, method, decisions).unwrap()
}

fn point(sens: f64, spec: f64) -> RocPoint {
    RocPoint { param: 0.0, sensitivity: sens, specificity: spec, count: 1 }
}

proptest! {
    #[test]
    fn auc_ignores_order_and_duplicates(pts in proptest::collection::vec((0.0f64..=1.0, 0.0f64..=1.0), 1..12), rot in 0usize..12) {
        let points: Vec<RocPoint> = pts.iter().map(|&(a, b)| point(a, b)).collect();
        let base = auc(&RocCurve::new(Method::Lpc, points.clone())).unwrap();
        let mut shuffled = points.clone();
        let k = rot % shuffled.len();
        shuffled.rotate_left(k);
        shuffled.extend(points.iter().take(3).copied());
        let other = auc(&RocCurve::new(Method::Lpc, shuffled)).unwrap();
        prop_assert!((base - other).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&base));
    }

    #[test]
    fn confusion_invariant_under_relabeling(p in 3usize..15, seed in any::<u64>()) {
        let mut g = rng::seeded(seed, 0);
        let truth_edges: Vec<(usize, usize)> = all_pairs(p).into_iter().filter(|_| g.random::<f64>() < 0.3).collect();
        let est_edges: Vec<(usize, usize)> = all_pairs(p).into_iter().filter(|_| g.random::<f64>() < 0.3).collect();
        let truth = AdjacencyMatrix::from_edges(p, &truth_edges, GraphModel::Custom).unwrap();
        let est = set_from(p, &est_edges, Method::Lpc);
        let perm: Vec<usize> = (0..p).rev().collect();
        let relabel = |e: &[(usize, usize)]| -> Vec<(usize, usize)> {
            e.iter().map(|&(i, j)| (perm[i].min(perm[j]), perm[i].max(perm[j]))).collect()
        };
        let truth2 = AdjacencyMatrix::from_edges(p, &relabel(&truth_edges), GraphModel::Custom).unwrap();
        let est2 = set_from(p, &relabel(&est_edges), Method::Lpc);
        prop_assert_eq!(confusion(&est, &truth).unwrap(), confusion(&est2, &truth2).unwrap());
    }
}

#[test]
fn random_decisions_average_half_area() {
    let p = 60;
    let mut areas = Vec::new();
    for seed in 0..20u64 {
        let mut g = rng::seeded(seed, 1);
        let truth_edges: Vec<(usize, usize)> = all_pairs(p).into_iter().filter(|_| g.random::<f64>() < 0.05).collect();
        let truth = AdjacencyMatrix::from_edges(p, &truth_edges, GraphModel::Custom).unwrap();
        let scores: Vec<f64> = (0..p * (p - 1) / 2).map(|_| g.random()).collect();
        let points = (1..20)
            .map(|t| {
                let level = t as f64 / 20.0;
                let edges: Vec<(usize, usize)> =
                    all_pairs(p).into_iter().zip(&scores).filter(|(_, &s)| s < level).map(|(e, _)| e).collect();
                RocPoint::valid(level, &confusion(&set_from(p, &edges, Method::GgmRidge), &truth).unwrap())
            })
            .collect();
        areas.push(auc(&RocCurve::new(Method::GgmRidge, points)).unwrap());
    }
    let mean = areas.iter().sum::<f64>() / areas.len() as f64;
    assert!((mean - 0.5).abs() < 0.05, "{mean}");
}

#[test]
fn averaging_matches_pointwise_means() {
    let a = RocCurve::new(Method::Glasso, vec![RocPoint { param: 0.1, sensitivity: 0.2, specificity: 0.9, count: 1 }]);
    let b = RocCurve::new(Method::Glasso, vec![RocPoint { param: 0.1, sensitivity: 0.4, specificity: 0.7, count: 1 }]);
    let m = average_curves(&[a.clone(), b]).unwrap();
    assert!((m.points[0].sensitivity - 0.3).abs() < 1e-15);
    assert!((m.points[0].specificity - 0.8).abs() < 1e-15);
    assert_eq!(m.points[0].count, 2);
    assert_eq!(average_curves(&[a.clone(), a.clone()]).unwrap().points[0].sensitivity, 0.2);
}

#[test]
fn sweeps_move_monotonically_along_nested_grids() {
    let cell = BenchmarkCell { graph: GraphSpec::default_for(GraphModel::ErdosRenyi).unwrap(), p: 30, n: 20 };
    let (truth, data) = ggmnet::eval::simulate(&cell, 3).unwrap();
    let settings = SweepSettings { lpc_alpha: Some(0.1), null_reps: 5, ..SweepSettings::simulation() };
    let grids = SweepGrids::default();
    for method in [Method::Lpc, Method::GgmRidge] {
        let curve = roc_sweep(method, grids.get(method), &data, &truth, &settings, 3).unwrap();
        for w in curve.points.windows(2) {
            assert!(w[1].sensitivity >= w[0].sensitivity, "{method}");
            assert!(w[1].specificity <= w[0].specificity, "{method}");
        }
    }
}

#[test]
fn venn_cells_for_constructed_sets() {
    let a = set_from(6, &[(0, 1), (1, 2), (2, 3)], Method::Lpc);
    let b = set_from(6, &[(0, 1), (1, 2), (4, 5)], Method::Glasso);
    let c = set_from(6, &[(0, 1), (3, 4)], Method::GgmRidge);
    let cmp = compare_networks(&[a.clone(), b, c]).unwrap();
    assert_eq!(cmp.subset(&[0, 1, 2]).unwrap().shared_edges, 1);
    let ab = cmp.subset(&[0, 1]).unwrap();
    assert_eq!((ab.shared_edges, ab.exclusive_edges), (2, 1));
    assert_eq!(cmp.subset(&[0]).unwrap().exclusive_edges, 1);
    assert_eq!(cmp.subset(&[2]).unwrap().exclusive_edges, 1);
    let total: usize = cmp.subsets.iter().map(|s| s.exclusive_edges).sum();
    assert_eq!(total, 5);

    let same = compare_networks(&[a.clone(), a.clone()]).unwrap();
    assert_eq!(same.subset(&[0, 1]).unwrap().shared_edges, a.edge_count());
    assert_eq!(same.subset(&[0, 1]).unwrap().shared_nodes, a.node_count());
}

#[test]
fn selection_prefers_nearest_ratio() {
    // star on k+1 nodes: k edges over k+1 nodes; clique on 7 nodes: 21/7 = 3.
    let star = |k: usize| set_from(10, &(1..=k).map(|j| (0, j)).collect::<Vec<_>>(), Method::Lpc);
    let clique: Vec<(usize, usize)> = all_pairs(7);
    let sweep = vec![(0.1, star(1)), (0.2, set_from(10, &clique, Method::Lpc)), (0.3, star(9))];
    let (param, chosen) = select_threshold_by_edge_ratio(&sweep, 3.0).unwrap();
    assert_eq!(param, 0.2);
    assert_eq!(chosen.edge_count(), 21);
    let empty = vec![(0.5, set_from(10, &[], Method::Lpc)), (0.6, star(2))];
    assert_eq!(select_threshold_by_edge_ratio(&empty, 3.0).unwrap().0, 0.6);
    assert!(select_threshold_by_edge_ratio(&[], 3.0).is_err());
}

#[test]
fn benchmark_is_reproducible_and_thread_independent() {
    let mut spec = BenchmarkSpec::standard(15, 10, 3, 42);
    spec.settings.null_reps = 3;
    spec.grids.lambda_l.truncate(40);
    spec.grids.alpha_r.truncate(100);
    let one = ggmnet::par::with_threads(Some(1), || benchmark(&spec).unwrap());
    let two = ggmnet::par::with_threads(Some(3), || benchmark(&spec).unwrap());
    let a = ggmnet::io::benchmark_to_csv(&one).unwrap();
    assert_eq!(a, ggmnet::io::benchmark_to_csv(&two).unwrap());
    assert_eq!(one.rows.len(), 9);
    assert!(one.rows.iter().all(|r| r.failed == 0 && (0.0..=1.0).contains(&r.mean_auc)));
}
