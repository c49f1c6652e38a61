use ggmnet_web::{graph_view, reconstruction, roc_view};

#[test]
fn graph_view_is_consistent() {
    let g = graph_view("ba", 30, 2).unwrap();
    assert_eq!(g.positions.len(), 30);
    assert_eq!(g.edges.len(), 2 * 28);
    assert!(g.positions.iter().all(|q| q.iter().all(|v| (0.0..=1.0).contains(v))));
    assert_eq!(g.degrees.iter().sum::<usize>(), 2 * g.edges.len());
    assert_eq!(serde_json::to_string(&g).unwrap(), serde_json::to_string(&graph_view("ba", 30, 2).unwrap()).unwrap());
    assert!(graph_view("xx", 30, 2).is_err());
    assert!(graph_view("er", 1000, 2).is_err());
}

#[test]
fn reconstruction_matches_the_drawn_graph() {
    let r = reconstruction("ws", 25, 200, 3, "glasso", 0.2).unwrap();
    assert_eq!(r.graph.edges.len(), 25);
    let tp = r.edges.iter().filter(|e| e.true_edge).count();
    assert_eq!(tp + r.missed.len(), r.graph.edges.len());
    assert!((r.sensitivity - tp as f64 / 25.0).abs() < 1e-12);
}

#[test]
fn roc_view_has_one_curve_per_method() {
    let v = roc_view("er", 20, 15, 1, "lpc,ggmridge").unwrap();
    assert_eq!(v.curves.len(), 2);
    for c in &v.curves {
        assert_eq!(c.points.first(), Some(&[0.0, 0.0]));
        assert_eq!(c.points.last(), Some(&[1.0, 1.0]));
        assert!((0.0..=1.0).contains(&c.auc));
    }
    let json = serde_json::to_value(&v).unwrap();
    assert_eq!(json["curves"][0]["method"], "LPC");
}
