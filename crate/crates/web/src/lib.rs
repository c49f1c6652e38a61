//! WebAssembly bindings behind `www/index.html`.
//!
//! Every exported function takes plain numbers and strings and returns a
//! JSON document; the native functions of the same name return the typed
//! values for tests.

use ggmnet::estimators::Method;
use ggmnet::eval::{self, auc, confusion, decision_path, roc_sweep, BenchmarkCell, SweepGrids, SweepSettings};
use ggmnet::graphgen::{AdjacencyMatrix, GraphModel, GraphSpec};
use serde::Serialize;
use wasm_bindgen::prelude::*;

mod layout;

/// Upper bound on `p`, keeping every call interactive.
pub const MAX_NODES: usize = 120;

#[derive(Debug, Serialize)]
pub struct GraphView {
    pub model: String,
    pub p: usize,
    pub positions: Vec<[f64; 2]>,
    pub edges: Vec<[usize; 2]>,
    pub degrees: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct EstimatedEdge {
    pub i: usize,
    pub j: usize,
    pub statistic: f64,
    pub true_edge: bool,
}

#[derive(Debug, Serialize)]
pub struct Reconstruction {
    pub graph: GraphView,
    pub method: String,
    pub param: f64,
    pub edges: Vec<EstimatedEdge>,
    pub missed: Vec<[usize; 2]>,
    pub sensitivity: f64,
    pub specificity: f64,
}

#[derive(Debug, Serialize)]
pub struct CurveView {
    pub method: String,
    pub auc: f64,
    /// `(1 − specificity, sensitivity)` including the anchors.
    pub points: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize)]
pub struct RocView {
    pub p: usize,
    pub n: usize,
    pub curves: Vec<CurveView>,
}

fn spec_for(model: &str) -> Result<GraphSpec, String> {
    let m: GraphModel = model.parse().map_err(|e: ggmnet::Error| e.to_string())?;
    GraphSpec::default_for(m).ok_or_else(|| format!("no generator for '{model}'"))
}

fn check_size(p: usize, n: usize) -> Result<(), String> {
    if !(4..=MAX_NODES).contains(&p) {
        return Err(format!("p must lie in 4..={MAX_NODES}"));
    }
    if !(5..=2000).contains(&n) {
        return Err("n must lie in 5..=2000".into());
    }
    Ok(())
}

fn view(adj: &AdjacencyMatrix, seed: u64) -> GraphView {
    GraphView {
        model: adj.model().display_name().into(),
        p: adj.p(),
        positions: layout::spring_layout(adj, seed),
        edges: adj.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        degrees: adj.degrees(),
    }
}

pub fn graph_view(model: &str, p: usize, seed: u64) -> Result<GraphView, String> {
    check_size(p, 5)?;
    let adj = spec_for(model)?.generate(p, seed).map_err(|e| e.to_string())?;
    Ok(view(&adj, seed))
}

fn parse_method(method: &str) -> Result<Method, String> {
    method.parse().map_err(|e: ggmnet::Error| e.to_string())
}

/// Simulates data from the graph drawn by `graph_view` with the same
/// arguments and reconstructs it at one parameter value.
pub fn reconstruction(model: &str, p: usize, n: usize, seed: u64, method: &str, param: f64) -> Result<Reconstruction, String> {
    check_size(p, n)?;
    let method = parse_method(method)?;
    let cell = BenchmarkCell { graph: spec_for(model)?, p, n };
    let (truth, data) = eval::simulate(&cell, seed).map_err(|e| e.to_string())?;
    let settings = SweepSettings { null_reps: 10, ..SweepSettings::simulation() };
    let set = decision_path(method, &[param], &data, &settings, seed)
        .map_err(|e| e.to_string())?
        .pop()
        .flatten()
        .ok_or_else(|| format!("{} produced no estimate at {param}", method.display_name()))?;
    let counts = confusion(&set, &truth).map_err(|e| e.to_string())?;
    let edges = set
        .decisions()
        .iter()
        .filter(|d| d.decided)
        .map(|d| EstimatedEdge { i: d.i, j: d.j, statistic: d.statistic, true_edge: truth.has_edge(d.i, d.j) })
        .collect();
    let missed = truth.edges().into_iter().filter(|&(i, j)| !set.is_decided(i, j)).map(|(i, j)| [i, j]).collect();
    Ok(Reconstruction {
        graph: view(&truth, seed),
        method: method.display_name().into(),
        param,
        edges,
        missed,
        sensitivity: counts.sensitivity(),
        specificity: counts.specificity(),
    })
}

/// One replication's ROC curve per method over the standard grids
/// (GGMridge with a 10-fold null to stay responsive).
pub fn roc_view(model: &str, p: usize, n: usize, seed: u64, methods: &str) -> Result<RocView, String> {
    check_size(p, n)?;
    let methods: Vec<Method> = methods.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse_method(s.trim())).collect::<Result<_, _>>()?;
    let cell = BenchmarkCell { graph: spec_for(model)?, p, n };
    let (truth, data) = eval::simulate(&cell, seed).map_err(|e| e.to_string())?;
    let settings = SweepSettings { null_reps: 10, ..SweepSettings::simulation() };
    let grids = SweepGrids::default();
    let curves = methods
        .into_iter()
        .map(|m| {
            let curve = roc_sweep(m, grids.get(m), &data, &truth, &settings, seed).map_err(|e| e.to_string())?;
            let area = auc(&curve).map_err(|e| e.to_string())?;
            let points = curve.with_anchors().fpr_tpr().into_iter().map(|(f, t)| [f, t]).collect();
            Ok(CurveView { method: m.display_name().into(), auc: area, points })
        })
        .collect::<Result<_, String>>()?;
    Ok(RocView { p, n, curves })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsValue> {
    let value = r.map_err(|e| JsValue::from_str(&e))?;
    serde_json::to_string(&value).map_err(|e| JsValue::from_str(&e.to_string()))
}

#[wasm_bindgen]
pub fn generate_graph(model: &str, p: usize, seed: u64) -> Result<String, JsValue> {
    to_js(graph_view(model, p, seed))
}

#[wasm_bindgen]
pub fn reconstruct(model: &str, p: usize, n: usize, seed: u64, method: &str, param: f64) -> Result<String, JsValue> {
    to_js(reconstruction(model, p, n, seed, method, param))
}

#[wasm_bindgen]
pub fn simulate_roc(model: &str, p: usize, n: usize, seed: u64, methods: &str) -> Result<String, JsValue> {
    to_js(roc_view(model, p, n, seed, methods))
}
