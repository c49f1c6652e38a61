//! Scoring reconstructions against ground truth.
//!
//! ROC points are `(sensitivity, specificity)` pairs produced by sweeping
//! one parameter of an estimator over a grid on fixed data. Curves from
//! independent replications are averaged per grid index and summarised by
//! the trapezoidal area under the curve, anchored at `(0, 0)` and `(1, 1)`
//! in `(1 − specificity, sensitivity)` space.

use crate::error::{Error, Result};
use crate::estimators::glasso::{glasso_edges, glasso_fit_from, GlassoConfig, DEFAULT_ZERO_TOL};
use crate::estimators::lpc::{decide as lpc_decide, LpcConfig, LpcEngine};
use crate::estimators::{EdgeDecisionSet, Method, RidgeConfig, RidgeScores};
use crate::graphgen::{AdjacencyMatrix, GraphModel, GraphSpec};
use crate::numerics::{empirical_covariance, scale_matrix, DataMatrix};
use crate::{par, rng, synth};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionCounts {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    pub fn_: usize,
}

impl ConfusionCounts {
    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }

    /// `tp / (tp + fn)`, or 1 when the truth has no edges.
    pub fn sensitivity(&self) -> f64 {
        ratio_or_one(self.tp, self.tp + self.fn_)
    }

    /// `tn / (tn + fp)`, or 1 when the truth is complete.
    pub fn specificity(&self) -> f64 {
        ratio_or_one(self.tn, self.tn + self.fp)
    }
}

fn ratio_or_one(num: usize, den: usize) -> f64 {
    if den == 0 {
        1.0
    } else {
        num as f64 / den as f64
    }
}

/// Counts over all unordered pairs. Undecidable pairs count as negatives.
pub fn confusion(est: &EdgeDecisionSet, truth: &AdjacencyMatrix) -> Result<ConfusionCounts> {
    if est.p() != truth.p() {
        return Err(Error::DimensionMismatch { expected: truth.p(), found: est.p() });
    }
    let mut c = ConfusionCounts::default();
    for d in est.decisions() {
        match (d.decided, truth.has_edge(d.i, d.j)) {
            (true, true) => c.tp += 1,
            (true, false) => c.fp += 1,
            (false, false) => c.tn += 1,
            (false, true) => c.fn_ += 1,
        }
    }
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RocPoint {
    pub param: f64,
    /// NaN when no valid evaluation exists at this grid value.
    pub sensitivity: f64,
    pub specificity: f64,
    /// Number of curves that contributed to this point (1 for a single
    /// evaluation, 0 when invalid).
    pub count: usize,
}

impl RocPoint {
    pub fn valid(param: f64, c: &ConfusionCounts) -> Self {
        Self { param, sensitivity: c.sensitivity(), specificity: c.specificity(), count: 1 }
    }

    pub fn invalid(param: f64) -> Self {
        Self { param, sensitivity: f64::NAN, specificity: f64::NAN, count: 0 }
    }

    pub fn is_valid(&self) -> bool {
        self.count > 0 && self.sensitivity.is_finite() && self.specificity.is_finite()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RocCurve {
    pub method: Method,
    pub points: Vec<RocPoint>,
    /// Whether the `(0, 0)` and `(1, 1)` anchors have been appended.
    pub anchored: bool,
}

impl RocCurve {
    pub fn new(method: Method, points: Vec<RocPoint>) -> Self {
        Self { method, points, anchored: false }
    }

    pub fn params(&self) -> Vec<f64> {
        self.points.iter().map(|q| q.param).collect()
    }

    pub fn valid_points(&self) -> impl Iterator<Item = &RocPoint> {
        self.points.iter().filter(|q| q.is_valid())
    }

    /// Appends the two anchor points (parameter NaN). Idempotent.
    pub fn with_anchors(mut self) -> Self {
        if !self.anchored {
            self.points.push(RocPoint { param: f64::NAN, sensitivity: 0.0, specificity: 1.0, count: 1 });
            self.points.push(RocPoint { param: f64::NAN, sensitivity: 1.0, specificity: 0.0, count: 1 });
            self.anchored = true;
        }
        self
    }

    /// Valid points plus anchors as `(1 − specificity, sensitivity)`,
    /// sorted lexicographically.
    pub fn fpr_tpr(&self) -> Vec<(f64, f64)> {
        let mut pts: Vec<(f64, f64)> = self.valid_points().map(|q| (1.0 - q.specificity, q.sensitivity)).collect();
        pts.push((0.0, 0.0));
        pts.push((1.0, 1.0));
        pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        pts.dedup();
        pts
    }
}

/// Trapezoidal area under the anchored curve.
pub fn auc(curve: &RocCurve) -> Result<f64> {
    if curve.valid_points().next().is_none() {
        return Err(Error::EmptyCurve);
    }
    let pts = curve.fpr_tpr();
    let area: f64 = pts.windows(2).map(|w| (w[1].0 - w[0].0) * (w[0].1 + w[1].1) * 0.5).sum();
    Ok(area.clamp(0.0, 1.0))
}

/// Pointwise mean per grid index over the valid points of each curve.
pub fn average_curves(curves: &[RocCurve]) -> Result<RocCurve> {
    let first = curves.first().ok_or(Error::EmptyCurve)?;
    for c in &curves[1..] {
        let same_grid = c.points.len() == first.points.len()
            && c.points.iter().zip(&first.points).all(|(a, b)| a.param.to_bits() == b.param.to_bits());
        if c.method != first.method || !same_grid {
            return Err(Error::GridMismatch);
        }
    }
    let points = (0..first.points.len())
        .map(|k| {
            let (mut sens, mut spec, mut weight) = (0.0, 0.0, 0usize);
            for c in curves {
                let q = &c.points[k];
                if q.is_valid() {
                    sens += q.sensitivity * q.count as f64;
                    spec += q.specificity * q.count as f64;
                    weight += q.count;
                }
            }
            if weight == 0 {
                RocPoint::invalid(first.points[k].param)
            } else {
                let w = weight as f64;
                RocPoint { param: first.points[k].param, sensitivity: sens / w, specificity: spec / w, count: weight }
            }
        })
        .collect();
    Ok(RocCurve { method: first.method, points, anchored: first.anchored })
}

/// Parameters held fixed while one parameter is swept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSettings {
    /// Center columns before forming `S` (GLasso, GGMridge). LPC always
    /// works from Pearson correlations.
    pub center: bool,
    /// `None` ties the LPC screening level `α` to the swept `α_LPC`;
    /// `Some(α)` keeps it fixed.
    pub lpc_alpha: Option<f64>,
    /// Rescale `S` to unit diagonal before GLasso, so that `λ_L ≥ 1`
    /// always yields the empty graph.
    pub glasso_correlation: bool,
    /// Rescale the data so that `XᵀX / n` has unit diagonal before
    /// GGMridge.
    pub ridge_correlation: bool,
    pub lambda_r: f64,
    pub null_reps: usize,
    pub glasso_tol: f64,
    pub glasso_max_outer: usize,
    pub zero_tol: f64,
}

impl SweepSettings {
    /// Zero-mean simulated data: no centering, tied LPC levels.
    pub fn simulation() -> Self {
        Self {
            center: false,
            lpc_alpha: None,
            glasso_correlation: true,
            ridge_correlation: false,
            lambda_r: 1.0,
            null_reps: 20,
            glasso_tol: 1e-4,
            glasso_max_outer: 100,
            zero_tol: DEFAULT_ZERO_TOL,
        }
    }

    /// Observed data: centered, LPC screening fixed at `α = 0.1`.
    pub fn real_data() -> Self {
        Self { center: true, lpc_alpha: Some(0.1), ..Self::simulation() }
    }

    fn ridge_config(&self) -> RidgeConfig {
        RidgeConfig { lambda_r: self.lambda_r, alpha_r: 0.01, null_reps: self.null_reps, center: self.center }
    }
}

impl Default for SweepSettings {
    fn default() -> Self {
        Self::simulation()
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::TooSmall { what: "grid points", needed: 1, found: 0 });
    }
    if let Some(&bad) = grid.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter { name: "grid", value: bad, reason: "must be finite" });
    }
    let up = grid.windows(2).all(|w| w[0] <= w[1]);
    let down = grid.windows(2).all(|w| w[0] >= w[1]);
    if !(up || down) {
        return Err(Error::InvalidParameter { name: "grid", value: f64::NAN, reason: "must be monotone" });
    }
    Ok(())
}

/// Reconstructions at every grid value, sharing whatever work does not
/// depend on the swept parameter. `None` marks a failed grid point.
///
/// The swept parameter is `α_LPC` for LPC, `λ_L` for GLasso and `α_R`
/// for GGMridge.
pub fn decision_path(
    method: Method,
    grid: &[f64],
    data: &DataMatrix,
    settings: &SweepSettings,
    seed: u64,
) -> Result<Vec<Option<EdgeDecisionSet>>> {
    let mut out: Vec<Option<EdgeDecisionSet>> = vec![None; grid.len()];
    visit_decision_path(method, grid, data, settings, seed, |k, set| out[k] = set)?;
    Ok(out)
}

/// Same as [`decision_path`] but hands each grid point's result to `visit`
/// (with its grid index) instead of keeping them all, so long sweeps over
/// many variables run in the memory of one reconstruction. GLasso points
/// arrive from the largest penalty down; the others in grid order.
pub fn visit_decision_path(
    method: Method,
    grid: &[f64],
    data: &DataMatrix,
    settings: &SweepSettings,
    seed: u64,
    mut visit: impl FnMut(usize, Option<EdgeDecisionSet>),
) -> Result<()> {
    check_grid(grid)?;
    let p = data.p();
    let names = data.names().map(<[String]>::to_vec);
    let named = |set: EdgeDecisionSet| set.with_names(names.clone()).expect("names match p");
    match method {
        Method::Lpc => {
            let engine = LpcEngine::new(data)?;
            match settings.lpc_alpha {
                Some(alpha) => {
                    LpcConfig::new(alpha, 0.5)?;
                    let outcomes = engine.outcomes(alpha);
                    for (k, &g) in grid.iter().enumerate() {
                        visit(k, Some(named(lpc_decide(p, &outcomes, LpcConfig::tied(g).alpha_lpc))));
                    }
                }
                None => {
                    for (k, &g) in grid.iter().enumerate() {
                        let cfg = LpcConfig::tied(g);
                        visit(k, Some(named(lpc_decide(p, &engine.outcomes(cfg.alpha), cfg.alpha_lpc))));
                    }
                }
            }
        }
        Method::Glasso => {
            let mut s = empirical_covariance(data, settings.center);
            if settings.glasso_correlation {
                s = scale_matrix(&s)?;
            }
            // Visit penalties from strongest to weakest so each fit warm
            // starts from a sparser neighbour.
            let mut order: Vec<usize> = (0..grid.len()).collect();
            order.sort_by(|&a, &b| grid[b].total_cmp(&grid[a]));
            let mut warm = None;
            for k in order {
                let cfg = GlassoConfig {
                    lambda: grid[k],
                    tol: settings.glasso_tol,
                    max_outer: settings.glasso_max_outer,
                    record_trace: false,
                };
                match glasso_fit_from(&s, &cfg, warm.as_ref()) {
                    Ok(fit) => {
                        visit(k, Some(named(glasso_edges(&fit.precision, settings.zero_tol))));
                        warm = Some(fit.precision);
                    }
                    Err(_) => {
                        visit(k, None);
                        warm = None;
                    }
                }
            }
        }
        Method::GgmRidge => {
            // Permuting rows leaves column means and scales unchanged, so
            // preprocessing once is equivalent to preprocessing every null
            // data set.
            let mut input = if settings.center { data.centered() } else { data.clone() };
            if settings.ridge_correlation {
                input = unit_scale_columns(&input)?;
            }
            let cfg = RidgeConfig { center: false, ..settings.ridge_config() };
            let scores = RidgeScores::compute(&input, &cfg, seed)?;
            for (k, &g) in grid.iter().enumerate() {
                visit(k, Some(named(scores.decide(g))));
            }
        }
    }
    Ok(())
}

/// Divides each column by its root mean square so that `XᵀX / n` has unit
/// diagonal; no centering.
fn unit_scale_columns(x: &DataMatrix) -> Result<DataMatrix> {
    let (n, p) = (x.n(), x.p());
    let mut rms = vec![0.0; p];
    for r in 0..n {
        for (acc, v) in rms.iter_mut().zip(x.row(r)) {
            *acc += v * v;
        }
    }
    for (c, acc) in rms.iter_mut().enumerate() {
        *acc = (*acc / n as f64).sqrt();
        if !(*acc > 0.0) {
            return Err(Error::ZeroVariance(c));
        }
    }
    let values = x.values().chunks_exact(p).flat_map(|row| row.iter().zip(&rms).map(|(v, s)| v / s)).collect();
    let out = DataMatrix::new(n, p, values)?;
    match x.names() {
        Some(names) => out.with_names(names.to_vec()),
        None => Ok(out),
    }
}

pub fn roc_sweep(
    method: Method,
    grid: &[f64],
    data: &DataMatrix,
    truth: &AdjacencyMatrix,
    settings: &SweepSettings,
    seed: u64,
) -> Result<RocCurve> {
    if data.p() != truth.p() {
        return Err(Error::DimensionMismatch { expected: truth.p(), found: data.p() });
    }
    let path = decision_path(method, grid, data, settings, seed)?;
    let points = grid
        .iter()
        .zip(path)
        .map(|(&g, set)| match set {
            Some(set) => RocPoint::valid(g, &confusion(&set, truth).expect("dimensions checked")),
            None => RocPoint::invalid(g),
        })
        .collect();
    Ok(RocCurve::new(method, points))
}

/// Parameter grids for the three sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrids {
    pub lambda_l: Vec<f64>,
    pub alpha_lpc: Vec<f64>,
    pub alpha_r: Vec<f64>,
}

fn arithmetic(start: f64, step: f64, end: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut k = 0u32;
    loop {
        let v = start + step * f64::from(k);
        if v > end + 1e-12 {
            break;
        }
        out.push(v);
        k += 1;
    }
    out
}

impl Default for SweepGrids {
    /// `λ_L ∈ {0.001, 0.006, …}` up to 1; `α_LPC ∈ {1e-4, 0.0101, …}` up to
    /// 0.4 together with {0.6, 0.7, 0.8, 0.9, 1}; `α_R ∈ {0.0001, 0.0011, …}`
    /// up to 1.
    fn default() -> Self {
        let mut alpha_lpc = arithmetic(1e-4, 0.01, 0.4);
        alpha_lpc.extend([0.6, 0.7, 0.8, 0.9, 1.0]);
        Self { lambda_l: arithmetic(0.001, 0.005, 1.0), alpha_lpc, alpha_r: arithmetic(1e-4, 0.001, 1.0) }
    }
}

impl SweepGrids {
    pub fn get(&self, method: Method) -> &[f64] {
        match method {
            Method::Glasso => &self.lambda_l,
            Method::Lpc => &self.alpha_lpc,
            Method::GgmRidge => &self.alpha_r,
        }
    }

    pub fn get_mut(&mut self, method: Method) -> &mut Vec<f64> {
        match method {
            Method::Glasso => &mut self.lambda_l,
            Method::Lpc => &mut self.alpha_lpc,
            Method::GgmRidge => &mut self.alpha_r,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchmarkCell {
    pub graph: GraphSpec,
    pub p: usize,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkSpec {
    pub cells: Vec<BenchmarkCell>,
    pub methods: Vec<Method>,
    pub grids: SweepGrids,
    pub settings: SweepSettings,
    pub replications: usize,
    pub seed: u64,
}

impl BenchmarkSpec {
    /// All three graph models with default generator parameters at one
    /// `(p, n)`, all three methods, default grids.
    pub fn standard(p: usize, n: usize, replications: usize, seed: u64) -> Self {
        let cells = [GraphModel::ErdosRenyi, GraphModel::WattsStrogatz, GraphModel::BarabasiAlbert]
            .into_iter()
            .map(|m| BenchmarkCell { graph: GraphSpec::default_for(m).expect("built-in model"), p, n })
            .collect();
        Self {
            cells,
            methods: Method::ALL.to_vec(),
            grids: SweepGrids::default(),
            settings: SweepSettings::simulation(),
            replications,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRow {
    pub graph: GraphModel,
    pub p: usize,
    pub n: usize,
    pub method: Method,
    pub mean_auc: f64,
    /// Sample standard deviation; 0 by convention for a single replication.
    pub sd_auc: f64,
    /// Successful replications.
    pub replications: usize,
    pub failed: usize,
}

impl BenchmarkRow {
    /// `false` when fewer than two replications back the sd.
    pub fn sd_defined(&self) -> bool {
        self.replications >= 2
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellCurve {
    pub graph: GraphModel,
    pub p: usize,
    pub n: usize,
    pub curve: RocCurve,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkReport {
    pub seed: u64,
    pub grids: SweepGrids,
    pub rows: Vec<BenchmarkRow>,
    /// Replication-averaged curves, one per row, in row order.
    pub curves: Vec<CellCurve>,
}

impl BenchmarkReport {
    pub fn row(&self, graph: GraphModel, p: usize, n: usize, method: Method) -> Option<&BenchmarkRow> {
        self.rows.iter().find(|r| r.graph == graph && r.p == p && r.n == n && r.method == method)
    }
}

fn mean_sd(values: &[f64]) -> (f64, f64) {
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, (ss / (k - 1.0)).sqrt())
}

/// Seed used for replication `rep` of cell `cell`.
pub fn replication_seed(seed: u64, cell: usize, rep: usize) -> u64 {
    rng::derive_seed(seed, &[cell as u64, rep as u64])
}

/// One simulated data set: graph, covariance and samples share one seed on
/// separate streams.
pub fn simulate(cell: &BenchmarkCell, seed: u64) -> Result<(AdjacencyMatrix, DataMatrix)> {
    let adj = cell.graph.generate(cell.p, seed)?;
    let draw = synth::synthesize(&adj, seed)?;
    let data = synth::sample_gaussian(&draw.sigma, cell.n, seed)?;
    Ok((adj, data))
}

type Replicate = Vec<Option<(f64, RocCurve)>>;

fn run_replication(spec: &BenchmarkSpec, cell: &BenchmarkCell, seed: u64) -> Replicate {
    let Ok((truth, data)) = simulate(cell, seed) else {
        return vec![None; spec.methods.len()];
    };
    spec.methods
        .iter()
        .map(|&m| {
            let curve = roc_sweep(m, spec.grids.get(m), &data, &truth, &spec.settings, seed).ok()?;
            let area = auc(&curve).ok()?;
            Some((area, curve))
        })
        .collect()
}

/// Runs every (cell, replication) pair in parallel; one data set per
/// replication is shared by all methods. Output is independent of
/// scheduling.
pub fn benchmark(spec: &BenchmarkSpec) -> Result<BenchmarkReport> {
    if spec.replications == 0 {
        return Err(Error::TooSmall { what: "replications", needed: 1, found: 0 });
    }
    if spec.methods.is_empty() || spec.cells.is_empty() {
        return Err(Error::TooSmall { what: "cells and methods", needed: 1, found: 0 });
    }
    for &m in &spec.methods {
        check_grid(spec.grids.get(m))?;
    }
    let reps = spec.replications;
    let results: Vec<Replicate> = par::map_indices(spec.cells.len() * reps, |k| {
        let (c, r) = (k / reps, k % reps);
        run_replication(spec, &spec.cells[c], replication_seed(spec.seed, c, r))
    });

    let mut rows = Vec::new();
    let mut curves = Vec::new();
    for (c, cell) in spec.cells.iter().enumerate() {
        let block = &results[c * reps..(c + 1) * reps];
        for (mi, &method) in spec.methods.iter().enumerate() {
            let ok: Vec<&(f64, RocCurve)> = block.iter().filter_map(|rep| rep[mi].as_ref()).collect();
            let failed = reps - ok.len();
            let (graph, p, n) = (cell.graph.model(), cell.p, cell.n);
            if ok.is_empty() {
                rows.push(BenchmarkRow { graph, p, n, method, mean_auc: f64::NAN, sd_auc: f64::NAN, replications: 0, failed });
                continue;
            }
            let areas: Vec<f64> = ok.iter().map(|(a, _)| *a).collect();
            let (mean_auc, sd_auc) = mean_sd(&areas);
            rows.push(BenchmarkRow { graph, p, n, method, mean_auc, sd_auc, replications: ok.len(), failed });
            let per_rep: Vec<RocCurve> = ok.iter().map(|(_, c)| c.clone()).collect();
            curves.push(CellCurve { graph, p, n, curve: average_curves(&per_rep)? });
        }
    }
    Ok(BenchmarkReport { seed: spec.seed, grids: spec.grids.clone(), rows, curves })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkSummary {
    pub label: String,
    pub nodes: usize,
    pub edges: usize,
    pub max_degree: usize,
}

/// Counts for one subset of the compared networks, given as indices into
/// the input list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetCounts {
    pub members: Vec<usize>,
    /// Present in every member.
    pub shared_nodes: usize,
    pub shared_edges: usize,
    /// Present in every member and in no other network (a Venn cell).
    pub exclusive_nodes: usize,
    pub exclusive_edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkComparison {
    pub networks: Vec<NetworkSummary>,
    /// Every non-empty subset, ordered by size and then lexicographically.
    pub subsets: Vec<SubsetCounts>,
}

impl NetworkComparison {
    pub fn subset(&self, members: &[usize]) -> Option<&SubsetCounts> {
        self.subsets.iter().find(|s| s.members == members)
    }
}

/// Compares networks labelled by their method tags.
pub fn compare_networks(sets: &[EdgeDecisionSet]) -> Result<NetworkComparison> {
    let labels: Vec<String> = sets.iter().map(|s| s.method().tag().to_string()).collect();
    compare_labeled(&labels, sets)
}

pub const MAX_COMPARED: usize = 16;

pub fn compare_labeled(labels: &[String], sets: &[EdgeDecisionSet]) -> Result<NetworkComparison> {
    let first = sets.first().ok_or(Error::TooSmall { what: "networks", needed: 1, found: 0 })?;
    if labels.len() != sets.len() {
        return Err(Error::DimensionMismatch { expected: sets.len(), found: labels.len() });
    }
    if sets.len() > MAX_COMPARED {
        return Err(Error::InvalidParameter {
            name: "networks",
            value: sets.len() as f64,
            reason: "at most 16 networks can be compared",
        });
    }
    for s in &sets[1..] {
        if s.p() != first.p() {
            return Err(Error::DimensionMismatch { expected: first.p(), found: s.p() });
        }
        if let (Some(a), Some(b)) = (first.names(), s.names()) {
            if a != b {
                return Err(Error::Format("networks use different variable names".into()));
            }
        }
    }
    let p = first.p();
    let k = sets.len();
    let networks = labels
        .iter()
        .zip(sets)
        .map(|(l, s)| NetworkSummary { label: l.clone(), nodes: s.node_count(), edges: s.edge_count(), max_degree: s.max_degree() })
        .collect();

    // Membership bitmask per node and per pair.
    let mut node_mask = vec![0u32; p];
    for (b, s) in sets.iter().enumerate() {
        for (v, d) in s.degrees().into_iter().enumerate() {
            if d > 0 {
                node_mask[v] |= 1 << b;
            }
        }
    }
    let pair_count = first.decisions().len();
    let mut edge_mask = vec![0u32; pair_count];
    for (b, s) in sets.iter().enumerate() {
        for (e, d) in s.decisions().iter().enumerate() {
            if d.decided {
                edge_mask[e] |= 1 << b;
            }
        }
    }
    let tally = |masks: &[u32]| {
        let mut exact = vec![0usize; 1 << k];
        for &m in masks {
            exact[m as usize] += 1;
        }
        exact
    };
    let node_exact = tally(&node_mask);
    let edge_exact = tally(&edge_mask);
    let superset_sum = |exact: &[usize], s: usize| (s..exact.len()).filter(|&m| m & s == s).map(|m| exact[m]).sum();

    let mut masks: Vec<usize> = (1..(1usize << k)).collect();
    masks.sort_by_key(|&m| (m.count_ones(), members_of(m, k)));
    let subsets = masks
        .into_iter()
        .map(|m| SubsetCounts {
            members: members_of(m, k),
            shared_nodes: superset_sum(&node_exact, m),
            shared_edges: superset_sum(&edge_exact, m),
            exclusive_nodes: node_exact[m],
            exclusive_edges: edge_exact[m],
        })
        .collect();
    Ok(NetworkComparison { networks, subsets })
}

fn members_of(mask: usize, k: usize) -> Vec<usize> {
    (0..k).filter(|b| mask & (1 << b) != 0).collect()
}

/// `edges / nodes`, with 0 for a network without edges.
pub fn edge_node_ratio(set: &EdgeDecisionSet) -> f64 {
    let nodes = set.node_count();
    if nodes == 0 {
        0.0
    } else {
        set.edge_count() as f64 / nodes as f64
    }
}

/// Running choice for [`select_threshold_by_edge_ratio`]: the candidate
/// whose edges-to-nodes ratio is closest to the target, ties to the smaller
/// parameter, networks without edges only when nothing else was offered.
#[derive(Debug, Clone)]
pub struct RatioSelector {
    ratio: f64,
    best: Option<(f64, EdgeDecisionSet)>,
}

impl RatioSelector {
    pub fn new(ratio: f64) -> Self {
        Self { ratio, best: None }
    }

    fn key(&self, param: f64, set: &EdgeDecisionSet) -> (bool, f64, f64) {
        (set.node_count() == 0, (edge_node_ratio(set) - self.ratio).abs(), param)
    }

    pub fn offer(&mut self, param: f64, set: EdgeDecisionSet) {
        let better = match &self.best {
            None => true,
            Some((bp, bs)) => {
                let (a, b) = (self.key(param, &set), self.key(*bp, bs));
                a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.total_cmp(&b.2)).is_lt()
            }
        };
        if better {
            self.best = Some((param, set));
        }
    }

    pub fn finish(self) -> Result<(f64, EdgeDecisionSet)> {
        self.best.ok_or(Error::EmptySweep)
    }
}

/// The sweep entry whose edges-to-nodes ratio is closest to `ratio`; ties
/// go to the smaller parameter. Entries without edges are considered only
/// when every entry is empty.
pub fn select_threshold_by_edge_ratio(sweep: &[(f64, EdgeDecisionSet)], ratio: f64) -> Result<(f64, EdgeDecisionSet)> {
    let mut sel = RatioSelector::new(ratio);
    for (param, set) in sweep {
        sel.offer(*param, set.clone());
    }
    sel.finish()
}

/// Sweeps `grid` and keeps only the entry that
/// [`select_threshold_by_edge_ratio`] would pick.
pub fn select_along_path(
    method: Method,
    grid: &[f64],
    data: &DataMatrix,
    settings: &SweepSettings,
    seed: u64,
    ratio: f64,
) -> Result<(f64, EdgeDecisionSet)> {
    let mut sel = RatioSelector::new(ratio);
    visit_decision_path(method, grid, data, settings, seed, |k, set| {
        if let Some(set) = set {
            sel.offer(grid[k], set);
        }
    })?;
    sel.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::EdgeDecision;

    fn set_from(p: usize, edges: &[(usize, usize)], method: Method) -> EdgeDecisionSet {
        let decisions = crate::estimators::all_pairs(p)
            .into_iter()
            .map(|(i, j)| EdgeDecision {
                i,
                j,
                statistic: 0.0,
                p_value: None,
                decided: edges.contains(&(i, j)),
                undecidable: false,
            })
            .collect();
        EdgeDecisionSet::new(p, method, decisions).unwrap()
    }

    #[test]
    fn confusion_by_enumeration() {
        let truth = AdjacencyMatrix::from_edges(4, &[(0, 1), (1, 2)], GraphModel::Custom).unwrap();
        let est = set_from(4, &[(0, 1), (2, 3)], Method::Lpc);
        let c = confusion(&est, &truth).unwrap();
        assert_eq!(c, ConfusionCounts { tp: 1, fp: 1, tn: 3, fn_: 1 });
        assert_eq!(c.total(), 6);

        let empty = confusion(&set_from(4, &[], Method::Lpc), &truth).unwrap();
        assert_eq!((empty.tp, empty.fn_, empty.tn), (0, 2, 4));
        let perfect = confusion(&set_from(4, &[(0, 1), (1, 2)], Method::Lpc), &truth).unwrap();
        assert_eq!((perfect.fp, perfect.fn_), (0, 0));
        assert!(confusion(&set_from(3, &[], Method::Lpc), &truth).is_err());
    }

    #[test]
    fn degenerate_rates_default_to_one() {
        let c = ConfusionCounts { tp: 0, fp: 0, tn: 5, fn_: 0 };
        assert_eq!(c.sensitivity(), 1.0);
        let c = ConfusionCounts { tp: 5, fp: 0, tn: 0, fn_: 0 };
        assert_eq!(c.specificity(), 1.0);
    }

    fn single(sens: f64, spec: f64) -> RocCurve {
        RocCurve::new(Method::Lpc, vec![RocPoint { param: 0.1, sensitivity: sens, specificity: spec, count: 1 }])
    }

    #[test]
    fn auc_examples() {
        assert_eq!(auc(&single(1.0, 1.0)).unwrap(), 1.0);
        assert!((auc(&single(0.5, 0.5)).unwrap() - 0.5).abs() < 1e-15);
        // (0,0) → (0.2, 0.6) → (1,1): 0.2·0.3 + 0.8·0.8 = 0.7.
        assert!((auc(&single(0.6, 0.8)).unwrap() - 0.7).abs() < 1e-15);
        let invalid = RocCurve::new(Method::Lpc, vec![RocPoint::invalid(0.1)]);
        assert_eq!(auc(&invalid), Err(Error::EmptyCurve));
        assert_eq!(auc(&single(0.6, 0.8)).unwrap(), auc(&single(0.6, 0.8).with_anchors()).unwrap());
    }

    #[test]
    fn averaging() {
        let a = single(0.2, 0.9);
        let b = single(0.4, 0.7);
        let m = average_curves(&[a.clone(), b]).unwrap();
        assert!((m.points[0].sensitivity - 0.3).abs() < 1e-15);
        assert!((m.points[0].specificity - 0.8).abs() < 1e-15);
        assert_eq!(m.points[0].count, 2);
        assert_eq!(average_curves(&[a.clone(), a.clone()]).unwrap().points[0].sensitivity, 0.2);

        let inv = RocCurve::new(Method::Lpc, vec![RocPoint::invalid(0.1)]);
        let m = average_curves(&[a.clone(), inv]).unwrap();
        assert_eq!((m.points[0].sensitivity, m.points[0].count), (0.2, 1));

        let other_grid = RocCurve::new(Method::Lpc, vec![RocPoint::invalid(0.2)]);
        assert_eq!(average_curves(&[a.clone(), other_grid]), Err(Error::GridMismatch));
        let other_method = RocCurve { method: Method::Glasso, ..a.clone() };
        assert_eq!(average_curves(&[a, other_method]), Err(Error::GridMismatch));
    }

    #[test]
    fn default_grids() {
        let g = SweepGrids::default();
        assert_eq!(g.lambda_l.len(), 200);
        assert!((g.lambda_l[1] - 0.006).abs() < 1e-15);
        assert!((g.lambda_l[199] - 0.996).abs() < 1e-12);
        assert_eq!(g.alpha_lpc.len(), 45);
        assert!((g.alpha_lpc[39] - 0.3901).abs() < 1e-12);
        assert_eq!(g.alpha_lpc[44], 1.0);
        assert_eq!(g.alpha_r.len(), 1000);
        assert!((g.alpha_r[1] - 0.0011).abs() < 1e-15);
        assert!(*g.alpha_r.last().unwrap() <= 1.0);
        for m in Method::ALL {
            assert!(check_grid(g.get(m)).is_ok());
        }
        assert!(check_grid(&[0.1, 0.3, 0.2]).is_err());
        assert!(check_grid(&[]).is_err());
    }

    #[test]
    fn sample_sd() {
        assert_eq!(mean_sd(&[0.7]), (0.7, 0.0));
        let (m, s) = mean_sd(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn selection_by_ratio() {
        // Ratios: star with 1 edge / 2 nodes = 0.5, K4 = 6/4 = 1.5, K5 = 2.
        let p = 6;
        let k4: Vec<(usize, usize)> = crate::estimators::all_pairs(4);
        let k5: Vec<(usize, usize)> = crate::estimators::all_pairs(5);
        let sweep = vec![
            (0.3, set_from(p, &k5, Method::Lpc)),
            (0.1, set_from(p, &[(0, 1)], Method::Lpc)),
            (0.2, set_from(p, &k4, Method::Lpc)),
        ];
        assert_eq!(select_threshold_by_edge_ratio(&sweep, 1.6).unwrap().0, 0.2);
        assert_eq!(select_threshold_by_edge_ratio(&sweep, 2.9).unwrap().0, 0.3);
        // 1.0 is equidistant from 0.5 and 1.5.
        assert_eq!(select_threshold_by_edge_ratio(&sweep, 1.0).unwrap().0, 0.1);
        assert_eq!(select_threshold_by_edge_ratio(&[], 3.0), Err(Error::EmptySweep));

        let with_empty = vec![(0.01, set_from(p, &[], Method::Lpc)), (0.5, set_from(p, &k5, Method::Lpc))];
        assert_eq!(select_threshold_by_edge_ratio(&with_empty, 0.0).unwrap().0, 0.5);
        let all_empty = vec![(0.02, set_from(p, &[], Method::Lpc)), (0.01, set_from(p, &[], Method::Lpc))];
        assert_eq!(select_threshold_by_edge_ratio(&all_empty, 3.0).unwrap().0, 0.01);
    }
}
