use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use ggmnet::estimators::{EdgeDecisionSet, Method};
use ggmnet::eval::{
    self, auc, compare_labeled, decision_path, edge_node_ratio, roc_sweep, select_along_path, BenchmarkSpec,
    SweepGrids, SweepSettings,
};
use ggmnet::graphgen::{AdjacencyMatrix, GraphModel, GraphSpec};
use ggmnet::io::{self, EdgeFormat, EdgeRow};
use ggmnet::numerics::DataMatrix;
use ggmnet::synth;

use crate::grid::{geometric, parse_grid};
use crate::{
    BenchmarkArgs, Command, CompareArgs, EdgeFormatArg, GenerateArgs, GraphArgs, InputArgs, MethodArgs, ReconstructArgs,
    RocArgs, SampleArgs, SelectArgs, Stage, StageError, SynthArgs, OUT_DIR_ENV,
};

type Outcome = Result<String, StageError>;

pub(crate) fn run(cmd: &Command) -> Outcome {
    match cmd {
        Command::Generate(a) => generate(a),
        Command::Synth(a) => synth_cmd(a),
        Command::Sample(a) => sample(a),
        Command::Reconstruct(a) => reconstruct(a),
        Command::Roc(a) => roc(a),
        Command::Benchmark(a) => benchmark(a),
        Command::Compare(a) => compare(a),
        Command::Select(a) => select(a),
    }
}

fn out_path(path: &Path) -> Result<PathBuf, StageError> {
    let resolved = match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    };
    if let Some(parent) = resolved.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).stage("output directory")?;
    }
    Ok(resolved)
}

fn write_out(path: &Path, text: &str, stage: &'static str) -> Result<PathBuf, StageError> {
    let path = out_path(path)?;
    fs::write(&path, text).map_err(|e| StageError { stage, message: format!("{}: {e}", path.display()) })?;
    Ok(path)
}

fn graph_spec(model: GraphModel, edge_prob: Option<f64>, m: usize, k: usize, beta: f64) -> Result<GraphSpec, StageError> {
    match model {
        GraphModel::ErdosRenyi => Ok(GraphSpec::ErdosRenyi { edge_prob }),
        GraphModel::BarabasiAlbert => Ok(GraphSpec::BarabasiAlbert { m }),
        GraphModel::WattsStrogatz => Ok(GraphSpec::WattsStrogatz { k, beta }),
        GraphModel::Custom => Err(StageError { stage: "arguments", message: "custom graphs cannot be generated".into() }),
    }
}

fn spec_from(g: &GraphArgs) -> Result<GraphSpec, StageError> {
    graph_spec(g.graph, g.edge_prob, g.m, g.k, g.beta)
}

fn graph_to_text(adj: &AdjacencyMatrix, seed: u64) -> String {
    format!("# model={}\n# p={}\n# seed={seed}\n{}", adj.model().tag(), adj.p(), adj.to_edge_list())
}

fn load_graph(path: &Path) -> Result<AdjacencyMatrix, StageError> {
    let text = fs::read_to_string(path).map_err(|e| StageError { stage: "read graph", message: format!("{}: {e}", path.display()) })?;
    let p = text
        .lines()
        .filter_map(|l| l.strip_prefix('#'))
        .filter_map(|l| l.trim().strip_prefix("p="))
        .find_map(|v| v.trim().parse().ok());
    AdjacencyMatrix::parse_edge_list(&text, p).stage("read graph")
}

fn generate(a: &GenerateArgs) -> Outcome {
    let adj = spec_from(&a.graph)?.generate(a.p, a.seed).stage("generate graph")?;
    let path = write_out(&a.out, &graph_to_text(&adj, a.seed), "write graph")?;
    Ok(format!("generate: {} graph, {} nodes, {} edges -> {}", adj.model().display_name(), adj.p(), adj.edge_count(), path.display()))
}

fn synth_cmd(a: &SynthArgs) -> Outcome {
    let adj = load_graph(&a.graph_file)?;
    let draw = synth::synthesize(&adj, a.seed).stage("synthesize covariance")?;
    let path = out_path(&a.out)?;
    io::write_symmetric_csv(&path, &draw.sigma, None).stage("write covariance")?;
    if let Some(pp) = &a.precision_out {
        io::write_symmetric_csv(out_path(pp)?, &draw.omega2, None).stage("write precision")?;
    }
    Ok(format!("synth: {} variables, nu_min {:.4} -> {}", adj.p(), draw.nu_min, path.display()))
}

fn sample(a: &SampleArgs) -> Outcome {
    let (sigma, names) = io::load_symmetric_csv(&a.sigma).stage("read covariance")?;
    let x = synth::sample_gaussian(&sigma, a.n, a.seed)
        .and_then(|x| x.with_names(names))
        .stage("sample")?;
    let path = out_path(&a.out)?;
    io::write_matrix_csv(&path, &x).stage("write data")?;
    Ok(format!("sample: {} samples of {} variables -> {}", x.n(), x.p(), path.display()))
}

fn load_input(a: &InputArgs) -> Result<DataMatrix, StageError> {
    let x = io::load_matrix_csv(&a.input, a.transpose).stage("load data")?;
    if a.standardize {
        let names = x.names().map(<[String]>::to_vec);
        let z = x.standardized().stage("standardize")?;
        return match names {
            Some(n) => z.with_names(n).stage("standardize"),
            None => Ok(z),
        };
    }
    Ok(x)
}

fn settings_from(base: SweepSettings, p: &MethodArgs) -> SweepSettings {
    SweepSettings {
        lpc_alpha: base.lpc_alpha.map(|_| p.alpha),
        lambda_r: p.lambda_r,
        null_reps: p.null_reps,
        glasso_correlation: !p.glasso_covariance,
        ridge_correlation: p.ridge_correlation,
        ..base
    }
}

fn single_value(method: Method, p: &MethodArgs) -> f64 {
    match method {
        Method::Lpc => p.alpha_lpc,
        Method::Glasso => p.lambda_l,
        Method::GgmRidge => p.alpha_r,
    }
}

fn edge_format(f: EdgeFormatArg) -> EdgeFormat {
    match f {
        EdgeFormatArg::Tsv => EdgeFormat::Tsv,
        EdgeFormatArg::Graphml => EdgeFormat::GraphMl,
    }
}

fn failed_point(method: Method, value: f64) -> StageError {
    StageError { stage: "reconstruct", message: format!("{} produced no estimate at {value}", method.display_name()) }
}

fn reconstruct(a: &ReconstructArgs) -> Outcome {
    let x = load_input(&a.input)?;
    let settings = settings_from(SweepSettings::real_data(), &a.params);
    let value = single_value(a.method, &a.params);
    let set = decision_path(a.method, &[value], &x, &settings, a.seed)
        .stage("reconstruct")?
        .pop()
        .flatten()
        .ok_or_else(|| failed_point(a.method, value))?;
    let path = out_path(&a.out)?;
    io::export_edge_list(&set, &path, edge_format(a.format)).stage("write edges")?;
    if let Some(d) = &a.decisions {
        io::write_decisions_tsv(out_path(d)?, &set).stage("write decisions")?;
    }
    Ok(format!(
        "reconstruct: {} on {} variables x {} samples: {} edges over {} nodes -> {}",
        a.method.display_name(),
        x.p(),
        x.n(),
        set.edge_count(),
        set.node_count(),
        path.display()
    ))
}

fn grid_or(spec: &Option<String>, default: &[f64]) -> Result<Vec<f64>, StageError> {
    match spec {
        Some(s) => parse_grid(s).map_err(|message| StageError { stage: "arguments", message }),
        None => Ok(default.to_vec()),
    }
}

fn roc(a: &RocArgs) -> Outcome {
    let x = load_input(&a.input)?;
    let truth = load_graph(&a.truth)?;
    let mut settings = settings_from(SweepSettings { center: a.center, ..SweepSettings::simulation() }, &a.params);
    settings.lpc_alpha = a.lpc_alpha;
    let grid = grid_or(&a.grid, SweepGrids::default().get(a.method))?;
    let curve = roc_sweep(a.method, &grid, &x, &truth, &settings, a.seed).stage("roc sweep")?;
    let area = auc(&curve).stage("auc")?;
    let path = out_path(&a.out)?;
    io::write_roc_curve_csv(&path, &curve).stage("write roc")?;
    if let Some(svg) = &a.svg {
        let anchored = curve.clone().with_anchors();
        write_out(svg, &io::roc_svg(a.method.display_name(), &[(a.method.display_name().into(), &anchored)]), "write svg")?;
    }
    Ok(format!("roc: {} over {} grid points, AUC {:.4} -> {}", a.method.display_name(), grid.len(), area, path.display()))
}

fn benchmark(a: &BenchmarkArgs) -> Outcome {
    let mut spec = BenchmarkSpec::standard(a.p, a.n, a.reps, a.seed);
    let models: Vec<GraphModel> = if a.graph.is_empty() {
        spec.cells.iter().map(|c| c.graph.model()).collect()
    } else {
        a.graph.clone()
    };
    let template = spec.cells[0];
    spec.cells = models
        .iter()
        .map(|&m| Ok(eval::BenchmarkCell { graph: graph_spec(m, a.edge_prob, a.m, a.k, a.beta)?, ..template }))
        .collect::<Result<_, StageError>>()?;
    if !a.methods.is_empty() {
        spec.methods = a.methods.clone();
    }
    spec.grids.lambda_l = grid_or(&a.lambda_l_grid, &spec.grids.lambda_l)?;
    spec.grids.alpha_lpc = grid_or(&a.alpha_lpc_grid, &spec.grids.alpha_lpc)?;
    spec.grids.alpha_r = grid_or(&a.alpha_r_grid, &spec.grids.alpha_r)?;
    spec.settings.null_reps = a.null_reps;
    spec.settings.lambda_r = a.lambda_r;
    spec.settings.glasso_correlation = !a.glasso_covariance;
    spec.settings.ridge_correlation = a.ridge_correlation;

    let report = eval::benchmark(&spec).stage("benchmark")?;
    let csv = write_out(&a.out, &io::benchmark_to_csv(&report).stage("benchmark csv")?, "write benchmark csv")?;
    let table = io::benchmark_table(&report);
    let table_path = write_out(&a.table, &table, "write benchmark table")?;
    if let Some(prefix) = &a.svg_prefix {
        for &m in &models {
            let curves: Vec<(String, ggmnet::eval::RocCurve)> = report
                .curves
                .iter()
                .filter(|c| c.graph == m)
                .map(|c| (c.curve.method.display_name().to_string(), c.curve.clone().with_anchors()))
                .collect();
            let refs: Vec<(String, &ggmnet::eval::RocCurve)> = curves.iter().map(|(l, c)| (l.clone(), c)).collect();
            let name = format!("{}_{}.svg", prefix.display(), m.tag());
            write_out(Path::new(&name), &io::roc_svg(m.display_name(), &refs), "write svg")?;
        }
    }
    let failed: usize = report.rows.iter().map(|r| r.failed).sum();
    Ok(format!(
        "{table}benchmark: {} cells x {} methods x {} replications, {failed} failed -> {}, {}",
        spec.cells.len(),
        spec.methods.len(),
        a.reps,
        csv.display(),
        table_path.display()
    ))
}

enum Loaded {
    Full(EdgeDecisionSet),
    Edges(Vec<EdgeRow>),
}

fn load_any(path: &Path) -> Result<Loaded, StageError> {
    let text = fs::read_to_string(path).map_err(|e| StageError { stage: "read network", message: format!("{}: {e}", path.display()) })?;
    let wrap = |e: ggmnet::Error| StageError { stage: "read network", message: format!("{}: {e}", path.display()) };
    if text.lines().find(|l| !l.starts_with('#')).is_some_and(|l| l.starts_with("i\tj\t")) {
        io::parse_decisions_tsv(&text).map(Loaded::Full).map_err(wrap)
    } else {
        io::parse_edge_list_tsv(&text).map(Loaded::Edges).map_err(wrap)
    }
}

fn label_of(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn compare(a: &CompareArgs) -> Outcome {
    if !a.labels.is_empty() && a.labels.len() != a.files.len() {
        return Err(StageError { stage: "arguments", message: format!("{} labels for {} files", a.labels.len(), a.files.len()) });
    }
    let labels: Vec<String> = if a.labels.is_empty() { a.files.iter().map(|f| label_of(f)).collect() } else { a.labels.clone() };
    let loaded = a.files.iter().map(|f| load_any(f)).collect::<Result<Vec<_>, _>>()?;
    let sets: Vec<EdgeDecisionSet> = if loaded.iter().all(|l| matches!(l, Loaded::Full(_))) {
        loaded.into_iter().map(|l| match l { Loaded::Full(s) => s, Loaded::Edges(_) => unreachable!() }).collect()
    } else {
        // Mixed inputs: rebuild every network over the union of all names.
        let rows: Vec<Vec<EdgeRow>> = loaded
            .iter()
            .map(|l| match l {
                Loaded::Edges(r) => r.clone(),
                Loaded::Full(s) => s
                    .decisions()
                    .iter()
                    .filter(|d| d.decided)
                    .map(|d| EdgeRow { source: s.label(d.i), target: s.label(d.j), statistic: d.statistic, p_value: d.p_value })
                    .collect(),
            })
            .collect();
        let mut universe: Vec<String> = rows.iter().flat_map(|r| io::edge_list_universe(r)).collect();
        for l in &loaded {
            if let Loaded::Full(s) = l {
                universe.extend((0..s.p()).map(|v| s.label(v)));
            }
        }
        universe.sort();
        universe.dedup();
        let methods = loaded.iter().map(|l| match l {
            Loaded::Full(s) => s.method(),
            Loaded::Edges(_) => Method::Lpc,
        });
        rows.iter()
            .zip(methods)
            .map(|(r, m)| io::edge_rows_to_set(r, &universe, m))
            .collect::<Result<_, _>>()
            .stage("compare")?
    };
    let cmp = compare_labeled(&labels, &sets).stage("compare")?;
    let report = io::comparison_report(&cmp);
    let mut summary = String::new();
    match &a.out {
        Some(out) => {
            let path = write_out(out, &report, "write report")?;
            write!(summary, "compare: {} networks -> {}", sets.len(), path.display()).ok();
        }
        None => {
            summary.push_str(&report);
            write!(summary, "compare: {} networks", sets.len()).ok();
        }
    }
    Ok(summary)
}

/// Default sweep for `select`: fine enough to land near any target ratio.
fn select_grid(method: Method) -> Vec<f64> {
    match method {
        Method::Lpc => geometric(1e-12, 0.5, 481),
        Method::GgmRidge => geometric(1e-7, 1.0, 351),
        Method::Glasso => SweepGrids::default().lambda_l,
    }
}

fn select(a: &SelectArgs) -> Outcome {
    let x = load_input(&a.input)?;
    let settings = settings_from(SweepSettings::real_data(), &a.params);
    let grid = grid_or(&a.grid, &select_grid(a.method))?;
    let (param, set) = select_along_path(a.method, &grid, &x, &settings, a.seed, a.ratio).stage("select")?;
    let path = out_path(&a.out)?;
    io::export_edge_list(&set, &path, edge_format(a.format)).stage("write edges")?;
    Ok(format!(
        "select: {} at {param}: {} edges over {} nodes (ratio {:.3}) -> {}",
        a.method.display_name(),
        set.edge_count(),
        set.node_count(),
        edge_node_ratio(&set),
        path.display()
    ))
}
