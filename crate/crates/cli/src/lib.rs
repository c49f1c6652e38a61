//! Command-line front end for `ggmnet`.
//!
//! `run_cli` parses arguments, runs one subcommand and returns the process
//! exit status: 0 on success, 2 for usage errors, 1 for runtime errors.
//! Relative output paths are resolved against `GGMNET_OUT_DIR` when it is
//! set.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ggmnet::estimators::Method;
use ggmnet::graphgen::GraphModel;

mod commands;
pub mod grid;

pub const OUT_DIR_ENV: &str = "GGMNET_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "ggmnet", version, about = "Gaussian graphical model network reconstruction")]
pub struct Cli {
    /// Worker threads (default: all cores). Never changes results.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Draw a random graph and write it as an edge list.
    Generate(GenerateArgs),
    /// Turn a graph into a covariance matrix with that conditional
    /// independence structure.
    Synth(SynthArgs),
    /// Draw Gaussian samples from a covariance matrix.
    Sample(SampleArgs),
    /// Reconstruct a network from a data matrix.
    Reconstruct(ReconstructArgs),
    /// Sweep one method's parameter against a known graph.
    Roc(RocArgs),
    /// Simulation benchmark: mean and sd of AUC per graph model and method.
    Benchmark(BenchmarkArgs),
    /// Node and edge overlap between reconstructed networks.
    Compare(CompareArgs),
    /// Pick the sweep value whose network has a target edges-to-nodes ratio.
    Select(SelectArgs),
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// er, ba or ws.
    #[arg(long, value_parser = parse_model)]
    pub graph: GraphModel,
    /// Erdos-Renyi edge probability (default 2/p).
    #[arg(long)]
    pub edge_prob: Option<f64>,
    /// Barabasi-Albert edges per new node.
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// Watts-Strogatz lattice degree (even).
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Watts-Strogatz rewiring probability.
    #[arg(long, default_value_t = 0.1)]
    pub beta: f64,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub p: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "graph.tsv")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct SynthArgs {
    /// Edge list written by `generate`.
    #[arg(long)]
    pub graph_file: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "sigma.csv")]
    pub out: PathBuf,
    /// Also write the shifted precision matrix.
    #[arg(long)]
    pub precision_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    /// Covariance matrix written by `synth`.
    #[arg(long)]
    pub sigma: PathBuf,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "data.csv")]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Data CSV: first row variable names, one sample per row.
    #[arg(long)]
    pub input: PathBuf,
    /// The file holds variables as rows.
    #[arg(long)]
    pub transpose: bool,
    /// Center and scale every column to unit variance after loading.
    #[arg(long)]
    pub standardize: bool,
}

#[derive(Args, Debug, Clone)]
pub struct MethodArgs {
    /// LPC screening level.
    #[arg(long, default_value_t = 0.1)]
    pub alpha: f64,
    /// LPC edge-test level.
    #[arg(long, default_value_t = 0.02)]
    pub alpha_lpc: f64,
    /// GLasso penalty.
    #[arg(long, default_value_t = 0.6)]
    pub lambda_l: f64,
    /// GGMridge shrinkage.
    #[arg(long, default_value_t = 1.0)]
    pub lambda_r: f64,
    /// GGMridge test level.
    #[arg(long, default_value_t = 0.01)]
    pub alpha_r: f64,
    /// Permuted data sets in the GGMridge null.
    #[arg(long, default_value_t = 20)]
    pub null_reps: usize,
    /// Fit GLasso on the covariance rather than the correlation matrix.
    #[arg(long)]
    pub glasso_covariance: bool,
    /// Scale columns to unit mean square before GGMridge.
    #[arg(long)]
    pub ridge_correlation: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EdgeFormatArg {
    Tsv,
    Graphml,
}

#[derive(Args, Debug)]
pub struct ReconstructArgs {
    #[arg(long, value_parser = parse_method)]
    pub method: Method,
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub params: MethodArgs,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Decided edges only.
    #[arg(long, default_value = "edges.tsv")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = EdgeFormatArg::Tsv)]
    pub format: EdgeFormatArg,
    /// Also write every pair with its statistic and p-value.
    #[arg(long)]
    pub decisions: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RocArgs {
    #[arg(long, value_parser = parse_method)]
    pub method: Method,
    #[command(flatten)]
    pub input: InputArgs,
    /// True graph as an edge list.
    #[arg(long)]
    pub truth: PathBuf,
    /// Sweep grid (default: the method's standard grid).
    #[arg(long)]
    pub grid: Option<String>,
    /// Hold the LPC screening level fixed instead of tying it to the grid.
    #[arg(long)]
    pub lpc_alpha: Option<f64>,
    /// Center columns before estimation.
    #[arg(long)]
    pub center: bool,
    #[command(flatten)]
    pub params: MethodArgs,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "roc.csv")]
    pub out: PathBuf,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchmarkArgs {
    /// Graph models to include (repeatable; default all three).
    #[arg(long, value_parser = parse_model)]
    pub graph: Vec<GraphModel>,
    #[arg(long, default_value_t = 50)]
    pub p: usize,
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    #[arg(long, default_value_t = 50)]
    pub reps: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Methods to include (comma separated; default all three).
    #[arg(long, value_parser = parse_method, value_delimiter = ',')]
    pub methods: Vec<Method>,
    #[arg(long)]
    pub edge_prob: Option<f64>,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 0.1)]
    pub beta: f64,
    #[arg(long)]
    pub lambda_l_grid: Option<String>,
    #[arg(long)]
    pub alpha_lpc_grid: Option<String>,
    #[arg(long)]
    pub alpha_r_grid: Option<String>,
    #[arg(long, default_value_t = 20)]
    pub null_reps: usize,
    #[arg(long, default_value_t = 1.0)]
    pub lambda_r: f64,
    #[arg(long)]
    pub glasso_covariance: bool,
    #[arg(long)]
    pub ridge_correlation: bool,
    #[arg(long, default_value = "benchmark.csv")]
    pub out: PathBuf,
    #[arg(long, default_value = "benchmark.txt")]
    pub table: PathBuf,
    /// Averaged ROC curves, one SVG per graph model, named
    /// `<prefix>_<model>.svg`.
    #[arg(long)]
    pub svg_prefix: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// Edge-list or full decision TSV files.
    #[arg(required = true, num_args = 1..)]
    pub files: Vec<PathBuf>,
    /// Labels for the networks (comma separated; default file stems).
    #[arg(long, value_delimiter = ',')]
    pub labels: Vec<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SelectArgs {
    #[arg(long, value_parser = parse_method)]
    pub method: Method,
    #[command(flatten)]
    pub input: InputArgs,
    /// Target edges per node.
    #[arg(long, default_value_t = 3.0)]
    pub ratio: f64,
    /// Sweep grid (default: a fine geometric grid for LPC and GGMridge,
    /// the standard grid for GLasso).
    #[arg(long)]
    pub grid: Option<String>,
    #[command(flatten)]
    pub params: MethodArgs,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "selected.tsv")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = EdgeFormatArg::Tsv)]
    pub format: EdgeFormatArg,
}

fn parse_model(s: &str) -> Result<GraphModel, String> {
    s.parse().map_err(|e: ggmnet::Error| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: ggmnet::Error| e.to_string())
}

/// A runtime failure tagged with the stage that produced it.
#[derive(Debug)]
pub struct StageError {
    pub stage: &'static str,
    pub message: String,
}

impl std::fmt::Display for StageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} failed: {}", self.stage, self.message)
    }
}

pub(crate) trait Stage<T> {
    fn stage(self, stage: &'static str) -> Result<T, StageError>;
}

impl<T, E: std::fmt::Display> Stage<T> for Result<T, E> {
    fn stage(self, stage: &'static str) -> Result<T, StageError> {
        self.map_err(|e| StageError { stage, message: e.to_string() })
    }
}

/// Parses `args` (program name first) and runs the subcommand. The
/// one-line summary goes to stdout, diagnostics to stderr.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if cli.threads == Some(0) {
        eprintln!("error: --threads must be at least 1");
        return 2;
    }
    match ggmnet::par::with_threads(cli.threads, || commands::run(&cli.command)) {
        Ok(summary) => {
            println!("{summary}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
