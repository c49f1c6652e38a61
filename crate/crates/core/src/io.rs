//! File formats.
//!
//! All tabular output uses `,` (CSV) or tab (TSV) separators, `.` decimals,
//! LF line endings and shortest round-trip float formatting, so every file
//! written here reads back to an equal value. Metadata lives in leading
//! `# key=value` comment lines.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::estimators::{all_pairs, EdgeDecision, EdgeDecisionSet, Method};
use crate::eval::{BenchmarkReport, BenchmarkRow, NetworkComparison, RocCurve, RocPoint, SweepGrids};
use crate::graphgen::GraphModel;
use crate::numerics::{DataMatrix, SymmetricMatrix};

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Splits leading `# key=value` lines from the body.
fn split_metadata(text: &str) -> (Vec<(String, String)>, String) {
    let mut meta = Vec::new();
    let mut body = String::with_capacity(text.len());
    let mut in_header = true;
    for line in text.lines() {
        if in_header {
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some((k, v)) = rest.split_once('=') {
                    meta.push((k.trim().to_string(), v.trim().to_string()));
                }
                continue;
            }
            in_header = false;
        }
        body.push_str(line);
        body.push('\n');
    }
    (meta, body)
}

fn meta_get<'a>(meta: &'a [(String, String)], key: &str) -> Option<&'a str> {
    meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

fn csv_reader(body: &str, delimiter: u8) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new().delimiter(delimiter).has_headers(false).flexible(true).from_reader(body.as_bytes())
}

fn csv_writer(delimiter: u8) -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().delimiter(delimiter).terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

fn parse_f64(s: &str, row: usize, col: usize) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| Error::NonNumeric { row, col })
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn grid_of_strings(text: &str) -> Result<Vec<Vec<String>>> {
    let mut out = Vec::new();
    for rec in csv_reader(text, b',').records() {
        let rec = rec?;
        if rec.len() == 1 && rec[0].trim().is_empty() {
            continue;
        }
        out.push(rec.iter().map(str::to_string).collect());
    }
    Ok(out)
}

/// Reads a data matrix whose first row holds variable names and whose
/// remaining rows are samples. With `transpose`, the file is flipped first
/// (variables as rows, their names in the first column).
///
/// A leading row-label column is dropped when the top-left cell is empty
/// or the whole column is non-numeric. Errors report 1-based
/// `(sample, column)` coordinates with the name row excluded.
pub fn load_matrix_csv(path: impl AsRef<Path>, transpose: bool) -> Result<DataMatrix> {
    parse_matrix_csv(&read_text(path.as_ref())?, transpose)
}

pub fn parse_matrix_csv(text: &str, transpose: bool) -> Result<DataMatrix> {
    let grid = grid_of_strings(text)?;
    let width = grid.first().map_or(0, Vec::len);
    for (r, row) in grid.iter().enumerate() {
        if row.len() != width {
            return Err(Error::Ragged(r));
        }
    }
    // cell(r, c) in data orientation: row 0 holds names, and error
    // coordinates are (sample, column), both 1-based.
    let (rows, cols) = if transpose { (width, grid.len()) } else { (grid.len(), width) };
    let cell = |r: usize, c: usize| -> (&str, usize, usize) {
        let v = if transpose { grid[c][r].as_str() } else { grid[r][c].as_str() };
        (v, r, c + 1)
    };
    if rows < 3 {
        return Err(Error::TooSmall { what: "samples", needed: 2, found: rows.saturating_sub(1) });
    }
    let label_col = cols > 0
        && (cell(0, 0).0.trim().is_empty()
            || (1..rows).all(|r| {
                let v = cell(r, 0).0.trim();
                !v.is_empty() && v.parse::<f64>().is_err()
            }));
    let first = usize::from(label_col);
    let names: Vec<String> = (first..cols).map(|c| cell(0, c).0.trim().to_string()).collect();
    let mut values = Vec::with_capacity((rows - 1) * names.len());
    for r in 1..rows {
        for c in first..cols {
            let (v, fr, fc) = cell(r, c);
            let x = parse_f64(v, fr, fc)?;
            if !x.is_finite() {
                return Err(Error::NonNumeric { row: fr, col: fc });
            }
            values.push(x);
        }
    }
    DataMatrix::new(rows - 1, names.len(), values)?.with_names(names)
}

pub fn matrix_to_csv(x: &DataMatrix) -> Result<String> {
    let mut w = csv_writer(b',');
    let names: Vec<String> = (0..x.p()).map(|c| x.names().map_or_else(|| format!("V{}", c + 1), |n| n[c].clone())).collect();
    w.write_record(&names)?;
    for r in 0..x.n() {
        w.write_record(x.row(r).iter().map(|v| v.to_string()))?;
    }
    finish(w)
}

pub fn write_matrix_csv(path: impl AsRef<Path>, x: &DataMatrix) -> Result<()> {
    write_text(path.as_ref(), &matrix_to_csv(x)?)
}

/// Dense square matrix with a header row of labels.
pub fn symmetric_to_csv(m: &SymmetricMatrix, names: Option<&[String]>) -> Result<String> {
    let mut w = csv_writer(b',');
    let p = m.dim();
    w.write_record((0..p).map(|c| names.map_or_else(|| format!("V{}", c + 1), |n| n[c].clone())))?;
    for r in 0..p {
        w.write_record(m.row(r).iter().map(|v| v.to_string()))?;
    }
    finish(w)
}

pub fn write_symmetric_csv(path: impl AsRef<Path>, m: &SymmetricMatrix, names: Option<&[String]>) -> Result<()> {
    write_text(path.as_ref(), &symmetric_to_csv(m, names)?)
}

pub fn load_symmetric_csv(path: impl AsRef<Path>) -> Result<(SymmetricMatrix, Vec<String>)> {
    let grid = grid_of_strings(&read_text(path.as_ref())?)?;
    let header = grid.first().ok_or_else(|| Error::Format("empty matrix file".into()))?;
    let p = header.len();
    if grid.len() != p + 1 {
        return Err(Error::DimensionMismatch { expected: p, found: grid.len().saturating_sub(1) });
    }
    let mut rows = Vec::with_capacity(p);
    for (r, line) in grid[1..].iter().enumerate() {
        if line.len() != p {
            return Err(Error::Ragged(r + 2));
        }
        rows.push(line.iter().enumerate().map(|(c, v)| parse_f64(v, r + 2, c + 1)).collect::<Result<Vec<_>>>()?);
    }
    Ok((SymmetricMatrix::from_rows(&rows)?, header.iter().map(|s| s.trim().to_string()).collect()))
}

/// Every pair with columns `i, j, statistic, p_value, decided`. Endpoints
/// are 0-based indices; undecidable pairs have `decided = NA`.
pub fn decisions_to_tsv(set: &EdgeDecisionSet) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "# method={}", set.method().tag()).ok();
    writeln!(out, "# p={}", set.p()).ok();
    let mut w = csv_writer(b'\t');
    if let Some(names) = set.names() {
        let mut joined = csv_writer(b'\t');
        joined.write_record(names)?;
        writeln!(out, "# names={}", finish(joined)?.trim_end()).ok();
    }
    w.write_record(["i", "j", "statistic", "p_value", "decided"])?;
    for d in set.decisions() {
        let decided = if d.undecidable { "NA" } else if d.decided { "1" } else { "0" };
        w.write_record([d.i.to_string(), d.j.to_string(), d.statistic.to_string(), fmt_opt(d.p_value), decided.into()])?;
    }
    out.push_str(&finish(w)?);
    Ok(out)
}

pub fn write_decisions_tsv(path: impl AsRef<Path>, set: &EdgeDecisionSet) -> Result<()> {
    write_text(path.as_ref(), &decisions_to_tsv(set)?)
}

pub fn parse_decisions_tsv(text: &str) -> Result<EdgeDecisionSet> {
    let (meta, body) = split_metadata(text);
    let method: Method = meta_get(&meta, "method").ok_or_else(|| Error::Format("missing method".into()))?.parse()?;
    let p: usize = meta_get(&meta, "p")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Format("missing p".into()))?;
    let names = match meta_get(&meta, "names") {
        Some(line) => {
            let rec = csv_reader(line, b'\t').records().next().transpose()?;
            Some(rec.map(|r| r.iter().map(str::to_string).collect::<Vec<_>>()).unwrap_or_default())
        }
        None => None,
    };
    let mut decisions = Vec::with_capacity(p * p.saturating_sub(1) / 2);
    for (k, rec) in csv_reader(&body, b'\t').records().enumerate().skip(1) {
        let rec = rec?;
        let row = k + 1;
        if rec.len() != 5 {
            return Err(Error::Ragged(row));
        }
        let idx = |c: usize| rec[c].trim().parse::<usize>().map_err(|_| Error::NonNumeric { row, col: c + 1 });
        let (i, j) = (idx(0)?, idx(1)?);
        let statistic = parse_f64(&rec[2], row, 3)?;
        let p_value = if rec[3].trim().is_empty() { None } else { Some(parse_f64(&rec[3], row, 4)?) };
        let (decided, undecidable) = match rec[4].trim() {
            "1" => (true, false),
            "0" => (false, false),
            "NA" => (false, true),
            _ => return Err(Error::NonNumeric { row, col: 5 }),
        };
        decisions.push(EdgeDecision { i, j, statistic, p_value, decided, undecidable });
    }
    EdgeDecisionSet::new(p, method, decisions)?.with_names(names)
}

pub fn load_decisions_tsv(path: impl AsRef<Path>) -> Result<EdgeDecisionSet> {
    parse_decisions_tsv(&read_text(path.as_ref())?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeFormat {
    Tsv,
    GraphMl,
}

impl std::str::FromStr for EdgeFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tsv" => Ok(EdgeFormat::Tsv),
            "graphml" => Ok(EdgeFormat::GraphMl),
            _ => Err(Error::Format(format!("unknown edge format '{s}'"))),
        }
    }
}

/// Decided edges only, columns `source, target, statistic, p_value`,
/// endpoints by variable name when available.
pub fn edge_list_to_tsv(set: &EdgeDecisionSet) -> Result<String> {
    let mut w = csv_writer(b'\t');
    w.write_record(["source", "target", "statistic", "p_value"])?;
    for d in set.decisions().iter().filter(|d| d.decided) {
        w.write_record([set.label(d.i), set.label(d.j), d.statistic.to_string(), fmt_opt(d.p_value)])?;
    }
    finish(w)
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Undirected GraphML with every variable as a node (`name` attribute) and
/// decided edges carrying `statistic` and, when present, `p_value`.
pub fn edge_list_to_graphml(set: &EdgeDecisionSet) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    out.push_str("  <key id=\"name\" for=\"node\" attr.name=\"name\" attr.type=\"string\"/>\n");
    out.push_str("  <key id=\"statistic\" for=\"edge\" attr.name=\"statistic\" attr.type=\"double\"/>\n");
    out.push_str("  <key id=\"p_value\" for=\"edge\" attr.name=\"p_value\" attr.type=\"double\"/>\n");
    writeln!(out, "  <graph id=\"{}\" edgedefault=\"undirected\">", set.method().tag()).ok();
    for v in 0..set.p() {
        writeln!(out, "    <node id=\"n{v}\"><data key=\"name\">{}</data></node>", xml_escape(&set.label(v))).ok();
    }
    for d in set.decisions().iter().filter(|d| d.decided) {
        write!(out, "    <edge source=\"n{}\" target=\"n{}\"><data key=\"statistic\">{}</data>", d.i, d.j, d.statistic).ok();
        if let Some(pv) = d.p_value {
            write!(out, "<data key=\"p_value\">{pv}</data>").ok();
        }
        out.push_str("</edge>\n");
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

pub fn export_edge_list(set: &EdgeDecisionSet, path: impl AsRef<Path>, format: EdgeFormat) -> Result<()> {
    let text = match format {
        EdgeFormat::Tsv => edge_list_to_tsv(set)?,
        EdgeFormat::GraphMl => edge_list_to_graphml(set),
    };
    write_text(path.as_ref(), &text)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRow {
    pub source: String,
    pub target: String,
    pub statistic: f64,
    pub p_value: Option<f64>,
}

pub fn parse_edge_list_tsv(text: &str) -> Result<Vec<EdgeRow>> {
    let mut out = Vec::new();
    for (k, rec) in csv_reader(text, b'\t').records().enumerate().skip(1) {
        let rec = rec?;
        let row = k + 1;
        if rec.len() != 4 {
            return Err(Error::Ragged(row));
        }
        out.push(EdgeRow {
            source: rec[0].to_string(),
            target: rec[1].to_string(),
            statistic: parse_f64(&rec[2], row, 3)?,
            p_value: if rec[3].trim().is_empty() { None } else { Some(parse_f64(&rec[3], row, 4)?) },
        });
    }
    Ok(out)
}

/// Loads either a full decision TSV or an exported edge-list TSV. Edge lists
/// carry no method or vertex set, so they are rebuilt over `universe`
/// (sorted names of every endpoint when `None`) and tagged `fallback`.
pub fn load_network(path: impl AsRef<Path>, universe: Option<&[String]>, fallback: Method) -> Result<EdgeDecisionSet> {
    let text = read_text(path.as_ref())?;
    let (_, body) = split_metadata(&text);
    if body.starts_with("i\tj\t") {
        return parse_decisions_tsv(&text);
    }
    let rows = parse_edge_list_tsv(&text)?;
    let names: Vec<String> = match universe {
        Some(u) => u.to_vec(),
        None => edge_list_universe(&rows),
    };
    edge_rows_to_set(&rows, &names, fallback)
}

pub fn edge_list_universe(rows: &[EdgeRow]) -> Vec<String> {
    let mut names: Vec<String> = rows.iter().flat_map(|r| [r.source.clone(), r.target.clone()]).collect();
    names.sort();
    names.dedup();
    names
}

pub fn edge_rows_to_set(rows: &[EdgeRow], names: &[String], method: Method) -> Result<EdgeDecisionSet> {
    let p = names.len();
    let index: std::collections::HashMap<&str, usize> = names.iter().enumerate().map(|(k, n)| (n.as_str(), k)).collect();
    let mut decisions: Vec<EdgeDecision> = all_pairs(p)
        .into_iter()
        .map(|(i, j)| EdgeDecision { i, j, statistic: 0.0, p_value: None, decided: false, undecidable: false })
        .collect();
    for r in rows {
        let lookup = |n: &str| index.get(n).copied().ok_or_else(|| Error::Format(format!("unknown vertex '{n}'")));
        let (a, b) = (lookup(&r.source)?, lookup(&r.target)?);
        if a == b {
            return Err(Error::Format(format!("self loop on '{}'", r.source)));
        }
        let d = &mut decisions[crate::estimators::pair_index(p, a.min(b), a.max(b))];
        d.decided = true;
        d.statistic = r.statistic;
        d.p_value = r.p_value;
    }
    EdgeDecisionSet::new(p, method, decisions)?.with_names(Some(names.to_vec()))
}

pub fn roc_curve_to_csv(curve: &RocCurve) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "# method={}", curve.method.tag()).ok();
    writeln!(out, "# anchored={}", curve.anchored).ok();
    let mut w = csv_writer(b',');
    w.write_record(["param", "sensitivity", "specificity", "count"])?;
    for q in &curve.points {
        w.write_record([q.param.to_string(), q.sensitivity.to_string(), q.specificity.to_string(), q.count.to_string()])?;
    }
    out.push_str(&finish(w)?);
    Ok(out)
}

pub fn parse_roc_curve_csv(text: &str) -> Result<RocCurve> {
    let (meta, body) = split_metadata(text);
    let method: Method = meta_get(&meta, "method").ok_or_else(|| Error::Format("missing method".into()))?.parse()?;
    let anchored = meta_get(&meta, "anchored") == Some("true");
    let mut points = Vec::new();
    for (k, rec) in csv_reader(&body, b',').records().enumerate().skip(1) {
        let rec = rec?;
        let row = k + 1;
        if rec.len() != 4 {
            return Err(Error::Ragged(row));
        }
        points.push(RocPoint {
            param: parse_f64(&rec[0], row, 1)?,
            sensitivity: parse_f64(&rec[1], row, 2)?,
            specificity: parse_f64(&rec[2], row, 3)?,
            count: rec[3].trim().parse().map_err(|_| Error::NonNumeric { row, col: 4 })?,
        });
    }
    Ok(RocCurve { method, points, anchored })
}

pub fn write_roc_curve_csv(path: impl AsRef<Path>, curve: &RocCurve) -> Result<()> {
    write_text(path.as_ref(), &roc_curve_to_csv(curve)?)
}

pub fn load_roc_curve_csv(path: impl AsRef<Path>) -> Result<RocCurve> {
    parse_roc_curve_csv(&read_text(path.as_ref())?)
}

fn join_grid(g: &[f64]) -> String {
    g.iter().map(f64::to_string).collect::<Vec<_>>().join(";")
}

fn split_grid(s: &str) -> Result<Vec<f64>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(|v| v.parse::<f64>().map_err(|_| Error::Format(format!("bad grid value '{v}'")))).collect()
}

/// One row per (graph, p, n, method). The seed and grids go in the
/// metadata header; averaged curves are not included.
pub fn benchmark_to_csv(report: &BenchmarkReport) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "# seed={}", report.seed).ok();
    writeln!(out, "# grid.lambda_l={}", join_grid(&report.grids.lambda_l)).ok();
    writeln!(out, "# grid.alpha_lpc={}", join_grid(&report.grids.alpha_lpc)).ok();
    writeln!(out, "# grid.alpha_r={}", join_grid(&report.grids.alpha_r)).ok();
    let mut w = csv_writer(b',');
    w.write_record(["graph", "p", "n", "method", "mean_auc", "sd_auc", "replications", "failed"])?;
    for r in &report.rows {
        w.write_record([
            r.graph.tag().to_string(),
            r.p.to_string(),
            r.n.to_string(),
            r.method.tag().to_string(),
            r.mean_auc.to_string(),
            r.sd_auc.to_string(),
            r.replications.to_string(),
            r.failed.to_string(),
        ])?;
    }
    out.push_str(&finish(w)?);
    Ok(out)
}

pub fn parse_benchmark_csv(text: &str) -> Result<BenchmarkReport> {
    let (meta, body) = split_metadata(text);
    let seed = meta_get(&meta, "seed")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Format("missing seed".into()))?;
    let grid = |k: &str| split_grid(meta_get(&meta, k).unwrap_or(""));
    let grids = SweepGrids { lambda_l: grid("grid.lambda_l")?, alpha_lpc: grid("grid.alpha_lpc")?, alpha_r: grid("grid.alpha_r")? };
    let mut rows = Vec::new();
    for (k, rec) in csv_reader(&body, b',').records().enumerate().skip(1) {
        let rec = rec?;
        let row = k + 1;
        if rec.len() != 8 {
            return Err(Error::Ragged(row));
        }
        let int = |c: usize| rec[c].trim().parse::<usize>().map_err(|_| Error::NonNumeric { row, col: c + 1 });
        rows.push(BenchmarkRow {
            graph: rec[0].parse::<GraphModel>()?,
            p: int(1)?,
            n: int(2)?,
            method: rec[3].parse()?,
            mean_auc: parse_f64(&rec[4], row, 5)?,
            sd_auc: parse_f64(&rec[5], row, 6)?,
            replications: int(6)?,
            failed: int(7)?,
        });
    }
    Ok(BenchmarkReport { seed, grids, rows, curves: Vec::new() })
}

pub fn write_benchmark_csv(path: impl AsRef<Path>, report: &BenchmarkReport) -> Result<()> {
    write_text(path.as_ref(), &benchmark_to_csv(report)?)
}

pub fn load_benchmark_csv(path: impl AsRef<Path>) -> Result<BenchmarkReport> {
    parse_benchmark_csv(&read_text(path.as_ref())?)
}

/// `.8302` style: four decimals, leading zero dropped below 1.
fn short_decimal(v: f64) -> String {
    if !v.is_finite() {
        return "NA".into();
    }
    let s = format!("{v:.4}");
    match s.strip_prefix("0.") {
        Some(rest) => format!(".{rest}"),
        None => s,
    }
}

/// Fixed-width text table, one line per (p, n, graph) and one
/// `mean(sd)` column per method.
pub fn benchmark_table(report: &BenchmarkReport) -> String {
    let mut methods: Vec<Method> = Vec::new();
    let mut keys: Vec<(usize, usize, GraphModel)> = Vec::new();
    for r in &report.rows {
        if !methods.contains(&r.method) {
            methods.push(r.method);
        }
        if !keys.contains(&(r.p, r.n, r.graph)) {
            keys.push((r.p, r.n, r.graph));
        }
    }
    let mut flagged_single = false;
    let mut failed_total = 0;
    let mut out = String::new();
    write!(out, "{:<16}{:<18}", "(p, n)", "Graph type").ok();
    for m in &methods {
        write!(out, "{:<16}", m.display_name()).ok();
    }
    out.push('\n');
    let mut last_size = None;
    for &(p, n, g) in &keys {
        let size = format!("(p={p}, n={n})");
        let shown = if last_size.as_deref() == Some(size.as_str()) { String::new() } else { size.clone() };
        last_size = Some(size);
        write!(out, "{:<16}{:<18}", shown, g.display_name()).ok();
        for &m in &methods {
            let cell = match report.rows.iter().find(|r| r.p == p && r.n == n && r.graph == g && r.method == m) {
                Some(r) => {
                    failed_total += r.failed;
                    let mark = if r.replications == 1 {
                        flagged_single = true;
                        "*"
                    } else {
                        ""
                    };
                    format!("{}({}){mark}", short_decimal(r.mean_auc), short_decimal(r.sd_auc))
                }
                None => "-".into(),
            };
            write!(out, "{cell:<16}").ok();
        }
        out.push('\n');
    }
    writeln!(out, "seed {}", report.seed).ok();
    if flagged_single {
        out.push_str("* single replication: sd reported as 0\n");
    }
    if failed_total > 0 {
        writeln!(out, "{failed_total} failed replications excluded").ok();
    }
    out
}

/// Averaged ROC curves as polylines in `(1 − specificity, sensitivity)`
/// space, anchors included.
pub fn roc_svg(title: &str, curves: &[(String, &RocCurve)]) -> String {
    const COLORS: [&str; 6] = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"];
    let (size, margin) = (360.0, 44.0);
    let plot = size - 2.0 * margin;
    let x = |f: f64| margin + f * plot;
    let y = |t: f64| size - margin - t * plot;
    let mut out = String::new();
    writeln!(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">").ok();
    writeln!(out, "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>").ok();
    writeln!(out, "  <text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">{}</text>", size / 2.0, xml_escape(title)).ok();
    writeln!(out, "  <rect x=\"{margin}\" y=\"{margin}\" width=\"{plot}\" height=\"{plot}\" fill=\"none\" stroke=\"#444\"/>").ok();
    writeln!(out, "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>", x(0.0), y(0.0), x(1.0), y(1.0)).ok();
    for t in [0.0, 0.5, 1.0] {
        writeln!(out, "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">{t}</text>", x(t), size - margin + 14.0).ok();
        writeln!(out, "  <text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">{t}</text>", margin - 4.0, y(t) + 3.0).ok();
    }
    writeln!(out, "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">1 - specificity</text>", size / 2.0, size - 8.0).ok();
    writeln!(out, "  <text x=\"12\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" transform=\"rotate(-90 12 {})\">sensitivity</text>", size / 2.0, size / 2.0).ok();
    for (k, (label, curve)) in curves.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let pts: Vec<String> = curve.fpr_tpr().iter().map(|&(f, t)| format!("{:.2},{:.2}", x(f), y(t))).collect();
        writeln!(out, "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.8\" points=\"{}\"/>", pts.join(" ")).ok();
        let ly = margin + 14.0 + 14.0 * k as f64;
        writeln!(out, "  <line x1=\"{}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{color}\" stroke-width=\"2\"/>", x(0.62), x(0.68)).ok();
        writeln!(out, "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"10\">{}</text>", x(0.70), ly + 3.0, xml_escape(label)).ok();
    }
    out.push_str("</svg>\n");
    out
}

/// Plain-text overlap report: per-network counts, then every subset with
/// shared (intersection) and exclusive (Venn cell) counts.
pub fn comparison_report(cmp: &NetworkComparison) -> String {
    let mut out = String::new();
    writeln!(out, "{:<24}{:>8}{:>8}{:>12}", "network", "nodes", "edges", "max_degree").ok();
    for s in &cmp.networks {
        writeln!(out, "{:<24}{:>8}{:>8}{:>12}", s.label, s.nodes, s.edges, s.max_degree).ok();
    }
    out.push('\n');
    writeln!(out, "{:<40}{:>14}{:>14}{:>16}{:>16}", "subset", "shared_nodes", "shared_edges", "venn_nodes", "venn_edges").ok();
    for sub in &cmp.subsets {
        let name = sub.members.iter().map(|&m| cmp.networks[m].label.as_str()).collect::<Vec<_>>().join(" & ");
        writeln!(
            out,
            "{:<40}{:>14}{:>14}{:>16}{:>16}",
            name, sub.shared_nodes, sub.shared_edges, sub.exclusive_nodes, sub.exclusive_edges
        )
        .ok();
    }
    out
}
