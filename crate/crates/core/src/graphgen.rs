//! Ground-truth random graphs: Erdős–Rényi, Barabási–Albert and
//! Watts–Strogatz.

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::rng::{self, stream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphModel {
    ErdosRenyi,
    BarabasiAlbert,
    WattsStrogatz,
    Custom,
}

impl GraphModel {
    pub fn tag(self) -> &'static str {
        match self {
            GraphModel::ErdosRenyi => "erdos_renyi",
            GraphModel::BarabasiAlbert => "barabasi_albert",
            GraphModel::WattsStrogatz => "watts_strogatz",
            GraphModel::Custom => "custom",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            GraphModel::ErdosRenyi => "Erdos-Renyi",
            GraphModel::BarabasiAlbert => "Barabasi-Albert",
            GraphModel::WattsStrogatz => "Watts-Strogatz",
            GraphModel::Custom => "Custom",
        }
    }
}

impl fmt::Display for GraphModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for GraphModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "er" | "erdos_renyi" | "erdos-renyi" => Ok(GraphModel::ErdosRenyi),
            "ba" | "barabasi_albert" | "barabasi-albert" | "scale_free" => Ok(GraphModel::BarabasiAlbert),
            "ws" | "watts_strogatz" | "watts-strogatz" | "small_world" => Ok(GraphModel::WattsStrogatz),
            "custom" => Ok(GraphModel::Custom),
            _ => Err(Error::Format(format!("unknown graph model '{s}'"))),
        }
    }
}

/// Binary symmetric adjacency matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    p: usize,
    bits: Vec<bool>,
    model: GraphModel,
}

impl AdjacencyMatrix {
    pub fn empty(p: usize, model: GraphModel) -> Self {
        Self { p, bits: vec![false; p * p], model }
    }

    pub fn from_edges(p: usize, edges: &[(usize, usize)], model: GraphModel) -> Result<Self> {
        let mut adj = Self::empty(p, model);
        for &(i, j) in edges {
            if i >= p || j >= p {
                return Err(Error::DimensionMismatch { expected: p, found: i.max(j) + 1 });
            }
            if i == j {
                return Err(Error::Format(format!("self loop on node {i}")));
            }
            adj.insert(i, j);
        }
        Ok(adj)
    }

    /// Path graph `0 - 1 - ... - (p-1)`.
    pub fn chain(p: usize) -> Self {
        let edges: Vec<_> = (1..p).map(|i| (i - 1, i)).collect();
        Self::from_edges(p, &edges, GraphModel::Custom).expect("valid chain")
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn model(&self) -> GraphModel {
        self.model
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.p + j]
    }

    fn insert(&mut self, i: usize, j: usize) {
        self.bits[i * self.p + j] = true;
        self.bits[j * self.p + i] = true;
    }

    fn remove(&mut self, i: usize, j: usize) {
        self.bits[i * self.p + j] = false;
        self.bits[j * self.p + i] = false;
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.p {
            for j in (i + 1)..self.p {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count() / 2
    }

    pub fn degree(&self, i: usize) -> usize {
        self.bits[i * self.p..(i + 1) * self.p].iter().filter(|&&b| b).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.p).map(|i| self.degree(i)).collect()
    }

    /// Relabels nodes so that new node `a` is old node `perm[a]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.p);
        let mut out = Self::empty(self.p, self.model);
        for a in 0..self.p {
            for b in (a + 1)..self.p {
                if self.has_edge(perm[a], perm[b]) {
                    out.insert(a, b);
                }
            }
        }
        out
    }

    /// Symmetric, zero diagonal.
    pub fn is_valid(&self) -> bool {
        (0..self.p).all(|i| !self.has_edge(i, i))
            && (0..self.p).all(|i| (0..self.p).all(|j| self.has_edge(i, j) == self.has_edge(j, i)))
    }

    /// `i<TAB>j` per edge, 0-based, `i < j`, one per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for (i, j) in self.edges() {
            s.push_str(&format!("{i}\t{j}\n"));
        }
        s
    }

    /// Parses the `i<TAB>j` format. With `p = None` the node count is taken
    /// as one more than the largest index seen.
    pub fn parse_edge_list(text: &str, p: Option<usize>) -> Result<Self> {
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('\t');
            let parse = |f: Option<&str>| -> Result<usize> {
                f.and_then(|v| v.trim().parse().ok())
                    .ok_or_else(|| Error::Format(format!("bad edge on line {}", lineno + 1)))
            };
            let i = parse(fields.next())?;
            let j = parse(fields.next())?;
            edges.push((i.min(j), i.max(j)));
        }
        let p = p.unwrap_or_else(|| edges.iter().map(|&(_, j)| j + 1).max().unwrap_or(0));
        Self::from_edges(p, &edges, GraphModel::Custom)
    }
}

fn check_nodes(p: usize) -> Result<()> {
    if p < 2 {
        return Err(Error::TooSmall { what: "nodes", needed: 2, found: p });
    }
    Ok(())
}

/// Each of the `C(p, 2)` pairs is an edge independently with probability
/// `edge_prob`.
pub fn erdos_renyi(p: usize, edge_prob: f64, seed: u64) -> Result<AdjacencyMatrix> {
    check_nodes(p)?;
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::InvalidProbability(edge_prob));
    }
    let mut rng = rng::seeded(seed, stream::GRAPH);
    let mut adj = AdjacencyMatrix::empty(p, GraphModel::ErdosRenyi);
    for i in 0..p {
        for j in (i + 1)..p {
            if rng.random::<f64>() < edge_prob {
                adj.insert(i, j);
            }
        }
    }
    Ok(adj)
}

/// Preferential attachment growth. Starts from `m` isolated nodes; every
/// subsequent node links to `m` distinct existing nodes drawn with
/// probability proportional to `degree + 1`. Produces `m·(p − m)` edges.
pub fn barabasi_albert(p: usize, m: usize, seed: u64) -> Result<AdjacencyMatrix> {
    check_nodes(p)?;
    if m == 0 || m >= p {
        return Err(Error::InvalidM { m, p });
    }
    let mut rng = rng::seeded(seed, stream::GRAPH);
    let mut adj = AdjacencyMatrix::empty(p, GraphModel::BarabasiAlbert);
    let mut degree = vec![0_u64; p];
    let mut chosen = Vec::with_capacity(m);
    for v in m..p {
        chosen.clear();
        for _ in 0..m {
            let total: u64 = (0..v).filter(|u| !chosen.contains(u)).map(|u| degree[u] + 1).sum();
            let mut x = rng.random_range(0..total);
            let pick = (0..v)
                .filter(|u| !chosen.contains(u))
                .find(|&u| {
                    let w = degree[u] + 1;
                    if x < w {
                        true
                    } else {
                        x -= w;
                        false
                    }
                })
                .expect("draw lies inside the total weight");
            chosen.push(pick);
        }
        for &u in &chosen {
            adj.insert(u, v);
            degree[u] += 1;
            degree[v] += 1;
        }
    }
    Ok(adj)
}

/// Ring lattice where each node links to its `k` nearest neighbours, after
/// which every lattice edge `(u, u + j)` is redirected with probability
/// `beta` to a uniformly chosen node that is neither `u` nor already
/// adjacent to it. The edge count stays `p·k/2`.
pub fn watts_strogatz(p: usize, k: usize, beta: f64, seed: u64) -> Result<AdjacencyMatrix> {
    check_nodes(p)?;
    if k % 2 != 0 || k < 2 || k >= p {
        return Err(Error::InvalidK { k, p });
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidProbability(beta));
    }
    let mut rng = rng::seeded(seed, stream::GRAPH);
    let mut adj = AdjacencyMatrix::empty(p, GraphModel::WattsStrogatz);
    let half = k / 2;
    for u in 0..p {
        for j in 1..=half {
            adj.insert(u, (u + j) % p);
        }
    }
    for j in 1..=half {
        for u in 0..p {
            if rng.random::<f64>() >= beta {
                continue;
            }
            let free = p - 1 - adj.degree(u);
            if free == 0 {
                continue;
            }
            let mut idx = rng.random_range(0..free);
            let target = (0..p)
                .filter(|&w| w != u && !adj.has_edge(u, w))
                .find(|_| {
                    if idx == 0 {
                        true
                    } else {
                        idx -= 1;
                        false
                    }
                })
                .expect("free slot exists");
            adj.remove(u, (u + j) % p);
            adj.insert(u, target);
        }
    }
    Ok(adj)
}

/// A graph model together with its generator parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphSpec {
    /// `edge_prob = None` means `2 / p` (mean degree 2).
    ErdosRenyi { edge_prob: Option<f64> },
    BarabasiAlbert { m: usize },
    WattsStrogatz { k: usize, beta: f64 },
}

impl GraphSpec {
    pub fn default_for(model: GraphModel) -> Option<Self> {
        match model {
            GraphModel::ErdosRenyi => Some(GraphSpec::ErdosRenyi { edge_prob: None }),
            GraphModel::BarabasiAlbert => Some(GraphSpec::BarabasiAlbert { m: 2 }),
            GraphModel::WattsStrogatz => Some(GraphSpec::WattsStrogatz { k: 2, beta: 0.1 }),
            GraphModel::Custom => None,
        }
    }

    pub fn model(&self) -> GraphModel {
        match self {
            GraphSpec::ErdosRenyi { .. } => GraphModel::ErdosRenyi,
            GraphSpec::BarabasiAlbert { .. } => GraphModel::BarabasiAlbert,
            GraphSpec::WattsStrogatz { .. } => GraphModel::WattsStrogatz,
        }
    }

    pub fn generate(&self, p: usize, seed: u64) -> Result<AdjacencyMatrix> {
        match *self {
            GraphSpec::ErdosRenyi { edge_prob } => {
                let prob = edge_prob.unwrap_or_else(|| (2.0 / p as f64).min(1.0));
                erdos_renyi(p, prob, seed)
            }
            GraphSpec::BarabasiAlbert { m } => barabasi_albert(p, m, seed),
            GraphSpec::WattsStrogatz { k, beta } => watts_strogatz(p, k, beta, seed),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_acyclic(adj: &AdjacencyMatrix) -> bool {
        // A forest has |E| = |V| - components.
        let p = adj.p();
        let mut seen = vec![false; p];
        let mut components = 0;
        for s in 0..p {
            if seen[s] {
                continue;
            }
            components += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for v in 0..p {
                    if adj.has_edge(u, v) && !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        adj.edge_count() == p - components
    }

    #[test]
    fn erdos_renyi_extremes() {
        assert_eq!(erdos_renyi(12, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(erdos_renyi(12, 1.0, 1).unwrap().edge_count(), 66);
        assert_eq!(erdos_renyi(12, 1.5, 1), Err(Error::InvalidProbability(1.5)));
        assert!(erdos_renyi(1, 0.5, 1).is_err());
    }

    #[test]
    fn erdos_renyi_mean_edge_count() {
        // Binomial(45, 0.2): mean 9, variance 7.2.
        let seeds = 10_000;
        let total: usize = (0..seeds).map(|s| erdos_renyi(10, 0.2, s).unwrap().edge_count()).sum();
        let mean = total as f64 / seeds as f64;
        let se = (7.2_f64 / seeds as f64).sqrt();
        assert!((mean - 9.0).abs() < 3.0 * se, "mean {mean}");
    }

    #[test]
    fn barabasi_albert_counts() {
        let tree = barabasi_albert(20, 1, 3).unwrap();
        assert_eq!(tree.edge_count(), 19);
        assert!(is_acyclic(&tree));
        for seed in 0..50 {
            let g = barabasi_albert(10, 2, seed).unwrap();
            assert_eq!(g.edge_count(), 16);
            assert!(g.degrees().into_iter().max().unwrap() >= 2);
        }
        assert_eq!(barabasi_albert(5, 5, 0), Err(Error::InvalidM { m: 5, p: 5 }));
        assert_eq!(barabasi_albert(5, 0, 0), Err(Error::InvalidM { m: 0, p: 5 }));
    }

    #[test]
    fn watts_strogatz_counts() {
        let ring = watts_strogatz(20, 2, 0.0, 9).unwrap();
        assert_eq!(ring.edge_count(), 20);
        assert!(ring.degrees().iter().all(|&d| d == 2));
        assert!((0..20).all(|i| ring.has_edge(i, (i + 1) % 20)));
        for seed in 0..20 {
            assert_eq!(watts_strogatz(20, 4, 1.0, seed).unwrap().edge_count(), 40);
        }
        for seed in 0..500 {
            let g = watts_strogatz(30, 4, 0.1, seed).unwrap();
            assert!(g.degrees().iter().all(|&d| d >= 2), "seed {seed}");
        }
        assert_eq!(watts_strogatz(10, 3, 0.1, 0), Err(Error::InvalidK { k: 3, p: 10 }));
        assert_eq!(watts_strogatz(4, 4, 0.1, 0), Err(Error::InvalidK { k: 4, p: 4 }));
        assert!(watts_strogatz(10, 2, -0.1, 0).is_err());
    }

    #[test]
    fn edge_list_roundtrip() {
        let g = erdos_renyi(15, 0.3, 4).unwrap();
        let text = g.to_edge_list();
        assert!(text.lines().all(|l| {
            let (a, b) = l.split_once('\t').unwrap();
            a.parse::<usize>().unwrap() < b.parse::<usize>().unwrap()
        }));
        let back = AdjacencyMatrix::parse_edge_list(&text, Some(15)).unwrap();
        assert_eq!(back.edges(), g.edges());
        assert_eq!(AdjacencyMatrix::parse_edge_list("0\t2\n", None).unwrap().p(), 3);
        assert!(AdjacencyMatrix::parse_edge_list("0 x\n", None).is_err());
    }

    #[test]
    fn model_names_parse() {
        assert_eq!("er".parse::<GraphModel>().unwrap(), GraphModel::ErdosRenyi);
        assert_eq!("ws".parse::<GraphModel>().unwrap(), GraphModel::WattsStrogatz);
        assert_eq!("barabasi_albert".parse::<GraphModel>().unwrap(), GraphModel::BarabasiAlbert);
        assert!("tree".parse::<GraphModel>().is_err());
    }
}
