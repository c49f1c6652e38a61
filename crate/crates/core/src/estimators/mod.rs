//! Network reconstruction methods.
//!
//! Every estimator returns an [`EdgeDecisionSet`] over the same canonical
//! list of unordered pairs `(i, j)`, `i < j`, so results from different
//! methods can be compared pair by pair.

pub mod glasso;
pub mod lpc;
pub mod ridge;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use glasso::{glasso_edges, glasso_fit, GlassoConfig, GlassoFit};
pub use lpc::{lpc_neighborhood, lpc_pair, lpc_reconstruct, LpcConfig, LpcEngine, LpcPair};
pub use ridge::{ggmridge_reconstruct, ridge_partial_correlations, ridge_partial_correlations_from_data, RidgeConfig, RidgeScores};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    GgmRidge,
    Glasso,
    Lpc,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::GgmRidge, Method::Glasso, Method::Lpc];

    pub fn tag(self) -> &'static str {
        match self {
            Method::GgmRidge => "ggmridge",
            Method::Glasso => "glasso",
            Method::Lpc => "lpc",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            Method::GgmRidge => "GGMridge",
            Method::Glasso => "GLasso",
            Method::Lpc => "LPC",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ggmridge" | "ridge" => Ok(Method::GgmRidge),
            "glasso" => Ok(Method::Glasso),
            "lpc" => Ok(Method::Lpc),
            _ => Err(Error::Format(format!("unknown method '{s}'"))),
        }
    }
}

/// Outcome for one unordered pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeDecision {
    pub i: usize,
    pub j: usize,
    pub statistic: f64,
    pub p_value: Option<f64>,
    pub decided: bool,
    /// The method could not produce a statistic for this pair.
    pub undecidable: bool,
}

impl EdgeDecision {
    pub fn undecidable(i: usize, j: usize) -> Self {
        Self { i, j, statistic: f64::NAN, p_value: None, decided: false, undecidable: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeDecisionSet {
    p: usize,
    method: Method,
    names: Option<Vec<String>>,
    decisions: Vec<EdgeDecision>,
}

/// Position of `(i, j)`, `i < j`, in the canonical lexicographic pair order.
#[inline]
pub fn pair_index(p: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < p);
    i * (2 * p - i - 1) / 2 + (j - i - 1)
}

/// All `(i, j)` with `i < j`, lexicographically.
pub fn all_pairs(p: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(p * p.saturating_sub(1) / 2);
    for i in 0..p {
        for j in (i + 1)..p {
            out.push((i, j));
        }
    }
    out
}

impl EdgeDecisionSet {
    /// `decisions` must list every pair of `all_pairs(p)` in that order.
    pub fn new(p: usize, method: Method, decisions: Vec<EdgeDecision>) -> Result<Self> {
        let expected = p * p.saturating_sub(1) / 2;
        if decisions.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: decisions.len() });
        }
        for (k, (i, j)) in all_pairs(p).into_iter().enumerate() {
            let d = &decisions[k];
            if d.i != i || d.j != j {
                return Err(Error::Format(format!("pair {k} is ({}, {}), expected ({i}, {j})", d.i, d.j)));
            }
        }
        Ok(Self { p, method, names: None, decisions })
    }

    pub fn with_names(mut self, names: Option<Vec<String>>) -> Result<Self> {
        if let Some(n) = &names {
            if n.len() != self.p {
                return Err(Error::DimensionMismatch { expected: self.p, found: n.len() });
            }
        }
        self.names = names;
        Ok(self)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.names {
            Some(n) => n[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn decisions(&self) -> &[EdgeDecision] {
        &self.decisions
    }

    pub fn get(&self, i: usize, j: usize) -> &EdgeDecision {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        &self.decisions[pair_index(self.p, a, b)]
    }

    pub fn is_decided(&self, i: usize, j: usize) -> bool {
        i != j && self.get(i, j).decided
    }

    pub fn decided_edges(&self) -> Vec<(usize, usize)> {
        self.decisions.iter().filter(|d| d.decided).map(|d| (d.i, d.j)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.decisions.iter().filter(|d| d.decided).count()
    }

    pub fn undecidable_count(&self) -> usize {
        self.decisions.iter().filter(|d| d.undecidable).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.p];
        for d in self.decisions.iter().filter(|d| d.decided) {
            deg[d.i] += 1;
            deg[d.j] += 1;
        }
        deg
    }

    /// Vertices with at least one decided edge.
    pub fn node_count(&self) -> usize {
        self.degrees().into_iter().filter(|&d| d > 0).count()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Decides every pair whose p-value is below `alpha`; pairs without a
    /// p-value keep their current decision.
    pub fn rethreshold_p(&self, alpha: f64) -> Self {
        let mut out = self.clone();
        for d in &mut out.decisions {
            if let Some(pv) = d.p_value {
                d.decided = !d.undecidable && pv < alpha;
            }
        }
        out
    }
}
