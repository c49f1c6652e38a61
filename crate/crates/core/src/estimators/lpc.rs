//! Local partial correlation.
//!
//! Each pair `{i, j}` is conditioned only on a small neighbourhood: the
//! variables significantly Pearson-correlated with `i` or `j`, capped at
//! `⌊n/2⌋` members ranked by `max(|r_ik|, |r_jk|)`. The local partial
//! correlation is read off the inverse of the correlation submatrix on
//! `{i, j} ∪ Z` and tested with Fisher's z:
//! `√(n − |Z| − 3)·|ψ(ρ̂)| > Φ⁻¹(1 − α_LPC/2)`.
//!
//! Partial correlations are invariant to rescaling the variables, so the
//! correlation submatrix gives the same estimate as the centred empirical
//! covariance on the same columns.

use super::{all_pairs, EdgeDecision, EdgeDecisionSet, Method};
use crate::error::{Error, Result};
use crate::numerics::{
    fisher_z, normal_quantile, normal_two_sided_p, pearson_matrix, Cholesky, DataMatrix, PearsonTest,
    SymmetricMatrix,
};
use crate::par;

/// Levels are clamped into this closed range before use.
const LEVEL_FLOOR: f64 = 1e-12;
const LEVEL_CEIL: f64 = 1.0 - 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpcConfig {
    /// Screening level for the relevance-network neighbourhoods.
    pub alpha: f64,
    /// Level of the edge test.
    pub alpha_lpc: f64,
}

impl Default for LpcConfig {
    fn default() -> Self {
        Self { alpha: 0.1, alpha_lpc: 0.02 }
    }
}

impl LpcConfig {
    pub fn new(alpha: f64, alpha_lpc: f64) -> Result<Self> {
        let cfg = Self { alpha, alpha_lpc };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("alpha", self.alpha), ("alpha_lpc", self.alpha_lpc)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidParameter { name, value: v, reason: "must lie in (0, 1)" });
            }
        }
        Ok(())
    }

    /// Both levels set to `level`, clamped into `(0, 1)`.
    pub fn tied(level: f64) -> Self {
        let v = level.clamp(LEVEL_FLOOR, LEVEL_CEIL);
        Self { alpha: v, alpha_lpc: v }
    }
}

/// Neighbourhood cap `⌊n/2⌋`.
pub fn neighborhood_cap(n: usize) -> usize {
    n / 2
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpcPair {
    pub rho_hat: f64,
    pub z_size: usize,
    pub statistic: f64,
    pub p_value: f64,
    pub decided: bool,
}

/// `√(n − |Z| − 3)·|ψ(ρ̂)|` and its two-sided normal p-value.
pub fn lpc_statistic(rho_hat: f64, z_size: usize, n: usize) -> Result<(f64, f64)> {
    let df = n as i64 - z_size as i64 - 3;
    if df < 1 {
        return Err(Error::InsufficientSamples(df));
    }
    let stat = (df as f64).sqrt() * fisher_z(rho_hat)?.abs();
    Ok((stat, normal_two_sided_p(stat)))
}

/// Rejection threshold `Φ⁻¹(1 − α_LPC/2)`.
pub fn lpc_threshold(alpha_lpc: f64) -> f64 {
    normal_quantile(1.0 - alpha_lpc / 2.0)
}

/// Precomputed correlation structure for repeated neighbourhood queries on
/// one data set.
#[derive(Debug, Clone)]
pub struct LpcEngine {
    n: usize,
    corr: SymmetricMatrix,
    test: PearsonTest,
    // Per variable: the other variables sorted by |r| descending, then index.
    ranked: Vec<Vec<(f64, usize)>>,
}

/// Statistic for one pair at a fixed screening level; independent of the
/// edge-test level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairOutcome {
    Estimated { rho_hat: f64, z_size: usize, statistic: f64, p_value: f64 },
    Undecidable,
}

impl LpcEngine {
    pub fn new(data: &DataMatrix) -> Result<Self> {
        Self::from_correlation(pearson_matrix(data)?, data.n())
    }

    pub fn from_correlation(corr: SymmetricMatrix, n: usize) -> Result<Self> {
        if n < 5 {
            return Err(Error::TooSmall { what: "samples", needed: 5, found: n });
        }
        let p = corr.dim();
        let ranked = (0..p)
            .map(|i| {
                let mut v: Vec<(f64, usize)> =
                    (0..p).filter(|&k| k != i).map(|k| (corr.get(i, k).abs(), k)).collect();
                v.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
                v
            })
            .collect();
        Ok(Self { n, corr, test: PearsonTest::new(n)?, ranked })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.corr.dim()
    }

    pub fn correlation(&self) -> &SymmetricMatrix {
        &self.corr
    }

    /// Number of leading entries of each ranked list that are significant
    /// at `alpha`.
    fn screened_lengths(&self, alpha: f64) -> Vec<usize> {
        let r_crit = self.test.critical_r(alpha);
        self.ranked.iter().map(|list| list.partition_point(|&(r, _)| r > r_crit)).collect()
    }

    fn merge_neighborhood(&self, i: usize, j: usize, len_i: usize, len_j: usize) -> Vec<usize> {
        let cap = neighborhood_cap(self.n);
        let a = &self.ranked[i][..len_i];
        let b = &self.ranked[j][..len_j];
        let (mut x, mut y) = (0, 0);
        let mut out = Vec::with_capacity(cap);
        while out.len() < cap && (x < a.len() || y < b.len()) {
            let take_a = match (a.get(x), b.get(y)) {
                (Some(u), Some(v)) => u.0 > v.0 || (u.0 == v.0 && u.1 <= v.1),
                (Some(_), None) => true,
                _ => false,
            };
            let k = if take_a {
                x += 1;
                a[x - 1].1
            } else {
                y += 1;
                b[y - 1].1
            };
            // The first occurrence of k sits at its larger score, so later
            // duplicates are simply skipped.
            if k != i && k != j && !out.contains(&k) {
                out.push(k);
            }
        }
        out
    }

    /// Screened neighbourhood `Z*` of `{i, j}` at level `alpha`, ordered by
    /// rank.
    pub fn neighborhood(&self, i: usize, j: usize, alpha: f64) -> Vec<usize> {
        let r_crit = self.test.critical_r(alpha);
        let len = |v: usize| self.ranked[v].partition_point(|&(r, _)| r > r_crit);
        self.merge_neighborhood(i, j, len(i), len(j))
    }

    /// Local partial correlation of `{i, j}` given `z`, dropping the
    /// lowest-ranked members of `z` while the local correlation matrix is
    /// singular. Returns `(ρ̂, |Z| used)`.
    pub fn local_partial_correlation(&self, i: usize, j: usize, z: &[usize]) -> Option<(f64, usize)> {
        let mut used = z.len();
        loop {
            let mut idx = Vec::with_capacity(used + 2);
            idx.push(i);
            idx.push(j);
            idx.extend_from_slice(&z[..used]);
            let local = self.corr.submatrix(&idx);
            if let Ok(chol) = Cholesky::new(&local) {
                let omega = chol.inverse();
                let rho = -omega.get(0, 1) / (omega.get(0, 0) * omega.get(1, 1)).sqrt();
                if rho.is_finite() && rho.abs() < 1.0 {
                    return Some((rho, used));
                }
            }
            if used == 0 {
                return None;
            }
            used -= 1;
        }
    }

    fn outcome(&self, i: usize, j: usize, len_i: usize, len_j: usize) -> PairOutcome {
        let z = self.merge_neighborhood(i, j, len_i, len_j);
        let Some((rho_hat, z_size)) = self.local_partial_correlation(i, j, &z) else {
            return PairOutcome::Undecidable;
        };
        match lpc_statistic(rho_hat, z_size, self.n) {
            Ok((statistic, p_value)) => PairOutcome::Estimated { rho_hat, z_size, statistic, p_value },
            Err(_) => PairOutcome::Undecidable,
        }
    }

    /// Statistics for every pair in canonical order at screening level
    /// `alpha`.
    pub fn outcomes(&self, alpha: f64) -> Vec<PairOutcome> {
        let lens = self.screened_lengths(alpha);
        let pairs = all_pairs(self.p());
        par::map_indices(pairs.len(), |k| {
            let (i, j) = pairs[k];
            self.outcome(i, j, lens[i], lens[j])
        })
    }

    pub fn pair(&self, i: usize, j: usize, cfg: &LpcConfig) -> Result<LpcPair> {
        let z = self.neighborhood(i, j, cfg.alpha);
        let (rho_hat, z_size) =
            self.local_partial_correlation(i, j, &z).ok_or(Error::SingularLocalCovariance)?;
        let (statistic, p_value) = lpc_statistic(rho_hat, z_size, self.n)?;
        let decided = statistic > lpc_threshold(cfg.alpha_lpc);
        Ok(LpcPair { rho_hat, z_size, statistic, p_value, decided })
    }
}

/// Applies the edge test at `alpha_lpc` to precomputed outcomes.
pub fn decide(p: usize, outcomes: &[PairOutcome], alpha_lpc: f64) -> EdgeDecisionSet {
    let threshold = lpc_threshold(alpha_lpc);
    let decisions = all_pairs(p)
        .into_iter()
        .zip(outcomes)
        .map(|((i, j), o)| match *o {
            PairOutcome::Estimated { rho_hat, statistic, p_value, .. } => EdgeDecision {
                i,
                j,
                statistic: rho_hat,
                p_value: Some(p_value),
                decided: statistic > threshold,
                undecidable: false,
            },
            PairOutcome::Undecidable => EdgeDecision::undecidable(i, j),
        })
        .collect();
    EdgeDecisionSet::new(p, Method::Lpc, decisions).expect("canonical pair order")
}

/// Screened neighbourhood of `{i, j}` from a correlation matrix.
pub fn lpc_neighborhood(corr: &SymmetricMatrix, i: usize, j: usize, n: usize, alpha: f64) -> Result<Vec<usize>> {
    if i == j {
        return Err(Error::Format("neighbourhood needs two distinct variables".into()));
    }
    Ok(LpcEngine::from_correlation(corr.clone(), n)?.neighborhood(i, j, alpha))
}

pub fn lpc_pair(data: &DataMatrix, i: usize, j: usize, cfg: &LpcConfig) -> Result<LpcPair> {
    cfg.validate()?;
    LpcEngine::new(data)?.pair(i, j, cfg)
}

/// Tests every pair. The reported statistic is the local partial
/// correlation `ρ̂`; pairs whose local covariance stays singular are flagged
/// undecidable instead of aborting the run.
pub fn lpc_reconstruct(data: &DataMatrix, cfg: &LpcConfig) -> Result<EdgeDecisionSet> {
    cfg.validate()?;
    let engine = LpcEngine::new(data)?;
    let outcomes = engine.outcomes(cfg.alpha);
    decide(data.p(), &outcomes, cfg.alpha_lpc).with_names(data.names().map(<[String]>::to_vec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statistic_examples() {
        let (s, pv) = lpc_statistic(0.0, 3, 30).unwrap();
        assert_eq!(s, 0.0);
        assert_eq!(pv, 1.0);
        assert!(!(s > lpc_threshold(0.999)));

        let (s, _) = lpc_statistic(0.5, 5, 58).unwrap();
        let expected = 50f64.sqrt() * 0.5 * 3f64.ln();
        assert!((s - expected).abs() < 1e-12);
        assert!((s - 3.8842).abs() < 1e-4);
        assert!((lpc_threshold(0.01) - 2.5758).abs() < 1e-4);
        assert!(s > lpc_threshold(0.01));

        assert!((normal_two_sided_p(1.96) - 0.05).abs() < 1e-4);
        assert!(1.96 > lpc_threshold(0.051));
        assert!(!(1.96 > lpc_threshold(0.049)));

        assert_eq!(lpc_statistic(0.1, 5, 8), Err(Error::InsufficientSamples(0)));
    }

    #[test]
    fn config_validation() {
        assert!(LpcConfig::new(0.0, 0.5).is_err());
        assert!(LpcConfig::new(0.5, 1.0).is_err());
        let t = LpcConfig::tied(1.0);
        assert!(t.alpha < 1.0 && t.validate().is_ok());
    }

    #[test]
    fn cap_and_exclusion() {
        // 202 variables all strongly correlated: every candidate significant.
        let p = 202;
        let corr = SymmetricMatrix::from_fn(p, |a, b| if a == b { 1.0 } else { 0.9 - 1e-4 * (a + b) as f64 });
        let z = lpc_neighborhood(&corr, 0, 1, 20, 0.05).unwrap();
        assert_eq!(z.len(), 10);
        assert!(!z.contains(&0) && !z.contains(&1));
        // Highest max(|r_0k|, |r_1k|) means smallest k.
        assert_eq!(z, (2..12).collect::<Vec<_>>());
    }

    #[test]
    fn ties_break_by_index() {
        let p = 8;
        let corr = SymmetricMatrix::from_fn(p, |a, b| if a == b { 1.0 } else { 0.95 });
        let z = lpc_neighborhood(&corr, 3, 5, 6, 0.5).unwrap();
        assert_eq!(z, vec![0, 1, 2]);
    }
}
