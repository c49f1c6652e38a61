//! Ridge partial correlations with a permutation null.
//!
//! `P̂ = −scale((S + λ_R I)⁻¹)` estimates every partial correlation at once.
//! Each entry is Fisher-transformed and compared against a pooled empirical
//! null built by rerunning the same pipeline on data whose columns have
//! been independently row-permuted, which keeps the marginals and the
//! shrinkage but destroys all dependence between variables.

use rand::seq::SliceRandom;

use super::{all_pairs, EdgeDecision, EdgeDecisionSet, Method};
use crate::error::{Error, Result};
use crate::numerics::{empirical_covariance, fisher_z, invert_spd, scale_matrix, Cholesky, DataMatrix, SymmetricMatrix};
use crate::{par, rng};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RidgeConfig {
    pub lambda_r: f64,
    pub alpha_r: f64,
    /// Number of permuted data sets pooled into the null.
    pub null_reps: usize,
    /// Center columns before forming `S`.
    pub center: bool,
}

impl Default for RidgeConfig {
    fn default() -> Self {
        Self { lambda_r: 1.0, alpha_r: 0.01, null_reps: 20, center: true }
    }
}

impl RidgeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda_r > 0.0) || !self.lambda_r.is_finite() {
            return Err(Error::InvalidParameter { name: "lambda_r", value: self.lambda_r, reason: "must be > 0" });
        }
        if !(self.alpha_r > 0.0 && self.alpha_r <= 1.0) {
            return Err(Error::InvalidParameter { name: "alpha_r", value: self.alpha_r, reason: "must lie in (0, 1]" });
        }
        if self.null_reps == 0 {
            return Err(Error::InvalidParameter { name: "null_reps", value: 0.0, reason: "must be >= 1" });
        }
        Ok(())
    }
}

/// Off-diagonal entries of `−scale((S + λ I)⁻¹)`; the diagonal is reported
/// as 1.
pub fn ridge_partial_correlations(s: &SymmetricMatrix, lambda_r: f64) -> Result<SymmetricMatrix> {
    if !(lambda_r > 0.0) {
        return Err(Error::InvalidParameter { name: "lambda_r", value: lambda_r, reason: "must be > 0" });
    }
    let inv = invert_spd(&s.add_diagonal(lambda_r))?;
    let scaled = scale_matrix(&inv)?;
    Ok(SymmetricMatrix::from_fn(s.dim(), |i, j| if i == j { 1.0 } else { -scaled.get(i, j) }))
}

/// Same quantity computed straight from data with `S = XᵀX / n` (no
/// centering is applied here). When `n < p` it goes through the
/// `n × n` Woodbury identity
/// `(λI + XᵀX/n)⁻¹ = λ⁻¹ (I − Yᵀ Y)`, `Y = L⁻¹ X`, `L Lᵀ = nλI + X Xᵀ`,
/// which avoids a `p × p` factorisation.
pub fn ridge_partial_correlations_from_data(x: &DataMatrix, lambda_r: f64) -> Result<SymmetricMatrix> {
    let (n, p) = (x.n(), x.p());
    if n >= p {
        return ridge_partial_correlations(&empirical_covariance(x, false), lambda_r);
    }
    if !(lambda_r > 0.0) {
        return Err(Error::InvalidParameter { name: "lambda_r", value: lambda_r, reason: "must be > 0" });
    }
    let gram = SymmetricMatrix::from_fn(n, |a, b| {
        let dot: f64 = x.row(a).iter().zip(x.row(b)).map(|(u, v)| u * v).sum();
        if a == b {
            dot + n as f64 * lambda_r
        } else {
            dot
        }
    });
    let chol = Cholesky::new(&gram)?;
    // Forward substitution, one row of Y at a time.
    let mut y = vec![0.0; n * p];
    for a in 0..n {
        let (done, rest) = y.split_at_mut(a * p);
        let row = &mut rest[..p];
        row.copy_from_slice(x.row(a));
        for b in 0..a {
            let l = chol.l(a, b);
            for (r, &prev) in row.iter_mut().zip(&done[b * p..(b + 1) * p]) {
                *r -= l * prev;
            }
        }
        let d = chol.l(a, a);
        row.iter_mut().for_each(|r| *r /= d);
    }
    let mut yty = vec![0.0; p * p];
    for a in 0..n {
        let row = &y[a * p..(a + 1) * p];
        for i in 0..p {
            let ri = row[i];
            if ri == 0.0 {
                continue;
            }
            for (t, &rj) in yty[i * p..(i + 1) * p].iter_mut().zip(row).skip(i) {
                *t += ri * rj;
            }
        }
    }
    let diag: Vec<f64> = (0..p).map(|i| 1.0 - yty[i * p + i]).collect();
    if let Some(i) = diag.iter().position(|&d| !(d > 0.0)) {
        return Err(Error::NonpositiveDiagonal(i));
    }
    Ok(SymmetricMatrix::from_fn(p, |i, j| if i == j { 1.0 } else { yty[i * p + j] / (diag[i] * diag[j]).sqrt() }))
}

fn fisher_upper(pc: &SymmetricMatrix) -> Vec<f64> {
    all_pairs(pc.dim())
        .into_iter()
        .map(|(i, j)| fisher_z(pc.get(i, j)).expect("ridge partial correlations lie strictly inside (-1, 1)"))
        .collect()
}

/// Observed Fisher-z scores with permutation p-values, independent of the
/// test level so a whole `α_R` sweep can reuse one computation.
#[derive(Debug, Clone)]
pub struct RidgeScores {
    pub p: usize,
    pub partial: SymmetricMatrix,
    pub z: Vec<f64>,
    pub p_values: Vec<f64>,
    pub pool_size: usize,
}

impl RidgeScores {
    pub fn compute(data: &DataMatrix, cfg: &RidgeConfig, seed: u64) -> Result<Self> {
        let keys: Vec<u64> = (0..data.p() as u64).collect();
        Self::compute_with_keys(data, cfg, seed, &keys)
    }

    /// `column_keys[c]` names the random stream that permutes column `c`, so
    /// relabeled data can reproduce the same null exactly.
    pub fn compute_with_keys(data: &DataMatrix, cfg: &RidgeConfig, seed: u64, column_keys: &[u64]) -> Result<Self> {
        cfg.validate()?;
        if column_keys.len() != data.p() {
            return Err(Error::DimensionMismatch { expected: data.p(), found: column_keys.len() });
        }
        let base = if cfg.center { data.centered() } else { data.clone() };
        let partial = ridge_partial_correlations_from_data(&base, cfg.lambda_r)?;
        let z = fisher_upper(&partial);

        let null: Vec<Result<Vec<f64>>> = par::map_indices(cfg.null_reps, |b| {
            let shuffled = permute_columns(&base, seed, b as u64, column_keys)?;
            let pc = ridge_partial_correlations_from_data(&shuffled, cfg.lambda_r)?;
            Ok(fisher_upper(&pc))
        });
        let mut pool: Vec<f64> = Vec::with_capacity(cfg.null_reps * z.len());
        for rep in null {
            pool.extend(rep?.into_iter().map(f64::abs));
        }
        pool.sort_by(f64::total_cmp);
        let total = pool.len() as f64;
        let p_values = z
            .iter()
            .map(|&obs| {
                let below = pool.partition_point(|&v| v < obs.abs());
                let at_least = pool.len() - below;
                (1.0 + at_least as f64) / (1.0 + total)
            })
            .collect();
        Ok(Self { p: data.p(), partial, z, p_values, pool_size: pool.len() })
    }

    pub fn decide(&self, alpha_r: f64) -> EdgeDecisionSet {
        let decisions = all_pairs(self.p)
            .into_iter()
            .enumerate()
            .map(|(k, (i, j))| EdgeDecision {
                i,
                j,
                statistic: self.partial.get(i, j),
                p_value: Some(self.p_values[k]),
                decided: self.p_values[k] < alpha_r,
                undecidable: false,
            })
            .collect();
        EdgeDecisionSet::new(self.p, Method::GgmRidge, decisions).expect("canonical pair order")
    }
}

fn permute_columns(x: &DataMatrix, seed: u64, rep: u64, keys: &[u64]) -> Result<DataMatrix> {
    let (n, p) = (x.n(), x.p());
    let mut values = vec![0.0; n * p];
    let mut order: Vec<usize> = (0..n).collect();
    for (c, &key) in keys.iter().enumerate() {
        for (r, o) in order.iter_mut().enumerate() {
            *o = r;
        }
        let mut g = rng::seeded(rng::derive_seed(seed, &[rep, key]), rng::stream::NULL);
        order.shuffle(&mut g);
        for (r, &src) in order.iter().enumerate() {
            values[r * p + c] = x.get(src, c);
        }
    }
    DataMatrix::new(n, p, values)
}

/// Decided iff the pooled permutation p-value is below `α_R`. The statistic
/// is the ridge partial correlation.
pub fn ggmridge_reconstruct(data: &DataMatrix, cfg: &RidgeConfig, seed: u64) -> Result<EdgeDecisionSet> {
    RidgeScores::compute(data, cfg, seed)?
        .decide(cfg.alpha_r)
        .with_names(data.names().map(<[String]>::to_vec))
}
