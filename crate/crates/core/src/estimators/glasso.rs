//! Graphical lasso.
//!
//! Minimises the penalised negative log-likelihood
//! `−log det Θ + tr(SΘ) + λ·Σ_ij |θ_ij|` (diagonal included) by block
//! coordinate descent over the columns of the covariance estimate `W`.
//! The diagonal is fixed at `W_jj = s_jj + λ`; for column `j` the
//! off-diagonal block solves the lasso
//!
//! ```text
//!   β = argmin ½ βᵀ W₁₁ β − s₁₂ᵀ β + λ‖β‖₁,    w₁₂ = W₁₁ β
//! ```
//!
//! by cyclic coordinate descent, warm-started from the previous sweep.
//! The precision matrix is recovered from the coefficients,
//! `θ₂₂ = 1 / (w₂₂ − w₁₂ᵀ β)` and `θ₁₂ = −β θ₂₂`, so soft-thresholding
//! carries exact zeros into `Θ`.

use super::{all_pairs, EdgeDecision, EdgeDecisionSet, Method};
use crate::error::{Error, Result};
use crate::numerics::{invert_spd, Cholesky, SymmetricMatrix};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlassoConfig {
    pub lambda: f64,
    /// Outer convergence: mean absolute change of the off-diagonal of `W`
    /// over a sweep below `tol · mean |offdiag(S)|`.
    pub tol: f64,
    pub max_outer: usize,
    /// Record the objective after every outer sweep.
    pub record_trace: bool,
}

impl Default for GlassoConfig {
    fn default() -> Self {
        Self { lambda: 0.6, tol: 1e-4, max_outer: 100, record_trace: false }
    }
}

impl GlassoConfig {
    pub fn with_lambda(lambda: f64) -> Self {
        Self { lambda, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda >= 0.0) || !self.lambda.is_finite() {
            return Err(Error::InvalidParameter { name: "lambda", value: self.lambda, reason: "must be >= 0" });
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter { name: "tol", value: self.tol, reason: "must be > 0" });
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct GlassoFit {
    pub precision: SymmetricMatrix,
    /// `W = Θ⁻¹`, recomputed from the final precision.
    pub covariance: SymmetricMatrix,
    pub lambda: f64,
    pub iterations: usize,
    /// `false` when `max_outer` was reached first; the last iterate is
    /// still returned.
    pub converged: bool,
    /// Objective at the precision implied by each sweep, when requested.
    pub objective_trace: Vec<f64>,
}

/// `−log det Θ + tr(SΘ) + λ·Σ_ij |θ_ij|`.
pub fn objective(s: &SymmetricMatrix, theta: &SymmetricMatrix, lambda: f64) -> Result<f64> {
    let log_det = Cholesky::new(theta)?.log_det();
    let trace: f64 = s.as_slice().iter().zip(theta.as_slice()).map(|(a, b)| a * b).sum();
    let l1: f64 = theta.as_slice().iter().map(|v| v.abs()).sum();
    Ok(-log_det + trace + lambda * l1)
}

/// Largest violation of the optimality conditions at `(Θ, W = Θ⁻¹)`:
/// `W_ii = s_ii + λ`; `W_ij = s_ij + λ·sign(θ_ij)` where `θ_ij ≠ 0`;
/// `|W_ij − s_ij| ≤ λ` where `θ_ij = 0`.
pub fn kkt_residual(s: &SymmetricMatrix, fit: &GlassoFit) -> f64 {
    let w = &fit.covariance;
    let theta = &fit.precision;
    let lambda = fit.lambda;
    let p = s.dim();
    let mut worst = 0.0_f64;
    for i in 0..p {
        worst = worst.max((w.get(i, i) - s.get(i, i) - lambda).abs());
        for j in (i + 1)..p {
            let g = w.get(i, j) - s.get(i, j);
            let t = theta.get(i, j);
            let r = if t == 0.0 { (g.abs() - lambda).max(0.0) } else { (g - lambda * t.signum()).abs() };
            worst = worst.max(r);
        }
    }
    worst
}

pub fn glasso_fit(s: &SymmetricMatrix, cfg: &GlassoConfig) -> Result<GlassoFit> {
    glasso_fit_from(s, cfg, None)
}

/// Like [`glasso_fit`] but starting from a previous precision estimate
/// (any positive definite matrix works), which speeds up regularisation
/// paths.
pub fn glasso_fit_from(s: &SymmetricMatrix, cfg: &GlassoConfig, warm: Option<&SymmetricMatrix>) -> Result<GlassoFit> {
    cfg.validate()?;
    let p = s.dim();
    let lambda = cfg.lambda;
    let target_diag: Vec<f64> = (0..p).map(|i| s.get(i, i) + lambda).collect();
    if let Some(i) = target_diag.iter().position(|&d| !(d > 0.0)) {
        return Err(Error::NonpositiveDiagonal(i));
    }

    // beta[j * p + k]: coefficient of variable k in the regression for column j.
    let mut beta = vec![0.0; p * p];
    let mut w = match warm {
        Some(t) => {
            if t.dim() != p {
                return Err(Error::DimensionMismatch { expected: p, found: t.dim() });
            }
            for j in 0..p {
                let tjj = t.get(j, j);
                for k in 0..p {
                    if k != j {
                        beta[j * p + k] = -t.get(k, j) / tjj;
                    }
                }
            }
            invert_spd(t)?.as_slice().to_vec()
        }
        None => s.as_slice().to_vec(),
    };
    for i in 0..p {
        w[i * p + i] = target_diag[i];
    }

    let threshold = cfg.tol * s.mean_abs_off_diagonal();
    let inner_threshold = (0.01 * threshold).max(f64::MIN_POSITIVE);
    let mut trace = Vec::new();
    let mut v = vec![0.0; p];
    let mut before = vec![0.0; p * p];
    let mut converged = false;
    let mut iterations = 0;
    while iterations < cfg.max_outer {
        iterations += 1;
        before.copy_from_slice(&w);
        for j in 0..p {
            solve_column(s, lambda, inner_threshold, j, &mut w, &mut beta[j * p..(j + 1) * p], &mut v);
        }
        if cfg.record_trace {
            // +∞ outside the positive definite cone.
            trace.push(objective(s, &precision_from(p, &w, &beta), lambda).unwrap_or(f64::INFINITY));
        }
        if mean_abs_off_diagonal_change(p, &before, &w) <= threshold {
            converged = true;
            break;
        }
    }

    let precision = precision_from(p, &w, &beta);
    let covariance = invert_spd(&precision)?;
    Ok(GlassoFit { precision, covariance, lambda, iterations, converged, objective_trace: trace })
}

/// `Θ` from the column regressions, symmetrised by averaging the two
/// column estimates of each off-diagonal entry.
fn precision_from(p: usize, w: &[f64], beta: &[f64]) -> SymmetricMatrix {
    let mut col = vec![0.0; p * p];
    for j in 0..p {
        let b = &beta[j * p..(j + 1) * p];
        let quad: f64 = (0..p).filter(|&k| k != j).map(|k| w[k * p + j] * b[k]).sum();
        let tjj = 1.0 / (w[j * p + j] - quad);
        for k in 0..p {
            col[j * p + k] = if k == j { tjj } else { -b[k] * tjj };
        }
    }
    SymmetricMatrix::from_fn(p, |i, j| if i == j { col[i * p + i] } else { 0.5 * (col[j * p + i] + col[i * p + j]) })
}

fn mean_abs_off_diagonal_change(p: usize, a: &[f64], b: &[f64]) -> f64 {
    if p < 2 {
        return 0.0;
    }
    let mut total = 0.0;
    for i in 0..p {
        for j in (i + 1)..p {
            total += (a[i * p + j] - b[i * p + j]).abs();
        }
    }
    total / (p * (p - 1) / 2) as f64
}

const INNER_MAX_SWEEPS: usize = 1_000;

/// Lasso for column `j` followed by the matching update of `w₁₂`.
fn solve_column(s: &SymmetricMatrix, lambda: f64, tol: f64, j: usize, w: &mut [f64], b: &mut [f64], v: &mut [f64]) {
    let p = s.dim();
    // v = W₁₁ β; entries at index j are never read.
    v.iter_mut().for_each(|x| *x = 0.0);
    for k in 0..p {
        if k != j && b[k] != 0.0 {
            axpy(b[k], &w[k * p..(k + 1) * p], v);
        }
    }
    for _ in 0..INNER_MAX_SWEEPS {
        let mut max_step = 0.0_f64;
        for k in 0..p {
            if k == j {
                continue;
            }
            let wkk = w[k * p + k];
            let g = s.get(k, j) - (v[k] - wkk * b[k]);
            let new = soft_threshold(g, lambda) / wkk;
            let delta = new - b[k];
            if delta == 0.0 {
                continue;
            }
            b[k] = new;
            axpy(delta, &w[k * p..(k + 1) * p], v);
            max_step = max_step.max((delta * wkk).abs());
        }
        if max_step <= tol {
            break;
        }
    }
    for k in 0..p {
        if k != j {
            w[k * p + j] = v[k];
            w[j * p + k] = v[k];
        }
    }
}

#[inline]
fn axpy(t: f64, x: &[f64], y: &mut [f64]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += t * xi;
    }
}

#[inline]
fn soft_threshold(x: f64, t: f64) -> f64 {
    if x > t {
        x - t
    } else if x < -t {
        x + t
    } else {
        0.0
    }
}

/// Edge `{i, j}` is present iff `|θ̂_ij| > zero_tol`. The statistic is
/// `θ̂_ij`; no p-values.
pub fn glasso_edges(omega_hat: &SymmetricMatrix, zero_tol: f64) -> EdgeDecisionSet {
    let p = omega_hat.dim();
    let decisions = all_pairs(p)
        .into_iter()
        .map(|(i, j)| {
            let v = omega_hat.get(i, j);
            EdgeDecision { i, j, statistic: v, p_value: None, decided: v.abs() > zero_tol, undecidable: false }
        })
        .collect();
    EdgeDecisionSet::new(p, Method::Glasso, decisions).expect("canonical pair order")
}

pub const DEFAULT_ZERO_TOL: f64 = 1e-12;

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> SymmetricMatrix {
        SymmetricMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn two_by_two_closed_form() {
        let s = m(&[&[1.0, 0.5], &[0.5, 1.0]]);
        let cfg = GlassoConfig { lambda: 0.1, tol: 1e-13, ..Default::default() };
        let fit = glasso_fit(&s, &cfg).unwrap();
        let w = m(&[&[1.1, 0.4], &[0.4, 1.1]]);
        assert!(fit.covariance.max_abs_diff(&w) < 1e-10, "{:?}", fit.covariance);
        let omega = crate::numerics::invert_spd(&w).unwrap();
        assert!(fit.precision.max_abs_diff(&omega) < 1e-9);
        assert!(kkt_residual(&s, &fit) < 1e-10);
        let edges = glasso_edges(&fit.precision, DEFAULT_ZERO_TOL);
        assert_eq!(edges.decided_edges(), vec![(0, 1)]);
        let none = glasso_edges(&fit.precision, 10.0);
        assert_eq!(none.edge_count(), 0);
    }

    #[test]
    fn saturated_penalty_gives_diagonal() {
        let s = m(&[&[2.0, 0.3, -0.7], &[0.3, 1.0, 0.1], &[-0.7, 0.1, 3.0]]);
        let fit = glasso_fit(&s, &GlassoConfig::with_lambda(0.7)).unwrap();
        assert_eq!(fit.precision.max_abs_off_diagonal(), 0.0);
        for i in 0..3 {
            assert!((fit.precision.get(i, i) - 1.0 / (s.get(i, i) + 0.7)).abs() < 1e-14);
        }
        assert_eq!(glasso_edges(&fit.precision, DEFAULT_ZERO_TOL).edge_count(), 0);
        assert_eq!(glasso_edges(&SymmetricMatrix::identity(4), DEFAULT_ZERO_TOL).edge_count(), 0);
    }

    #[test]
    fn vanishing_penalty_recovers_inverse() {
        let s = m(&[&[2.0, 0.6, 0.2], &[0.6, 1.5, -0.4], &[0.2, -0.4, 1.0]]);
        let cfg = GlassoConfig { lambda: 1e-7, tol: 1e-10, max_outer: 500, record_trace: false };
        let fit = glasso_fit(&s, &cfg).unwrap();
        let inv = crate::numerics::invert_spd(&s).unwrap();
        assert!(fit.precision.max_abs_diff(&inv) < 1e-3);
    }

    #[test]
    fn rejects_bad_config() {
        let s = SymmetricMatrix::identity(2);
        assert!(glasso_fit(&s, &GlassoConfig { lambda: -1.0, ..Default::default() }).is_err());
        assert!(glasso_fit(&s, &GlassoConfig { tol: 0.0, ..Default::default() }).is_err());
        let singular = SymmetricMatrix::zeros(2);
        assert!(glasso_fit(&singular, &GlassoConfig::with_lambda(0.0)).is_err());
    }
}
