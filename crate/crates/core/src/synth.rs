//! From a ground-truth adjacency matrix to a covariance matrix with the same
//! conditional-independence structure, and Gaussian samples from it.
//!
//! Edge weights `u·δ` with `u ~ U(0.4, 0.8)` and `δ ~ U{−1, +1}` fill the
//! support of the adjacency; the spectrum is then shifted by
//! `|ν_min| + 0.05` so the precision is positive definite, and finally a
//! random diagonal congruence with entries in `(1, 5)` rescales the
//! variables without touching the zero pattern of the inverse.

use rand::Rng as _;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::graphgen::AdjacencyMatrix;
use crate::numerics::{invert_spd, min_eigenvalue, Cholesky, DataMatrix, SymmetricMatrix};
use crate::rng::{self, stream};

pub const WEIGHT_RANGE: (f64, f64) = (0.4, 0.8);
pub const EIGEN_MARGIN: f64 = 0.05;
pub const SCALE_RANGE: (f64, f64) = (1.0, 5.0);

/// Signed edge weights and the shifted, positive definite precision.
#[derive(Debug, Clone)]
pub struct PrecisionDraw {
    pub omega1: SymmetricMatrix,
    pub omega2: SymmetricMatrix,
    pub nu_min: f64,
}

#[derive(Debug, Clone)]
pub struct SynthesisDraw {
    pub omega1: SymmetricMatrix,
    pub omega2: SymmetricMatrix,
    pub nu_min: f64,
    pub u2: Vec<f64>,
    pub sigma: SymmetricMatrix,
}

/// Draws `u` strictly inside `(lo, hi)`.
fn open_uniform(rng: &mut rng::Rng, lo: f64, hi: f64) -> f64 {
    loop {
        let v: f64 = rng.random_range(lo..hi);
        if v > lo {
            return v;
        }
    }
}

pub fn synthesize_precision(adj: &AdjacencyMatrix, seed: u64) -> PrecisionDraw {
    let p = adj.p();
    let mut rng = rng::seeded(seed, stream::PRECISION);
    let mut omega1 = SymmetricMatrix::zeros(p);
    for (i, j) in adj.edges() {
        let u = open_uniform(&mut rng, WEIGHT_RANGE.0, WEIGHT_RANGE.1);
        let delta = if rng.random::<bool>() { 1.0 } else { -1.0 };
        omega1.set(i, j, u * delta);
    }
    let nu_min = min_eigenvalue(&omega1);
    let omega2 = omega1.add_diagonal(nu_min.abs() + EIGEN_MARGIN);
    PrecisionDraw { omega1, omega2, nu_min }
}

/// `Σ = diag(u₂) · Ω₂⁻¹ · diag(u₂)` with `u₂` i.i.d. uniform on `(1, 5)`.
pub fn covariance_from_precision(draw: PrecisionDraw, seed: u64) -> Result<SynthesisDraw> {
    let p = draw.omega2.dim();
    let mut rng = rng::seeded(seed, stream::SCALING);
    let u2: Vec<f64> = (0..p).map(|_| open_uniform(&mut rng, SCALE_RANGE.0, SCALE_RANGE.1)).collect();
    let sigma = invert_spd(&draw.omega2)?.diagonal_congruence(&u2);
    Ok(SynthesisDraw { omega1: draw.omega1, omega2: draw.omega2, nu_min: draw.nu_min, u2, sigma })
}

/// Both synthesis steps with independent streams derived from one seed.
pub fn synthesize(adj: &AdjacencyMatrix, seed: u64) -> Result<SynthesisDraw> {
    covariance_from_precision(synthesize_precision(adj, seed), seed)
}

/// `n` i.i.d. rows from `N(0, Σ)`, realised as `L z` with `Σ = L Lᵀ`.
pub fn sample_gaussian(sigma: &SymmetricMatrix, n: usize, seed: u64) -> Result<DataMatrix> {
    if n < 2 {
        return Err(Error::TooSmall { what: "samples", needed: 2, found: n });
    }
    let chol = Cholesky::new(sigma)?;
    let p = sigma.dim();
    let mut rng = rng::seeded(seed, stream::SAMPLES);
    let mut values = vec![0.0; n * p];
    let mut z = vec![0.0; p];
    for row in values.chunks_exact_mut(p) {
        z.iter_mut().for_each(|v| *v = rng.sample(StandardNormal));
        chol.mul_lower(&z, row);
    }
    DataMatrix::new(n, p, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphgen::GraphModel;
    use crate::numerics::{empirical_covariance, eigenvalues, is_positive_definite};

    #[test]
    fn empty_graph_gives_scaled_identity() {
        let adj = AdjacencyMatrix::empty(4, GraphModel::Custom);
        let d = synthesize_precision(&adj, 1);
        assert_eq!(d.omega1, SymmetricMatrix::zeros(4));
        assert_eq!(d.nu_min, 0.0);
        assert!(d.omega2.max_abs_diff(&SymmetricMatrix::identity(4).add_diagonal(-0.95)) < 1e-15);
    }

    #[test]
    fn single_edge_spectrum() {
        let adj = AdjacencyMatrix::from_edges(2, &[(0, 1)], GraphModel::Custom).unwrap();
        for seed in 0..20 {
            let d = synthesize_precision(&adj, seed);
            let w = d.omega1.get(0, 1);
            let u = w.abs();
            assert!(u > 0.4 && u < 0.8);
            assert!((d.omega2.get(0, 0) - (u + 0.05)).abs() < 1e-12);
            let ev = eigenvalues(&d.omega2);
            assert!((ev[0] - 0.05).abs() < 1e-12 && (ev[1] - (2.0 * u + 0.05)).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_congruence() {
        let draw = PrecisionDraw {
            omega1: SymmetricMatrix::zeros(3),
            omega2: SymmetricMatrix::identity(3),
            nu_min: 0.0,
        };
        let out = covariance_from_precision(draw, 5).unwrap();
        for i in 0..3 {
            assert!((out.sigma.get(i, i) - out.u2[i] * out.u2[i]).abs() < 1e-12);
            assert!(out.u2[i] > 1.0 && out.u2[i] < 5.0);
        }
        assert_eq!(out.sigma.max_abs_off_diagonal(), 0.0);
    }

    #[test]
    fn inverse_support_is_preserved() {
        let adj = crate::graphgen::erdos_renyi(12, 0.25, 3).unwrap();
        let d = synthesize(&adj, 8).unwrap();
        let back = invert_spd(&d.sigma).unwrap();
        for i in 0..12 {
            for j in (i + 1)..12 {
                let expected = d.omega2.get(i, j) / (d.u2[i] * d.u2[j]);
                assert!((back.get(i, j) - expected).abs() < 1e-10);
                assert_eq!(back.get(i, j).abs() > 1e-10, adj.has_edge(i, j));
            }
        }
        assert!(is_positive_definite(&d.sigma));
    }

    #[test]
    fn sampling_is_deterministic_and_matches_variances() {
        let sigma = SymmetricMatrix::from_diagonal(&[1.0, 4.0, 9.0]);
        let a = sample_gaussian(&sigma, 50_000, 11).unwrap();
        let b = sample_gaussian(&sigma, 50_000, 11).unwrap();
        assert_eq!(a, b);
        let s = empirical_covariance(&a, true);
        for (i, v) in [1.0, 4.0, 9.0].iter().enumerate() {
            assert!((s.get(i, i) / v - 1.0).abs() < 0.05);
        }
        let bound = 4.0 * (9.0_f64 / 50_000.0).sqrt();
        assert!(a.column_means().iter().all(|m| m.abs() <= bound));
        assert!(sample_gaussian(&sigma, 1, 0).is_err());
    }
}
