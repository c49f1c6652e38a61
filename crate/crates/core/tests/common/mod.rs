#![allow(dead_code)]

use ggmnet::numerics::{DataMatrix, SymmetricMatrix};
use ggmnet::rng;
use rand::Rng as _;

/// `B Bᵀ + εI` with standard-uniform entries in `B`.
pub fn random_spd(p: usize, seed: u64) -> SymmetricMatrix {
    let mut g = rng::seeded(seed, rng::stream::MISC);
    let b: Vec<f64> = (0..p * p).map(|_| g.random_range(-1.0..1.0)).collect();
    SymmetricMatrix::from_fn(p, |i, j| {
        let dot: f64 = (0..p).map(|k| b[i * p + k] * b[j * p + k]).sum();
        if i == j {
            dot + 0.3
        } else {
            dot
        }
    })
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
pub fn solve(a: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a.iter().zip(b).map(|(row, &v)| row.iter().copied().chain([v]).collect()).collect();
    for c in 0..n {
        let piv = (c..n).max_by(|&x, &y| m[x][c].abs().total_cmp(&m[y][c].abs())).unwrap();
        m.swap(c, piv);
        for r in 0..n {
            if r != c {
                let f = m[r][c] / m[c][c];
                for k in c..=n {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
    }
    (0..n).map(|r| m[r][n] / m[r][r]).collect()
}

/// Partial correlation of `i, j` given all other variables, computed as the
/// correlation of regression residuals under covariance `sigma`.
pub fn residual_partial_correlation(sigma: &SymmetricMatrix, i: usize, j: usize) -> f64 {
    let rest: Vec<usize> = (0..sigma.dim()).filter(|&k| k != i && k != j).collect();
    let srr: Vec<Vec<f64>> = rest.iter().map(|&a| rest.iter().map(|&b| sigma.get(a, b)).collect()).collect();
    let cond = |a: usize, b: usize| {
        if rest.is_empty() {
            return sigma.get(a, b);
        }
        let srb: Vec<f64> = rest.iter().map(|&k| sigma.get(k, b)).collect();
        let beta = solve(&srr, &srb);
        sigma.get(a, b) - rest.iter().zip(&beta).map(|(&k, w)| sigma.get(a, k) * w).sum::<f64>()
    };
    cond(i, j) / (cond(i, i) * cond(j, j)).sqrt()
}

/// Same quantity from samples: least-squares residuals of columns `i` and
/// `j` on the remaining columns (with intercept), then their correlation.
pub fn sample_residual_partial_correlation(x: &DataMatrix, i: usize, j: usize) -> f64 {
    let (n, p) = (x.n(), x.p());
    let rest: Vec<usize> = (0..p).filter(|&k| k != i && k != j).collect();
    let design = |r: usize| -> Vec<f64> { std::iter::once(1.0).chain(rest.iter().map(|&k| x.get(r, k))).collect() };
    let q = rest.len() + 1;
    let mut xtx = vec![vec![0.0; q]; q];
    for r in 0..n {
        let d = design(r);
        for a in 0..q {
            for b in 0..q {
                xtx[a][b] += d[a] * d[b];
            }
        }
    }
    let residuals = |col: usize| -> Vec<f64> {
        let mut xty = vec![0.0; q];
        for r in 0..n {
            for (t, v) in xty.iter_mut().zip(design(r)) {
                *t += v * x.get(r, col);
            }
        }
        let beta = solve(&xtx, &xty);
        (0..n).map(|r| x.get(r, col) - design(r).iter().zip(&beta).map(|(a, b)| a * b).sum::<f64>()).collect()
    };
    let (ei, ej) = (residuals(i), residuals(j));
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(u, v)| u * v).sum::<f64>();
    dot(&ei, &ej) / (dot(&ei, &ei) * dot(&ej, &ej)).sqrt()
}
