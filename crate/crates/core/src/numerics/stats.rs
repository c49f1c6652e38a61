use statrs::distribution::{ContinuousCDF, StudentsT};
use statrs::function::erf::{erfc, erfc_inv};

use super::{DataMatrix, SymmetricMatrix};
use crate::error::{Error, Result};

/// Sample Pearson correlation matrix of the columns of `x`.
pub fn pearson_matrix(x: &DataMatrix) -> Result<SymmetricMatrix> {
    let centered = x.centered();
    let cross = cross_product(&centered);
    let p = x.p();
    let sd: Vec<f64> = (0..p).map(|i| cross.get(i, i).sqrt()).collect();
    if let Some(c) = sd.iter().position(|&s| s == 0.0) {
        return Err(Error::ZeroVariance(c));
    }
    Ok(SymmetricMatrix::from_fn(p, |i, j| {
        if i == j {
            1.0
        } else {
            (cross.get(i, j) / (sd[i] * sd[j])).clamp(-1.0, 1.0)
        }
    }))
}

/// Maximum-likelihood covariance `XᵀX / n`, optionally after centering the
/// columns.
pub fn empirical_covariance(x: &DataMatrix, center: bool) -> SymmetricMatrix {
    let cross = if center { cross_product(&x.centered()) } else { cross_product(x) };
    let n = x.n() as f64;
    SymmetricMatrix::from_fn(x.p(), |i, j| cross.get(i, j) / n)
}

fn cross_product(x: &DataMatrix) -> SymmetricMatrix {
    let p = x.p();
    let mut acc = vec![0.0; p * p];
    for r in 0..x.n() {
        let row = x.row(r);
        for (i, &a) in row.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let dst = &mut acc[i * p + i..(i + 1) * p];
            for (d, &b) in dst.iter_mut().zip(&row[i..]) {
                *d += a * b;
            }
        }
    }
    SymmetricMatrix::from_fn(p, |i, j| acc[i * p + j])
}

/// Fisher's variance-stabilising transform `½·ln((1+r)/(1−r))`.
pub fn fisher_z(r: f64) -> Result<f64> {
    if !(r.abs() < 1.0) {
        return Err(Error::OutOfRange(r));
    }
    Ok(r.signum() * r.abs().atanh())
}

/// `diag(m)^{-1/2} · m · diag(m)^{-1/2}`.
pub fn scale_matrix(m: &SymmetricMatrix) -> Result<SymmetricMatrix> {
    let d = m.diagonal();
    if let Some(i) = d.iter().position(|&v| !(v > 0.0)) {
        return Err(Error::NonpositiveDiagonal(i));
    }
    let inv_sqrt: Vec<f64> = d.iter().map(|v| 1.0 / v.sqrt()).collect();
    Ok(SymmetricMatrix::from_fn(m.dim(), |i, j| {
        if i == j {
            1.0
        } else {
            m.get(i, j) * inv_sqrt[i] * inv_sqrt[j]
        }
    }))
}

/// Partial correlations `−ω_ij / √(ω_ii ω_jj)` of every pair given all
/// remaining variables, read off a precision matrix. Unit diagonal.
pub fn partial_correlations_from_precision(omega: &SymmetricMatrix) -> Result<SymmetricMatrix> {
    let mut pc = scale_matrix(omega)?;
    for i in 0..pc.dim() {
        for j in (i + 1)..pc.dim() {
            let v = -pc.get(i, j);
            pc.set(i, j, v);
        }
    }
    Ok(pc)
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Two-sided normal tail probability `2·(1 − Φ(|x|))`.
pub fn normal_two_sided_p(x: f64) -> f64 {
    erfc(x.abs() / std::f64::consts::SQRT_2).min(1.0)
}

/// Inverse standard normal CDF.
pub fn normal_quantile(p: f64) -> f64 {
    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }
    -std::f64::consts::SQRT_2 * erfc_inv(2.0 * p)
}

/// Two-sided t-test that a Pearson correlation computed from `n` samples is
/// zero: `t = r·√((n−2)/(1−r²))` against Student-t with `n − 2` degrees of
/// freedom.
#[derive(Debug, Clone, Copy)]
pub struct PearsonTest {
    n: usize,
    dist: StudentsT,
}

impl PearsonTest {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooSmall { what: "samples", needed: 3, found: n });
        }
        let dist = StudentsT::new(0.0, 1.0, (n - 2) as f64).expect("positive degrees of freedom");
        Ok(Self { n, dist })
    }

    pub fn statistic(&self, r: f64) -> f64 {
        let df = (self.n - 2) as f64;
        if r.abs() >= 1.0 {
            return f64::INFINITY.copysign(r);
        }
        r * (df / (1.0 - r * r)).sqrt()
    }

    pub fn p_value(&self, r: f64) -> f64 {
        let t = self.statistic(r).abs();
        if t.is_infinite() {
            return 0.0;
        }
        (2.0 * self.dist.sf(t)).min(1.0)
    }

    /// Smallest `|r|` that is significant at `alpha`: `p < alpha` iff
    /// `|r| > critical_r(alpha)`.
    pub fn critical_r(&self, alpha: f64) -> f64 {
        let t = self.dist.inverse_cdf(1.0 - alpha / 2.0).max(0.0);
        let df = (self.n - 2) as f64;
        t / (df + t * t).sqrt()
    }
}
