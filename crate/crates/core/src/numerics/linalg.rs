use super::SymmetricMatrix;
use crate::error::{Error, Result};

/// Pivots at or below this value are treated as a loss of positive
/// definiteness.
pub const PIVOT_FLOOR: f64 = 1e-12;

/// Lower-triangular Cholesky factor `L` with `M = L Lᵀ`.
#[derive(Debug, Clone)]
pub struct Cholesky {
    dim: usize,
    // Row-major, only the lower triangle is meaningful.
    lower: Vec<f64>,
}

impl Cholesky {
    pub fn new(m: &SymmetricMatrix) -> Result<Self> {
        let p = m.dim();
        let mut l = vec![0.0; p * p];
        for i in 0..p {
            for j in 0..=i {
                let (ri, rj) = if i == j {
                    (&l[i * p..i * p + j], &l[i * p..i * p + j])
                } else {
                    let (head, tail) = l.split_at(i * p);
                    (&tail[..j], &head[j * p..j * p + j])
                };
                let dot: f64 = ri.iter().zip(rj).map(|(a, b)| a * b).sum();
                let s = m.get(i, j) - dot;
                if i == j {
                    if !(s > PIVOT_FLOOR) {
                        return Err(Error::NotPositiveDefinite { index: i, value: s });
                    }
                    l[i * p + i] = s.sqrt();
                } else {
                    l[i * p + j] = s / l[j * p + j];
                }
            }
        }
        Ok(Self { dim: p, lower: l })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn l(&self, i: usize, j: usize) -> f64 {
        self.lower[i * self.dim + j]
    }

    pub fn log_det(&self) -> f64 {
        2.0 * (0..self.dim).map(|i| self.l(i, i).ln()).sum::<f64>()
    }

    /// `L z`, used to colour i.i.d. standard normals.
    pub fn mul_lower(&self, z: &[f64], out: &mut [f64]) {
        let p = self.dim;
        for i in 0..p {
            let row = &self.lower[i * p..i * p + i + 1];
            out[i] = row.iter().zip(z).map(|(a, b)| a * b).sum();
        }
    }

    pub fn inverse(&self) -> SymmetricMatrix {
        let p = self.dim;
        // X = L⁻¹, built row by row: row_i(X) = (e_i - Σ_{k<i} L_ik row_k(X)) / L_ii.
        let mut x = vec![0.0; p * p];
        for i in 0..p {
            let (done, rest) = x.split_at_mut(i * p);
            let xi = &mut rest[..p];
            xi[i] = 1.0;
            for k in 0..i {
                let lik = self.lower[i * p + k];
                if lik == 0.0 {
                    continue;
                }
                let xk = &done[k * p..k * p + k + 1];
                for (a, b) in xi.iter_mut().zip(xk) {
                    *a -= lik * b;
                }
            }
            let d = self.lower[i * p + i];
            xi[..=i].iter_mut().for_each(|v| *v /= d);
        }
        // M⁻¹ = Xᵀ X, accumulated as the sum of outer products of rows of X.
        let mut inv = vec![0.0; p * p];
        for k in 0..p {
            let xk = &x[k * p..k * p + k + 1];
            for i in 0..=k {
                let a = xk[i];
                if a == 0.0 {
                    continue;
                }
                let dst = &mut inv[i * p + i..i * p + k + 1];
                for (d, b) in dst.iter_mut().zip(&xk[i..]) {
                    *d += a * b;
                }
            }
        }
        for i in 0..p {
            for j in (i + 1)..p {
                inv[j * p + i] = inv[i * p + j];
            }
        }
        SymmetricMatrix::from_row_major(p, inv).expect("inverse storage is symmetric")
    }
}

/// Inverse of a symmetric positive definite matrix via its Cholesky factor.
pub fn invert_spd(m: &SymmetricMatrix) -> Result<SymmetricMatrix> {
    Ok(Cholesky::new(m)?.inverse())
}

pub fn is_positive_definite(m: &SymmetricMatrix) -> bool {
    Cholesky::new(m).is_ok()
}

/// All eigenvalues in ascending order.
///
/// Householder reduction to tridiagonal form followed by implicit QL
/// iterations with Wilkinson-style shifts.
pub fn eigenvalues(m: &SymmetricMatrix) -> Vec<f64> {
    let (mut d, mut e) = tridiagonalize(m);
    tridiagonal_ql(&mut d, &mut e);
    d.sort_by(f64::total_cmp);
    d
}

pub fn min_eigenvalue(m: &SymmetricMatrix) -> f64 {
    eigenvalues(m)[0]
}

fn tridiagonalize(m: &SymmetricMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = m.dim();
    let mut a = m.as_slice().to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let at = |i: usize, j: usize| i * n + j;

    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| a[at(i, k)].abs()).sum();
            if scale == 0.0 {
                e[i] = a[at(i, l)];
            } else {
                for k in 0..=l {
                    a[at(i, k)] /= scale;
                    h += a[at(i, k)] * a[at(i, k)];
                }
                let f = a[at(i, l)];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[at(i, l)] = f - g;
                let mut f = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[at(j, k)] * a[at(i, k)];
                    }
                    for k in (j + 1)..=l {
                        g += a[at(k, j)] * a[at(i, k)];
                    }
                    e[j] = g / h;
                    f += e[j] * a[at(i, j)];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[at(i, j)];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[at(j, k)] -= f * e[k] + g * a[at(i, k)];
                    }
                }
            }
        } else {
            e[i] = a[at(i, l)];
        }
        d[i] = h;
    }
    for i in 0..n {
        d[i] = a[at(i, i)];
    }
    (d, e)
}

/// Eigenvalues of the tridiagonal matrix with diagonal `d` and
/// sub-diagonal `e[1..]`; results are left in `d`.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    if n == 1 {
        return;
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter <= 200, "tridiagonal QL failed to converge");

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}
