use crate::error::{Error, Result};

/// Dense symmetric matrix stored in full row-major order.
///
/// Every constructor enforces symmetry, so `get(i, j) == get(j, i)` always
/// holds bit-for-bit. Covariance, precision, correlation and partial
/// correlation matrices all share this type; role-specific checks live in
/// [`SymmetricMatrix::check_correlation`] and [`super::cholesky`].
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_diagonal(&vec![1.0; dim])
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * m.dim + i] = d;
        }
        m
    }

    /// Builds a matrix from full row-major storage. The upper triangle is
    /// authoritative; the lower triangle must agree with it to within a
    /// relative tolerance of 1e-10 and is then overwritten by the mirror.
    pub fn from_row_major(dim: usize, mut data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::TooSmall { what: "rows", needed: 1, found: 0 });
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: data.len() });
        }
        for i in 0..dim {
            for j in 0..dim {
                let v = data[i * dim + j];
                if !v.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                let upper = data[i * dim + j];
                let lower = data[j * dim + i];
                let scale = upper.abs().max(lower.abs()).max(1.0);
                if (upper - lower).abs() > 1e-10 * scale {
                    return Err(Error::Asymmetric { row: j, col: i });
                }
                data[j * dim + i] = upper;
            }
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::Ragged(i));
            }
            data.extend_from_slice(r);
        }
        Self::from_row_major(dim, data)
    }

    /// Builds a matrix from a closure evaluated on the upper triangle.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    /// Principal submatrix on `idx` (in the given order).
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        let k = idx.len();
        let mut out = Self::zeros(k.max(1));
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate().skip(a) {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }

    /// `P M Pᵀ` for the relabeling `new index a <- old index perm[a]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.dim);
        self.submatrix(perm)
    }

    pub fn add_diagonal(&self, shift: f64) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            out.data[i * self.dim + i] += shift;
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Vec<f64> {
        assert_eq!(self.dim, other.dim);
        let p = self.dim;
        let mut out = vec![0.0; p * p];
        for i in 0..p {
            let ri = self.row(i);
            let oi = &mut out[i * p..(i + 1) * p];
            for (k, &a) in ri.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                for (o, &b) in oi.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `D M D` for a diagonal matrix `D = diag(d)`.
    pub fn diagonal_congruence(&self, d: &[f64]) -> Self {
        assert_eq!(d.len(), self.dim);
        let mut out = self.clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.data[i * self.dim + j] *= d[i] * d[j];
            }
        }
        out
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()
    }

    pub fn max_abs_off_diagonal(&self) -> f64 {
        let mut best = 0.0_f64;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                best = best.max(self.get(i, j).abs());
            }
        }
        best
    }

    pub fn mean_abs_off_diagonal(&self) -> f64 {
        if self.dim < 2 {
            return 0.0;
        }
        let mut total = 0.0;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                total += self.get(i, j).abs();
            }
        }
        total / (self.dim * (self.dim - 1) / 2) as f64
    }

    /// Unit diagonal and off-diagonal entries in [-1, 1].
    pub fn check_correlation(&self, tol: f64) -> bool {
        (0..self.dim).all(|i| (self.get(i, i) - 1.0).abs() <= tol)
            && self.data.iter().all(|v| v.abs() <= 1.0 + tol)
    }
}

/// Sample matrix with `n` observations (rows) of `p` variables (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    n: usize,
    p: usize,
    values: Vec<f64>,
    names: Option<Vec<String>>,
}

impl DataMatrix {
    pub fn new(n: usize, p: usize, values: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooSmall { what: "samples", needed: 2, found: n });
        }
        if p < 2 {
            return Err(Error::TooSmall { what: "variables", needed: 2, found: p });
        }
        if values.len() != n * p {
            return Err(Error::DimensionMismatch { expected: n * p, found: values.len() });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: pos / p, col: pos % p });
        }
        Ok(Self { n, p, values, names: None })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let p = rows.first().map_or(0, Vec::len);
        let mut values = Vec::with_capacity(n * p);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != p {
                return Err(Error::Ragged(i));
            }
            values.extend_from_slice(r);
        }
        Self::new(n, p, values)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.p {
            return Err(Error::DimensionMismatch { expected: self.p, found: names.len() });
        }
        self.names = Some(names);
        Ok(self)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.p + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.values[row * self.p..(row + 1) * self.p]
    }

    pub fn column(&self, col: usize) -> Vec<f64> {
        (0..self.n).map(|r| self.get(r, col)).collect()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Name of column `col`, or its 0-based index when unnamed.
    pub fn label(&self, col: usize) -> String {
        match &self.names {
            Some(n) => n[col].clone(),
            None => col.to_string(),
        }
    }

    pub fn column_means(&self) -> Vec<f64> {
        let mut means = vec![0.0; self.p];
        for r in 0..self.n {
            for (m, v) in means.iter_mut().zip(self.row(r)) {
                *m += v;
            }
        }
        means.iter_mut().for_each(|m| *m /= self.n as f64);
        means
    }

    pub fn centered(&self) -> Self {
        let means = self.column_means();
        let mut values = self.values.clone();
        for r in 0..self.n {
            for (c, m) in means.iter().enumerate() {
                values[r * self.p + c] -= m;
            }
        }
        Self { values, ..self.clone() }
    }

    /// Centers each column and divides by its (divisor-n) standard
    /// deviation. Constant columns are rejected.
    pub fn standardized(&self) -> Result<Self> {
        let mut out = self.centered();
        for c in 0..self.p {
            let ss: f64 = (0..self.n).map(|r| out.get(r, c).powi(2)).sum();
            let sd = (ss / self.n as f64).sqrt();
            if sd == 0.0 {
                return Err(Error::ZeroVariance(c));
            }
            for r in 0..self.n {
                out.values[r * self.p + c] /= sd;
            }
        }
        Ok(out)
    }

    /// Keeps the columns in `cols`, in that order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Self> {
        let mut values = Vec::with_capacity(self.n * cols.len());
        for r in 0..self.n {
            let row = self.row(r);
            values.extend(cols.iter().map(|&c| row[c]));
        }
        let out = Self::new(self.n, cols.len(), values)?;
        match &self.names {
            Some(names) => out.with_names(cols.iter().map(|&c| names[c].clone()).collect()),
            None => Ok(out),
        }
    }

    pub fn transposed(&self) -> Result<Self> {
        let mut values = Vec::with_capacity(self.n * self.p);
        for c in 0..self.p {
            values.extend((0..self.n).map(|r| self.get(r, c)));
        }
        Self::new(self.p, self.n, values)
    }

}
