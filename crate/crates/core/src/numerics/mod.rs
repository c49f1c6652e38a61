//! Dense symmetric-matrix and statistical primitives shared by the
//! estimators.

mod linalg;
mod matrix;
mod stats;

pub use linalg::{eigenvalues, invert_spd, is_positive_definite, min_eigenvalue, Cholesky, PIVOT_FLOOR};
pub use matrix::{DataMatrix, SymmetricMatrix};
pub use stats::{
    empirical_covariance, fisher_z, normal_cdf, normal_quantile, normal_two_sided_p,
    partial_correlations_from_precision, pearson_matrix, scale_matrix, PearsonTest,
};
