mod common;

use ggmnet::numerics::{
    empirical_covariance, fisher_z, invert_spd, min_eigenvalue, normal_cdf, normal_quantile, partial_correlations_from_precision,
    pearson_matrix, scale_matrix, Cholesky, DataMatrix, SymmetricMatrix,
};
use proptest::prelude::*;

fn data_strategy() -> impl Strategy<Value = DataMatrix> {
    (2usize..6, 4usize..12).prop_flat_map(|(p, n)| {
        proptest::collection::vec(-10.0f64..10.0, n * p).prop_map(move |v| DataMatrix::new(n, p, v).unwrap())
    })
}

proptest! {
    #[test]
    fn inverse_times_matrix_is_identity(p in 1usize..8, seed in any::<u64>()) {
        let a = common::random_spd(p, seed);
        let inv = invert_spd(&a).unwrap();
        let prod = a.matmul(&inv);
        for i in 0..p {
            for j in 0..p {
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((prod[i * p + j] - want).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn cholesky_log_det_matches_eigenvalues(p in 1usize..7, seed in any::<u64>()) {
        let a = common::random_spd(p, seed);
        let from_eig: f64 = ggmnet::numerics::eigenvalues(&a).iter().map(|v| v.ln()).sum();
        prop_assert!((Cholesky::new(&a).unwrap().log_det() - from_eig).abs() < 1e-8);
    }

    #[test]
    fn scaled_matrix_is_a_correlation(p in 1usize..8, seed in any::<u64>()) {
        let c = scale_matrix(&common::random_spd(p, seed)).unwrap();
        prop_assert!(c.check_correlation(1e-12));
        prop_assert!(min_eigenvalue(&c) > 0.0);
    }

    #[test]
    fn partial_correlations_are_bounded(p in 2usize..8, seed in any::<u64>()) {
        let pc = partial_correlations_from_precision(&common::random_spd(p, seed)).unwrap();
        prop_assert!(pc.max_abs_off_diagonal() < 1.0);
        prop_assert_eq!(pc.diagonal(), vec![1.0; p]);
    }

    #[test]
    fn fisher_z_inverts_tanh(r in -0.999_999f64..0.999_999) {
        let z = fisher_z(r).unwrap();
        prop_assert!((z.tanh() - r).abs() < 1e-12);
        prop_assert_eq!(fisher_z(-r).unwrap(), -z);
    }

    #[test]
    fn normal_quantile_inverts_cdf(u in 1e-12f64..(1.0 - 1e-12)) {
        let x = normal_quantile(u);
        prop_assert!((normal_cdf(x) - u).abs() < 1e-12_f64.max(u.min(1.0 - u) * 1e-9));
    }

    #[test]
    fn covariance_is_positive_semidefinite(x in data_strategy()) {
        let s = empirical_covariance(&x, true);
        let scale = s.diagonal().iter().cloned().fold(1.0, f64::max);
        prop_assert!(min_eigenvalue(&s) >= -1e-9 * scale);
    }

    #[test]
    fn pearson_matrix_is_scaled_centered_covariance(x in data_strategy()) {
        if let Ok(r) = pearson_matrix(&x) {
            let s = scale_matrix(&empirical_covariance(&x, true)).unwrap();
            prop_assert!(r.max_abs_diff(&s) < 1e-10);
        }
    }

    #[test]
    fn permutation_relabels_entries(p in 2usize..7, seed in any::<u64>()) {
        let a = common::random_spd(p, seed);
        let perm: Vec<usize> = (0..p).rev().collect();
        let b = a.permuted(&perm);
        for i in 0..p {
            for j in 0..p {
                prop_assert_eq!(b.get(i, j), a.get(perm[i], perm[j]));
            }
        }
    }
}

#[test]
fn rejects_indefinite_input() {
    let m = SymmetricMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
    assert!(invert_spd(&m).is_err());
}
