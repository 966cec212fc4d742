//! Exact sparse linear algebra: ranks, kernels and quotient dimensions.

mod elimination;
mod field;
mod fraction_free;
mod sparse;

pub use elimination::{echelon, kernel_basis, rank_by_elimination, Echelon};
pub use field::{Field, PrimeField};
pub use sparse::{SparseMatrix, SparseVec};

use crate::error::{Error, Result};

/// Rank over the scalar field, using the field's preferred elimination path
/// (fraction-free for the rationals).
pub fn rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    F::rank_of(m)
}

/// `cocycles - rank(boundary_matrix)`; fails when the boundary rank exceeds
/// the cocycle dimension, which can only happen for an inconsistent complex.
pub fn quotient_dim<F: Field>(cocycles: usize, boundary_matrix: &SparseMatrix<F>) -> Result<usize> {
    let r = rank(boundary_matrix);
    cocycles
        .checked_sub(r)
        .ok_or(Error::InconsistentComplex { cocycles, rank: r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn dense(rows: &[&[i64]]) -> SparseMatrix<Rational> {
        SparseMatrix::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::<Rational>::zero(0, 0)), 0);
        assert_eq!(rank(&SparseMatrix::<Rational>::identity(2)), 2);
        assert_eq!(rank(&dense(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]])), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::<Rational>::identity(2)).is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::<Rational>::zero(1, 3)).len(), 3);
        let k = kernel_basis(&dense(&[&[1, 1]]));
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v.get(0), -v.get(1));
        assert_ne!(v.get(0), q(0));
    }

    #[test]
    fn quotient_dim_examples() {
        assert_eq!(quotient_dim(5, &SparseMatrix::<Rational>::zero(5, 2)).unwrap(), 5);
        assert_eq!(quotient_dim(1, &dense(&[&[3]])).unwrap(), 0);
        assert_eq!(quotient_dim(3, &dense(&[&[1, 0], &[0, 1], &[1, 1]])).unwrap(), 1);
        assert!(matches!(
            quotient_dim(1, &SparseMatrix::<Rational>::identity(2)),
            Err(Error::InconsistentComplex { cocycles: 1, rank: 2 })
        ));
    }

    #[test]
    fn rational_entries_fraction_free() {
        let half = Rational::new(1.into(), 2.into());
        let m = SparseMatrix::from_dense(&[
            vec![half.clone(), q(1)],
            vec![q(1), q(2)],
            vec![q(0), half],
        ]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank_by_elimination(&m), 2);
    }

    #[test]
    fn prime_field_rank_can_drop() {
        type F3 = PrimeField<3>;
        let m = SparseMatrix::from_dense(&[vec![F3::new(1), F3::new(2)], vec![F3::new(2), F3::new(1)]]);
        // det = 1 - 4 = -3, vanishes mod 3
        assert_eq!(rank(&m), 1);
        assert_eq!(rank(&dense(&[&[1, 2], &[2, 1]])), 2);
    }

    fn sparse_matrix(max_dim: usize) -> impl Strategy<Value = SparseMatrix<Rational>> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
            proptest::collection::vec((0..r, 0..c, -3i64..=3, 1i64..=3), 0..(r * c / 3 + 2)).prop_map(
                move |trips| {
                    SparseMatrix::from_triplets(
                        r,
                        c,
                        trips
                            .into_iter()
                            .map(|(i, j, n, d)| (i, j, Rational::new(n.into(), d.into()))),
                    )
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_equals_transpose_rank(m in sparse_matrix(40)) {
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn rank_nullity(m in sparse_matrix(30)) {
            let k = kernel_basis(&m);
            prop_assert_eq!(m.cols(), rank(&m) + k.len());
            for v in &k {
                prop_assert!(m.mul_vec(v).is_zero());
            }
        }

        #[test]
        fn fraction_free_matches_plain(m in sparse_matrix(30)) {
            prop_assert_eq!(rank(&m), rank_by_elimination(&m));
        }
    }

    #[test]
    fn rank_transpose_large_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..4 {
            let (r, c) = (rng.gen_range(120..=200), rng.gen_range(120..=200));
            let trips: Vec<_> = (0..(r * 3))
                .map(|_| {
                    (
                        rng.gen_range(0..r),
                        rng.gen_range(0..c),
                        Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into()),
                    )
                })
                .collect();
            let m = SparseMatrix::from_triplets(r, c, trips);
            let rk = rank(&m);
            assert_eq!(rk, rank(&m.transpose()));
            assert_eq!(rk, rank_by_elimination(&m));
        }
    }
}
