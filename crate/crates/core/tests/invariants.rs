mod common;

use common::det;
use proptest::prelude::*;
use vnreg::{
    full_rank_factorization, group_inverse, is_psd, moore_penrose, one_inverse, parse_matrix, rank,
    reflexive_from_one, ExactMatrix, Scalar, Subspace,
};

fn entry() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, -2i64..=2, prop::sample::select(vec![1i64, 1, 1, 2, 3]))
        .prop_map(|(re, im, den)| &Scalar::gaussian(re, im) * &Scalar::ratio(1, den))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(entry(), rows * cols).prop_map(move |v| ExactMatrix::from_vec(rows, cols, v))
}

/// Matrices of rank at most `r`, built as products.
fn low_rank(rows: usize, cols: usize, r: usize) -> impl Strategy<Value = ExactMatrix> {
    (matrix(rows, r), matrix(r, cols)).prop_map(|(f, g)| &f * &g)
}

fn any_shape() -> impl Strategy<Value = ExactMatrix> {
    (1usize..=4, 1usize..=4, 0usize..=3).prop_flat_map(|(r, c, k)| low_rank(r, c, k.max(1)))
}

fn is_penrose(a: &ExactMatrix, x: &ExactMatrix) -> bool {
    let ax = a * x;
    let xa = x * a;
    &(&ax * a) == a && &(&xa * x) == x && ax.is_hermitian() && xa.is_hermitian()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_adjoint_invariant(a in any_shape()) {
        prop_assert_eq!(rank(&a), rank(&a.adjoint()));
        prop_assert_eq!(rank(&a), rank(&a.transpose()));
    }

    #[test]
    fn full_rank_factorization_reproduces(a in any_shape()) {
        let (f, g) = full_rank_factorization(&a);
        prop_assert_eq!(&f * &g, a.clone());
        prop_assert_eq!(rank(&f), f.cols());
        prop_assert_eq!(rank(&g), g.rows());
        prop_assert_eq!(f.cols(), rank(&a));
    }

    #[test]
    fn subspace_dimension_formula(u in low_rank(4, 3, 2), v in low_rank(4, 3, 3)) {
        let (u, v) = (Subspace::column_space(&u), Subspace::column_space(&v));
        let meet = u.intersect(&v).unwrap();
        let join = u.sum(&v).unwrap();
        prop_assert_eq!(meet.dim() + join.dim(), u.dim() + v.dim());
        prop_assert!(u.contains(&meet).unwrap() && v.contains(&meet).unwrap());
        prop_assert!(join.contains(&u).unwrap() && join.contains(&v).unwrap());
    }

    #[test]
    fn text_round_trip(a in any_shape()) {
        prop_assert_eq!(parse_matrix(&a.to_inline()).unwrap(), a.clone());
        prop_assert_eq!(parse_matrix(&vnreg::format_matrix(&a)).unwrap(), a.clone());
        prop_assert_eq!(parse_matrix(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn psd_agrees_with_principal_minors(x in matrix(3, 3), shift in -3i64..=3) {
        // A hermitian matrix is PSD iff every principal minor is nonnegative.
        let h = &(&x * &x.adjoint()) - &ExactMatrix::identity(3).scale(&Scalar::from_int(shift * shift));
        let mut all_nonneg = true;
        for mask in 1u32..8 {
            let idx: Vec<usize> = (0..3).filter(|i| mask & (1 << i) != 0).collect();
            let d = det(&h.select_rows(&idx).select_columns(&idx));
            prop_assert!(d.is_real());
            if d.is_negative_real() {
                all_nonneg = false;
            }
        }
        prop_assert_eq!(is_psd(&h).unwrap(), all_nonneg);
    }

    #[test]
    fn moore_penrose_satisfies_penrose_equations(a in any_shape()) {
        let x = moore_penrose(&a);
        prop_assert_eq!(x.shape(), (a.cols(), a.rows()));
        prop_assert!(is_penrose(&a, &x));
        prop_assert_eq!(moore_penrose(&x), a);
    }

    #[test]
    fn group_inverse_exists_iff_index_one(a in (1usize..=4, 1usize..=3).prop_flat_map(|(n, r)| low_rank(n, n, r))) {
        let g = group_inverse(&a).unwrap();
        prop_assert_eq!(g.is_some(), rank(&(&a * &a)) == rank(&a));
        if let Some(x) = g {
            prop_assert_eq!(&(&a * &x) * &a, a.clone());
            prop_assert_eq!(&(&x * &a) * &x, x.clone());
            prop_assert_eq!(&a * &x, &x * &a);
        }
    }

    #[test]
    fn family_members_are_one_inverses(a in low_rank(3, 4, 2), r1 in matrix(4, 3), r2 in matrix(4, 3)) {
        let fam = one_inverse(&a);
        let x = fam.member(&r1, &r2).unwrap();
        prop_assert_eq!(&(&a * &x) * &a, a.clone());
        let s = reflexive_from_one(&a, &x).unwrap();
        prop_assert_eq!(&(&a * &s) * &a, a.clone());
        prop_assert_eq!(&(&s * &a) * &s, s);
    }
}
