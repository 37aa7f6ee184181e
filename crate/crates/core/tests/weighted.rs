mod common;

use common::{m, random, random_psd, random_rank, rng};
use nalgebra::{Complex, DMatrix};
use num::ToPrimitive;
use vnreg::{moore_penrose, rank, solve, weighted_mp, Error, ExactMatrix, Scalar};

type C = Complex<f64>;

fn to_float(a: &ExactMatrix) -> DMatrix<C> {
    DMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        let v = a.get(i, j);
        C::new(v.re().to_f64().unwrap(), v.im().to_f64().unwrap())
    })
}

fn max_diff(x: &DMatrix<C>, y: &DMatrix<C>) -> f64 {
    (x - y).iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// `s⁻¹·(s·b·s⁻¹)†·s` with `s = w^{1/2}`, for positive definite `w`.
fn float_weighted(b: &ExactMatrix, w: &ExactMatrix) -> DMatrix<C> {
    let eig = to_float(w).symmetric_eigen();
    let sqrt = |p: f64| DMatrix::from_diagonal(&eig.eigenvalues.map(|l| C::new(l.powf(p), 0.0)));
    let v = &eig.eigenvectors;
    let s = v * sqrt(0.5) * v.adjoint();
    let s_inv = v * sqrt(-0.5) * v.adjoint();
    let inner = (&s * to_float(b) * &s_inv).pseudo_inverse(1e-9).unwrap();
    s_inv * inner * s
}

fn realify(m: &ExactMatrix) -> Vec<Scalar> {
    m.entries()
        .iter()
        .flat_map(|v| [Scalar::from(v.re().clone()), Scalar::from(v.im().clone())])
        .collect()
}

/// Real dimension of `{p : map(p) = target}` over `n × n` complex matrices,
/// `None` when empty.
fn affine_dim(n: usize, target: &[ExactMatrix], map: impl Fn(&ExactMatrix) -> Vec<ExactMatrix>) -> Option<usize> {
    let unknowns = 2 * n * n;
    let columns: Vec<Vec<Scalar>> = (0..unknowns)
        .map(|k| {
            let mut p = ExactMatrix::zeros(n, n);
            let v = if k % 2 == 0 { Scalar::one() } else { Scalar::i() };
            p.set(k / 2 / n, k / 2 % n, v);
            map(&p).iter().flat_map(realify).collect()
        })
        .collect();
    let rhs: Vec<Scalar> = target.iter().flat_map(realify).collect();
    let coeff = ExactMatrix::from_fn(rhs.len(), unknowns, |i, j| columns[j][i].clone());
    let rhs = ExactMatrix::from_vec(rhs.len(), 1, rhs);
    solve(&coeff, &rhs).unwrap()?;
    Some(unknowns - rank(&coeff))
}

/// Dimension of the solution set from the projectors `P = b·x` and `Q = x·b`.
fn oracle_dim(b: &ExactMatrix, w: &ExactMatrix) -> Option<usize> {
    let n = b.rows();
    let id = ExactMatrix::identity(n);
    let g = moore_penrose(b);
    let off_col = &id - &(b * &g);
    let off_row = &id - &(&g * b);
    let zero = ExactMatrix::zeros(n, n);
    let herm = |p: &ExactMatrix| {
        let t = w * p;
        &t - &t.adjoint()
    };
    let d1 = affine_dim(n, &[b.clone(), zero.clone(), zero.clone()], |p| {
        vec![p * b, &off_col * p, herm(p)]
    })?;
    let d2 = affine_dim(n, &[b.clone(), zero.clone(), zero], |q| {
        vec![b * q, q * &off_row, herm(q)]
    })?;
    Some(d1 + d2)
}

fn check_conditions(b: &ExactMatrix, w: &ExactMatrix, x: &ExactMatrix) {
    assert_eq!(&(b * x) * b, *b);
    assert_eq!(&(x * b) * x, *x);
    assert!((&(w * b) * x).is_hermitian());
    assert!((&(w * x) * b).is_hermitian());
}

#[test]
fn positive_definite_weight_matches_float_oracle() {
    let mut rng = rng(21);
    for case in 0..24 {
        let n = 3 + case % 2;
        let complex = case % 3 != 0;
        let b = random_rank(&mut rng, n, n, 1 + case % (n - 1), complex);
        let w = &random_psd(&mut rng, n, n, complex) + &ExactMatrix::identity(n);
        let res = weighted_mp(&b, &w).unwrap();
        check_conditions(&b, &w, &res.solution);
        assert_eq!(res.solution_set_dim, 0);
        assert_eq!(oracle_dim(&b, &w), Some(0));
        let diff = max_diff(&to_float(&res.solution), &float_weighted(&b, &w));
        assert!(diff < 1e-6, "case {case}: diff {diff}");
    }
}

#[test]
fn identity_weight_is_moore_penrose() {
    let mut rng = rng(22);
    for _ in 0..10 {
        let b = random_rank(&mut rng, 4, 4, 2, true);
        let res = weighted_mp(&b, &ExactMatrix::identity(4)).unwrap();
        assert_eq!(res.solution, moore_penrose(&b));
        assert_eq!(res.solution_set_dim, 0);
    }
}

#[test]
fn singular_weight_dimension_matches_projector_oracle() {
    let mut rng = rng(23);
    let (mut solved, mut empty) = (0, 0);
    for case in 0..40 {
        let n = 3 + case % 2;
        let complex = case % 2 == 0;
        let b = match case % 4 {
            0 => {
                let p = random(&mut rng, n, 1, complex);
                let w = &p * &p.adjoint();
                &w * &moore_penrose(&w)
            }
            _ => random_rank(&mut rng, n, n, 1 + case % (n - 1), complex),
        };
        let w = random_psd(&mut rng, n, 1 + case % (n - 1), complex);
        match weighted_mp(&b, &w) {
            Ok(res) => {
                check_conditions(&b, &w, &res.solution);
                assert_eq!(Some(res.solution_set_dim), oracle_dim(&b, &w), "case {case}");
                solved += 1;
            }
            Err(Error::NoSolution { .. }) => {
                assert_eq!(oracle_dim(&b, &w), None, "case {case}");
                empty += 1;
            }
            Err(e) => panic!("case {case}: {e}"),
        }
    }
    assert!(solved >= 10, "{solved} solved, {empty} empty");
}

#[test]
fn zero_weight_leaves_projectors_free() {
    let b = m("1 0 0 / 0 0 0 / 0 0 0");
    let res = weighted_mp(&b, &ExactMatrix::zeros(3, 3)).unwrap();
    check_conditions(&b, &ExactMatrix::zeros(3, 3), &res.solution);
    // b·x and x·b each carry a free 1 × 2 complex block.
    assert_eq!(res.solution_set_dim, 8);
    assert_eq!(oracle_dim(&b, &ExactMatrix::zeros(3, 3)), Some(8));
}

#[test]
fn corner_projector_with_singular_weight() {
    let a = m("1 0 1 0 / 0 1 0 0 / 1 0 1 0 / 0 0 0 1");
    let f = m("1/2 0 1/2 0 / 0 0 0 0 / 1/2 0 1/2 0 / 0 0 0 1");
    let res = weighted_mp(&f, &a).unwrap();
    assert_eq!(res.solution, f);
    assert_eq!(res.solution_set_dim, 4);
    assert_eq!(oracle_dim(&f, &a), Some(4));
}

#[test]
fn rejects_bad_inputs() {
    let b = m("1 0 / 0 0");
    assert!(matches!(weighted_mp(&b, &m("1 0 / 0 -1")), Err(Error::NotPsd { .. })));
    assert!(weighted_mp(&m("1 0 0 / 0 0 0"), &b).is_err());
    assert!(weighted_mp(&b, &ExactMatrix::identity(3)).is_err());
}
