#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vnreg::{moore_penrose, ExactMatrix, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn m(s: &str) -> ExactMatrix {
    vnreg::parse_matrix(s).unwrap()
}

/// Small Gaussian integer, occasionally halved.
pub fn scalar(rng: &mut impl Rng, complex: bool) -> Scalar {
    let re = rng.gen_range(-3i64..=3);
    let im = if complex && rng.gen_bool(0.4) { rng.gen_range(-2i64..=2) } else { 0 };
    let half = if rng.gen_bool(0.2) { Scalar::ratio(1, 2) } else { Scalar::one() };
    &Scalar::gaussian(re, im) * &half
}

pub fn random(rng: &mut impl Rng, rows: usize, cols: usize, complex: bool) -> ExactMatrix {
    ExactMatrix::from_fn(rows, cols, |_, _| scalar(rng, complex))
}

/// A product of random `rows × r` and `r × cols` factors: rank at most `r`.
pub fn random_rank(rng: &mut impl Rng, rows: usize, cols: usize, r: usize, complex: bool) -> ExactMatrix {
    &random(rng, rows, r, complex) * &random(rng, r, cols, complex)
}

/// `z·z*` for a random `n × r` factor.
pub fn random_psd(rng: &mut impl Rng, n: usize, r: usize, complex: bool) -> ExactMatrix {
    let z = random(rng, n, r, complex);
    &z * &z.adjoint()
}

/// `(a, c)` whose column spaces and row spaces meet only in zero: split a
/// random `n × k` and `k × n` factor pair into two blocks.
pub fn disjoint_pair(rng: &mut impl Rng, n: usize, k: usize, split: usize, complex: bool) -> (ExactMatrix, ExactMatrix) {
    let f = random(rng, n, k, complex);
    let g = random(rng, k, n, complex);
    let a = &f.block(0, n, 0, split) * &g.block(0, split, 0, n);
    let c = &f.block(0, n, split, k) * &g.block(split, k, 0, n);
    (a, c)
}

/// Orthogonal projector onto the column space of `w`.
pub fn orthogonal_projector(w: &ExactMatrix) -> ExactMatrix {
    w * &moore_penrose(w)
}

/// Laplace-expansion determinant; fine for n ≤ 5.
pub fn det(a: &ExactMatrix) -> Scalar {
    let n = a.rows();
    if n == 0 {
        return Scalar::one();
    }
    let mut total = Scalar::zero();
    for j in 0..n {
        if a.get(0, j).is_zero() {
            continue;
        }
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let minor = a.select_rows(&rows).select_columns(&cols);
        let term = a.get(0, j) * &det(&minor);
        total = if j % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}
