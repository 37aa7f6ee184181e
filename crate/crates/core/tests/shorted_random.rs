mod common;

use common::{m, orthogonal_projector, random, random_psd, random_rank, rng};
use rand::seq::SliceRandom;
use rand::Rng;
use vnreg::{
    anderson_trapp, core_matrix, direct_sum_leq, group_inverse, inverse, is_maximal, is_psd,
    loewner_leq, max_from_strong, member_from_weak, moore_penrose, permutation_equivalent, rank,
    shorted_psd, solve, weak_to_strong, Error, ExactMatrix, Frame, Strategy,
};

/// Columns spanning a `k`-dimensional subspace of `col(a)`, if the random
/// draw has full rank.
fn subspace_basis(rng: &mut impl Rng, a: &ExactMatrix, k: usize) -> Option<ExactMatrix> {
    let w = a * &random(rng, a.cols(), k, true);
    (rank(&w) == k).then_some(w)
}

/// An idempotent with column space `col(w)`: orthogonal, or oblique along a
/// random complement.
fn projector_onto(rng: &mut impl Rng, w: &ExactMatrix, oblique: bool) -> Option<ExactMatrix> {
    if !oblique {
        return Some(orthogonal_projector(w));
    }
    let u = random(rng, w.rows(), w.cols(), true).adjoint();
    let mid = inverse(&(&u * w)).unwrap()?;
    Some(&(w * &mid) * &u)
}

/// The largest PSD matrix below `a` with column space inside `col(w)`,
/// from the block formula after a congruence moving `col(w)` onto the first
/// coordinates.
fn block_oracle(rng: &mut impl Rng, a: &ExactMatrix, w: &ExactMatrix) -> Option<ExactMatrix> {
    let n = a.rows();
    let k = w.cols();
    let t = w.hstack(&random(rng, n, n - k, true)).unwrap();
    let t_inv = inverse(&t).unwrap()?;
    let moved = &(&t_inv * a) * &t_inv.adjoint();
    let blocked = anderson_trapp(&moved, k).unwrap();
    Some(&(&t * &blocked) * &t.adjoint())
}

struct Instance {
    a: ExactMatrix,
    e: ExactMatrix,
    w: ExactMatrix,
}

fn instance(rng: &mut impl Rng, n: usize, oblique: bool) -> Option<Instance> {
    let r = rng.gen_range(2..=n);
    let a = random_psd(rng, n, r, true);
    let rank_a = rank(&a);
    if rank_a < 2 {
        return None;
    }
    let k = rng.gen_range(1..rank_a);
    let w = subspace_basis(rng, &a, k)?;
    let e = projector_onto(rng, &w, oblique)?;
    Some(Instance { a, e, w })
}

#[test]
fn two_routes_agree_and_match_block_oracle() {
    let mut rng = rng(31);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 110 {
        attempts += 1;
        assert!(attempts < 400);
        let n = if checked % 3 == 0 { 4 } else { 3 };
        let Some(inst) = instance(&mut rng, n, checked % 4 == 3) else {
            continue;
        };
        let res = shorted_psd(&inst.a, &inst.e).unwrap();
        assert_eq!(res.via_core.as_ref(), Some(&res.value));
        assert_eq!(res.via_weighted.as_ref(), Some(&res.value));
        assert!(is_psd(&res.value).unwrap());
        assert!(loewner_leq(&res.value, &inst.a).unwrap());
        assert_eq!(res.rank_drop, rank(&inst.a) - rank(&res.value));
        if let Some(oracle) = block_oracle(&mut rng, &inst.a, &inst.w) {
            assert_eq!(res.value, oracle, "a = {:?}, e = {:?}", inst.a, inst.e);
        }
        checked += 1;
    }
}

#[test]
fn shorted_value_dominates_loewner_candidates() {
    let mut rng = rng(32);
    let (mut below, mut total) = (0, 0);
    for _ in 0..40 {
        let Some(inst) = instance(&mut rng, 3, false) else {
            continue;
        };
        let value = shorted_psd(&inst.a, &inst.e).unwrap().value;
        let frame = Frame::hermitian(inst.e.clone()).unwrap();
        for c in ["1/4", "1/2", "1", "2"] {
            let v = &inst.e * &random(&mut rng, 3, 1, true);
            let d = (&v * &v.adjoint()).scale(&c.parse().unwrap());
            assert!(frame.contains(&d));
            total += 1;
            if loewner_leq(&d, &inst.a).unwrap() {
                below += 1;
                assert!(loewner_leq(&d, &value).unwrap());
            }
        }
        assert!(loewner_leq(&value, &value).unwrap());
    }
    assert!(below >= 10, "{below} of {total}");
}

#[test]
fn value_is_a_fixed_point_of_every_strategy() {
    let mut rng = rng(33);
    let mut checked = 0;
    for _ in 0..30 {
        let Some(inst) = instance(&mut rng, 3, checked % 2 == 1) else {
            continue;
        };
        let value = shorted_psd(&inst.a, &inst.e).unwrap().value;
        let frame = Frame::hermitian(inst.e.clone()).unwrap();
        let pinv = moore_penrose(&inst.a);
        let core = core_matrix(&inst.a, &frame, &pinv).unwrap();
        assert!(core.invariant_under_choice);
        let mut strategies = vec![Strategy::MoorePenrose, Strategy::Group];
        let core_pinv = moore_penrose(&core.core);
        for _ in 0..3 {
            let y = weak_inverse(&mut rng, &core.core);
            strategies.push(Strategy::Explicit(weak_to_strong(&y, &core.core, &core_pinv).unwrap()));
        }
        for a1 in [pinv.clone(), other_one_inverse(&inst.a, &pinv)] {
            for s in &strategies {
                assert_eq!(max_from_strong(&inst.a, &frame, &a1, s).unwrap(), value);
            }
        }
        checked += 1;
    }
    assert!(checked >= 15);
}

fn other_one_inverse(a: &ExactMatrix, x: &ExactMatrix) -> ExactMatrix {
    let ones = ExactMatrix::from_fn(a.cols(), a.rows(), |i, j| vnreg::Scalar::from_int((i + 2 * j) as i64 % 3 - 1));
    vnreg::InverseFamily::around(a, x).unwrap().member(&ones, &ones).unwrap()
}

/// `u·(v·α·u)⁻¹·v` for random thin `u`, `v`; zero when the draw is singular.
fn weak_inverse(rng: &mut impl Rng, alpha: &ExactMatrix) -> ExactMatrix {
    let r = rank(alpha);
    if r == 0 {
        return ExactMatrix::zeros(alpha.cols(), alpha.rows());
    }
    let k = rng.gen_range(1..=r);
    let u = random(rng, alpha.cols(), k, true);
    let v = random(rng, k, alpha.rows(), true);
    match inverse(&(&(&v * alpha) * &u)).unwrap() {
        Some(mid) => &(&u * &mid) * &v,
        None => ExactMatrix::zeros(alpha.cols(), alpha.rows()),
    }
}

/// A general frame: `e` onto part of `col(a)`, `f` onto part of `row(a)`.
fn general_frame(rng: &mut impl Rng, a: &ExactMatrix) -> Option<Frame> {
    let r = rank(a);
    let (ke, kf) = (rng.gen_range(1..r), rng.gen_range(1..r));
    let we = subspace_basis(rng, a, ke)?;
    let wf = subspace_basis(rng, &a.adjoint(), kf)?;
    let e = projector_onto(rng, &we, true)?;
    let f = projector_onto(rng, &wf, false)?.adjoint();
    Frame::new(e, f).ok()
}

#[test]
fn weak_below_strong_survives_the_corner_map() {
    let mut rng = rng(34);
    let mut checked = 0;
    for _ in 0..60 {
        let a = random_rank(&mut rng, 4, 4, 3, true);
        let Some(frame) = general_frame(&mut rng, &a) else {
            continue;
        };
        let a1 = moore_penrose(&a);
        let alpha = core_matrix(&a, &frame, &a1).unwrap().core;
        let y = weak_inverse(&mut rng, &alpha);
        let z = weak_to_strong(&y, &alpha, &moore_penrose(&alpha)).unwrap();
        assert_eq!(&(&alpha * &z) * &alpha, alpha);
        assert_eq!(&(&z * &alpha) * &z, z);
        assert!(direct_sum_leq(&y, &z).unwrap());
        let eyf = &(frame.e() * &y) * frame.f();
        let ezf = &(frame.e() * &z) * frame.f();
        assert!(direct_sum_leq(&eyf, &ezf).unwrap());

        let d = member_from_weak(&a, &frame, &a1, &y).unwrap();
        assert_eq!(d, eyf);
        assert!(frame.contains(&d));
        assert!(direct_sum_leq(&d, &a).unwrap());
        assert_eq!(is_maximal(&d, &a, &frame, &a1).unwrap(), rank(&y) == rank(&alpha));
        assert!(is_maximal(&ezf, &a, &frame, &a1).unwrap());
        checked += 1;
    }
    assert!(checked >= 30, "{checked}");
}

#[test]
fn comparable_maximal_members_coincide() {
    let mut rng = rng(35);
    let (mut pairs, mut comparable) = (0, 0);
    for _ in 0..30 {
        let a = random_rank(&mut rng, 4, 4, 3, true);
        let Some(frame) = general_frame(&mut rng, &a) else {
            continue;
        };
        let a1 = moore_penrose(&a);
        let alpha = core_matrix(&a, &frame, &a1).unwrap().core;
        let alpha_pinv = moore_penrose(&alpha);
        let mut strong = vec![alpha_pinv.clone()];
        if let Some(g) = group_inverse(&alpha).unwrap() {
            strong.push(g);
        }
        for _ in 0..3 {
            let y = weak_inverse(&mut rng, &alpha);
            strong.push(weak_to_strong(&y, &alpha, &alpha_pinv).unwrap());
        }
        let images: Vec<ExactMatrix> = strong.iter().map(|v| &(frame.e() * v) * frame.f()).collect();
        for x in &images {
            for y in &images {
                pairs += 1;
                if direct_sum_leq(x, y).unwrap() {
                    comparable += 1;
                    assert_eq!(x, y);
                }
            }
        }
    }
    assert!(comparable > 0 && pairs > comparable, "{comparable} of {pairs}");
}

/// `a = e·s·e*` for some `s`, decided by solving `e·x = a` and `y·e* = a`.
fn in_corner(a: &ExactMatrix, e: &ExactMatrix) -> bool {
    solve(e, a).unwrap().is_some() && solve(&e.adjoint().transpose(), &a.transpose()).unwrap().is_some()
}

#[test]
fn full_rank_projector_is_exactly_the_corner_case() {
    let mut rng = rng(36);
    let (mut degenerate, mut proper) = (0, 0);
    for i in 0..60 {
        let a = random_psd(&mut rng, 3, 2 + i % 2, true);
        let r = rank(&a);
        let k = rng.gen_range(1..=r);
        let Some(w) = subspace_basis(&mut rng, &a, k) else {
            continue;
        };
        let Some(e) = projector_onto(&mut rng, &w, i % 3 == 0) else {
            continue;
        };
        let full = rank(&e) == r;
        assert_eq!(full, in_corner(&a, &e), "a = {a:?}, e = {e:?}");
        assert_eq!(full, (&(&e * &a) * &e.adjoint()) == a);
        match shorted_psd(&a, &e) {
            Err(Error::Degenerate { .. }) => {
                assert!(full);
                degenerate += 1;
            }
            Ok(_) => {
                assert!(!full);
                proper += 1;
            }
            Err(err) => panic!("{err}"),
        }
    }
    assert!(degenerate >= 5 && proper >= 5, "{degenerate} / {proper}");
}

#[test]
fn block_formula_is_psd_and_below() {
    let mut rng = rng(37);
    for i in 0..40 {
        let n = 2 + i % 3;
        let a = random_psd(&mut rng, n, 1 + i % n, true);
        let k = rng.gen_range(0..=n);
        let s = anderson_trapp(&a, k).unwrap();
        assert!(is_psd(&s).unwrap());
        assert!(loewner_leq(&s, &a).unwrap());
    }
    assert_eq!(anderson_trapp(&m("2 1 / 1 2"), 2).unwrap(), m("2 1 / 1 2"));
    assert_eq!(anderson_trapp(&m("2 0 / 0 3"), 1).unwrap(), m("2 0 / 0 0"));
}

fn permutation(sigma: &[usize]) -> ExactMatrix {
    let n = sigma.len();
    let mut p = ExactMatrix::zeros(n, n);
    for (i, &j) in sigma.iter().enumerate() {
        p.set(i, j, vnreg::Scalar::one());
    }
    p
}

#[test]
fn permutation_search_recovers_and_rejects() {
    let mut rng = rng(38);
    for i in 0..40 {
        let n = 2 + i % 5;
        let x = if i % 2 == 0 {
            random(&mut rng, n, n, true)
        } else {
            ExactMatrix::from_fn(n, n, |r, c| vnreg::Scalar::from_int(((r + c) % 2) as i64))
        };
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.shuffle(&mut rng);
        let p = permutation(&sigma);
        let y = &(&p * &x) * &p.transpose();
        let found = permutation_equivalent(&x, &y).unwrap().expect("a permutation exists");
        assert_eq!(&(&found * &x) * &found.transpose(), y);

        let mut z = y.clone();
        let bump = z.get(0, 0) + &vnreg::Scalar::from_int(100);
        z.set(0, 0, bump);
        assert!(permutation_equivalent(&x, &z).unwrap().is_none());
    }
    assert!(permutation_equivalent(&ExactMatrix::identity(11), &ExactMatrix::identity(11)).is_err());
}
