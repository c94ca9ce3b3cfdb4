use nalgebra::DMatrix;
use proptest::prelude::*;
use terracini_core::linalg::{dot, sym_dim, SymVec};
use terracini_core::rng::{self, normal, normal_vec, uniform};
use terracini_core::solver::{solve_lp, solve_sdp, LpProblem, SdpProblem, Status};

/// LP with optimum `x0` certified by the dual pair `(y0, z0)`, complementary by construction.
fn constructed_lp(seed: u64) -> (LpProblem, f64) {
    let mut r = rng::rng(seed);
    let n = 2 + rng::index(&mut r, 7);
    let m = 1 + rng::index(&mut r, n);
    let a: Vec<Vec<f64>> = (0..m).map(|_| normal_vec(&mut r, n)).collect();
    let support = rng::subset(&mut r, n, m);
    let (mut x0, mut z0) = (vec![0.0; n], vec![0.0; n]);
    for j in 0..n {
        if support.contains(&j) {
            x0[j] = 0.5 + uniform(&mut r);
        } else {
            z0[j] = 0.5 + uniform(&mut r);
        }
    }
    let y0 = normal_vec(&mut r, m);
    let b: Vec<f64> = a.iter().map(|row| dot(row, &x0)).collect();
    let c: Vec<f64> = (0..n).map(|j| z0[j] + (0..m).map(|i| a[i][j] * y0[i]).sum::<f64>()).collect();
    let opt = dot(&c, &x0);
    (LpProblem { c, a, b, free: vec![] }, opt)
}

/// SDP with planted optimum `U U'` and dual slack `V V'`, `U` orthogonal to `V`.
fn constructed_sdp(seed: u64) -> (SdpProblem, f64) {
    let mut r = rng::rng(seed);
    let d = 2 + rng::index(&mut r, 7);
    let nv = sym_dim(d);
    let rank = 1 + rng::index(&mut r, d - 1);
    let m = (1 + rng::index(&mut r, 20)).min(nv);
    let q = DMatrix::from_fn(d, d, |_, _| normal(&mut r)).qr().q();
    let u = q.columns(0, rank).into_owned();
    let v = q.columns(rank, d - rank).into_owned();
    let x0 = SymVec::from_matrix(&(&u * u.transpose()));
    let s0 = SymVec::from_matrix(&(&v * v.transpose()));
    let a: Vec<Vec<f64>> = (0..m)
        .map(|_| {
            let g = DMatrix::from_fn(d, d, |_, _| normal(&mut r));
            SymVec::from_matrix(&((&g + g.transpose()) * 0.5)).coords
        })
        .collect();
    let y0 = normal_vec(&mut r, m);
    let b: Vec<f64> = a.iter().map(|ai| dot(ai, &x0.coords)).collect();
    let mut c = s0.coords;
    for (yi, ai) in y0.iter().zip(&a) {
        for (ck, ak) in c.iter_mut().zip(ai) {
            *ck += yi * ak;
        }
    }
    let opt = dot(&c, &x0.coords);
    (SdpProblem { d, c, a, b }, opt)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn lp_constructed_optimum(seed in any::<u64>()) {
        let (lp, opt) = constructed_lp(seed);
        let s = solve_lp(&lp).unwrap();
        prop_assert_eq!(s.status, Status::Optimal);
        prop_assert!((s.value - opt).abs() <= 1e-6 * opt.abs().max(1.0), "{} vs {}", s.value, opt);
        prop_assert!(s.residuals.primal <= 1e-7 && s.residuals.dual <= 1e-7 && s.residuals.gap <= 1e-7, "{:?}", s.residuals);
        let dual = dot(&lp.b, &s.y);
        prop_assert!(s.value >= dual - 1e-7);
    }

    #[test]
    fn sdp_constructed_optimum(seed in any::<u64>()) {
        let (sdp, opt) = constructed_sdp(seed);
        let s = solve_sdp(&sdp).unwrap();
        prop_assert_eq!(s.status, Status::Optimal);
        prop_assert!((s.value - opt).abs() <= 1e-6 * opt.abs().max(1.0), "{} vs {}", s.value, opt);
        prop_assert!(s.residuals.primal <= 1e-7 && s.residuals.dual <= 1e-7 && s.residuals.gap <= 1e-7, "{:?}", s.residuals);
        let dual = dot(&sdp.b, &s.y);
        prop_assert!(s.value >= dual - 1e-7);
    }
}

#[test]
fn infeasible_and_unbounded_are_reported() {
    let infeasible = LpProblem { c: vec![1.0, 1.0], a: vec![vec![1.0, 1.0]], b: vec![-1.0], free: vec![] };
    assert_eq!(solve_lp(&infeasible).unwrap().status, Status::Infeasible);
    let unbounded = LpProblem { c: vec![-1.0, 0.0], a: vec![vec![1.0, -1.0]], b: vec![0.0], free: vec![] };
    assert_eq!(solve_lp(&unbounded).unwrap().status, Status::Unbounded);
}
