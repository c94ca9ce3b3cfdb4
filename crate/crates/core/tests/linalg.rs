use nalgebra::DMatrix;
use proptest::prelude::*;
use terracini_core::linalg::{grassmann_distance, subspace_equal, Subspace, SymVec};
use terracini_core::rng;

fn random_subspace(seed: u64, ambient: usize, k: usize) -> Subspace {
    let mut r = rng::rng(seed);
    let vs: Vec<Vec<f64>> = (0..k).map(|_| rng::normal_vec(&mut r, ambient)).collect();
    Subspace::span(ambient, &vs).unwrap()
}

fn close(a: &Subspace, b: &Subspace) -> bool {
    grassmann_distance(a, b) <= 1e-9
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn double_complement_is_identity(seed in any::<u64>(), n in 1usize..8, k in 0usize..8) {
        let v = random_subspace(seed, n, k.min(n));
        prop_assert!(close(&v.complement().complement(), &v));
        prop_assert_eq!(v.complement().dim(), n - v.dim());
    }

    #[test]
    fn distance_is_symmetric_and_matches_equality(seed in any::<u64>(), n in 1usize..7, k in 0usize..7, j in 0usize..7) {
        let a = random_subspace(seed, n, k.min(n));
        let b = random_subspace(seed ^ 0x9e37, n, j.min(n));
        let dab = grassmann_distance(&a, &b);
        prop_assert!((dab - grassmann_distance(&b, &a)).abs() <= 1e-12);
        prop_assert_eq!(subspace_equal(&a, &b).equal, dab <= 1e-6);
        prop_assert!(grassmann_distance(&a, &a) <= 1e-12);
        prop_assert!(subspace_equal(&a, &a).equal);
        // The same subspace from a different basis.
        let mixed: Vec<Vec<f64>> = a.basis_vectors().iter().rev().map(|v| v.iter().map(|x| 3.0 * x).collect()).collect();
        let a2 = Subspace::span(n, &mixed).unwrap();
        prop_assert!(subspace_equal(&a, &a2).equal);
    }

    #[test]
    fn sums_form_a_semilattice(seed in any::<u64>(), n in 1usize..8, k in 0usize..4, j in 0usize..4, l in 0usize..4) {
        let a = random_subspace(seed, n, k.min(n));
        let b = random_subspace(seed.wrapping_add(1), n, j.min(n));
        let c = random_subspace(seed.wrapping_add(2), n, l.min(n));
        prop_assert!(close(&a.sum(&b), &b.sum(&a)));
        prop_assert!(close(&a.sum(&b).sum(&c), &a.sum(&b.sum(&c))));
        prop_assert!(close(&a.sum(&a), &a));
        prop_assert_eq!(a.sum(&b).dim(), (a.dim() + b.dim()).min(n));
    }

    #[test]
    fn symvec_round_trip(seed in any::<u64>(), d in 1usize..9) {
        let mut r = rng::rng(seed);
        let g = DMatrix::from_fn(d, d, |_, _| rng::normal(&mut r));
        let m = (&g + g.transpose()) * 0.5;
        let back = SymVec::from_matrix(&m).to_matrix();
        prop_assert!((back - &m).abs().max() <= 1e-12);
        let s = SymVec::from_matrix(&m);
        prop_assert!((s.inner(&s) - m.norm_squared()).abs() <= 1e-10 * (1.0 + m.norm_squared()));
    }
}
