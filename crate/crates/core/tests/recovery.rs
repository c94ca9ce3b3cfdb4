use nalgebra::DMatrix;
use terracini_core::linalg::SymVec;
use terracini_core::recovery::{
    exact_recovery_trial_lp, exact_recovery_trial_sdp, gaussian_map_lp, gaussian_map_psd, lift, null_interior_check,
    psd_map_matrix, recovery_batch, unique_preimage_check, Base, StudyConfig, StudyKind,
};
use terracini_core::rng;

#[test]
fn lp_recovery_matches_unique_preimage() {
    let (d, n) = (20, 12);
    let (mut valid, mut recovered) = (0, 0);
    let mut seed = 0u64;
    while valid < 200 {
        seed += 1;
        assert!(seed < 2000, "too few gated trials");
        let a = gaussian_map_lp(d, n, seed).unwrap();
        if !null_interior_check(&a, Base::Orthant).unwrap() {
            continue;
        }
        let mut r = rng::rng(seed ^ 0xabc);
        let k = 1 + (seed as usize) % 11;
        let mut x = vec![0.0; d];
        for j in rng::subset(&mut r, d, k) {
            x[j] = 0.1 + rng::exponential(&mut r);
        }
        let t = exact_recovery_trial_lp(&a, &x, seed).unwrap();
        if !t.valid {
            continue;
        }
        valid += 1;
        recovered += usize::from(t.recovered);
        assert_eq!(t.recovered, t.unique_preimage, "seed {seed}, k {k}: {t:?}");
        assert_eq!(t.unique_preimage, unique_preimage_check(&lift(&a, Base::Orthant), Base::Orthant, &x).unwrap());
    }
    // Both outcomes occur.
    assert!(recovered > 20 && recovered < 180, "{recovered} of 200 recovered");
}

#[test]
fn sdp_recovery_matches_unique_preimage() {
    let d = 4;
    let (mut valid, mut recovered) = (0, 0);
    let mut seed = 0u64;
    while valid < 100 {
        seed += 1;
        assert!(seed < 1000, "too few gated trials");
        let n = 5 + (seed as usize) % 6;
        let a = gaussian_map_psd(d, n, seed).unwrap();
        let m = psd_map_matrix(&a).unwrap();
        if !null_interior_check(&m, Base::Psd).unwrap() {
            continue;
        }
        let mut r = rng::rng(seed ^ 0xdef);
        let rank = 1 + (seed as usize) % 2;
        let g = DMatrix::from_fn(d, rank, |_, _| rng::normal(&mut r));
        let x = SymVec::from_matrix(&(&g * g.transpose()));
        let t = exact_recovery_trial_sdp(&a, &x, seed).unwrap();
        if !t.valid {
            continue;
        }
        valid += 1;
        recovered += usize::from(t.recovered);
        assert_eq!(t.recovered, t.unique_preimage, "seed {seed}, n {n}, rank {rank}");
    }
    assert!(recovered > 10 && recovered < 90, "{recovered} of 100 recovered");
}

#[test]
fn recovery_rate_does_not_increase_with_k() {
    let mut last = f64::INFINITY;
    let mut rates = Vec::new();
    for k in 1..=6 {
        let cfg = StudyConfig { kind: StudyKind::Lp, d: 16, n: 8, k, trials: 40, seed: 5, plants: 20 };
        let rep = recovery_batch(&cfg).unwrap();
        assert!(rep.recovery_rate <= last, "rates {rates:?} then {}", rep.recovery_rate);
        last = rep.recovery_rate;
        rates.push(last);
    }
    assert!(rates[0] > rates[5], "{rates:?}");
}

#[test]
fn reports_are_deterministic() {
    for kind in [StudyKind::Lp, StudyKind::Sdp] {
        let cfg = StudyConfig { kind, d: 4, n: 6, k: 1, trials: 5, seed: 77, plants: 20 };
        let a = serde_json::to_string(&recovery_batch(&cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&recovery_batch(&cfg).unwrap()).unwrap();
        assert_eq!(a, b);
        let other = StudyConfig { seed: 78, ..cfg };
        assert_ne!(a, serde_json::to_string(&recovery_batch(&other).unwrap()).unwrap());
    }
}

#[test]
fn gaussian_psd_map_has_the_stated_variances() {
    let (d, n) = (3, 10);
    let (mut diag, mut off) = (Vec::new(), Vec::new());
    let mut seed = 0;
    while diag.len() < 100_000 {
        for s in gaussian_map_psd(d, n, seed).unwrap() {
            let m = s.to_matrix();
            for i in 0..d {
                diag.push(m[(i, i)]);
                for j in i + 1..d {
                    off.push(m[(i, j)]);
                }
            }
        }
        seed += 1;
    }
    let var = |v: &[f64]| {
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (v.len() - 1) as f64
    };
    let nf = n as f64;
    assert!((var(&diag) * nf - 1.0).abs() <= 0.05, "diagonal variance {}", var(&diag));
    assert!((var(&off) * 2.0 * nf - 1.0).abs() <= 0.05, "off-diagonal variance {}", var(&off));
}
