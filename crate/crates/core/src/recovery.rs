//! Exact recovery experiments for linear images of the orthant and the PSD cone.
//!
//! A measurement map `A` is lifted to `B = [A; 1']` (orthant) or `B = [A; tr]`
//! (PSD). With a strictly positive null vector of `A`, the LP `min 1'x` (resp.
//! the SDP `min tr X`) recovers a planted point exactly when `B` maps it to a
//! point with a unique preimage in the cone, and for the orthant this holds for
//! every `k`-sparse point exactly when `B(R^d_+)` is pointed, has `d` extreme
//! rays and is `k`-Terracini convex. The studies below measure both sides on
//! random maps.

use alloc::vec;
use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::cones::PSD_KERNEL_TOL;
use crate::error::{domain, usage, Result};
use crate::linalg::{self, psd_kernel, sym_dim, Subspace, SymVec, RANK_TOL};
use crate::poly::combinations;
use crate::rng::{self, Rng};
use crate::solver::{self, Face, LpProblem, RelInt, SdpProblem, Status};
use crate::tangent::{face_transversality, TerraciniVerdict};

/// Relative distance below which a solution counts as the planted point.
pub const RECOVERY_TOL: f64 = 1e-6;

/// Size of the objective perturbation used to probe uniqueness.
pub const PERTURBATION: f64 = 1e-6;

/// Relative shift under the perturbed objective above which the optimum is declared not unique.
pub const PERTURBATION_SHIFT_TOL: f64 = 1e-4;

/// Size of the map perturbation used as evidence for robust Terracini convexity.
pub const ROBUST_NOISE: f64 = 1e-3;

/// Cap on exhaustively enumerated supports per map.
pub const MAX_FACES: usize = 1024;

/// Which base cone an experiment uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Base {
    /// `R^d_+`, measured by an `n x d` matrix.
    Orthant,
    /// `S^d_+`, measured by `n` symmetric matrices.
    Psd,
}

/// One planted-point experiment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecoveryTrial {
    /// Base cone.
    pub base: Base,
    /// Support size (orthant) or rank (PSD) of the planted point.
    pub k: usize,
    /// Planted point (scaled coordinates for PSD).
    pub planted: Vec<f64>,
    /// Returned optimum.
    pub solution: Vec<f64>,
    /// Solver status.
    pub status: Status,
    /// False when the solver failed; such trials are not counted.
    pub valid: bool,
    /// `|solution - planted| / |planted|`.
    pub error: f64,
    /// Relative move of the optimum under the perturbed objective.
    pub perturbation_shift: f64,
    /// Optimal, within tolerance of the planted point, and stable under perturbation.
    pub recovered: bool,
    /// The lifted point has a unique preimage in the cone.
    pub unique_preimage: bool,
    /// Dual face check on the normal cone of the planted point, when requested.
    pub terracini_face_check: Option<TerraciniVerdict>,
}

/// `n` symmetric matrices `(G + G')/2` with `G` having i.i.d. `N(0, 1/n)` entries.
pub fn gaussian_map_psd(d: usize, n: usize, seed: u64) -> Result<Vec<SymVec>> {
    if n == 0 || d == 0 {
        return Err(usage!("need n >= 1 and d >= 1"));
    }
    let mut r = rng::rng(seed);
    Ok(gaussian_psd_with(&mut r, d, n))
}

fn gaussian_psd_with(r: &mut Rng, d: usize, n: usize) -> Vec<SymVec> {
    let sd = 1.0 / Float::sqrt(n as f64);
    (0..n)
        .map(|_| {
            let g = DMatrix::from_fn(d, d, |_, _| sd * rng::normal(r));
            SymVec::from_matrix(&((&g + g.transpose()) * 0.5))
        })
        .collect()
}

/// `n x d` matrix with i.i.d. `N(0, 1/n)` entries.
pub fn gaussian_map_lp(d: usize, n: usize, seed: u64) -> Result<DMatrix<f64>> {
    if n == 0 || d == 0 {
        return Err(usage!("need n >= 1 and d >= 1"));
    }
    let mut r = rng::rng(seed);
    Ok(gaussian_lp_with(&mut r, d, n))
}

fn gaussian_lp_with(r: &mut Rng, d: usize, n: usize) -> DMatrix<f64> {
    let sd = 1.0 / Float::sqrt(n as f64);
    DMatrix::from_fn(n, d, |_, _| sd * rng::normal(r))
}

/// Rows of the PSD measurement map in scaled coordinates.
pub fn psd_map_matrix(a: &[SymVec]) -> Result<DMatrix<f64>> {
    let d = a.first().ok_or_else(|| usage!("empty measurement list"))?.d;
    if a.iter().any(|m| m.d != d) {
        return Err(usage!("measurement matrices have different sizes"));
    }
    let rows: Vec<Vec<f64>> = a.iter().map(|m| m.coords.clone()).collect();
    linalg::rows(sym_dim(d), &rows)
}

/// `B = [A; 1']` for the orthant or `B = [A; tr]` for the PSD cone (`A` in scaled coordinates).
pub fn lift(a: &DMatrix<f64>, base: Base) -> DMatrix<f64> {
    let (n, m) = a.shape();
    let last: Vec<f64> = match base {
        Base::Orthant => vec![1.0; m],
        Base::Psd => SymVec::identity(side(m)).coords,
    };
    let mut b = DMatrix::zeros(n + 1, m);
    b.view_mut((0, 0), (n, m)).copy_from(a);
    for j in 0..m {
        b[(n, j)] = last[j];
    }
    b
}

/// Matrix side `d` with `d(d+1)/2 = m`.
fn side(m: usize) -> usize {
    let mut d = 0;
    while sym_dim(d) < m {
        d += 1;
    }
    d
}

fn rel_dist(x: &[f64], y: &[f64]) -> f64 {
    let diff: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    linalg::norm(&diff) / linalg::norm(y).max(f64::MIN_POSITIVE)
}

fn mat_vec(a: &DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    (a * DVector::from_column_slice(x)).iter().copied().collect()
}

fn matrix_rows(a: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..a.nrows()).map(|i| a.row(i).iter().copied().collect()).collect()
}

/// Support of a nonnegative vector, relative to its largest entry.
fn support(x: &[f64]) -> Vec<usize> {
    let top = x.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    (0..x.len()).filter(|&j| x[j] > 1e-9 * top).collect()
}

/// Solves `min 1'x  s.t.  Ax = Ax*,  x >= 0` and compares with `x*`.
///
/// `seed` drives the random direction of the objective perturbation.
pub fn exact_recovery_trial_lp(a: &DMatrix<f64>, x_star: &[f64], seed: u64) -> Result<RecoveryTrial> {
    let d = a.ncols();
    if x_star.len() != d {
        return Err(usage!("planted point has length {}, map has {} columns", x_star.len(), d));
    }
    if x_star.iter().any(|&v| v < 0.0) {
        return Err(domain!("planted point has a negative entry"));
    }
    let b = mat_vec(a, x_star);
    let rows = matrix_rows(a);
    let lp = LpProblem { c: vec![1.0; d], a: rows.clone(), b: b.clone(), free: Vec::new() };
    let sol = solver::solve_lp(&lp)?;
    let unique_preimage = unique_preimage_check(&lift(a, Base::Orthant), Base::Orthant, x_star)?;
    let k = support(x_star).len();
    let mut trial = RecoveryTrial {
        base: Base::Orthant,
        k,
        planted: x_star.to_vec(),
        solution: sol.x.clone(),
        status: sol.status,
        valid: sol.status == Status::Optimal,
        error: f64::INFINITY,
        perturbation_shift: f64::INFINITY,
        recovered: false,
        unique_preimage,
        terracini_face_check: None,
    };
    if !trial.valid {
        return Ok(trial);
    }
    trial.error = rel_dist(&sol.x, x_star);
    let mut r = rng::rng(seed);
    let c: Vec<f64> = (0..d).map(|_| 1.0 + PERTURBATION * rng::normal(&mut r)).collect();
    let probe = solver::solve_lp(&LpProblem { c, a: rows, b, free: Vec::new() })?;
    if probe.status == Status::Optimal {
        let reference = if linalg::norm(x_star) > 0.0 { x_star } else { &sol.x };
        trial.perturbation_shift = rel_dist(&probe.x, reference);
    }
    trial.recovered = trial.error <= RECOVERY_TOL && trial.perturbation_shift <= PERTURBATION_SHIFT_TOL;
    Ok(trial)
}

/// Solves `min tr X  s.t.  <A_i, X> = <A_i, X*>,  X PSD` and compares with `X*`.
pub fn exact_recovery_trial_sdp(a: &[SymVec], x_star: &SymVec, seed: u64) -> Result<RecoveryTrial> {
    let am = psd_map_matrix(a)?;
    let d = x_star.d;
    if am.ncols() != sym_dim(d) {
        return Err(usage!("planted matrix has side {}, measurements act on a different side", d));
    }
    let xm = x_star.to_matrix();
    let (vals, _) = linalg::sym_eigen(&xm);
    let top = vals.last().copied().unwrap_or(0.0).abs().max(1.0);
    if vals.first().copied().unwrap_or(0.0) < -PSD_KERNEL_TOL * top {
        return Err(domain!("planted matrix is not PSD"));
    }
    let rank = d - psd_kernel(&xm, PSD_KERNEL_TOL).ncols();
    let b = mat_vec(&am, &x_star.coords);
    let rows = matrix_rows(&am);
    let id = SymVec::identity(d).coords;
    let sol = solver::solve_sdp(&SdpProblem { d, c: id.clone(), a: rows.clone(), b: b.clone() })?;
    let unique_preimage = unique_preimage_check(&lift(&am, Base::Psd), Base::Psd, &x_star.coords)?;
    let mut trial = RecoveryTrial {
        base: Base::Psd,
        k: rank,
        planted: x_star.coords.clone(),
        solution: sol.x.coords.clone(),
        status: sol.status,
        valid: sol.status == Status::Optimal,
        error: f64::INFINITY,
        perturbation_shift: f64::INFINITY,
        recovered: false,
        unique_preimage,
        terracini_face_check: None,
    };
    if !trial.valid {
        return Ok(trial);
    }
    trial.error = rel_dist(&sol.x.coords, &x_star.coords);
    let mut r = rng::rng(seed);
    let g = DMatrix::from_fn(d, d, |_, _| rng::normal(&mut r));
    let g = SymVec::from_matrix(&((&g + g.transpose()) * 0.5));
    let c: Vec<f64> = id.iter().zip(&g.coords).map(|(i, v)| i + PERTURBATION * v).collect();
    let probe = solver::solve_sdp(&SdpProblem { d, c, a: rows, b })?;
    if probe.status == Status::Optimal {
        let reference = if linalg::norm(&x_star.coords) > 0.0 { &x_star.coords } else { &sol.x.coords };
        trial.perturbation_shift = rel_dist(&probe.x.coords, reference);
    }
    trial.recovered = trial.error <= RECOVERY_TOL && trial.perturbation_shift <= PERTURBATION_SHIFT_TOL;
    Ok(trial)
}

/// The face of the base cone containing `planted` in its relative interior and the
/// face of normals at `planted` (both as faces of the self-dual base).
fn planted_faces(base: Base, m: usize, planted: &[f64]) -> (Face, Face) {
    match base {
        Base::Orthant => {
            let s = support(planted);
            let rest: Vec<usize> = (0..m).filter(|j| !s.contains(j)).collect();
            (Face::Orthant { ambient: m, support: s }, Face::Orthant { ambient: m, support: rest })
        }
        Base::Psd => {
            let d = side(m);
            let x = SymVec { d, coords: planted.to_vec() }.to_matrix();
            let (vals, vecs) = linalg::sym_eigen(&x);
            let top = vals.last().copied().unwrap_or(0.0).abs().max(f64::MIN_POSITIVE);
            let range: Vec<usize> = (0..d).filter(|&i| vals[i] > PSD_KERNEL_TOL * top).collect();
            let kernel: Vec<usize> = (0..d).filter(|i| !range.contains(i)).collect();
            let pick = |idx: &[usize]| {
                let mut z = DMatrix::zeros(d, idx.len());
                for (c, &i) in idx.iter().enumerate() {
                    z.set_column(c, &vecs.column(i));
                }
                z
            };
            (Face::Psd { d, z: pick(&range) }, Face::Psd { d, z: pick(&kernel) })
        }
    }
}

/// Whether `B(planted)` has a unique preimage in the base cone.
///
/// Holds when `range(B')` meets the relative interior of the normal face at
/// `planted` and `B` is injective on the span of the face containing `planted`.
/// For the orthant the condition is also necessary; for the PSD cone it is
/// sufficient, and necessary under strict complementarity.
pub fn unique_preimage_check(b: &DMatrix<f64>, base: Base, planted: &[f64]) -> Result<bool> {
    let m = b.ncols();
    if planted.len() != m {
        return Err(usage!("planted point has length {}, map has {} columns", planted.len(), m));
    }
    if base == Base::Psd && sym_dim(side(m)) != m {
        return Err(usage!("{} columns is not a symmetric-matrix dimension", m));
    }
    let (face, normal) = planted_faces(base, m, planted);
    let span = face.span();
    if span.dim() > 0 {
        let restricted = b * span.basis();
        if linalg::rank(&restricted, RANK_TOL) < span.dim() {
            return Ok(false);
        }
    }
    let w = Subspace::from_columns(&b.transpose(), RANK_TOL);
    Ok(matches!(solver::relative_interior_point(&w, &normal)?, RelInt::Point { .. }))
}

/// Whether `null(A)` meets the interior of the base cone (`A` in scaled coordinates for PSD).
pub fn null_interior_check(a: &DMatrix<f64>, base: Base) -> Result<bool> {
    let m = a.ncols();
    let face = match base {
        Base::Orthant => Face::Orthant { ambient: m, support: (0..m).collect() },
        Base::Psd => {
            let d = side(m);
            if sym_dim(d) != m {
                return Err(usage!("{} columns is not a symmetric-matrix dimension", m));
            }
            Face::Psd { d, z: DMatrix::identity(d, d) }
        }
    };
    let null = if a.nrows() == 0 { Subspace::full(m) } else { linalg::null_space(a, RANK_TOL) };
    Ok(matches!(solver::relative_interior_point(&null, &face)?, RelInt::Point { .. }))
}

/// Parameters of a random-ensemble study.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    /// `lp` for the orthant, `sdp` for the PSD cone.
    pub kind: StudyKind,
    /// Ambient size: vector length or matrix side.
    pub d: usize,
    /// Number of measurements.
    pub n: usize,
    /// Sparsity or rank level.
    pub k: usize,
    /// Number of random maps.
    pub trials: usize,
    /// Master seed; map `i` uses sub-stream `i`.
    pub seed: u64,
    /// Planted points per map (per rank for PSD); orthant studies plant on every
    /// support instead when there are at most [`MAX_FACES`] of them.
    #[serde(default = "default_plants")]
    pub plants: usize,
}

fn default_plants() -> usize {
    20
}

/// Study family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StudyKind {
    /// Orthant images and linear programs.
    Lp,
    /// PSD images and semidefinite programs.
    Sdp,
}

/// 2x2 contingency table: `table[a][b]` counts items with first verdict `a` and second `b`.
pub type Agreement = [[usize; 2]; 2];

fn rate(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn binomial(n: usize, k: usize) -> usize {
    let mut r: u128 = 1;
    for i in 0..k.min(n) {
        r = r * (n - i) as u128 / (i + 1) as u128;
        if r > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    if k > n {
        0
    } else {
        r as usize
    }
}

/// Summary of [`recovery_batch`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BatchReport {
    /// Study parameters (`plants` is unused).
    pub config: StudyConfig,
    /// One trial per fresh random map.
    pub trials: Vec<RecoveryTrial>,
    /// Trials where the solver failed.
    pub invalid: usize,
    /// Recovered fraction of valid trials.
    pub recovery_rate: f64,
    /// Fraction of valid trials with a unique preimage.
    pub unique_rate: f64,
    /// Valid trials by (recovered, unique preimage).
    pub agreement: Agreement,
}

/// Trial `index` of [`recovery_batch`]: a fresh Gaussian map and a planted point
/// of support size (or rank) `k`, with `k` uniform on the support and exp(1)
/// magnitudes, or `G G'` normalized to unit trace with Gaussian `d x k` factor `G`.
pub fn batch_trial(cfg: &StudyConfig, index: usize) -> Result<RecoveryTrial> {
    if cfg.d == 0 || cfg.n == 0 || cfg.k == 0 || cfg.k > cfg.d {
        return Err(usage!("need d, n >= 1 and 1 <= k <= d"));
    }
    let (d, n, k) = (cfg.d, cfg.n, cfg.k);
    let mut r = rng::substream(cfg.seed, index as u64);
    match cfg.kind {
        StudyKind::Lp => {
            let a = gaussian_lp_with(&mut r, d, n);
            let mut x = vec![0.0; d];
            for j in rng::subset(&mut r, d, k) {
                x[j] = rng::exponential(&mut r).max(1e-3);
            }
            let seed = rng::index(&mut r, usize::MAX) as u64;
            exact_recovery_trial_lp(&a, &x, seed)
        }
        StudyKind::Sdp => {
            let a = gaussian_psd_with(&mut r, d, n);
            let g = DMatrix::from_fn(d, k, |_, _| rng::normal(&mut r));
            let x = &g * g.transpose();
            let x = SymVec::from_matrix(&(&x / x.trace()));
            let seed = rng::index(&mut r, usize::MAX) as u64;
            exact_recovery_trial_sdp(&a, &x, seed)
        }
    }
}

/// Aggregates trials into a [`BatchReport`].
pub fn batch_summarize(cfg: &StudyConfig, trials: Vec<RecoveryTrial>) -> BatchReport {
    let mut agreement = [[0usize; 2]; 2];
    for t in trials.iter().filter(|t| t.valid) {
        agreement[t.recovered as usize][t.unique_preimage as usize] += 1;
    }
    let valid: usize = agreement.iter().flatten().sum();
    BatchReport {
        config: cfg.clone(),
        invalid: trials.len() - valid,
        recovery_rate: rate(agreement[1][0] + agreement[1][1], valid),
        unique_rate: rate(agreement[0][1] + agreement[1][1], valid),
        agreement,
        trials,
    }
}

/// Monte-Carlo exact recovery: `cfg.trials` independent (map, planted point) pairs.
pub fn recovery_batch(cfg: &StudyConfig) -> Result<BatchReport> {
    let trials = (0..cfg.trials).map(|i| batch_trial(cfg, i)).collect::<Result<Vec<_>>>()?;
    Ok(batch_summarize(cfg, trials))
}

/// Per-map record of [`dt_equivalence_study`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DtMapRecord {
    /// Map index (sub-stream id).
    pub index: usize,
    /// `A` has full row rank.
    pub surjective: bool,
    /// `null(A)` meets the open orthant.
    pub null_interior: bool,
    /// `B = [A; 1']` has full row rank.
    pub lifted_surjective: bool,
    /// Both hypotheses hold, so the map counts toward the equivalence statistics.
    pub included: bool,
    /// Supports were enumerated rather than sampled.
    pub exhaustive: bool,
    /// Planted-point trials.
    pub trials: Vec<RecoveryTrial>,
    /// Every valid trial recovered its planted point.
    pub recovery_property: bool,
    /// Every column of `B` spans an extreme ray of `B(R^d_+)`.
    pub extreme_rays: bool,
    /// Dual face checks run.
    pub face_checks: usize,
    /// Dual face checks passed.
    pub face_passes: usize,
    /// `extreme_rays` and every face check passed.
    pub terracini_property: bool,
    /// Trials where `recovered == unique_preimage`.
    pub lemma_agreements: usize,
}

/// Summary of [`dt_equivalence_study`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DtReport {
    /// Study parameters.
    pub config: StudyConfig,
    /// Per-map records.
    pub maps: Vec<DtMapRecord>,
    /// Maps excluded by the hypothesis gate.
    pub excluded: usize,
    /// Included maps by (recovery property, Terracini property).
    pub agreement: Agreement,
    /// Fraction of included maps on the diagonal of `agreement`.
    pub agreement_rate: f64,
    /// Valid trials on included maps.
    pub lemma_trials: usize,
    /// Of those, trials where recovery and unique preimage agree.
    pub lemma_agreements: usize,
    /// Recovered fraction of valid trials on included maps.
    pub recovery_rate: f64,
}

fn check_study(cfg: &StudyConfig, kind: StudyKind) -> Result<()> {
    if cfg.kind != kind {
        return Err(usage!("study kind does not match the requested study"));
    }
    if cfg.d == 0 || cfg.n == 0 || cfg.k == 0 {
        return Err(usage!("need d, n, k >= 1"));
    }
    if cfg.k >= cfg.d {
        return Err(domain!("need k < d, got k = {} and d = {}", cfg.k, cfg.d));
    }
    Ok(())
}

/// Supports of size `k` to plant on, and supports of size at most `k` to run face checks on.
fn dt_supports(r: &mut Rng, d: usize, k: usize, plants: usize) -> (bool, Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let total: usize = (1..=k).fold(0usize, |acc, j| acc.saturating_add(binomial(d, j)));
    if total <= MAX_FACES {
        let planted = combinations(d, k);
        let faces = (1..=k).flat_map(|j| combinations(d, j)).collect();
        (true, planted, faces)
    } else {
        let planted: Vec<Vec<usize>> = (0..plants).map(|_| rng::subset(r, d, k)).collect();
        let mut faces: Vec<Vec<usize>> = (0..d).map(|j| vec![j]).collect();
        for j in 2..=k {
            faces.extend((0..plants).map(|_| rng::subset(r, d, j)));
        }
        (false, planted, faces)
    }
}

/// One map of [`dt_equivalence_study`]; maps are independent, so callers may run them in parallel.
pub fn dt_map_record(cfg: &StudyConfig, index: usize) -> Result<DtMapRecord> {
    check_study(cfg, StudyKind::Lp)?;
    let (d, n, k) = (cfg.d, cfg.n, cfg.k);
    let mut r = rng::substream(cfg.seed, index as u64);
    let a = gaussian_lp_with(&mut r, d, n);
    let b = lift(&a, Base::Orthant);
    let surjective = linalg::rank(&a, RANK_TOL) == n;
    let null_interior = null_interior_check(&a, Base::Orthant)?;
    let lifted_surjective = linalg::rank(&b, RANK_TOL) == n + 1;
    let included = surjective && null_interior && lifted_surjective;
    let (exhaustive, planted, faces) = dt_supports(&mut r, d, k, cfg.plants);

    let mut trials = Vec::with_capacity(planted.len());
    for s in &planted {
        let mut x = vec![0.0; d];
        for &j in s {
            x[j] = rng::exponential(&mut r).max(1e-3);
        }
        let seed = rng::index(&mut r, usize::MAX) as u64;
        let mut t = exact_recovery_trial_lp(&a, &x, seed)?;
        let rest: Vec<usize> = (0..d).filter(|j| !s.contains(j)).collect();
        t.terracini_face_check = Some(face_transversality(&b, &Face::Orthant { ambient: d, support: rest })?);
        trials.push(t);
    }
    let recovery_property = trials.iter().filter(|t| t.valid).all(|t| t.recovered);
    let lemma_agreements = trials.iter().filter(|t| t.valid && t.recovered == t.unique_preimage).count();

    let mut extreme_rays = true;
    for j in 0..d {
        let mut e = vec![0.0; d];
        e[j] = 1.0;
        if !unique_preimage_check(&b, Base::Orthant, &e)? {
            extreme_rays = false;
            break;
        }
    }
    let mut face_passes = 0;
    for s in &faces {
        let rest: Vec<usize> = (0..d).filter(|j| !s.contains(j)).collect();
        if face_transversality(&b, &Face::Orthant { ambient: d, support: rest })?.passed {
            face_passes += 1;
        }
    }
    let terracini_property = extreme_rays && face_passes == faces.len();
    Ok(DtMapRecord {
        index,
        surjective,
        null_interior,
        lifted_surjective,
        included,
        exhaustive,
        trials,
        recovery_property,
        extreme_rays,
        face_checks: faces.len(),
        face_passes,
        terracini_property,
        lemma_agreements,
    })
}

/// Aggregates per-map records into a [`DtReport`].
pub fn dt_summarize(cfg: &StudyConfig, maps: Vec<DtMapRecord>) -> DtReport {
    let mut agreement = [[0usize; 2]; 2];
    let (mut lemma_trials, mut lemma_agreements, mut recovered) = (0, 0, 0);
    for m in maps.iter().filter(|m| m.included) {
        agreement[m.recovery_property as usize][m.terracini_property as usize] += 1;
        let valid = m.trials.iter().filter(|t| t.valid).count();
        lemma_trials += valid;
        lemma_agreements += m.lemma_agreements;
        recovered += m.trials.iter().filter(|t| t.valid && t.recovered).count();
    }
    let included = agreement.iter().flatten().sum();
    DtReport {
        config: cfg.clone(),
        excluded: maps.len() - included,
        agreement,
        agreement_rate: rate(agreement[0][0] + agreement[1][1], included),
        lemma_trials,
        lemma_agreements,
        recovery_rate: rate(recovered, lemma_trials),
        maps,
    }
}

/// Compares exact LP recovery of sparse nonnegative vectors with the dual
/// Terracini face checks of `B(R^d_+)`, `B = [A; 1']`, over random Gaussian `A`.
pub fn dt_equivalence_study(cfg: &StudyConfig) -> Result<DtReport> {
    let maps = (0..cfg.trials).map(|i| dt_map_record(cfg, i)).collect::<Result<Vec<_>>>()?;
    Ok(dt_summarize(cfg, maps))
}

/// Per-map record of [`most_tc_study`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TcMapRecord {
    /// Map index (sub-stream id).
    pub index: usize,
    /// `A` has full row rank.
    pub surjective: bool,
    /// `null(A)` meets the positive definite matrices.
    pub null_interior: bool,
    /// `B = [A; tr]` has full row rank.
    pub lifted_surjective: bool,
    /// Both hypotheses hold.
    pub included: bool,
    /// Planted low-rank trials, `plants` per rank `1..=k`.
    pub trials: Vec<RecoveryTrial>,
    /// Face checks on the normal faces of the planted points that passed.
    pub face_passes: usize,
    /// Face checks repeated on a perturbed map that passed.
    pub robust_passes: usize,
    /// Trials where `recovered == unique_preimage`.
    pub lemma_agreements: usize,
}

/// Summary of [`most_tc_study`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TcReport {
    /// Study parameters.
    pub config: StudyConfig,
    /// Per-map records.
    pub maps: Vec<TcMapRecord>,
    /// Maps excluded by the hypothesis gate.
    pub excluded: usize,
    /// Whether `n > C(d+1,2) - C(d-k+1,2)`, the count needed by the robust direction.
    pub dimension_condition: bool,
    /// Recovered fraction of valid trials.
    pub recovery_rate: f64,
    /// Passed fraction of face checks.
    pub face_rate: f64,
    /// Passed fraction of face checks on perturbed maps (evidence for the robust property, not a proof).
    pub robust_rate: f64,
    /// Valid trials by (recovered, face check passed).
    pub joint: Agreement,
    /// Valid trials on included maps.
    pub lemma_trials: usize,
    /// Of those, trials where recovery and unique preimage agree.
    pub lemma_agreements: usize,
}

/// One map of [`most_tc_study`].
pub fn tc_map_record(cfg: &StudyConfig, index: usize) -> Result<TcMapRecord> {
    check_study(cfg, StudyKind::Sdp)?;
    let (d, n, k) = (cfg.d, cfg.n, cfg.k);
    let mut r = rng::substream(cfg.seed, index as u64);
    let a_list = gaussian_psd_with(&mut r, d, n);
    let a = psd_map_matrix(&a_list)?;
    let b = lift(&a, Base::Psd);
    let noise = DMatrix::from_fn(n, sym_dim(d), |_, _| ROBUST_NOISE * rng::normal(&mut r));
    let b_perturbed = lift(&(&a + noise), Base::Psd);
    let surjective = linalg::rank(&a, RANK_TOL) == n;
    let null_interior = null_interior_check(&a, Base::Psd)?;
    let lifted_surjective = linalg::rank(&b, RANK_TOL) == n + 1;
    let included = surjective && null_interior && lifted_surjective;

    let mut trials = Vec::new();
    let (mut face_passes, mut robust_passes) = (0, 0);
    for rank in 1..=k {
        for _ in 0..cfg.plants {
            let g = DMatrix::from_fn(d, rank, |_, _| rng::normal(&mut r));
            let x = &g * g.transpose();
            let x = SymVec::from_matrix(&(&x / x.trace()));
            let seed = rng::index(&mut r, usize::MAX) as u64;
            let mut t = exact_recovery_trial_sdp(&a_list, &x, seed)?;
            let z = psd_kernel(&x.to_matrix(), PSD_KERNEL_TOL);
            let v = face_transversality(&b, &Face::Psd { d, z: z.clone() })?;
            face_passes += v.passed as usize;
            robust_passes += face_transversality(&b_perturbed, &Face::Psd { d, z })?.passed as usize;
            t.terracini_face_check = Some(v);
            trials.push(t);
        }
    }
    let lemma_agreements = trials.iter().filter(|t| t.valid && t.recovered == t.unique_preimage).count();
    Ok(TcMapRecord {
        index,
        surjective,
        null_interior,
        lifted_surjective,
        included,
        trials,
        face_passes,
        robust_passes,
        lemma_agreements,
    })
}

/// Aggregates per-map records into a [`TcReport`].
pub fn tc_summarize(cfg: &StudyConfig, maps: Vec<TcMapRecord>) -> TcReport {
    let mut joint = [[0usize; 2]; 2];
    let (mut checks, mut faces, mut robust, mut valid, mut recovered) = (0, 0, 0, 0, 0);
    let (mut lemma_trials, mut lemma_agreements) = (0, 0);
    for m in &maps {
        checks += m.trials.len();
        faces += m.face_passes;
        robust += m.robust_passes;
        for t in m.trials.iter().filter(|t| t.valid) {
            valid += 1;
            recovered += t.recovered as usize;
            let passed = t.terracini_face_check.as_ref().is_some_and(|v| v.passed);
            joint[t.recovered as usize][passed as usize] += 1;
        }
        if m.included {
            lemma_trials += m.trials.iter().filter(|t| t.valid).count();
            lemma_agreements += m.lemma_agreements;
        }
    }
    let (d, k) = (cfg.d, cfg.k);
    let needed = sym_dim(d) - sym_dim(d.saturating_sub(k));
    TcReport {
        config: cfg.clone(),
        excluded: maps.iter().filter(|m| !m.included).count(),
        dimension_condition: cfg.n > needed,
        recovery_rate: rate(recovered, valid),
        face_rate: rate(faces, checks),
        robust_rate: rate(robust, checks),
        joint,
        lemma_trials,
        lemma_agreements,
        maps,
    }
}

/// Low-rank SDP recovery and dual face checks for `B(S^d_+)`, `B = [A; tr]`,
/// over Gaussian measurement ensembles. Only empirical rates are reported.
pub fn most_tc_study(cfg: &StudyConfig) -> Result<TcReport> {
    let maps = (0..cfg.trials).map(|i| tc_map_record(cfg, i)).collect::<Result<Vec<_>>>()?;
    Ok(tc_summarize(cfg, maps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_map_recovers() {
        let a = DMatrix::identity(4, 4);
        let t = exact_recovery_trial_lp(&a, &[0.0, 2.0, 0.0, 1.0], 1).unwrap();
        assert!(t.recovered && t.unique_preimage);
        let a: Vec<SymVec> = (0..6)
            .map(|i| {
                let mut c = vec![0.0; 6];
                c[i] = 1.0;
                SymVec { d: 3, coords: c }
            })
            .collect();
        let t = exact_recovery_trial_sdp(&a, &SymVec::from_outer(&[1.0, 2.0, 0.5]), 2).unwrap();
        assert!(t.recovered && t.unique_preimage, "{t:?}");
    }

    #[test]
    fn single_sum_constraint_is_not_unique() {
        let a = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0]);
        let t = exact_recovery_trial_lp(&a, &[1.0, 0.0, 0.0], 3).unwrap();
        assert!(t.valid);
        assert!(!t.recovered);
        assert!(!t.unique_preimage);
    }

    #[test]
    fn null_interior_trivial_cases() {
        assert!(null_interior_check(&DMatrix::zeros(2, 4), Base::Orthant).unwrap());
        assert!(!null_interior_check(&DMatrix::identity(4, 4), Base::Orthant).unwrap());
        assert!(null_interior_check(&DMatrix::zeros(1, 6), Base::Psd).unwrap());
        assert!(!null_interior_check(&DMatrix::identity(6, 6), Base::Psd).unwrap());
    }

    #[test]
    fn unique_preimage_hand_cases() {
        // null(B) = span(1, -2, 1): e_2 + t(1, -2, 1) stays nonnegative for small t > 0.
        let b = DMatrix::from_row_slice(2, 3, &[1.0, 0.0, -1.0, 1.0, 1.0, 1.0]);
        assert!(!unique_preimage_check(&b, Base::Orthant, &[0.0, 1.0, 0.0]).unwrap());
        assert!(unique_preimage_check(&b, Base::Orthant, &[1.0, 0.0, 0.0]).unwrap());
        // Injective maps always give unique preimages.
        assert!(unique_preimage_check(&DMatrix::identity(3, 3), Base::Orthant, &[1.0, 1.0, 0.0]).unwrap());
        // B = (tr, X_11) on S^2: diag(1, 0) is the only preimage.
        let b = DMatrix::from_row_slice(2, 3, &[1.0, 0.0, 1.0, 1.0, 0.0, 0.0]);
        assert!(unique_preimage_check(&b, Base::Psd, &[1.0, 0.0, 0.0]).unwrap());
        // (tr, X_11) at diag(1, 1)/2: X_12 is free, so not unique.
        assert!(!unique_preimage_check(&b, Base::Psd, &[0.5, 0.0, 0.5]).unwrap());
    }

    #[test]
    fn gaussian_maps_are_seeded() {
        assert_eq!(gaussian_map_psd(3, 4, 7).unwrap(), gaussian_map_psd(3, 4, 7).unwrap());
        assert_ne!(gaussian_map_psd(3, 4, 7).unwrap(), gaussian_map_psd(3, 4, 8).unwrap());
        assert_eq!(gaussian_map_psd(3, 1, 7).unwrap().len(), 1);
    }

    #[test]
    fn lift_appends_trace_row() {
        let a = DMatrix::zeros(1, 3);
        let b = lift(&a, Base::Psd);
        assert_eq!(b.row(1).iter().copied().collect::<Vec<_>>(), vec![1.0, 0.0, 1.0]);
    }
}
