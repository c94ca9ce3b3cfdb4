//! Convex tangent spaces and the primal and dual k-Terracini checks.
//!
//! The primal check compares `L_C(x_1 + ... + x_k)` with `L_C(x_1) + ... + L_C(x_k)`.
//! The dual check compares `span(N_C(x_1) ∩ ... ∩ N_C(x_k))` with
//! `span N_C(x_1) ∩ ... ∩ span N_C(x_k)`. In both cases the second space is
//! contained in the first, so a failure certificate always lies in the first.

use alloc::vec;
use alloc::vec::Vec;
use nalgebra::DMatrix;
use serde::Serialize;

use crate::cones::{veronese_root, ConeModel, FaceDescriptor};
use crate::error::{domain, unsupported, usage, Error, Result};
use crate::linalg::{self, grassmann_distance, sym_dim, Subspace, SymVec, EQ_TOL, RANK_TOL};
use crate::neighborly::{double_vanishing_space, sos_vanishing_span};
use crate::rng;
use crate::solver::{self, Face};

/// Which equality was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictMode {
    /// Tangent spaces.
    Primal,
    /// Normal-cone spans, computed exactly.
    Dual,
    /// Normal-cone spans with the first side replaced by its sums-of-squares part; equality certified.
    DualSosCertified,
    /// As above, but the sums-of-squares part is smaller, so nothing is decided.
    DualInconclusive,
}

/// Outcome of a Terracini check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TerraciniVerdict {
    /// Whether both sides agree.
    pub passed: bool,
    /// Dimension of the side that always contains the other.
    pub dim_lhs: usize,
    /// Dimension of the contained side.
    pub dim_rhs: usize,
    /// Which check was run.
    pub mode: VerdictMode,
    /// On failure, a unit vector of the first side far from the second.
    pub certificate: Option<Vec<f64>>,
    /// Grassmann distance between the sides.
    pub distance: f64,
}

impl TerraciniVerdict {
    /// Distance from the certificate to the second side (zero without a certificate).
    pub fn certificate_residual(&self, rhs: &Subspace) -> f64 {
        self.certificate.as_ref().map_or(0.0, |c| rhs.residual(c))
    }
}

/// Compares `lhs` (the larger side) with `rhs`.
pub fn compare_sides(lhs: &Subspace, rhs: &Subspace, mode: VerdictMode) -> TerraciniVerdict {
    let distance = grassmann_distance(lhs, rhs);
    let passed = distance <= EQ_TOL;
    let certificate = if passed { None } else { farthest_vector(lhs, rhs) };
    TerraciniVerdict { passed, dim_lhs: lhs.dim(), dim_rhs: rhs.dim(), mode, certificate, distance }
}

/// Unit vector of `a` with the largest residual against `b`.
fn farthest_vector(a: &Subspace, b: &Subspace) -> Option<Vec<f64>> {
    if a.dim() == 0 {
        return None;
    }
    let ab = a.basis();
    let bb = b.basis();
    let r = ab - bb * (bb.transpose() * ab);
    let svd = linalg::svd(&r);
    let vt = svd.v_t;
    let (i, _) = svd.singular_values.argmax();
    let w = ab * vt.row(i).transpose();
    Some(w.iter().copied().collect())
}

/// Tangent space of `S^d_+` at `x` (scaled coordinates): `{Q : Z'QZ = 0}` with `Z` a kernel basis of `x`.
pub fn psd_tangent_space(d: usize, x: &[f64]) -> Result<Subspace> {
    let c = ConeModel::psd(d);
    match c.minimal_face(x)? {
        FaceDescriptor::Psd { kernel, .. } => Ok(Face::Psd { d, z: kernel }.span().complement()),
        _ => unreachable!("PSD face"),
    }
}

/// Convex tangent space `L_C(x)`.
pub fn convex_tangent_space(c: &ConeModel, x: &[f64]) -> Result<Subspace> {
    if x.len() != c.ambient_dim() {
        return Err(usage!("point of length {} in a cone of ambient dimension {}", x.len(), c.ambient_dim()));
    }
    match c {
        ConeModel::Polyhedral { .. } => {
            let f = c.minimal_face(x)?;
            c.face_span(&f)
        }
        ConeModel::Psd { d } => psd_tangent_space(*d, x),
        ConeModel::Hyperbolicity(h) => {
            if !h.contains(x)? {
                return Err(domain!("point is not in the hyperbolicity cone"));
            }
            h.tangent_space(x)
        }
        ConeModel::LinearImage { .. } => Ok(c.normal_cone(x)?.span()?.complement()),
        ConeModel::Veronese { n, two_d } => {
            let h = ConeModel::veronese_as_hyperbolic(*n, *two_d)
                .map_err(|_| unsupported!("tangent spaces of Veronese cones with n >= 3; use the dual check"))?;
            if !h.contains(x)? {
                return Err(domain!("point is not in the Veronese cone"));
            }
            h.tangent_space(x)
        }
    }
}

/// `span N_C(x)`, the orthogonal complement of `L_C(x)`.
pub fn normal_span(c: &ConeModel, x: &[f64]) -> Result<Subspace> {
    match c {
        ConeModel::Polyhedral { .. } | ConeModel::Psd { .. } | ConeModel::LinearImage { .. } => c.normal_cone(x)?.span(),
        _ => Ok(convex_tangent_space(c, x)?.complement()),
    }
}

fn sum_of(rays: &[Vec<f64>], n: usize) -> Result<Vec<f64>> {
    let mut s = vec![0.0; n];
    for r in rays {
        if r.len() != n {
            return Err(usage!("ray of length {} in a cone of ambient dimension {}", r.len(), n));
        }
        for (a, b) in s.iter_mut().zip(r) {
            *a += b;
        }
    }
    Ok(s)
}

/// Primal k-Terracini check at the given extreme-ray generators.
///
/// Extremality is verified where the cone supports it; hyperbolicity cones
/// skip that step (their extreme rays are not characterized in general).
pub fn is_k_terracini_primal(c: &ConeModel, rays: &[Vec<f64>]) -> Result<TerraciniVerdict> {
    if rays.is_empty() {
        return Err(usage!("at least one ray is needed"));
    }
    let n = c.ambient_dim();
    let total = sum_of(rays, n)?;
    for (i, r) in rays.iter().enumerate() {
        match c.is_extreme_ray(r) {
            Ok(true) => {}
            Ok(false) => return Err(domain!("ray {} does not generate an extreme ray", i)),
            Err(Error::Unsupported(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let lhs = convex_tangent_space(c, &total)?;
    let mut rhs = Subspace::zero(n);
    for r in rays {
        rhs = rhs.sum(&convex_tangent_space(c, r)?);
    }
    Ok(compare_sides(&lhs, &rhs, VerdictMode::Primal))
}

/// `{l : B'l in span(range(B') ∩ face)}`, the span of `{l : B'l in face}` when `B` is surjective.
pub fn span_of_normal_preimage(b: &DMatrix<f64>, face: &Face) -> Result<Subspace> {
    if b.ncols() != face.ambient_dim() {
        return Err(usage!("map has {} columns but the face lives in R^{}", b.ncols(), face.ambient_dim()));
    }
    let bt = b.transpose();
    let w = Subspace::from_columns(&bt, RANK_TOL);
    let s = solver::span_of_intersection(&w, face)?;
    Ok(s.preimage(&bt))
}

/// Checks `span(range(B') ∩ face) = range(B') ∩ span(face)`, both pulled back to the image space.
pub fn face_transversality(b: &DMatrix<f64>, face: &Face) -> Result<TerraciniVerdict> {
    let lhs = span_of_normal_preimage(b, face)?;
    let rhs = face.span().preimage(&b.transpose());
    let v = compare_sides(&rhs, &lhs, VerdictMode::Dual);
    Ok(TerraciniVerdict { dim_lhs: lhs.dim(), dim_rhs: rhs.dim(), ..v })
}

/// The base cone as an orthant or PSD cone, with the map composed accordingly
/// and rays expressed in the new base coordinates.
fn self_dual_base(base: &ConeModel, map: &DMatrix<f64>, rays: &[Vec<f64>]) -> Result<(bool, usize, DMatrix<f64>, Vec<Vec<f64>>)> {
    match base {
        ConeModel::Psd { d } => Ok((false, *d, map.clone(), rays.to_vec())),
        ConeModel::Polyhedral { ambient, generators } => {
            let m = generators.len();
            let g = linalg::columns(*ambient, generators)?;
            let composed = map * &g;
            let mut out = Vec::with_capacity(rays.len());
            for (i, r) in rays.iter().enumerate() {
                let face = base.minimal_face(r)?;
                let idx = match face {
                    FaceDescriptor::Polyhedral { generators } => generators,
                    _ => unreachable!("polyhedral face"),
                };
                let j = match idx.as_slice() {
                    [j] => *j,
                    _ => return Err(domain!("ray {} is not a multiple of exactly one generator", i)),
                };
                let mut v = vec![0.0; m];
                v[j] = linalg::norm(r) / linalg::norm(&generators[j]);
                out.push(v);
            }
            Ok((true, m, composed, out))
        }
        _ => Err(unsupported!("dual checks need a polyhedral or PSD base")),
    }
}

/// Face `-N_K(x)` of the orthant or PSD cone at `x`.
fn dual_face(orthant: bool, size: usize, x: &[f64]) -> Result<Face> {
    if orthant {
        let top = x.iter().fold(0.0, |a: f64, v| a.max(v.abs()));
        let support = (0..size).filter(|&j| x[j].abs() <= 1e-12 * top).collect();
        Ok(Face::Orthant { ambient: size, support })
    } else {
        let c = ConeModel::psd(size);
        match c.normal_cone(x)? {
            crate::cones::NormalCone::Psd { z, .. } => Ok(Face::Psd { d: size, z }),
            _ => unreachable!("PSD normal cone"),
        }
    }
}

/// Dual k-Terracini check for `B(K)` with rays given in the base cone, or for
/// a Veronese cone with rays `phi(z_i)`.
pub fn is_k_terracini_dual(c: &ConeModel, rays_in_base: &[Vec<f64>]) -> Result<TerraciniVerdict> {
    if rays_in_base.is_empty() {
        return Err(usage!("at least one ray is needed"));
    }
    let (base, map) = match c {
        ConeModel::LinearImage { base, map } => (base.as_ref(), map),
        ConeModel::Veronese { n, two_d } => {
            let mut pts = Vec::with_capacity(rays_in_base.len());
            for (i, r) in rays_in_base.iter().enumerate() {
                pts.push(veronese_root(*n, *two_d, r).ok_or_else(|| domain!("ray {} is not of the form phi(z)", i))?);
            }
            return veronese_dual_check(*n, *two_d, &pts);
        }
        _ => return Err(unsupported!("dual checks are implemented for linear images and Veronese cones")),
    };
    if linalg::rank(map, RANK_TOL) != map.nrows() {
        return Err(domain!("the map is not surjective"));
    }
    for (i, r) in rays_in_base.iter().enumerate() {
        if r.len() != base.ambient_dim() {
            return Err(usage!("ray {} has length {}, expected {}", i, r.len(), base.ambient_dim()));
        }
        if !base.is_extreme_ray(r)? {
            return Err(domain!("ray {} does not generate an extreme ray of the base", i));
        }
    }
    let (orthant, size, b, rays) = self_dual_base(base, map, rays_in_base)?;
    let bt = b.transpose();
    // The single-ray identity must hold for the spans of the normal cones to intersect as faces do.
    for (i, r) in rays.iter().enumerate() {
        let v = face_transversality(&b, &dual_face(orthant, size, r)?)?;
        if !v.passed {
            return Err(domain!("ray {} fails the single-ray transversality precondition", i));
        }
    }
    let total = sum_of(&rays, if orthant { size } else { sym_dim(size) })?;
    let omega = dual_face(orthant, size, &total)?;
    let lhs = span_of_normal_preimage(&b, &omega)?;
    let rhs = omega.span().preimage(&bt);
    // Here the first side is the contained one, so compare in that order.
    let v = compare_sides(&rhs, &lhs, VerdictMode::Dual);
    Ok(TerraciniVerdict { dim_lhs: lhs.dim(), dim_rhs: rhs.dim(), ..v })
}

/// Dual check for the Veronese cone `C_{n,2d}` at the rays `phi(z_i)`.
///
/// The intersection of spans is the space of forms vanishing to second order
/// at every `z_i`. The span of the intersection is bounded below by the forms
/// `m(z)'Q m(z)` with `Q m(z_i) = 0`; for `n = 2` the bound is exact.
pub fn veronese_dual_check(n: usize, two_d: usize, points: &[Vec<f64>]) -> Result<TerraciniVerdict> {
    let rhs = double_vanishing_space(points, n, two_d)?;
    let lhs = sos_vanishing_span(points, n, two_d)?;
    // lhs is contained in rhs here; the larger side goes first.
    let v = compare_sides(&rhs, &lhs, VerdictMode::Dual);
    let mode = if n <= 2 {
        VerdictMode::Dual
    } else if v.passed {
        VerdictMode::DualSosCertified
    } else {
        VerdictMode::DualInconclusive
    };
    Ok(TerraciniVerdict { dim_lhs: lhs.dim(), dim_rhs: rhs.dim(), mode, ..v })
}

/// Per-size outcome of [`terracini_upgrade_check`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SizeStats {
    /// Number of rays per sample.
    pub k: usize,
    /// Samples run.
    pub samples: usize,
    /// Samples that passed.
    pub passed: usize,
}

/// Outcome of [`terracini_upgrade_check`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UpgradeReport {
    /// Whether every primal check passed.
    pub all_passed: bool,
    /// Smallest failing size, if any.
    pub first_failing_k: Option<usize>,
    /// Per-size counts.
    pub per_k: Vec<SizeStats>,
    /// Sampled pairs `x, y` tested for `L(x) + L(y) = L(x + y)`.
    pub join_pairs: usize,
    /// Pairs where the equality held.
    pub join_matches: usize,
    /// Largest reduced index set seen by chain reduction (when available).
    pub max_chain: Option<usize>,
    /// `H(C)`.
    pub height: usize,
    /// Whether every reduced set had at most `H(C) - 1` elements.
    pub chain_bound_holds: bool,
}

/// Samples a generator of an extreme ray of `c`.
pub fn sample_extreme_ray(c: &ConeModel, extreme: &[usize], r: &mut rng::Rng) -> Result<Vec<f64>> {
    match c {
        ConeModel::Psd { d } => Ok(SymVec::from_outer(&rng::unit_vec(r, *d)).coords),
        ConeModel::Polyhedral { generators, .. } => {
            if extreme.is_empty() {
                return Err(domain!("cone has no extreme rays"));
            }
            Ok(generators[extreme[rng::index(r, extreme.len())]].clone())
        }
        ConeModel::Veronese { n, two_d } => crate::neighborly::veronese_phi(*n, *two_d, &rng::unit_vec(r, *n)),
        _ => Err(unsupported!("extreme-ray sampling for {}", c.kind())),
    }
}

/// Samples ray collections of sizes `1..=k_max` and runs the primal check,
/// the join-closure comparison and chain reduction.
pub fn terracini_upgrade_check(c: &ConeModel, k_max: usize, samples: usize, seed: u64) -> Result<UpgradeReport> {
    let extreme = match c {
        ConeModel::Polyhedral { .. } => c.extreme_generators()?,
        _ => Vec::new(),
    };
    let n = c.ambient_dim();
    let chain_ok = matches!(c, ConeModel::Polyhedral { .. } | ConeModel::Psd { .. });
    let mut per_k = Vec::with_capacity(k_max);
    let mut first_failing_k = None;
    let mut max_chain: Option<usize> = None;
    let mut join_pairs = 0;
    let mut join_matches = 0;
    for k in 1..=k_max {
        let mut passed = 0;
        for s in 0..samples {
            let mut r = rng::substream(seed, (k * samples + s) as u64);
            let rays: Vec<Vec<f64>> = (0..k).map(|_| sample_extreme_ray(c, &extreme, &mut r)).collect::<Result<_>>()?;
            let v = is_k_terracini_primal(c, &rays)?;
            if v.passed {
                passed += 1;
            } else if first_failing_k.is_none() {
                first_failing_k = Some(k);
            }
            if chain_ok {
                let rep = c.chain_reduce(&rays)?;
                max_chain = Some(max_chain.unwrap_or(0).max(rep.indices.len()));
            }
            if k >= 2 {
                let half = k / 2;
                let x = sum_of(&rays[..half], n)?;
                let y = sum_of(&rays[half..], n)?;
                let z = sum_of(&rays, n)?;
                let lx = convex_tangent_space(c, &x)?;
                let ly = convex_tangent_space(c, &y)?;
                let lz = convex_tangent_space(c, &z)?;
                join_pairs += 1;
                if grassmann_distance(&lx.sum(&ly), &lz) <= EQ_TOL {
                    join_matches += 1;
                }
            }
        }
        per_k.push(SizeStats { k, samples, passed });
    }
    let height = c.height();
    Ok(UpgradeReport {
        all_passed: first_failing_k.is_none(),
        first_failing_k,
        per_k,
        join_pairs,
        join_matches,
        chain_bound_holds: max_chain.map_or(true, |m| m + 1 <= height),
        max_chain,
        height,
    })
}

/// Tangent space of `S^d_+` at `x` computed through the determinant's localization, in scaled coordinates.
pub fn psd_tangent_via_localization(d: usize, x: &[f64]) -> Result<Subspace> {
    let h = crate::hyperbolic::HyperbolicFamily::SymDet { d }.hyperbolic()?;
    let raw = linalg::svec_to_raw(d, x);
    let lin = h.tangent_space(&raw)?;
    // Raw coordinates map to scaled ones by multiplying off-diagonal entries by sqrt(2).
    let vs: Vec<Vec<f64>> = lin.basis_vectors().iter().map(|v| linalg::raw_to_svec(d, v)).collect();
    Subspace::span(sym_dim(d), &vs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;

    fn diag(v: &[f64]) -> Vec<f64> {
        let d = v.len();
        SymVec::from_matrix(&DMatrix::from_fn(d, d, |i, j| if i == j { v[i] } else { 0.0 })).coords
    }

    #[test]
    fn tangent_space_examples() {
        let l = convex_tangent_space(&ConeModel::psd(2), &diag(&[1.0, 0.0])).unwrap();
        assert_eq!(l.dim(), 2);
        assert!(l.contains(&[0.0, 1.0, 0.0], 1e-12));
        assert!(l.contains(&[1.0, 0.0, 0.0], 1e-12));
        let l = convex_tangent_space(&ConeModel::orthant(3), &[1.0, 0.0, 1.0]).unwrap();
        assert_eq!(l.dim(), 2);
        assert!(l.contains(&[1.0, 0.0, -3.0], 1e-12));
        assert_eq!(convex_tangent_space(&ConeModel::psd(3), &diag(&[1.0, 1.0, 0.0])).unwrap().dim(), 5);
    }

    #[test]
    fn primal_examples() {
        let e1 = SymVec::from_outer(&[1.0, 0.0]).coords;
        let e2 = SymVec::from_outer(&[0.0, 1.0]).coords;
        let v = is_k_terracini_primal(&ConeModel::psd(2), &[e1, e2]).unwrap();
        assert!(v.passed);
        assert_eq!((v.dim_lhs, v.dim_rhs), (3, 3));
        let v = is_k_terracini_primal(&ConeModel::square_cone(), &[vec![1.0, 1.0, 1.0], vec![-1.0, -1.0, 1.0]]).unwrap();
        assert!(!v.passed);
        assert_eq!((v.dim_lhs, v.dim_rhs), (3, 2));
        let c = v.certificate.unwrap();
        let rhs = Subspace::span(3, &[vec![1.0, 1.0, 1.0], vec![-1.0, -1.0, 1.0]]).unwrap();
        assert!(rhs.residual(&c) > 0.99);
        let v = is_k_terracini_primal(&ConeModel::square_cone(), &[vec![1.0, 1.0, 1.0]]).unwrap();
        assert!(v.passed);
    }

    #[test]
    fn primal_rejects_non_extreme_rays() {
        assert!(is_k_terracini_primal(&ConeModel::square_cone(), &[vec![0.0, 0.0, 1.0]]).is_err());
    }

    #[test]
    fn normal_preimage_examples() {
        let tr = DMatrix::from_row_slice(1, 3, &[1.0, 0.0, 1.0]);
        let all = Face::Psd { d: 2, z: DMatrix::identity(2, 2) };
        assert_eq!(span_of_normal_preimage(&tr, &all).unwrap().dim(), 1);
        let zero = Face::Psd { d: 2, z: DMatrix::zeros(2, 0) };
        assert_eq!(span_of_normal_preimage(&tr, &zero).unwrap().dim(), 0);
        // range(B') meets the face {x_3 = 0} of the orthant only at 0.
        let b = DMatrix::from_row_slice(2, 3, &[1.0, -1.0, 0.0, 0.0, 0.0, 1.0]);
        let f = Face::Orthant { ambient: 3, support: vec![0, 1] };
        assert_eq!(span_of_normal_preimage(&b, &f).unwrap().dim(), 0);
        // Brute force: the cone {l : B'l >= 0 on the face, 0 off it} is {0}.
        for a in [-1.0, 0.5, 2.0] {
            let v = [a, -a, 0.0];
            assert!(!(v[0] >= 0.0 && v[1] >= 0.0) || a == 0.0);
        }
    }

    #[test]
    fn dual_examples() {
        let id = DMatrix::identity(6, 6);
        let c = ConeModel::linear_image(ConeModel::psd(3), id).unwrap();
        let rays = [SymVec::from_outer(&[1.0, 0.0, 2.0]).coords, SymVec::from_outer(&[0.0, 1.0, 1.0]).coords];
        assert!(is_k_terracini_dual(&c, &rays).unwrap().passed);
        // A: R^3 -> R^1 zero map, B = [A; 1'] = [0 0 0; 1 1 1].
        let b = DMatrix::from_row_slice(2, 3, &[0.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        assert!(is_k_terracini_dual(&ConeModel::linear_image(ConeModel::orthant(3), b).unwrap(), &[vec![1.0, 0.0, 0.0]]).is_err());
        let b = DMatrix::from_row_slice(2, 3, &[1.0, -1.0, 0.0, 1.0, 1.0, 1.0]);
        let c = ConeModel::linear_image(ConeModel::orthant(3), b).unwrap();
        let v = is_k_terracini_dual(&c, &[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        assert!(v.passed);
    }

    #[test]
    fn primal_and_dual_agree_on_orthant_images() {
        let mut agree = 0;
        for seed in 0..20u64 {
            let mut r = rng::rng(seed);
            let (m, d) = (3, 5);
            // A row of ones keeps the image pointed.
            let b = DMatrix::from_fn(m, d, |i, _| if i == 0 { 1.0 } else { rng::normal(&mut r) });
            let c = ConeModel::linear_image(ConeModel::orthant(d), b.clone()).unwrap();
            let idx = rng::subset(&mut r, d, 2);
            let base_rays: Vec<Vec<f64>> = idx
                .iter()
                .map(|&j| {
                    let mut v = vec![0.0; d];
                    v[j] = 1.0;
                    v
                })
                .collect();
            let images: Vec<Vec<f64>> = base_rays.iter().map(|x| (&b * DVector::from_column_slice(x)).iter().copied().collect()).collect();
            let p = match is_k_terracini_primal(&c, &images) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let q = match is_k_terracini_dual(&c, &base_rays) {
                Ok(v) => v,
                Err(_) => continue,
            };
            assert_eq!(p.passed, q.passed, "seed {}", seed);
            agree += 1;
        }
        assert!(agree >= 15);
    }

    #[test]
    fn localization_tangent_matches_kernel_block() {
        let x = SymVec::from_outer(&[1.0, 2.0, 0.5]).coords;
        let a = psd_tangent_space(3, &x).unwrap();
        let b = psd_tangent_via_localization(3, &x).unwrap();
        assert!(grassmann_distance(&a, &b) <= 1e-8);
    }

    #[test]
    fn upgrade_check_examples() {
        let r = terracini_upgrade_check(&ConeModel::psd(3), 3, 5, 1).unwrap();
        assert!(r.all_passed);
        assert!(r.chain_bound_holds);
        let r = terracini_upgrade_check(&ConeModel::square_cone(), 2, 20, 1).unwrap();
        assert_eq!(r.first_failing_k, Some(2));
        let r = terracini_upgrade_check(&ConeModel::orthant(4), 4, 5, 1).unwrap();
        assert!(r.all_passed);
    }
}
