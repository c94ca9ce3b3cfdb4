//! Cone models: membership, normal cones, minimal faces, extreme rays and
//! greedy face-chain reduction.
//!
//! Coordinates: polyhedral cones and linear images live in plain `R^m`, the
//! PSD cone in scaled [`SymVec`] coordinates, hyperbolicity cones in the
//! variables of their polynomial, and Veronese cones in monomial coordinates
//! of degree `2d` in graded lexicographic order.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use nalgebra::DMatrix;
use num_traits::Float;
use serde::Serialize;

use crate::error::{domain, unsupported, usage, Result};
use crate::hyperbolic::{HyperbolicFamily, HyperbolicPoly};
use crate::linalg::{self, sym_dim, sym_eigen, Subspace, SymVec};
use crate::neighborly::{monomial_exponents, veronese_phi};
use crate::poly::SparsePoly;
use crate::rng;
use crate::solver::{self, Face, LpProblem, SdpProblem, Status};

/// Relative eigenvalue threshold below which a PSD eigenvalue counts as zero.
pub const PSD_KERNEL_TOL: f64 = 1e-8;

/// A closed convex cone in one of the supported representations.
#[derive(Clone, Debug)]
pub enum ConeModel {
    /// `cone{g_1, ..., g_m}`, pointed.
    Polyhedral {
        /// Ambient dimension.
        ambient: usize,
        /// Nonzero generators.
        generators: Vec<Vec<f64>>,
    },
    /// `S^d_+` in scaled coordinates.
    Psd {
        /// Matrix side.
        d: usize,
    },
    /// `B(K)` for a polyhedral or PSD cone `K`.
    LinearImage {
        /// The cone `K`.
        base: Box<ConeModel>,
        /// The map `B`, `m x dim K`.
        map: DMatrix<f64>,
    },
    /// The hyperbolicity cone of `p` with respect to `e`.
    Hyperbolicity(HyperbolicPoly),
    /// The conic hull of `phi_{n,2d}(R^n)`.
    Veronese {
        /// Number of variables.
        n: usize,
        /// Even degree `2d`.
        two_d: usize,
    },
}

/// A face of a polyhedral or PSD cone.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum FaceDescriptor {
    /// `cone{g_j : j in generators}`; for the orthant these are the support coordinates.
    Polyhedral {
        /// Generator indices, sorted.
        generators: Vec<usize>,
    },
    /// `{X PSD : X Z = 0}` with `Z` orthonormal.
    Psd {
        /// Matrix side.
        d: usize,
        /// Kernel basis `Z`, `d x (d - r)`.
        #[serde(serialize_with = "ser_matrix")]
        kernel: DMatrix<f64>,
    },
}

fn ser_matrix<S: serde::Serializer>(m: &DMatrix<f64>, s: S) -> core::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<f64>> = (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect();
    serde::Serialize::serialize(&rows, s)
}

/// A normal cone `N_C(x)`.
#[derive(Clone, Debug)]
pub enum NormalCone {
    /// `{l : l'g <= 0 for g in inequalities, l'g = 0 for g in equalities}`.
    Polyhedral {
        /// Ambient dimension.
        ambient: usize,
        /// Generators outside the minimal face.
        inequalities: Vec<Vec<f64>>,
        /// Generators of the minimal face.
        equalities: Vec<Vec<f64>>,
    },
    /// `{-Z M Z' : M PSD}`.
    Psd {
        /// Matrix side.
        d: usize,
        /// Kernel basis of the point.
        z: DMatrix<f64>,
    },
    /// `{l : B' l in base}`.
    Preimage {
        /// Normal cone of the base cone at a preimage.
        base: Box<NormalCone>,
        /// The map `B`.
        map: DMatrix<f64>,
    },
}

impl NormalCone {
    /// Linear span of the normal cone.
    pub fn span(&self) -> Result<Subspace> {
        match self {
            NormalCone::Polyhedral { ambient, equalities, .. } => {
                Ok(Subspace::span(*ambient, equalities)?.complement())
            }
            NormalCone::Psd { d, z } => Ok(Face::Psd { d: *d, z: z.clone() }.span()),
            NormalCone::Preimage { base, map } => {
                let face = base.as_self_dual_face()?;
                crate::tangent::span_of_normal_preimage(map, &face)
            }
        }
    }

    /// `-N` as a face of the orthant or PSD cone, when the base cone is one of these.
    fn as_self_dual_face(&self) -> Result<Face> {
        match self {
            NormalCone::Polyhedral { ambient, inequalities, equalities } => {
                // Only orthant normal cones are faces of a self-dual cone.
                let mut support = Vec::new();
                for g in inequalities {
                    match unit_index(g) {
                        Some(j) => support.push(j),
                        None => return Err(unsupported!("normal cone of a non-orthant polyhedral base")),
                    }
                }
                if equalities.iter().any(|g| unit_index(g).is_none()) {
                    return Err(unsupported!("normal cone of a non-orthant polyhedral base"));
                }
                support.sort_unstable();
                Ok(Face::Orthant { ambient: *ambient, support })
            }
            NormalCone::Psd { d, z } => Ok(Face::Psd { d: *d, z: z.clone() }),
            NormalCone::Preimage { .. } => Err(unsupported!("nested linear images")),
        }
    }
}

fn unit_index(g: &[f64]) -> Option<usize> {
    let nz: Vec<usize> = (0..g.len()).filter(|&i| g[i] != 0.0).collect();
    (nz.len() == 1 && g[nz[0]] > 0.0).then(|| nz[0])
}

/// Outcome of [`ConeModel::chain_reduce`]; indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceChainReport {
    /// Indices kept by the greedy scan.
    pub indices: Vec<usize>,
    /// Length of the strictly increasing chain of faces built (equals `indices.len()`).
    pub chain_length: usize,
    /// Longest chain of nonempty faces, `H(C)`.
    pub height: usize,
}

fn unit(v: &[f64]) -> Vec<f64> {
    let n = linalg::norm(v);
    if n == 0.0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / n).collect()
    }
}

fn check_len(ambient: usize, x: &[f64]) -> Result<()> {
    if x.len() != ambient {
        return Err(usage!("point of length {} in a cone of ambient dimension {}", x.len(), ambient));
    }
    Ok(())
}

/// Support of the minimal face of `cone{g_j}` containing `x`, by facial
/// reduction of `{(l, s) >= 0 : G l = s x}`; `None` when `x` is not in the cone.
fn polyhedral_face(gens: &[Vec<f64>], x: &[f64]) -> Result<Option<Vec<usize>>> {
    let m = gens.len();
    let amb = x.len();
    if linalg::norm(x) == 0.0 {
        return Ok(Some(Vec::new()));
    }
    let xu = unit(x);
    let mut mat = DMatrix::zeros(amb, m + 1);
    for (j, g) in gens.iter().enumerate() {
        let gu = unit(g);
        for i in 0..amb {
            mat[(i, j)] = gu[i];
        }
    }
    for i in 0..amb {
        mat[(i, m)] = -xu[i];
    }
    let w = linalg::null_space(&mat, linalg::RANK_TOL);
    let face = solver::minimal_face_of_intersection(&w, &Face::Orthant { ambient: m + 1, support: (0..=m).collect() })?;
    let support = match face {
        Face::Orthant { support, .. } => support,
        Face::Psd { .. } => unreachable!("orthant in, orthant out"),
    };
    if !support.contains(&m) {
        return Ok(None);
    }
    Ok(Some(support.into_iter().filter(|&j| j < m).collect()))
}

/// Whether `G' l >= 1` is feasible, i.e. the generated cone is pointed.
fn polyhedral_pointed(ambient: usize, gens: &[Vec<f64>]) -> Result<bool> {
    let m = gens.len();
    // Variables (l, s): G' l - s = 1, l free, s >= 0.
    let mut a = Vec::with_capacity(m);
    for (j, g) in gens.iter().enumerate() {
        let gu = unit(g);
        let mut row = vec![0.0; ambient + m];
        row[..ambient].copy_from_slice(&gu);
        row[ambient + j] = -1.0;
        a.push(row);
    }
    let mut free = vec![true; ambient];
    free.extend(vec![false; m]);
    let lp = LpProblem { c: vec![0.0; ambient + m], a, b: vec![1.0; m], free };
    let sol = solver::solve_lp(&lp)?;
    Ok(sol.status == Status::Optimal)
}

/// Kernel basis of a symmetric matrix: eigenvectors with eigenvalue `<= tol * max(1, lambda_max)`.
fn psd_kernel_basis(m: &DMatrix<f64>) -> DMatrix<f64> {
    let (vals, vecs) = sym_eigen(m);
    let top = vals.iter().fold(0.0, |a: f64, &v| a.max(v.abs()));
    let cut = PSD_KERNEL_TOL * top.max(f64::MIN_POSITIVE);
    let idx: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] <= cut).collect();
    let mut z = DMatrix::zeros(m.nrows(), idx.len());
    for (c, &i) in idx.iter().enumerate() {
        z.set_column(c, &vecs.column(i));
    }
    z
}

/// Orthonormal complement of the columns of `z` in `R^d`.
fn complement_columns(d: usize, z: &DMatrix<f64>) -> DMatrix<f64> {
    let s = Subspace::from_columns(z, linalg::RANK_TOL).complement();
    let _ = d;
    s.basis().clone()
}

/// Recovers `z` with `phi_{n,2d}(z) = y`, if `y` is such a point.
pub fn veronese_root(n: usize, two_d: usize, y: &[f64]) -> Option<Vec<f64>> {
    let mons = monomial_exponents(n, two_d);
    if y.len() != mons.len() || two_d == 0 {
        return None;
    }
    let pure = |j: usize| mons.iter().position(|a| a[j] as usize == two_d).expect("pure power present");
    let j0 = (0..n).max_by(|&a, &b| y[pure(a)].partial_cmp(&y[pure(b)]).unwrap())?;
    let top = y[pure(j0)];
    if !(top > 0.0) {
        return None;
    }
    let zj0 = Float::powf(top, 1.0 / two_d as f64);
    let mut z = vec![0.0; n];
    z[j0] = zj0;
    for j in 0..n {
        if j == j0 {
            continue;
        }
        let pos = mons
            .iter()
            .position(|a| a[j0] as usize == two_d - 1 && a[j] == 1)
            .expect("mixed monomial present");
        z[j] = y[pos] / Float::powi(zj0, (two_d - 1) as i32);
    }
    let back = veronese_phi(n, two_d, &z).ok()?;
    let err = back.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>();
    (Float::sqrt(err) <= 1e-8 * linalg::norm(y)).then_some(z)
}

impl ConeModel {
    /// `S^d_+`.
    pub fn psd(d: usize) -> Self {
        ConeModel::Psd { d }
    }

    /// `R^d_+`, generated by the unit vectors.
    pub fn orthant(d: usize) -> Self {
        let generators = (0..d)
            .map(|i| {
                let mut v = vec![0.0; d];
                v[i] = 1.0;
                v
            })
            .collect();
        ConeModel::Polyhedral { ambient: d, generators }
    }

    /// A polyhedral cone; generators must be nonzero and the cone pointed.
    pub fn polyhedral(generators: Vec<Vec<f64>>) -> Result<Self> {
        let ambient = match generators.first() {
            Some(g) => g.len(),
            None => return Err(usage!("a polyhedral cone needs at least one generator")),
        };
        if generators.iter().any(|g| g.len() != ambient) {
            return Err(usage!("generators have different lengths"));
        }
        if generators.iter().any(|g| linalg::norm(g) == 0.0) {
            return Err(domain!("zero generator"));
        }
        if !polyhedral_pointed(ambient, &generators)? {
            return Err(domain!("the generated cone is not pointed"));
        }
        Ok(ConeModel::Polyhedral { ambient, generators })
    }

    /// Cone over the square `{(+-1, +-1, 1)}`.
    pub fn square_cone() -> Self {
        let generators = vec![vec![1.0, 1.0, 1.0], vec![1.0, -1.0, 1.0], vec![-1.0, -1.0, 1.0], vec![-1.0, 1.0, 1.0]];
        ConeModel::Polyhedral { ambient: 3, generators }
    }

    /// `B(K)`; `K` must be polyhedral or PSD and `B` must have `dim K` columns.
    pub fn linear_image(base: ConeModel, map: DMatrix<f64>) -> Result<Self> {
        match &base {
            ConeModel::Polyhedral { .. } | ConeModel::Psd { .. } => {}
            _ => return Err(unsupported!("linear images need a polyhedral or PSD base")),
        }
        if map.ncols() != base.ambient_dim() {
            return Err(usage!("map has {} columns but the base lives in R^{}", map.ncols(), base.ambient_dim()));
        }
        Ok(ConeModel::LinearImage { base: Box::new(base), map })
    }

    /// The Veronese cone `C_{n,2d}`.
    pub fn veronese(n: usize, two_d: usize) -> Result<Self> {
        if n == 0 || two_d == 0 || two_d % 2 == 1 {
            return Err(usage!("Veronese cone needs n >= 1 and a positive even degree, got n={} 2d={}", n, two_d));
        }
        Ok(ConeModel::Veronese { n, two_d })
    }

    /// Built-in cones by name: `psd:d`, `orthant:d`, `square-cone`,
    /// `veronese:n:2d`, `esym:d:l` (the `l`-th derivative relaxation of
    /// `x_1 ... x_d`, that is `e_{d-l}`), and `hankel-det:d`.
    pub fn builtin(name: &str) -> Result<Self> {
        let parts: Vec<&str> = name.split(':').collect();
        let num = |s: &str| -> Result<usize> { s.trim().parse::<usize>().map_err(|_| usage!("bad number '{}' in cone name '{}'", s, name)) };
        match parts.as_slice() {
            ["psd", d] if num(d)? > 0 => Ok(ConeModel::psd(num(d)?)),
            ["orthant", d] if num(d)? > 0 => Ok(ConeModel::orthant(num(d)?)),
            ["square-cone"] => Ok(ConeModel::square_cone()),
            ["veronese", n, two_d] => ConeModel::veronese(num(n)?, num(two_d)?),
            ["esym", d, l] => {
                let (d, l) = (num(d)?, num(l)?);
                if d == 0 || l >= d {
                    return Err(usage!("esym:d:l needs 0 <= l < d"));
                }
                let p = SparsePoly::elementary_symmetric(d, d - l);
                Ok(ConeModel::Hyperbolicity(HyperbolicPoly::new(p, vec![1.0; d])?))
            }
            ["hankel-det", d] if num(d)? > 0 => Ok(ConeModel::Hyperbolicity(HyperbolicFamily::HankelDet { d: num(d)? }.hyperbolic()?)),
            _ => Err(usage!("unknown cone '{}'", name)),
        }
    }

    /// Ambient dimension.
    pub fn ambient_dim(&self) -> usize {
        match self {
            ConeModel::Polyhedral { ambient, .. } => *ambient,
            ConeModel::Psd { d } => sym_dim(*d),
            ConeModel::LinearImage { map, .. } => map.nrows(),
            ConeModel::Hyperbolicity(h) => h.num_vars(),
            ConeModel::Veronese { n, two_d } => monomial_exponents(*n, *two_d).len(),
        }
    }

    /// Short name of the representation.
    pub fn kind(&self) -> &'static str {
        match self {
            ConeModel::Polyhedral { .. } => "polyhedral",
            ConeModel::Psd { .. } => "psd",
            ConeModel::LinearImage { .. } => "linear_image",
            ConeModel::Hyperbolicity(_) => "hyperbolicity",
            ConeModel::Veronese { .. } => "veronese",
        }
    }

    /// `H(C)`: exact for polyhedral and PSD cones, `dim + 1` otherwise.
    pub fn height(&self) -> usize {
        match self {
            ConeModel::Polyhedral { ambient, generators } => {
                linalg::rank(&linalg::columns(*ambient, generators).expect("consistent generators"), linalg::RANK_TOL) + 1
            }
            ConeModel::Psd { d } => d + 1,
            _ => self.ambient_dim() + 1,
        }
    }

    /// Membership with tolerance `tol`.
    pub fn membership(&self, x: &[f64], tol: f64) -> Result<bool> {
        check_len(self.ambient_dim(), x)?;
        match self {
            ConeModel::Polyhedral { generators, .. } => polyhedral_member(generators, x, tol),
            ConeModel::Psd { d } => {
                let m = SymVec::from_coords(*d, x.to_vec())?.to_matrix();
                let (vals, _) = sym_eigen(&m);
                Ok(vals.first().map_or(true, |&v| v >= -tol))
            }
            ConeModel::Hyperbolicity(h) => h.contains_descartes(x, tol),
            ConeModel::LinearImage { base, map } => Ok(self.image_preimage(base, map, x, tol)?.is_some()),
            ConeModel::Veronese { .. } => Err(unsupported!("membership in a Veronese cone is not decided; use its extreme-ray parameterization")),
        }
    }

    /// A preimage of `y` in the base cone of a linear image, chosen in the relative interior of the preimage set.
    fn image_preimage(&self, base: &ConeModel, map: &DMatrix<f64>, y: &[f64], tol: f64) -> Result<Option<Vec<f64>>> {
        match base {
            ConeModel::Polyhedral { generators, .. } => {
                let gens: Vec<Vec<f64>> = generators
                    .iter()
                    .map(|g| (map * nalgebra::DVector::from_column_slice(g)).iter().copied().collect())
                    .collect();
                if !polyhedral_member(&gens, y, tol)? {
                    return Ok(None);
                }
                let lam = polyhedral_weights(&gens, y)?;
                let mut x = vec![0.0; base.ambient_dim()];
                for (l, g) in lam.iter().zip(generators) {
                    for (xi, gi) in x.iter_mut().zip(g) {
                        *xi += l * gi;
                    }
                }
                Ok(Some(x))
            }
            ConeModel::Psd { d } => {
                let a: Vec<Vec<f64>> = (0..map.nrows()).map(|i| map.row(i).iter().copied().collect()).collect();
                let sdp = SdpProblem { d: *d, c: vec![0.0; sym_dim(*d)], a, b: y.to_vec() };
                let sol = solver::solve_sdp(&sdp)?;
                match sol.status {
                    Status::Optimal => {
                        let r = (map * nalgebra::DVector::from_column_slice(&sol.x.coords)).iter().zip(y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                        Ok((r <= tol.max(1e-7) * (1.0 + linalg::norm(y))).then_some(sol.x.coords))
                    }
                    Status::Infeasible => Ok(None),
                    _ => Err(crate::error::numerical!("preimage feasibility solve failed")),
                }
            }
            _ => Err(unsupported!("linear images need a polyhedral or PSD base")),
        }
    }

    /// Normal cone `N_C(x)`.
    pub fn normal_cone(&self, x: &[f64]) -> Result<NormalCone> {
        check_len(self.ambient_dim(), x)?;
        match self {
            ConeModel::Polyhedral { ambient, generators } => {
                let face = match polyhedral_face(generators, x)? {
                    Some(f) => f,
                    None => return Err(domain!("point is not in the cone")),
                };
                let (mut inequalities, mut equalities) = (Vec::new(), Vec::new());
                for (j, g) in generators.iter().enumerate() {
                    if face.contains(&j) {
                        equalities.push(g.clone());
                    } else {
                        inequalities.push(g.clone());
                    }
                }
                Ok(NormalCone::Polyhedral { ambient: *ambient, inequalities, equalities })
            }
            ConeModel::Psd { d } => {
                if !self.membership(x, PSD_KERNEL_TOL * (1.0 + linalg::norm(x)))? {
                    return Err(domain!("point is not in the cone"));
                }
                let m = SymVec::from_coords(*d, x.to_vec())?.to_matrix();
                Ok(NormalCone::Psd { d: *d, z: psd_kernel_basis(&m) })
            }
            ConeModel::LinearImage { base, map } => {
                let pre = self
                    .image_preimage(base, map, x, 1e-9)?
                    .ok_or_else(|| domain!("point is not in the cone"))?;
                let base_nc = match base.as_ref() {
                    ConeModel::Polyhedral { generators, .. } if !is_unit_basis(generators) => {
                        return Err(unsupported!("normal cones of images of non-orthant polyhedral cones; use the orthant form"))
                    }
                    b => b.normal_cone(&pre)?,
                };
                Ok(NormalCone::Preimage { base: Box::new(base_nc), map: map.clone() })
            }
            ConeModel::Hyperbolicity(_) | ConeModel::Veronese { .. } => {
                Err(unsupported!("normal cones are available only through tangent spaces for this cone"))
            }
        }
    }

    /// Minimal face containing `x`.
    pub fn minimal_face(&self, x: &[f64]) -> Result<FaceDescriptor> {
        check_len(self.ambient_dim(), x)?;
        match self {
            ConeModel::Polyhedral { generators, .. } => match polyhedral_face(generators, x)? {
                Some(generators) => Ok(FaceDescriptor::Polyhedral { generators }),
                None => Err(domain!("point is not in the cone")),
            },
            ConeModel::Psd { d } => match self.normal_cone(x)? {
                NormalCone::Psd { z, .. } => Ok(FaceDescriptor::Psd { d: *d, kernel: z }),
                _ => unreachable!("PSD normal cone"),
            },
            _ => Err(unsupported!("minimal faces are computed for polyhedral and PSD cones only")),
        }
    }

    /// Linear span of a face of this cone.
    pub fn face_span(&self, face: &FaceDescriptor) -> Result<Subspace> {
        match (self, face) {
            (ConeModel::Polyhedral { ambient, generators }, FaceDescriptor::Polyhedral { generators: idx }) => {
                let vs: Vec<Vec<f64>> = idx.iter().map(|&j| generators[j].clone()).collect();
                Subspace::span(*ambient, &vs)
            }
            (ConeModel::Psd { d }, FaceDescriptor::Psd { kernel, .. }) => {
                Ok(Face::Psd { d: *d, z: complement_columns(*d, kernel) }.span())
            }
            _ => Err(usage!("face descriptor does not match the cone")),
        }
    }

    /// Whether `x` generates an extreme ray.
    pub fn is_extreme_ray(&self, x: &[f64]) -> Result<bool> {
        check_len(self.ambient_dim(), x)?;
        if linalg::norm(x) == 0.0 {
            return Err(domain!("the zero vector does not generate a ray"));
        }
        match self {
            ConeModel::Polyhedral { ambient, generators } => {
                let face = polyhedral_face(generators, x)?.ok_or_else(|| domain!("point is not in the cone"))?;
                let vs: Vec<Vec<f64>> = face.iter().map(|&j| generators[j].clone()).collect();
                Ok(Subspace::span(*ambient, &vs)?.dim() == 1)
            }
            ConeModel::Psd { d } => {
                if !self.membership(x, PSD_KERNEL_TOL * linalg::norm(x))? {
                    return Err(domain!("point is not in the cone"));
                }
                let m = SymVec::from_coords(*d, x.to_vec())?.to_matrix();
                Ok(psd_kernel_basis(&m).ncols() + 1 == *d)
            }
            ConeModel::LinearImage { base, map } => match base.as_ref() {
                ConeModel::Polyhedral { generators, .. } => {
                    let gens: Vec<Vec<f64>> = generators
                        .iter()
                        .map(|g| (map * nalgebra::DVector::from_column_slice(g)).iter().copied().collect())
                        .filter(|g: &Vec<f64>| linalg::norm(g) > 1e-12)
                        .collect();
                    let face = polyhedral_face(&gens, x)?.ok_or_else(|| domain!("point is not in the cone"))?;
                    let vs: Vec<Vec<f64>> = face.iter().map(|&j| gens[j].clone()).collect();
                    Ok(Subspace::span(map.nrows(), &vs)?.dim() == 1)
                }
                _ => Err(unsupported!("extremality in images of the PSD cone")),
            },
            ConeModel::Veronese { n, two_d } => Ok(veronese_root(*n, *two_d, x).is_some()),
            ConeModel::Hyperbolicity(_) => Err(unsupported!(
                "extreme rays of general hyperbolicity cones are not characterized; use a known family"
            )),
        }
    }

    /// Whether `y` lies in the face `face` (that is, in its span, up to `1e-7` relative).
    fn in_face(&self, face: &FaceDescriptor, y: &[f64]) -> Result<bool> {
        Ok(self.face_span(face)?.contains(y, 1e-7))
    }

    /// Greedy reduction: keeps `x_i` whenever it is not in the minimal face of the kept sum.
    pub fn chain_reduce(&self, points: &[Vec<f64>]) -> Result<FaceChainReport> {
        match self {
            ConeModel::Polyhedral { .. } | ConeModel::Psd { .. } => {}
            _ => return Err(unsupported!("chain reduction needs minimal faces (polyhedral or PSD cones)")),
        }
        let amb = self.ambient_dim();
        let mut indices = Vec::new();
        let mut sum = vec![0.0; amb];
        for (i, x) in points.iter().enumerate() {
            check_len(amb, x)?;
            let keep = if indices.is_empty() {
                true
            } else {
                let face = self.minimal_face(&sum)?;
                !self.in_face(&face, x)?
            };
            if keep {
                indices.push(i);
                for (s, v) in sum.iter_mut().zip(x) {
                    *s += v;
                }
            }
        }
        Ok(FaceChainReport { chain_length: indices.len(), indices, height: self.height() })
    }

    /// Generators of the extreme rays of a polyhedral cone (duplicates collapse to the first).
    pub fn extreme_generators(&self) -> Result<Vec<usize>> {
        let generators = match self {
            ConeModel::Polyhedral { generators, .. } => generators,
            _ => return Err(unsupported!("extreme generators of a non-polyhedral cone")),
        };
        let mut out: Vec<usize> = Vec::new();
        for (i, g) in generators.iter().enumerate() {
            let gu = unit(g);
            if out.iter().any(|&j| {
                let h = unit(&generators[j]);
                gu.iter().zip(&h).all(|(a, b)| (a - b).abs() <= 1e-12)
            }) {
                continue;
            }
            if self.is_extreme_ray(g)? {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// The hyperbolic representation of a bivariate Veronese cone: the PSD Hankel matrices.
    pub fn veronese_as_hyperbolic(n: usize, two_d: usize) -> Result<HyperbolicPoly> {
        if n != 2 {
            return Err(unsupported!("only bivariate Veronese cones have a Hankel representation"));
        }
        HyperbolicFamily::HankelDet { d: two_d / 2 + 1 }.hyperbolic()
    }

    /// Short description for reports.
    pub fn describe(&self) -> String {
        match self {
            ConeModel::Polyhedral { ambient, generators } => alloc::format!("polyhedral cone in R^{} with {} generators", ambient, generators.len()),
            ConeModel::Psd { d } => alloc::format!("psd:{}", d),
            ConeModel::LinearImage { base, map } => alloc::format!("image of {} in R^{}", base.describe(), map.nrows()),
            ConeModel::Hyperbolicity(h) => alloc::format!("hyperbolicity cone of a degree {} polynomial in {} variables", h.degree(), h.num_vars()),
            ConeModel::Veronese { n, two_d } => alloc::format!("veronese:{}:{}", n, two_d),
        }
    }
}

fn is_unit_basis(gens: &[Vec<f64>]) -> bool {
    gens.len() == gens.first().map_or(0, |g| g.len()) && gens.iter().enumerate().all(|(i, g)| unit_index(g) == Some(i))
}

/// `x in cone{g}` up to `tol`: the least L1 residual of `G l - x`, `l >= 0`, is at most `tol (1 + |x|)`.
fn polyhedral_member(gens: &[Vec<f64>], x: &[f64], tol: f64) -> Result<bool> {
    let m = gens.len();
    let n = x.len();
    // Variables (l, u, v) >= 0 with G l + u - v = x, minimize sum(u + v).
    let mut a = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![0.0; m + 2 * n];
        for (j, g) in gens.iter().enumerate() {
            row[j] = g[i];
        }
        row[m + i] = 1.0;
        row[m + n + i] = -1.0;
        a.push(row);
    }
    let mut c = vec![0.0; m];
    c.extend(vec![1.0; 2 * n]);
    let sol = solver::solve_lp(&LpProblem { c, a, b: x.to_vec(), free: Vec::new() })?;
    if sol.status != Status::Optimal {
        return Err(crate::error::numerical!("membership LP did not converge"));
    }
    Ok(sol.value <= tol.max(1e-9) * (1.0 + linalg::norm(x)))
}

/// Nonnegative weights `l` with `G l = x` (any feasible point serves as a preimage).
fn polyhedral_weights(gens: &[Vec<f64>], x: &[f64]) -> Result<Vec<f64>> {
    let m = gens.len();
    let a: Vec<Vec<f64>> = (0..x.len()).map(|i| gens.iter().map(|g| g[i]).collect()).collect();
    let sol = solver::solve_lp(&LpProblem { c: vec![0.0; m], a, b: x.to_vec(), free: Vec::new() })?;
    if sol.status != Status::Optimal {
        return Err(crate::error::numerical!("preimage LP did not converge"));
    }
    Ok(sol.x.iter().map(|v| v.max(0.0)).collect())
}

/// Random pointed cone with generators `(1, g)`, `g` standard Gaussian in `R^(ambient-1)`.
pub fn random_polyhedral_cone(ambient: usize, num_generators: usize, seed: u64) -> Result<ConeModel> {
    if ambient == 0 || num_generators < ambient {
        return Err(usage!("need ambient >= 1 and at least {} generators", ambient));
    }
    let mut r = rng::rng(seed);
    let generators = (0..num_generators)
        .map(|_| {
            let mut v = vec![1.0];
            v.extend(rng::normal_vec(&mut r, ambient - 1));
            v
        })
        .collect();
    Ok(ConeModel::Polyhedral { ambient, generators })
}
