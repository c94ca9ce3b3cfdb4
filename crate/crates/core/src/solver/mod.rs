//! Small dense LP and SDP solvers, and relative-interior points of `W ∩ F`.
//!
//! Both solvers wrap one homogeneous self-dual interior-point engine
//! ([`conic`]). The engine converges to the analytic center of the optimal
//! face, which [`relative_interior_point`] and [`span_of_intersection`] rely on
//! to detect faces without combinatorial search.

pub mod conic;

use alloc::vec;
use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::linalg::{sym_dim, sym_eigen, Subspace, SymVec};
use conic::{solve_reduced, ConeSpec, ConicProblem, ConicSolution, ConicStatus, Settings};

/// Outcome of a solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Optimal primal-dual pair found.
    Optimal,
    /// The primal problem has no feasible point.
    Infeasible,
    /// The primal objective is unbounded below.
    Unbounded,
    /// Iteration cap or numerical breakdown.
    NumericalFailure,
}

impl From<ConicStatus> for Status {
    fn from(s: ConicStatus) -> Self {
        match s {
            ConicStatus::Optimal => Status::Optimal,
            ConicStatus::PrimalInfeasible => Status::Infeasible,
            ConicStatus::DualInfeasible => Status::Unbounded,
            ConicStatus::Failed => Status::NumericalFailure,
        }
    }
}

/// Absolute KKT residuals of a returned point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// Equality violation plus cone violation of the primal point.
    pub primal: f64,
    /// Cone violation of the dual slack.
    pub dual: f64,
    /// `|primal objective - dual objective|`.
    pub gap: f64,
}

/// Linear program `min c'x  s.t.  A x = b,  x_j >= 0` for `j` not free.
#[derive(Clone, Debug, Default)]
pub struct LpProblem {
    /// Objective.
    pub c: Vec<f64>,
    /// Equality rows.
    pub a: Vec<Vec<f64>>,
    /// Right-hand side.
    pub b: Vec<f64>,
    /// Variables without a sign constraint (empty means none).
    pub free: Vec<bool>,
}

/// Solution report of [`solve_lp`].
#[derive(Clone, Debug)]
pub struct LpSolution {
    /// Status.
    pub status: Status,
    /// Primal point.
    pub x: Vec<f64>,
    /// Dual point of `max b'y  s.t.  c - A'y >= 0` (equality on free variables).
    pub y: Vec<f64>,
    /// Dual slack `c - A'y`.
    pub slack: Vec<f64>,
    /// Primal objective value.
    pub value: f64,
    /// KKT residuals.
    pub residuals: Residuals,
    /// Iterations used.
    pub iterations: usize,
}

/// Solves a linear program with the default settings.
pub fn solve_lp(lp: &LpProblem) -> Result<LpSolution> {
    solve_lp_with(lp, &Settings::default())
}

/// Solves a linear program.
pub fn solve_lp_with(lp: &LpProblem, st: &Settings) -> Result<LpSolution> {
    let n = lp.c.len();
    if lp.a.len() != lp.b.len() {
        return Err(usage!("{} constraint rows but {} right-hand sides", lp.a.len(), lp.b.len()));
    }
    if !lp.free.is_empty() && lp.free.len() != n {
        return Err(usage!("free mask has length {}, expected {}", lp.free.len(), n));
    }
    let a = crate::linalg::rows(n, &lp.a)?;
    let is_free = |j: usize| lp.free.get(j).copied().unwrap_or(false);
    let bounded: Vec<usize> = (0..n).filter(|&j| !is_free(j)).collect();
    let mut g = DMatrix::zeros(bounded.len(), n);
    for (r, &j) in bounded.iter().enumerate() {
        g[(r, j)] = -1.0;
    }
    let p = ConicProblem {
        c: DVector::from_column_slice(&lp.c),
        h: DVector::zeros(bounded.len()),
        g,
        a: a.clone(),
        b: DVector::from_column_slice(&lp.b),
        cone: ConeSpec { nonneg: bounded.len(), psd: Vec::new() },
    };
    let sol = solve_reduced(&p, st);
    let status = Status::from(sol.status);
    let x: Vec<f64> = sol.x.iter().copied().collect();
    // Engine dual: c + A'y_e - z = 0 on bounded coordinates; standard dual is y = -y_e.
    let y: Vec<f64> = sol.y.iter().map(|v| -v).collect();
    let yv = DVector::from_column_slice(&y);
    let slack_v = &p.c - a.transpose() * &yv;
    let slack: Vec<f64> = slack_v.iter().copied().collect();
    let value = p.c.dot(&sol.x);
    let residuals = if status == Status::Optimal {
        let eq = (&a * &sol.x - &p.b).norm();
        let neg: f64 = bounded.iter().map(|&j| (-x[j]).max(0.0)).sum();
        let dneg: f64 = (0..n)
            .map(|j| if is_free(j) { slack[j].abs() } else { (-slack[j]).max(0.0) })
            .sum();
        Residuals { primal: eq + neg, dual: dneg, gap: (value - p.b.dot(&yv)).abs() }
    } else {
        Residuals::default()
    };
    Ok(LpSolution { status, x, y, slack, value, residuals, iterations: sol.iterations })
}

/// Semidefinite program `min <C,X>  s.t.  <A_i,X> = b_i,  X PSD`, in scaled coordinates.
#[derive(Clone, Debug)]
pub struct SdpProblem {
    /// Matrix side.
    pub d: usize,
    /// Objective in scaled coordinates.
    pub c: Vec<f64>,
    /// Constraint matrices in scaled coordinates.
    pub a: Vec<Vec<f64>>,
    /// Right-hand side.
    pub b: Vec<f64>,
}

/// Solution report of [`solve_sdp`].
#[derive(Clone, Debug)]
pub struct SdpSolution {
    /// Status.
    pub status: Status,
    /// Primal matrix.
    pub x: SymVec,
    /// Dual point of `max b'y  s.t.  C - sum y_i A_i PSD`.
    pub y: Vec<f64>,
    /// Dual slack `C - sum y_i A_i`.
    pub slack: SymVec,
    /// Primal objective value.
    pub value: f64,
    /// KKT residuals.
    pub residuals: Residuals,
    /// Iterations used.
    pub iterations: usize,
}

/// Solves a semidefinite program with the default settings.
pub fn solve_sdp(sdp: &SdpProblem) -> Result<SdpSolution> {
    solve_sdp_with(sdp, &Settings::default())
}

/// Solves a semidefinite program.
pub fn solve_sdp_with(sdp: &SdpProblem, st: &Settings) -> Result<SdpSolution> {
    let nv = sym_dim(sdp.d);
    if sdp.c.len() != nv {
        return Err(usage!("objective has {} coordinates, expected {}", sdp.c.len(), nv));
    }
    if sdp.a.len() != sdp.b.len() {
        return Err(usage!("{} constraints but {} right-hand sides", sdp.a.len(), sdp.b.len()));
    }
    let a = crate::linalg::rows(nv, &sdp.a)?;
    let p = ConicProblem {
        c: DVector::from_column_slice(&sdp.c),
        g: -DMatrix::identity(nv, nv),
        h: DVector::zeros(nv),
        a: a.clone(),
        b: DVector::from_column_slice(&sdp.b),
        cone: ConeSpec { nonneg: 0, psd: vec![sdp.d] },
    };
    let sol = solve_reduced(&p, st);
    let status = Status::from(sol.status);
    let y: Vec<f64> = sol.y.iter().map(|v| -v).collect();
    let yv = DVector::from_column_slice(&y);
    let slack_v = &p.c - a.transpose() * &yv;
    let x = SymVec { d: sdp.d, coords: sol.x.iter().copied().collect() };
    let slack = SymVec { d: sdp.d, coords: slack_v.iter().copied().collect() };
    let value = p.c.dot(&sol.x);
    let residuals = if status == Status::Optimal {
        let eq = (&a * &sol.x - &p.b).norm();
        let neg = (-sym_eigen(&x.to_matrix()).0[0]).max(0.0);
        let dneg = (-sym_eigen(&slack.to_matrix()).0[0]).max(0.0);
        Residuals { primal: eq + neg, dual: dneg, gap: (value - p.b.dot(&yv)).abs() }
    } else {
        Residuals::default()
    };
    Ok(SdpSolution { status, x, y, slack, value, residuals, iterations: sol.iterations })
}

/// A face of a self-dual cone, used as the target of [`relative_interior_point`].
#[derive(Clone, Debug)]
pub enum Face {
    /// `{x >= 0 in R^ambient : x_j = 0 for j outside support}`.
    Orthant {
        /// Ambient dimension.
        ambient: usize,
        /// Coordinates allowed to be positive, sorted.
        support: Vec<usize>,
    },
    /// `Z S_+ Z'` inside `S^d`, scaled coordinates, `Z` with orthonormal columns.
    Psd {
        /// Matrix side.
        d: usize,
        /// Basis of the face's range, `d x r`.
        z: DMatrix<f64>,
    },
}

impl Face {
    /// Ambient coordinate dimension.
    pub fn ambient_dim(&self) -> usize {
        match self {
            Face::Orthant { ambient, .. } => *ambient,
            Face::Psd { d, .. } => sym_dim(*d),
        }
    }

    /// `r` for a face isomorphic to `R^r_+` or `S^r_+`.
    pub fn size(&self) -> usize {
        match self {
            Face::Orthant { support, .. } => support.len(),
            Face::Psd { z, .. } => z.ncols(),
        }
    }

    /// Linear span of the face.
    pub fn span(&self) -> Subspace {
        match self {
            Face::Orthant { ambient, support } => {
                let vs: Vec<Vec<f64>> = support
                    .iter()
                    .map(|&j| {
                        let mut v = vec![0.0; *ambient];
                        v[j] = 1.0;
                        v
                    })
                    .collect();
                Subspace::span(*ambient, &vs).expect("sizes match")
            }
            Face::Psd { d, z } => {
                let r = z.ncols();
                let mut vs = Vec::new();
                for i in 0..r {
                    for j in i..r {
                        let zi = z.column(i);
                        let zj = z.column(j);
                        let m = zi * zj.transpose() + zj * zi.transpose();
                        vs.push(SymVec::from_matrix(&m).coords);
                    }
                }
                Subspace::span(sym_dim(*d), &vs).expect("sizes match")
            }
        }
    }
}

/// Outcome of [`relative_interior_point`].
#[derive(Clone, Debug)]
pub enum RelInt {
    /// A point of `W ∩ ri(F)` normalized to unit trace, with its minimal slack.
    Point {
        /// The point, in the coordinates of `F`.
        point: Vec<f64>,
        /// Smallest eigenvalue (or coordinate) of the point within the face.
        slack: f64,
    },
    /// No point of `W ∩ ri(F)` with slack above the threshold.
    Empty {
        /// Best slack found (zero when even `W ∩ F` is `{0}`).
        max_slack: f64,
    },
}

/// Interior slack threshold: `1e-6 / r` for a face of size `r`.
pub fn slack_threshold(size: usize) -> f64 {
    1e-6 / (size.max(1) as f64)
}

/// Data of the max-min-slack problem for a face; `x = (alpha, t)`.
fn max_slack_problem(w: &Subspace, face: &Face) -> (ConicProblem, usize) {
    let b = w.basis();
    let q = b.ncols();
    match face {
        Face::Orthant { ambient, support } => {
            let s = support.len();
            let outside: Vec<usize> = (0..*ambient).filter(|j| !support.contains(j)).collect();
            let mut g = DMatrix::zeros(s, q + 1);
            for (r, &j) in support.iter().enumerate() {
                for c in 0..q {
                    g[(r, c)] = -b[(j, c)];
                }
                g[(r, q)] = 1.0;
            }
            let mut a = DMatrix::zeros(outside.len() + 1, q + 1);
            for (r, &j) in outside.iter().enumerate() {
                for c in 0..q {
                    a[(r, c)] = b[(j, c)];
                }
            }
            for &j in support {
                for c in 0..q {
                    a[(outside.len(), c)] += b[(j, c)];
                }
            }
            let mut bb = DVector::zeros(outside.len() + 1);
            bb[outside.len()] = 1.0;
            let mut c = DVector::zeros(q + 1);
            c[q] = -1.0;
            let p = ConicProblem {
                c,
                g,
                h: DVector::zeros(s),
                a,
                b: bb,
                cone: ConeSpec { nonneg: s, psd: Vec::new() },
            };
            (p, q)
        }
        Face::Psd { d, z } => {
            let r = z.ncols();
            let nr = sym_dim(r);
            let nd = sym_dim(*d);
            // Columns: M(alpha) = Z' V(alpha) Z and the residual V - Z M Z'.
            let mut mcols = DMatrix::zeros(nr, q);
            let mut rcols = DMatrix::zeros(nd, q);
            for c in 0..q {
                let col: Vec<f64> = b.column(c).iter().copied().collect();
                let v = SymVec { d: *d, coords: col }.to_matrix();
                let m = z.transpose() * &v * z;
                let back = z * &m * z.transpose();
                let ms = SymVec::from_matrix(&m);
                let rs = SymVec::from_matrix(&(v - back));
                mcols.set_column(c, &DVector::from_column_slice(&ms.coords));
                rcols.set_column(c, &DVector::from_column_slice(&rs.coords));
            }
            let id = SymVec::identity(r);
            // s = M(alpha) - t I  PSD.
            let mut g = DMatrix::zeros(nr, q + 1);
            g.view_mut((0, 0), (nr, q)).copy_from(&(-&mcols));
            for i in 0..nr {
                g[(i, q)] = id.coords[i];
            }
            let mut a = DMatrix::zeros(nd + 1, q + 1);
            a.view_mut((0, 0), (nd, q)).copy_from(&rcols);
            for i in 0..nr {
                for c in 0..q {
                    a[(nd, c)] += id.coords[i] * mcols[(i, c)];
                }
            }
            let mut bb = DVector::zeros(nd + 1);
            bb[nd] = 1.0;
            let mut c = DVector::zeros(q + 1);
            c[q] = -1.0;
            let p = ConicProblem {
                c,
                g,
                h: DVector::zeros(nr),
                a,
                b: bb,
                cone: ConeSpec { nonneg: 0, psd: vec![r] },
            };
            (p, q)
        }
    }
}

fn point_from(w: &Subspace, sol: &ConicSolution, q: usize) -> Vec<f64> {
    let alpha = sol.x.rows(0, q).into_owned();
    (w.basis() * alpha).iter().copied().collect()
}

/// Finds a point of `W ∩ ri(F)` maximizing its minimal slack under unit trace.
///
/// `W` must live in the ambient space of `F`. A face of size zero is `{0}`,
/// whose relative interior is `{0}`, so the zero point is returned.
pub fn relative_interior_point(w: &Subspace, face: &Face) -> Result<RelInt> {
    if w.ambient_dim() != face.ambient_dim() {
        return Err(usage!("subspace in R^{} but face in R^{}", w.ambient_dim(), face.ambient_dim()));
    }
    if face.size() == 0 {
        return Ok(RelInt::Point { point: vec![0.0; face.ambient_dim()], slack: 0.0 });
    }
    if w.dim() == 0 {
        return Ok(RelInt::Empty { max_slack: 0.0 });
    }
    let (p, q) = max_slack_problem(w, face);
    let sol = solve_reduced(&p, &Settings::default());
    match sol.status {
        ConicStatus::Optimal => {
            let t = sol.x[q];
            if t > slack_threshold(face.size()) {
                Ok(RelInt::Point { point: point_from(w, &sol, q), slack: t })
            } else {
                Ok(RelInt::Empty { max_slack: t.max(0.0) })
            }
        }
        ConicStatus::PrimalInfeasible => Ok(RelInt::Empty { max_slack: 0.0 }),
        _ => Err(crate::error::numerical!("relative interior solve did not converge")),
    }
}

/// Smallest face of `F` containing `W ∩ F`, found by repeated max-min-slack
/// solves that shrink the face along the analytic center's zero pattern.
pub fn minimal_face_of_intersection(w: &Subspace, face: &Face) -> Result<Face> {
    let mut face = face.clone();
    for _ in 0..=face.ambient_dim() {
        if face.size() == 0 {
            return Ok(face);
        }
        if w.dim() == 0 {
            return Ok(shrink_all(&face));
        }
        let (p, q) = max_slack_problem(w, &face);
        let sol = solve_reduced(&p, &Settings::default());
        match sol.status {
            ConicStatus::PrimalInfeasible => return Ok(shrink_all(&face)),
            ConicStatus::Optimal => {}
            _ => return Err(crate::error::numerical!("facial reduction solve did not converge")),
        }
        let t = sol.x[q];
        if t > slack_threshold(face.size()) {
            return Ok(face);
        }
        // Strict complementarity: keep the directions where the primal slack
        // dominates the dual multiplier.
        let next = match &face {
            Face::Orthant { ambient, support } => {
                let keep: Vec<usize> = support
                    .iter()
                    .enumerate()
                    .filter(|(r, _)| sol.s[*r] > sol.z[*r])
                    .map(|(_, &j)| j)
                    .collect();
                let keep = if keep.len() == support.len() {
                    // No progress: drop the coordinate with the smallest slack.
                    let worst = (0..support.len())
                        .min_by(|&a, &b| (sol.s[a] - sol.z[a]).partial_cmp(&(sol.s[b] - sol.z[b])).unwrap())
                        .unwrap();
                    support.iter().enumerate().filter(|(r, _)| *r != worst).map(|(_, &j)| j).collect()
                } else {
                    keep
                };
                Face::Orthant { ambient: *ambient, support: keep }
            }
            Face::Psd { d, z } => {
                let r = z.ncols();
                let sm = SymVec { d: r, coords: sol.s.iter().copied().collect() }.to_matrix();
                let zm = SymVec { d: r, coords: sol.z.iter().copied().collect() }.to_matrix();
                let (vals, vecs) = sym_eigen(&(&sm - &zm));
                let mut keep: Vec<usize> = (0..r).filter(|&i| vals[i] > 0.0).collect();
                if keep.len() == r {
                    keep.remove(0);
                }
                let mut nz = DMatrix::zeros(*d, keep.len());
                for (c, &i) in keep.iter().enumerate() {
                    nz.set_column(c, &(z * vecs.column(i)));
                }
                Face::Psd { d: *d, z: nz }
            }
        };
        face = next;
    }
    Ok(face)
}

fn shrink_all(face: &Face) -> Face {
    match face {
        Face::Orthant { ambient, .. } => Face::Orthant { ambient: *ambient, support: Vec::new() },
        Face::Psd { d, .. } => Face::Psd { d: *d, z: DMatrix::zeros(*d, 0) },
    }
}

/// `span(W ∩ F)`: equals `W ∩ span(F')` for the minimal face `F'` containing `W ∩ F`.
pub fn span_of_intersection(w: &Subspace, face: &Face) -> Result<Subspace> {
    let f = minimal_face_of_intersection(w, face)?;
    if f.size() == 0 {
        return Ok(Subspace::zero(face.ambient_dim()));
    }
    Ok(w.intersection(&f.span()))
}
