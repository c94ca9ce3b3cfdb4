//! Subspaces of `R^n` with explicit rank tolerances, and symmetric-matrix coordinates.
//!
//! A [`Subspace`] stores an orthonormal basis. Rank decisions use a relative
//! singular-value threshold: a singular value counts as nonzero when it exceeds
//! `tol * sigma_max`. Intersections are computed through complements so that
//! only orthonormalizations and null spaces are ever needed.

use alloc::vec;
use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};
use num_traits::Float;

use crate::error::{usage, Result};

/// Default relative rank threshold.
pub const RANK_TOL: f64 = 1e-8;

/// Default threshold on the Grassmann distance for declaring two subspaces equal.
pub const EQ_TOL: f64 = 1e-6;

/// Euclidean norm of a slice.
pub fn norm(v: &[f64]) -> f64 {
    Float::sqrt(v.iter().map(|x| x * x).sum::<f64>())
}

/// Dot product of two slices of equal length.
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Matrix whose columns are the given vectors.
pub fn columns(ambient: usize, vectors: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    for v in vectors {
        if v.len() != ambient {
            return Err(usage!("vector of length {} in ambient dimension {}", v.len(), ambient));
        }
    }
    Ok(DMatrix::from_fn(ambient, vectors.len(), |i, j| vectors[j][i]))
}

/// Matrix whose rows are the given vectors.
pub fn rows(width: usize, vectors: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    Ok(columns(width, vectors)?.transpose())
}

/// Thin singular value decomposition `m = u * diag(singular_values) * v_t`, values descending.
#[derive(Clone, Debug)]
pub struct Svd {
    /// `rows x p` with orthonormal columns, `p = min(rows, cols)`.
    pub u: DMatrix<f64>,
    /// `p` singular values.
    pub singular_values: DVector<f64>,
    /// `p x cols` with orthonormal rows.
    pub v_t: DMatrix<f64>,
}

/// Singular value decomposition.
///
/// Tries the bidiagonal SVD of nalgebra first and checks the factorization;
/// its left factor can be wrong for matrices with exactly zero columns next to
/// rounding-level entries, in which case a one-sided Jacobi SVD is used.
pub fn svd(m: &DMatrix<f64>) -> Svd {
    let (rows, cols) = m.shape();
    let p = rows.min(cols);
    if p == 0 {
        return Svd { u: DMatrix::zeros(rows, 0), singular_values: DVector::zeros(0), v_t: DMatrix::zeros(0, cols) };
    }
    let fast = m.clone().svd(true, true);
    if let (Some(u), Some(v_t)) = (fast.u, fast.v_t) {
        let sv = fast.singular_values;
        let rec = &u * DMatrix::from_diagonal(&sv) * &v_t;
        let id = DMatrix::<f64>::identity(p, p);
        let ok = (rec - m).norm() <= 1e-12 * (m.norm() + f64::MIN_POSITIVE) * (p as f64)
            && (u.transpose() * &u - &id).norm() <= 1e-12 * (p as f64)
            && (&v_t * v_t.transpose() - &id).norm() <= 1e-12 * (p as f64);
        if ok {
            let mut order: Vec<usize> = (0..p).collect();
            order.sort_by(|&i, &j| sv[j].partial_cmp(&sv[i]).unwrap_or(core::cmp::Ordering::Equal));
            return Svd {
                u: u.select_columns(order.iter()),
                singular_values: DVector::from_iterator(p, order.iter().map(|&i| sv[i])),
                v_t: v_t.select_rows(order.iter()),
            };
        }
    }
    jacobi_svd(m)
}

/// One-sided Jacobi SVD.
fn jacobi_svd(m: &DMatrix<f64>) -> Svd {
    let (rows, cols) = m.shape();
    if rows < cols {
        let t = jacobi_svd(&m.transpose());
        return Svd { u: t.v_t.transpose(), singular_values: t.singular_values, v_t: t.u.transpose() };
    }
    let mut a: Vec<f64> = m.as_slice().to_vec();
    let mut v: Vec<f64> = DMatrix::<f64>::identity(cols, cols).as_slice().to_vec();
    let rotate = |data: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64| {
        let (lo, hi) = data.split_at_mut(q * n);
        let (cp, cq) = (&mut lo[p * n..(p + 1) * n], &mut hi[..n]);
        for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
            let (xv, yv) = (*x, *y);
            *x = c * xv - s * yv;
            *y = s * xv + c * yv;
        }
    };
    for _ in 0..60 {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for i in 0..rows {
                    let (x, y) = (a[p * rows + i], a[q * rows + i]);
                    alpha += x * x;
                    beta += y * y;
                    gamma += x * y;
                }
                if gamma == 0.0 || Float::abs(gamma) <= f64::EPSILON * Float::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = Float::signum(zeta) / (Float::abs(zeta) + Float::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / Float::sqrt(1.0 + t * t);
                let s = c * t;
                rotate(&mut a, rows, p, q, c, s);
                rotate(&mut v, cols, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }
    let a = DMatrix::from_vec(rows, cols, a);
    let v = DMatrix::from_vec(cols, cols, v);
    let norms: Vec<f64> = (0..cols).map(|j| a.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap_or(core::cmp::Ordering::Equal));
    let mut u = DMatrix::zeros(rows, cols);
    let mut v_t = DMatrix::zeros(cols, cols);
    let mut sv = DVector::zeros(cols);
    let mut filled = 0;
    for (c, &j) in order.iter().enumerate() {
        sv[c] = norms[j];
        for i in 0..cols {
            v_t[(c, i)] = v[(i, j)];
        }
        if norms[j] > f64::MIN_POSITIVE {
            u.set_column(c, &(a.column(j) / norms[j]));
            filled = c + 1;
        }
    }
    if filled < cols {
        // Complete the left factor with an orthonormal basis of the remaining directions.
        let mut ext = DMatrix::zeros(rows, filled + rows);
        ext.view_mut((0, 0), (rows, filled)).copy_from(&u.columns(0, filled));
        ext.view_mut((0, filled), (rows, rows)).copy_from(&DMatrix::identity(rows, rows));
        let q = ext.qr().q();
        for c in filled..cols {
            u.set_column(c, &q.column(c));
        }
    }
    Svd { u, singular_values: sv, v_t }
}

/// Largest singular value.
pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().max()
}

/// Numerical rank with a relative threshold.
pub fn rank(m: &DMatrix<f64>, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let s = m.clone().singular_values();
    let smax = s.max();
    if smax == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > tol * smax).count()
}

/// Null space of `m` (as a subspace of `R^{ncols}`).
pub fn null_space(m: &DMatrix<f64>, tol: f64) -> Subspace {
    null_space_scaled(m, tol, 0.0)
}

/// Null space with singular values below `tol * max(sigma_max, scale)` treated
/// as zero; `scale` guards products that are zero up to rounding.
pub fn null_space_scaled(m: &DMatrix<f64>, tol: f64, scale: f64) -> Subspace {
    let n = m.ncols();
    if m.nrows() == 0 || n == 0 {
        return Subspace::full_with_tol(n, tol);
    }
    // Pad to at least n rows so the SVD returns a full right factor.
    let padded = if m.nrows() < n {
        let mut p = DMatrix::zeros(n, n);
        p.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = svd(&padded);
    let vt = svd.v_t;
    let smax = svd.singular_values.max().max(scale);
    if smax == 0.0 {
        return Subspace::full_with_tol(n, tol);
    }
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= tol * smax)
        .collect();
    let mut basis = DMatrix::zeros(n, keep.len());
    for (c, &i) in keep.iter().enumerate() {
        for r in 0..n {
            basis[(r, c)] = vt[(i, r)];
        }
    }
    Subspace { ambient: n, basis, tol }
}

/// A linear subspace of `R^n` with an orthonormal basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: DMatrix<f64>,
    tol: f64,
}

impl Subspace {
    /// The zero subspace.
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: DMatrix::zeros(ambient, 0), tol: RANK_TOL }
    }

    /// The whole space.
    pub fn full(ambient: usize) -> Self {
        Self::full_with_tol(ambient, RANK_TOL)
    }

    fn full_with_tol(ambient: usize, tol: f64) -> Self {
        Self { ambient, basis: DMatrix::identity(ambient, ambient), tol }
    }

    /// Span of `vectors` with the default threshold.
    pub fn span(ambient: usize, vectors: &[Vec<f64>]) -> Result<Self> {
        Self::span_with_tol(ambient, vectors, RANK_TOL)
    }

    /// Span of `vectors` with a custom relative threshold.
    pub fn span_with_tol(ambient: usize, vectors: &[Vec<f64>], tol: f64) -> Result<Self> {
        Ok(Self::from_columns(&columns(ambient, vectors)?, tol))
    }

    /// Column space of `m`.
    pub fn from_columns(m: &DMatrix<f64>, tol: f64) -> Self {
        Self::from_columns_scaled(m, tol, 0.0)
    }

    /// Column space with singular values below `tol * max(sigma_max, scale)` dropped.
    pub fn from_columns_scaled(m: &DMatrix<f64>, tol: f64, scale: f64) -> Self {
        let n = m.nrows();
        if m.ncols() == 0 || m.iter().all(|x| *x == 0.0) {
            return Self { ambient: n, basis: DMatrix::zeros(n, 0), tol };
        }
        let svd = svd(m);
        let u = svd.u;
        let smax = svd.singular_values.max().max(scale);
        let keep: Vec<usize> = (0..svd.singular_values.len())
            .filter(|&i| svd.singular_values[i] > tol * smax)
            .collect();
        let mut basis = DMatrix::zeros(n, keep.len());
        for (c, &i) in keep.iter().enumerate() {
            basis.set_column(c, &u.column(i));
        }
        Self { ambient: n, basis, tol }
    }

    /// Wraps a matrix with orthonormal columns without re-orthonormalizing.
    pub fn from_orthonormal(basis: DMatrix<f64>, tol: f64) -> Self {
        Self { ambient: basis.nrows(), basis, tol }
    }

    /// Dimension of the subspace.
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Dimension of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Relative rank threshold carried by this subspace.
    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Orthonormal basis as the columns of a matrix.
    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// Orthonormal basis as a list of vectors.
    pub fn basis_vectors(&self) -> Vec<Vec<f64>> {
        (0..self.dim()).map(|j| self.basis.column(j).iter().copied().collect()).collect()
    }

    /// Orthogonal projection of `v`.
    pub fn project(&self, v: &[f64]) -> Vec<f64> {
        let v = DVector::from_column_slice(v);
        let p = &self.basis * (self.basis.transpose() * v);
        p.iter().copied().collect()
    }

    /// Distance from `v` to the subspace.
    pub fn residual(&self, v: &[f64]) -> f64 {
        let p = self.project(v);
        Float::sqrt(v.iter().zip(&p).map(|(a, b)| (a - b) * (a - b)).sum::<f64>())
    }

    /// Whether `v` lies in the subspace up to a relative tolerance.
    pub fn contains(&self, v: &[f64], tol: f64) -> bool {
        self.residual(v) <= tol * norm(v).max(f64::MIN_POSITIVE)
    }

    /// Sum `self + other`.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimensions differ");
        let mut m = DMatrix::zeros(self.ambient, self.dim() + other.dim());
        m.view_mut((0, 0), (self.ambient, self.dim())).copy_from(&self.basis);
        m.view_mut((0, self.dim()), (self.ambient, other.dim())).copy_from(&other.basis);
        Subspace::from_columns(&m, self.tol.max(other.tol))
    }

    /// Orthogonal complement.
    pub fn complement(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full_with_tol(self.ambient, self.tol);
        }
        null_space(&self.basis.transpose(), self.tol)
    }

    /// Intersection, computed as the complement of the sum of complements.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        self.complement().sum(&other.complement()).complement()
    }

    /// Image under the linear map `m`.
    pub fn image(&self, m: &DMatrix<f64>) -> Subspace {
        Subspace::from_columns_scaled(&(m * &self.basis), self.tol, spectral_norm(m))
    }

    /// Preimage `{x : m x in self}`.
    pub fn preimage(&self, m: &DMatrix<f64>) -> Subspace {
        let c = self.complement();
        null_space_scaled(&(c.basis.transpose() * m), self.tol, spectral_norm(m))
    }
}

/// Result of comparing two subspaces.
#[derive(Clone, Debug)]
pub struct Comparison {
    /// Whether the subspaces agree within tolerance.
    pub equal: bool,
    /// Grassmann distance (see [`grassmann_distance`]).
    pub distance: f64,
    /// When unequal, a unit vector in one subspace far from the other.
    pub certificate: Option<Vec<f64>>,
    /// Whether the certificate lies in the first argument.
    pub certificate_in_first: bool,
}

/// Largest residual of a unit vector of `a` against `b`, with the maximizing vector.
fn containment_gap(a: &Subspace, b: &Subspace) -> (f64, Option<Vec<f64>>) {
    if a.dim() == 0 {
        return (0.0, None);
    }
    let r = &a.basis - &b.basis * (b.basis.transpose() * &a.basis);
    let svd = svd(&r);
    let vt = svd.v_t;
    let (imax, smax) = svd.singular_values.argmax();
    let v = vt.row(imax).transpose();
    let w = &a.basis * v;
    (smax, Some(w.iter().copied().collect()))
}

/// Sine of the largest principal angle for equal dimensions, and 1 when the
/// dimensions differ. Symmetric and zero exactly when the subspaces coincide.
pub fn grassmann_distance(a: &Subspace, b: &Subspace) -> f64 {
    let (x, _) = containment_gap(a, b);
    let (y, _) = containment_gap(b, a);
    x.max(y).min(1.0)
}

/// Principal angles in radians, ascending, between `a` and `b` (min(dim) of them).
pub fn principal_angles(a: &Subspace, b: &Subspace) -> Vec<f64> {
    if a.dim() == 0 || b.dim() == 0 {
        return Vec::new();
    }
    let m = a.basis.transpose() * &b.basis;
    let s = m.singular_values();
    let mut ang: Vec<f64> = s.iter().map(|c| Float::acos(c.clamp(-1.0, 1.0))).collect();
    ang.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ang
}

/// Compares subspaces with the default threshold [`EQ_TOL`].
pub fn subspace_equal(a: &Subspace, b: &Subspace) -> Comparison {
    subspace_equal_tol(a, b, EQ_TOL)
}

/// Compares subspaces: equal iff each basis lies in the other within `tol`.
pub fn subspace_equal_tol(a: &Subspace, b: &Subspace, tol: f64) -> Comparison {
    let (gab, wa) = containment_gap(a, b);
    let (gba, wb) = containment_gap(b, a);
    let distance = gab.max(gba).min(1.0);
    let equal = distance <= tol;
    let (certificate, certificate_in_first) = if equal {
        (None, false)
    } else if gab >= gba {
        (wa, true)
    } else {
        (wb, false)
    };
    Comparison { equal, distance, certificate, certificate_in_first }
}

/// Eigen-decomposition of a symmetric matrix with eigenvalues in ascending order.
pub fn sym_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let sym = (m + m.transpose()) * 0.5;
    let e = sym.symmetric_eigen();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| e.eigenvalues[i].partial_cmp(&e.eigenvalues[j]).unwrap());
    let vals = idx.iter().map(|&i| e.eigenvalues[i]).collect();
    let mut vecs = DMatrix::zeros(n, n);
    for (c, &i) in idx.iter().enumerate() {
        vecs.set_column(c, &e.eigenvectors.column(i));
    }
    (vals, vecs)
}

/// Orthonormal basis (columns) of the numerical kernel of a PSD matrix.
///
/// An eigenvalue counts as zero when it is at most `tol * max(1, lambda_max)`.
pub fn psd_kernel(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let (vals, vecs) = sym_eigen(m);
    let scale = vals.iter().fold(1.0f64, |a, &v| a.max(v.abs()));
    let keep: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] <= tol * scale).collect();
    let mut z = DMatrix::zeros(m.nrows(), keep.len());
    for (c, &i) in keep.iter().enumerate() {
        z.set_column(c, &vecs.column(i));
    }
    z
}

/// Number of free coordinates of a `d x d` symmetric matrix.
pub fn sym_dim(d: usize) -> usize {
    d * (d + 1) / 2
}

/// Position of entry `(i, j)` in the upper-triangular row-major ordering.
pub fn sym_index(d: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // Row r contributes d - r entries.
    i * d - i * i.saturating_sub(1) / 2 + (j - i)
}

/// Symmetric matrix in scaled upper-triangular coordinates.
///
/// Off-diagonal entries carry a factor `sqrt(2)`, so the Euclidean inner product
/// of coordinates equals the trace inner product of matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct SymVec {
    /// Matrix side length.
    pub d: usize,
    /// Scaled coordinates, `d(d+1)/2` of them.
    pub coords: Vec<f64>,
}

impl SymVec {
    /// Coordinates of a symmetric matrix (only the upper triangle is read).
    pub fn from_matrix(m: &DMatrix<f64>) -> Self {
        let d = m.nrows();
        let mut coords = Vec::with_capacity(sym_dim(d));
        for i in 0..d {
            for j in i..d {
                let v = if i == j { m[(i, i)] } else { core::f64::consts::SQRT_2 * 0.5 * (m[(i, j)] + m[(j, i)]) };
                coords.push(v);
            }
        }
        Self { d, coords }
    }

    /// Wraps coordinates; fails if the length is not triangular.
    pub fn from_coords(d: usize, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != sym_dim(d) {
            return Err(usage!("expected {} coordinates for side {}, got {}", sym_dim(d), d, coords.len()));
        }
        Ok(Self { d, coords })
    }

    /// The rank-one matrix `v v^T`.
    pub fn from_outer(v: &[f64]) -> Self {
        let d = v.len();
        Self::from_matrix(&DMatrix::from_fn(d, d, |i, j| v[i] * v[j]))
    }

    /// The identity matrix.
    pub fn identity(d: usize) -> Self {
        Self::from_matrix(&DMatrix::identity(d, d))
    }

    /// Dense symmetric matrix.
    pub fn to_matrix(&self) -> DMatrix<f64> {
        let d = self.d;
        let mut m = DMatrix::zeros(d, d);
        let mut k = 0;
        for i in 0..d {
            for j in i..d {
                if i == j {
                    m[(i, i)] = self.coords[k];
                } else {
                    let v = self.coords[k] / core::f64::consts::SQRT_2;
                    m[(i, j)] = v;
                    m[(j, i)] = v;
                }
                k += 1;
            }
        }
        m
    }

    /// Trace inner product.
    pub fn inner(&self, other: &SymVec) -> f64 {
        dot(&self.coords, &other.coords)
    }

    /// Unscaled upper-triangular entries (the coordinates used by polynomials in matrix entries).
    pub fn to_raw(&self) -> Vec<f64> {
        svec_to_raw(self.d, &self.coords)
    }
}

/// Converts scaled coordinates to raw upper-triangular entries.
pub fn svec_to_raw(d: usize, coords: &[f64]) -> Vec<f64> {
    scale_offdiag(d, coords, 1.0 / core::f64::consts::SQRT_2)
}

/// Converts raw upper-triangular entries to scaled coordinates.
pub fn raw_to_svec(d: usize, raw: &[f64]) -> Vec<f64> {
    scale_offdiag(d, raw, core::f64::consts::SQRT_2)
}

fn scale_offdiag(d: usize, v: &[f64], f: f64) -> Vec<f64> {
    let mut out = vec![0.0; v.len()];
    let mut k = 0;
    for i in 0..d {
        for j in i..d {
            out[k] = if i == j { v[k] } else { f * v[k] };
            k += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{normal_vec, rng};

    fn check_svd(m: &DMatrix<f64>) {
        check_factors(m, &svd(m));
        check_factors(m, &jacobi_svd(m));
    }

    fn check_factors(m: &DMatrix<f64>, s: &Svd) {
        let p = m.nrows().min(m.ncols());
        let rec = &s.u * DMatrix::from_diagonal(&s.singular_values) * &s.v_t;
        assert!((rec - m).norm() <= 1e-12 * (1.0 + m.norm()));
        assert!((s.u.transpose() * &s.u - DMatrix::<f64>::identity(p, p)).norm() < 1e-12);
        assert!((&s.v_t * s.v_t.transpose() - DMatrix::<f64>::identity(p, p)).norm() < 1e-12);
        assert!(s.singular_values.as_slice().windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn svd_random_shapes() {
        let mut r = rng(3);
        for (a, b) in [(5, 3), (3, 5), (6, 6), (1, 4), (4, 1)] {
            let m = DMatrix::from_vec(a, b, normal_vec(&mut r, a * b));
            check_svd(&m);
        }
    }

    #[test]
    fn svd_rank_deficient_with_zero_column() {
        // One dominant row, rounding-level rows and a zero column.
        let mut r = rng(5);
        let mut m = DMatrix::from_vec(11, 11, normal_vec(&mut r, 121)) * 1e-16;
        for j in 0..10 {
            m[(10, j)] = normal_vec(&mut r, 1)[0];
        }
        for i in 0..11 {
            m[(i, 10)] = 0.0;
        }
        check_svd(&m);
        let s = svd(&m);
        assert!((s.u[(10, 0)].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sym_eigen_reconstructs_low_rank() {
        let mut r = rng(9);
        let g = DMatrix::from_vec(6, 2, normal_vec(&mut r, 12));
        let m = &g * g.transpose();
        let (vals, vecs) = sym_eigen(&m);
        let rec = &vecs * DMatrix::from_diagonal(&DVector::from_vec(vals.clone())) * vecs.transpose();
        assert!((rec - &m).norm() < 1e-12 * m.norm());
        assert_eq!(psd_kernel(&m, 1e-8).ncols(), 4);
    }

    #[test]
    fn null_space_and_rank() {
        let m = DMatrix::from_row_slice(2, 3, &[1.0, 0.0, -1.0, 1.0, 1.0, 1.0]);
        assert_eq!(rank(&m, RANK_TOL), 2);
        let n = null_space(&m, RANK_TOL);
        assert_eq!(n.dim(), 1);
        assert!(n.contains(&[1.0, -2.0, 1.0], 1e-12));
    }
}
