//! Homogeneous self-dual interior-point method for
//!
//! ```text
//! minimize c'x  subject to  G x + s = h,  A x = b,  s in K
//! ```
//!
//! where `K` is a nonnegative orthant followed by PSD blocks in scaled
//! upper-triangular coordinates. Nesterov-Todd scaling, Mehrotra
//! predictor-corrector, dense LU on the reduced KKT system with iterative
//! refinement. Intended for the small dense problems of this crate.

use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};
use num_traits::Float;

use crate::linalg::{sym_dim, sym_eigen, SymVec};

/// Cone `R^nonneg_+ x S^{d_1}_+ x ...`.
#[derive(Clone, Debug, Default)]
pub struct ConeSpec {
    /// Number of nonnegative coordinates (they come first).
    pub nonneg: usize,
    /// Side lengths of the PSD blocks.
    pub psd: Vec<usize>,
}

impl ConeSpec {
    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        self.nonneg + self.psd.iter().map(|&d| sym_dim(d)).sum::<usize>()
    }

    fn degree(&self) -> usize {
        self.nonneg + self.psd.iter().sum::<usize>()
    }

    /// (offset, side) of each PSD block.
    fn blocks(&self) -> Vec<(usize, usize)> {
        let mut off = self.nonneg;
        self.psd
            .iter()
            .map(|&d| {
                let o = off;
                off += sym_dim(d);
                (o, d)
            })
            .collect()
    }

    fn identity(&self) -> DVector<f64> {
        let mut e = DVector::zeros(self.dim());
        for i in 0..self.nonneg {
            e[i] = 1.0;
        }
        for (o, d) in self.blocks() {
            let id = SymVec::identity(d);
            e.rows_mut(o, sym_dim(d)).copy_from_slice(&id.coords);
        }
        e
    }

    /// Smallest "eigenvalue" of `u` with respect to the cone.
    fn min_eig(&self, u: &DVector<f64>) -> f64 {
        let mut m = f64::INFINITY;
        for i in 0..self.nonneg {
            m = m.min(u[i]);
        }
        for (o, d) in self.blocks() {
            let (vals, _) = sym_eigen(&smat(d, u, o));
            m = m.min(vals[0]);
        }
        m
    }
}

fn smat(d: usize, u: &DVector<f64>, off: usize) -> DMatrix<f64> {
    let coords: Vec<f64> = u.rows(off, sym_dim(d)).iter().copied().collect();
    SymVec { d, coords }.to_matrix()
}

fn put_svec(out: &mut DVector<f64>, off: usize, m: &DMatrix<f64>) {
    let v = SymVec::from_matrix(m);
    out.rows_mut(off, v.coords.len()).copy_from_slice(&v.coords);
}

/// Problem data. `a` may have zero rows.
#[derive(Clone, Debug)]
pub struct ConicProblem {
    /// Objective.
    pub c: DVector<f64>,
    /// Inequality matrix.
    pub g: DMatrix<f64>,
    /// Inequality right-hand side.
    pub h: DVector<f64>,
    /// Equality matrix (full row rank is not required).
    pub a: DMatrix<f64>,
    /// Equality right-hand side.
    pub b: DVector<f64>,
    /// Cone of the slack `s`.
    pub cone: ConeSpec,
}

/// Stopping parameters.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    /// Iteration cap.
    pub max_iter: usize,
    /// Relative feasibility tolerance.
    pub feastol: f64,
    /// Absolute duality-gap tolerance.
    pub abstol: f64,
    /// Relative duality-gap tolerance.
    pub reltol: f64,
    /// Looser tolerance accepted for the best iterate when progress stalls.
    pub acceptable: f64,
    /// Called once per iteration with `[pres, dres, gap, tau, kappa, step]`.
    pub trace: Option<fn(usize, [f64; 6])>,
}

impl Default for Settings {
    fn default() -> Self {
        Self { max_iter: 200, feastol: 1e-11, abstol: 1e-12, reltol: 1e-12, acceptable: 1e-8, trace: None }
    }
}

/// Termination status of the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConicStatus {
    /// Primal and dual solutions found.
    Optimal,
    /// Certificate of primal infeasibility in `(y, z)`.
    PrimalInfeasible,
    /// Certificate of dual infeasibility (unbounded primal) in `(x, s)`.
    DualInfeasible,
    /// Iteration cap or breakdown.
    Failed,
}

/// Engine output. For `Optimal` the dual satisfies `c + A'y + G'z = 0`.
#[derive(Clone, Debug)]
pub struct ConicSolution {
    /// Status.
    pub status: ConicStatus,
    /// Primal variable.
    pub x: DVector<f64>,
    /// Primal slack.
    pub s: DVector<f64>,
    /// Equality multipliers.
    pub y: DVector<f64>,
    /// Cone multipliers.
    pub z: DVector<f64>,
    /// Iterations used.
    pub iterations: usize,
}

/// Nesterov-Todd scaling at a pair of interior points.
struct Scaling {
    w: Vec<f64>,
    r: Vec<DMatrix<f64>>,
    rinv: Vec<DMatrix<f64>>,
    lam: DVector<f64>,
    lam_blocks: Vec<Vec<f64>>,
}

impl Scaling {
    fn new(cone: &ConeSpec, s: &DVector<f64>, z: &DVector<f64>) -> Option<Self> {
        let mut lam = DVector::zeros(cone.dim());
        let mut w = Vec::with_capacity(cone.nonneg);
        for i in 0..cone.nonneg {
            if !(s[i] > 0.0 && z[i] > 0.0) {
                return None;
            }
            w.push(Float::sqrt(s[i] / z[i]));
            lam[i] = Float::sqrt(s[i] * z[i]);
        }
        let mut r = Vec::new();
        let mut rinv = Vec::new();
        let mut lam_blocks = Vec::new();
        for (o, d) in cone.blocks() {
            let ls = smat(d, s, o).cholesky()?.l();
            let lz = smat(d, z, o).cholesky()?.l();
            let svd = crate::linalg::svd(&(lz.transpose() * &ls));
            let u = svd.u;
            let vt = svd.v_t;
            let sv = svd.singular_values;
            if sv.iter().any(|&x| !(x > 0.0)) {
                return None;
            }
            let isq = DMatrix::from_diagonal(&sv.map(|x| 1.0 / Float::sqrt(x)));
            r.push(&ls * vt.transpose() * &isq);
            rinv.push(&isq * u.transpose() * lz.transpose());
            put_svec(&mut lam, o, &DMatrix::from_diagonal(&sv));
            lam_blocks.push(sv.iter().copied().collect());
        }
        Some(Self { w, r, rinv, lam, lam_blocks })
    }

    /// `W' u`.
    fn apply_wt(&self, cone: &ConeSpec, u: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(u.len());
        for i in 0..cone.nonneg {
            out[i] = u[i] * self.w[i];
        }
        for (k, (o, d)) in cone.blocks().into_iter().enumerate() {
            let m = &self.r[k] * smat(d, u, o) * self.r[k].transpose();
            put_svec(&mut out, o, &m);
        }
        out
    }

    /// `W^{-T} u` (applied to s-type vectors).
    fn apply_wit(&self, cone: &ConeSpec, u: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(u.len());
        for i in 0..cone.nonneg {
            out[i] = u[i] / self.w[i];
        }
        for (k, (o, d)) in cone.blocks().into_iter().enumerate() {
            let m = &self.rinv[k] * smat(d, u, o) * self.rinv[k].transpose();
            put_svec(&mut out, o, &m);
        }
        out
    }

    /// `W^{-1} u`.
    fn apply_winv(&self, cone: &ConeSpec, u: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(u.len());
        for i in 0..cone.nonneg {
            out[i] = u[i] / self.w[i];
        }
        for (k, (o, d)) in cone.blocks().into_iter().enumerate() {
            let m = self.rinv[k].transpose() * smat(d, u, o) * &self.rinv[k];
            put_svec(&mut out, o, &m);
        }
        out
    }

    /// `W^{-T} G`, column by column.
    fn scale_g(&self, cone: &ConeSpec, g: &DMatrix<f64>) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(g.nrows(), g.ncols());
        for j in 0..g.ncols() {
            let col = self.apply_wit(cone, &g.column(j).into_owned());
            out.set_column(j, &col);
        }
        out
    }
}

/// Jordan product `a o b`.
fn jprod(cone: &ConeSpec, a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
    let mut out = DVector::zeros(a.len());
    for i in 0..cone.nonneg {
        out[i] = a[i] * b[i];
    }
    for (o, d) in cone.blocks() {
        let am = smat(d, a, o);
        let bm = smat(d, b, o);
        let p = (&am * &bm + &bm * &am) * 0.5;
        put_svec(&mut out, o, &p);
    }
    out
}

/// Solves `lam o v = r` for `v` where `lam` is the (diagonal) scaled point.
fn jdiv(cone: &ConeSpec, sc: &Scaling, r: &DVector<f64>) -> DVector<f64> {
    let mut out = DVector::zeros(r.len());
    for i in 0..cone.nonneg {
        out[i] = r[i] / sc.lam[i];
    }
    for (k, (o, d)) in cone.blocks().into_iter().enumerate() {
        let rm = smat(d, r, o);
        let l = &sc.lam_blocks[k];
        let vm = DMatrix::from_fn(d, d, |i, j| 2.0 * rm[(i, j)] / (l[i] + l[j]));
        put_svec(&mut out, o, &vm);
    }
    out
}

/// Largest `alpha` with `lam + alpha * du` in the cone (infinity when unbounded).
fn max_step(cone: &ConeSpec, sc: &Scaling, du: &DVector<f64>) -> f64 {
    let mut a = f64::INFINITY;
    for i in 0..cone.nonneg {
        if du[i] < 0.0 {
            a = a.min(-sc.lam[i] / du[i]);
        }
    }
    for (k, (o, d)) in cone.blocks().into_iter().enumerate() {
        let l = &sc.lam_blocks[k];
        let dm = smat(d, du, o);
        let m = DMatrix::from_fn(d, d, |i, j| dm[(i, j)] / Float::sqrt(l[i] * l[j]));
        let (vals, _) = sym_eigen(&m);
        if vals[0] < 0.0 {
            a = a.min(-1.0 / vals[0]);
        }
    }
    a
}

/// Factorized KKT matrix `[[0, A', Gs'], [A, 0, 0], [Gs, 0, -I]]` with `Gs = W^{-T} G`.
///
/// The unknown in the last block is the scaled `W dz`, which keeps the matrix
/// well conditioned as the iterates approach the boundary.
struct Kkt {
    k: DMatrix<f64>,
    lu: nalgebra::linalg::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
}

impl Kkt {
    fn new(p: &ConicProblem, gs: &DMatrix<f64>) -> Self {
        let (n, pe, m) = (p.c.len(), p.b.len(), p.h.len());
        let size = n + pe + m;
        let mut k = DMatrix::zeros(size, size);
        k.view_mut((0, n), (n, pe)).copy_from(&p.a.transpose());
        k.view_mut((0, n + pe), (n, m)).copy_from(&gs.transpose());
        k.view_mut((n, 0), (pe, n)).copy_from(&p.a);
        k.view_mut((n + pe, 0), (m, n)).copy_from(gs);
        for i in 0..m {
            k[(n + pe + i, n + pe + i)] = -1.0;
        }
        // Static regularization of the factor only; refinement restores accuracy.
        let delta = 1e-12;
        let mut kr = k.clone();
        for i in 0..n {
            kr[(i, i)] += delta;
        }
        for i in n..size {
            kr[(i, i)] -= delta;
        }
        Self { k, lu: kr.lu() }
    }

    fn solve(&self, rhs: &DVector<f64>) -> Option<DVector<f64>> {
        let mut x = self.lu.solve(rhs)?;
        let mut best = (rhs - &self.k * &x).amax();
        for _ in 0..10 {
            let r = rhs - &self.k * &x;
            let e = self.lu.solve(&r)?;
            let cand = &x + e;
            let rn = (rhs - &self.k * &cand).amax();
            if !(rn < best) {
                break;
            }
            best = rn;
            x = cand;
        }
        if x.iter().all(|v| v.is_finite()) {
            Some(x)
        } else {
            None
        }
    }
}

fn stack(parts: &[&DVector<f64>]) -> DVector<f64> {
    let n: usize = parts.iter().map(|p| p.len()).sum();
    let mut out = DVector::zeros(n);
    let mut o = 0;
    for p in parts {
        out.rows_mut(o, p.len()).copy_from(p);
        o += p.len();
    }
    out
}

struct Direction {
    dx: DVector<f64>,
    dy: DVector<f64>,
    dz: DVector<f64>,
    ds: DVector<f64>,
    dtau: f64,
    dkappa: f64,
    ds_scaled: DVector<f64>,
    dz_scaled: DVector<f64>,
}

/// Runs the interior-point method.
pub fn solve(p: &ConicProblem, st: &Settings) -> ConicSolution {
    let (n, pe, m) = (p.c.len(), p.b.len(), p.h.len());
    let cone = &p.cone;
    let failed = |it: usize| ConicSolution {
        status: ConicStatus::Failed,
        x: DVector::zeros(n),
        s: DVector::zeros(m),
        y: DVector::zeros(pe),
        z: DVector::zeros(m),
        iterations: it,
    };
    // Best iterate by merit max(pres, dres, gap); returned when progress stalls.
    let mut best: Option<(f64, ConicSolution)> = None;
    let finish = |best: Option<(f64, ConicSolution)>, it: usize| match best {
        Some((merit, mut sol)) if merit <= st.acceptable => {
            sol.iterations = it;
            sol
        }
        _ => failed(it),
    };
    let resx0 = p.c.norm().max(1.0);
    let resy0 = p.b.norm().max(1.0);
    let resz0 = p.h.norm().max(1.0);
    let e = cone.identity();

    // Starting point from two least-norm problems.
    let kkt0 = Kkt::new(p, &p.g);
    let zn = DVector::zeros(n);
    let zp = DVector::zeros(pe);
    let zm = DVector::zeros(m);
    let Some(u) = kkt0.solve(&stack(&[&zn, &p.b, &p.h])) else { return failed(0) };
    let mut x = u.rows(0, n).into_owned();
    let mut s = -u.rows(n + pe, m).into_owned();
    let Some(u) = kkt0.solve(&stack(&[&(-&p.c), &zp, &zm])) else { return failed(0) };
    let mut y = u.rows(n, pe).into_owned();
    let mut z = u.rows(n + pe, m).into_owned();
    let ap = -cone.min_eig(&s);
    if ap >= -1e-8 * s.norm().max(1.0) {
        s += &e * (1.0 + ap.max(0.0));
    }
    let ad = -cone.min_eig(&z);
    if ad >= -1e-8 * z.norm().max(1.0) {
        z += &e * (1.0 + ad.max(0.0));
    }
    let mut tau = 1.0;
    let mut kappa = 1.0;
    let nu = cone.degree() as f64;

    for it in 0..=st.max_iter {
        let r1 = p.a.transpose() * &y + p.g.transpose() * &z + &p.c * tau;
        let r2 = &p.b * tau - &p.a * &x;
        let r3 = &p.h * tau - &p.g * &x - &s;
        let cx = p.c.dot(&x);
        let by_hz = p.b.dot(&y) + p.h.dot(&z);
        let r4 = -cx - by_hz - kappa;
        let gap = s.dot(&z);
        let mu = (gap + tau * kappa) / (nu + 1.0);

        let pcost = cx / tau;
        let dcost = -by_hz / tau;
        let absgap = gap / (tau * tau);
        let relgap = if pcost < 0.0 {
            absgap / -pcost
        } else if dcost > 0.0 {
            absgap / dcost
        } else {
            f64::INFINITY
        };
        let pres = (r2.norm() / resy0).max(r3.norm() / resz0) / tau;
        let dres = r1.norm() / resx0 / tau;
        let current = || ConicSolution {
            status: ConicStatus::Optimal,
            x: &x / tau,
            s: &s / tau,
            y: &y / tau,
            z: &z / tau,
            iterations: it,
        };
        if pres <= st.feastol && dres <= st.feastol && (absgap <= st.abstol || relgap <= st.reltol) {
            return current();
        }
        let merit = pres.max(dres).max(absgap.min(relgap));
        match &best {
            Some((b, _)) if *b <= merit => {
                if merit > 1e3 * *b && *b <= st.acceptable {
                    // Numerical noise has taken over; stop with the best point.
                    return finish(best, it);
                }
            }
            _ => best = Some((merit, current())),
        }
        if by_hz < 0.0 {
            let pinf = (p.a.transpose() * &y + p.g.transpose() * &z).norm() / resx0 / -by_hz;
            if pinf <= st.feastol {
                return ConicSolution {
                    status: ConicStatus::PrimalInfeasible,
                    x: DVector::zeros(n),
                    s: DVector::zeros(m),
                    y: &y / -by_hz,
                    z: &z / -by_hz,
                    iterations: it,
                };
            }
        }
        if cx < 0.0 {
            let dinf = ((&p.a * &x).norm() / resy0).max((&p.g * &x + &s).norm() / resz0) / -cx;
            if dinf <= st.feastol {
                return ConicSolution {
                    status: ConicStatus::DualInfeasible,
                    x: &x / -cx,
                    s: &s / -cx,
                    y: DVector::zeros(pe),
                    z: DVector::zeros(m),
                    iterations: it,
                };
            }
        }
        if let Some(f) = st.trace {
            f(it, [pres, dres, absgap, tau, kappa, 0.0]);
        }
        if it == st.max_iter {
            break;
        }

        let Some(sc) = Scaling::new(cone, &s, &z) else { return finish(best, it) };
        let kkt = Kkt::new(p, &sc.scale_g(cone, &p.g));
        let hs = sc.apply_wit(cone, &p.h);
        let Some(u1) = kkt.solve(&stack(&[&(-&p.c), &p.b, &hs])) else { return finish(best, it) };
        // Scaled last block: h'dz = (W^{-T}h)'(W dz).
        let cbh = |u: &DVector<f64>| {
            p.c.dot(&u.rows(0, n)) + p.b.dot(&u.rows(n, pe)) + hs.dot(&u.rows(n + pe, m))
        };
        let cbh1 = cbh(&u1);

        let direction = |eta: f64, rc: &DVector<f64>, rtau: f64| -> Option<Direction> {
            // v = ds~ + dz~ from the linearized complementarity.
            let v = jdiv(cone, &sc, rc);
            let rhs3 = sc.apply_wit(cone, &(&r3 * eta)) - &v;
            let rhs = stack(&[&(-&r1 * eta), &(&r2 * eta), &rhs3]);
            let u0 = kkt.solve(&rhs)?;
            let denom = kappa / tau - cbh1;
            let dtau = (-eta * r4 + rtau / tau + cbh(&u0)) / denom;
            let u = u0 + &u1 * dtau;
            let dx = u.rows(0, n).into_owned();
            let dy = u.rows(n, pe).into_owned();
            let dz_scaled = u.rows(n + pe, m).into_owned();
            let dz = sc.apply_winv(cone, &dz_scaled);
            let ds_scaled = &v - &dz_scaled;
            let ds = sc.apply_wt(cone, &ds_scaled);
            let dkappa = (rtau - kappa * dtau) / tau;
            Some(Direction { dx, dy, dz, ds, dtau, dkappa, ds_scaled, dz_scaled })
        };
        let step = |d: &Direction| -> f64 {
            let mut a = max_step(cone, &sc, &d.ds_scaled).min(max_step(cone, &sc, &d.dz_scaled));
            if d.dtau < 0.0 {
                a = a.min(-tau / d.dtau);
            }
            if d.dkappa < 0.0 {
                a = a.min(-kappa / d.dkappa);
            }
            a
        };

        let lam2 = jprod(cone, &sc.lam, &sc.lam);
        let Some(aff) = direction(1.0, &(-&lam2), -tau * kappa) else { return finish(best, it) };
        let a_aff = step(&aff).min(1.0);
        let sigma = Float::powi(1.0 - a_aff, 3).clamp(0.0, 1.0);
        let rc = -&lam2 - jprod(cone, &aff.ds_scaled, &aff.dz_scaled) + &e * (sigma * mu);
        let rtau = -tau * kappa - aff.dtau * aff.dkappa + sigma * mu;
        let Some(d) = direction(1.0 - sigma, &rc, rtau) else { return finish(best, it) };
        let alpha = (0.99 * step(&d)).min(1.0);
        if let Some(f) = st.trace {
            f(it, [a_aff, sigma, mu, d.dtau, d.dkappa, alpha]);
        }
        if !(alpha > 1e-14) {
            return finish(best, it);
        }
        x += &d.dx * alpha;
        y += &d.dy * alpha;
        z += &d.dz * alpha;
        s += &d.ds * alpha;
        tau += d.dtau * alpha;
        kappa += d.dkappa * alpha;
    }
    finish(best, st.max_iter)
}

/// Removes dependent equality rows. Returns `(Q, A', b')` with `A' = Q'A`,
/// `b' = Q'b`, or `None` when the equalities are inconsistent.
pub fn reduce_equalities(
    a: &DMatrix<f64>,
    b: &DVector<f64>,
    tol: f64,
) -> Option<(DMatrix<f64>, DMatrix<f64>, DVector<f64>)> {
    let pe = a.nrows();
    if pe == 0 {
        return Some((DMatrix::zeros(0, 0), a.clone(), b.clone()));
    }
    let svd = crate::linalg::svd(a);
    let u = svd.u;
    let smax = svd.singular_values.max();
    let keep: Vec<usize> =
        (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] > tol * smax).collect();
    let mut q = DMatrix::zeros(pe, keep.len());
    for (c, &i) in keep.iter().enumerate() {
        q.set_column(c, &u.column(i));
    }
    let bp = q.transpose() * b;
    let resid = b - &q * &bp;
    if resid.norm() > 1e-9 * b.norm().max(1.0) {
        return None;
    }
    Some((q.clone(), q.transpose() * a, bp))
}

/// Solves after removing redundant equalities; multipliers are mapped back.
pub fn solve_reduced(p: &ConicProblem, st: &Settings) -> ConicSolution {
    let (n, pe, m) = (p.c.len(), p.b.len(), p.h.len());
    let Some((q, a, b)) = reduce_equalities(&p.a, &p.b, 1e-10) else {
        return ConicSolution {
            status: ConicStatus::PrimalInfeasible,
            x: DVector::zeros(n),
            s: DVector::zeros(m),
            y: DVector::zeros(pe),
            z: DVector::zeros(m),
            iterations: 0,
        };
    };
    if a.nrows() == pe {
        return solve(p, st);
    }
    let reduced = ConicProblem { a, b, ..p.clone() };
    let mut sol = solve(&reduced, st);
    sol.y = if q.ncols() == 0 { DVector::zeros(pe) } else { &q * &sol.y };
    sol
}
