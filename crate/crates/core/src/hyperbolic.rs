//! Hyperbolic polynomials: eigenvalues, localizations, lineality spaces and
//! derivative relaxations, plus the checks that tie them to tangent spaces.
//!
//! A homogeneous `p` is hyperbolic with respect to `e` when `p(e) > 0` and
//! `t -> p(te - x)` has only real roots for every `x`. Those roots are the
//! hyperbolic eigenvalues of `x`; the number of zero roots is its multiplicity.

use alloc::vec;
use alloc::vec::Vec;
use nalgebra::{Complex, DMatrix};
use num_traits::Float;
use serde::Serialize;

use crate::error::{domain, numerical, usage, Error, Result};
use crate::linalg::{self, grassmann_distance, null_space, Subspace, EQ_TOL};
use crate::poly::{factorial, rational, FloatPoly, SparsePoly};
use crate::rng;

/// Relative threshold for dropping shifted coefficients in [`localize`].
pub const LOC_DROP: f64 = 1e-10;

/// Sorted hyperbolic eigenvalues of a point and the derived rank and multiplicity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HyperbolicSpectrum {
    /// Eigenvalues in descending order.
    pub eigenvalues: Vec<f64>,
    /// Number of eigenvalues with `|lambda| > tau_eig`.
    pub rank: usize,
    /// `degree - rank`.
    pub mult: usize,
    /// Largest imaginary part left after clustering.
    pub imag_residual: f64,
}

impl HyperbolicSpectrum {
    /// Smallest eigenvalue, `+inf` for a degree-zero polynomial.
    pub fn min(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(f64::INFINITY)
    }

    /// Largest absolute eigenvalue.
    pub fn max_abs(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |a, &l| a.max(l.abs()))
    }

    /// Zero threshold `1e-7 (1 + max |lambda|)`.
    pub fn tau_eig(&self) -> f64 {
        tau_eig(self.max_abs())
    }
}

fn tau_eig(max_abs: f64) -> f64 {
    1e-7 * (1.0 + max_abs)
}

fn tau_complex(max_abs: f64) -> f64 {
    1e-6 * (1.0 + max_abs)
}

fn cabs(z: Complex<f64>) -> f64 {
    Float::hypot(z.re, z.im)
}

fn horner(c: &[f64], t: f64) -> (f64, f64) {
    // value and derivative, coefficients lowest degree first
    let mut v = 0.0;
    let mut dv = 0.0;
    for &a in c.iter().rev() {
        dv = dv * t + v;
        v = v * t + a;
    }
    (v, dv)
}

/// Real roots of a real-rooted polynomial given lowest degree first, with the
/// largest imaginary part that had to be discarded.
///
/// Exact trailing zero coefficients give exact zero roots. The rest come from
/// companion-matrix eigenvalues after scaling the roots to unit size. Roots of
/// a multiplicity-`m` cluster split into an `m`-gon of radius about `eps^(1/m)`;
/// such clusters are detected around each non-real root and replaced by their
/// real centroid. Isolated simple roots are polished by Newton steps.
pub fn real_roots(coeffs: &[f64]) -> Result<(Vec<f64>, f64)> {
    let mut top = coeffs.len();
    while top > 0 && coeffs[top - 1] == 0.0 {
        top -= 1;
    }
    if top == 0 {
        return Err(domain!("the zero polynomial has no roots"));
    }
    let c = &coeffs[..top];
    let zeros = c.iter().take_while(|&&a| a == 0.0).count();
    let a = &c[zeros..];
    let r = a.len() - 1;
    let mut roots: Vec<Complex<f64>> = Vec::with_capacity(r);
    if r > 0 {
        let lead = a[r];
        let monic: Vec<f64> = a.iter().map(|v| v / lead).collect();
        let s = (0..r)
            .map(|k| monic[k].abs().powf(1.0 / (r - k) as f64))
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        // Companion matrix of u^r + sum b_k u^k with t = s u.
        let mut comp = DMatrix::<f64>::zeros(r, r);
        for k in 0..r {
            comp[(0, k)] = -monic[r - 1 - k] / s.powi((k + 1) as i32);
        }
        for i in 1..r {
            comp[(i, i - 1)] = 1.0;
        }
        let schur = nalgebra::linalg::Schur::try_new(comp, f64::EPSILON, 100_000)
            .ok_or_else(|| numerical!("companion eigenvalues did not converge"))?;
        for z in schur.complex_eigenvalues().iter() {
            roots.push(Complex::new(z.re * s, z.im * s));
        }
    }
    let max_abs = roots.iter().fold(0.0, |m, z| m.max(cabs(*z)));
    let tc = tau_complex(max_abs);
    let scale = 1.0 + max_abs;
    let mut fixed = vec![false; roots.len()];
    let mut out: Vec<f64> = vec![0.0; zeros];
    // Collapse clusters seeded at non-real roots.
    for i in 0..roots.len() {
        if fixed[i] || roots[i].im.abs() <= tc {
            continue;
        }
        let mut order: Vec<usize> = (0..roots.len()).filter(|&j| !fixed[j]).collect();
        order.sort_by(|&p, &q| {
            cabs(roots[p] - roots[i]).partial_cmp(&cabs(roots[q] - roots[i])).unwrap()
        });
        for m in 2..=order.len() {
            let members = &order[..m];
            let centroid = members.iter().fold(Complex::new(0.0, 0.0), |acc, &j| acc + roots[j]) / m as f64;
            let spread = members.iter().fold(0.0, |acc: f64, &j| acc.max(cabs(roots[j] - centroid)));
            let limit = 10.0 * 1e-14f64.powf(1.0 / m as f64) * scale;
            if centroid.im.abs() <= tc && spread <= limit {
                for &j in members {
                    fixed[j] = true;
                    out.push(centroid.re);
                }
                break;
            }
        }
    }
    let mut residual: f64 = 0.0;
    let loose: Vec<usize> = (0..roots.len()).filter(|&j| !fixed[j]).collect();
    for &j in &loose {
        residual = residual.max(roots[j].im.abs());
    }
    if residual > tc {
        return Err(Error::NotHyperbolic { residual });
    }
    for &j in &loose {
        let mut t = roots[j].re;
        let isolated = roots
            .iter()
            .enumerate()
            .all(|(k, z)| k == j || cabs(z - roots[j]) > 1e-6 * scale)
            && (zeros == 0 || t.abs() > 1e-6 * scale);
        if isolated {
            let (mut f, _) = horner(c, t);
            for _ in 0..6 {
                let (_, df) = horner(c, t);
                if df == 0.0 {
                    break;
                }
                let cand = t - f / df;
                let (fc, _) = horner(c, cand);
                if fc.abs() < f.abs() {
                    t = cand;
                    f = fc;
                } else {
                    break;
                }
            }
        }
        out.push(t);
    }
    out.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((out, residual))
}

/// Coefficients below this fraction of their rounding scale count as zero
/// when they start the coefficient list.
pub const TRAILING_ZERO_TOL: f64 = 1e-12;

/// Coefficients `c_0, ..., c_deg` (lowest first) of `t -> p(x + t dir)`.
///
/// The expansion is done term by term and then checked against direct
/// evaluation at Chebyshev nodes; a mismatch above `1e-10` of the evaluation
/// scale is a numerical failure. Leading low-order coefficients that are at
/// rounding level (below [`TRAILING_ZERO_TOL`] of the same expansion taken in
/// absolute values) are set to exactly zero, so that roots at zero come out
/// exact instead of as an `eps^(1/m)` cluster.
pub fn restrict_univariate(p: &FloatPoly, x: &[f64], dir: &[f64]) -> Result<Vec<f64>> {
    let mut c = p.restrict(x, dir)?;
    let scale = p.restrict_abs(x, dir)?;
    for k in 0..c.len() {
        if c[k].abs() <= TRAILING_ZERO_TOL * scale[k] {
            c[k] = 0.0;
        } else {
            break;
        }
    }
    let d = p.degree();
    let reach = 1.0 + linalg::norm(x) / linalg::norm(dir).max(f64::MIN_POSITIVE);
    let reach = if linalg::norm(dir) == 0.0 { 1.0 } else { reach };
    let mut pt = vec![0.0; x.len()];
    for j in 0..=d {
        let t = reach * Float::cos(core::f64::consts::PI * (j as f64 + 0.5) / (d as f64 + 1.0));
        for i in 0..x.len() {
            pt[i] = x[i] + t * dir[i];
        }
        let direct = p.eval(&pt)?;
        let (fit, _) = horner(&c, t);
        // Rounding in the expansion grows with the absolute expansion at |t|.
        let (abs_fit, _) = horner(&scale, t.abs());
        let scale = p.abs_scale(&pt).max(abs_fit).max(f64::MIN_POSITIVE);
        if (direct - fit).abs() > 1e-10 * scale {
            return Err(numerical!(
                "line restriction residual {:.3e} exceeds 1e-10 of scale {:.3e}",
                (direct - fit).abs(),
                scale
            ));
        }
    }
    Ok(c)
}

/// A homogeneous polynomial together with a direction `e`, `p(e) > 0`.
#[derive(Clone, Debug)]
pub struct HyperbolicPoly {
    poly: SparsePoly,
    float: FloatPoly,
    e: Vec<f64>,
}

impl HyperbolicPoly {
    /// Wraps `p` and `e`; checks homogeneity and `p(e) > 0`.
    pub fn new(p: SparsePoly, e: Vec<f64>) -> Result<Self> {
        if e.len() != p.num_vars() {
            return Err(usage!("direction of length {} for {} variables", e.len(), p.num_vars()));
        }
        if !p.is_homogeneous() {
            return Err(domain!("polynomial is not homogeneous"));
        }
        let float = FloatPoly::new(&p);
        let pe = float.eval(&e)?;
        if !(pe > 0.0) {
            return Err(domain!("p(e) = {} is not positive", pe));
        }
        Ok(HyperbolicPoly { poly: p, float, e })
    }

    /// The polynomial.
    pub fn poly(&self) -> &SparsePoly {
        &self.poly
    }

    /// The compiled polynomial.
    pub fn float(&self) -> &FloatPoly {
        &self.float
    }

    /// The hyperbolicity direction.
    pub fn e(&self) -> &[f64] {
        &self.e
    }

    /// Degree.
    pub fn degree(&self) -> usize {
        self.float.degree()
    }

    /// Number of variables.
    pub fn num_vars(&self) -> usize {
        self.poly.num_vars()
    }

    /// Hyperbolic eigenvalues of `x`: the roots of `t -> p(te - x)`.
    pub fn spectrum(&self, x: &[f64]) -> Result<HyperbolicSpectrum> {
        if x.len() != self.num_vars() {
            return Err(usage!("point of length {} for {} variables", x.len(), self.num_vars()));
        }
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        let c = restrict_univariate(&self.float, &neg, &self.e)?;
        let (mut eigenvalues, imag_residual) = real_roots(&c)?;
        self.polish(x, &c, &mut eigenvalues)?;
        let max_abs = eigenvalues.iter().fold(0.0, |a: f64, &l| a.max(l.abs()));
        let tau = tau_eig(max_abs);
        let rank = eigenvalues.iter().filter(|l| l.abs() > tau).count();
        Ok(HyperbolicSpectrum { mult: eigenvalues.len() - rank, eigenvalues, rank, imag_residual })
    }

    // Newton steps on simple roots with `p(te - x)` evaluated directly, which
    // is more accurate than the expanded coefficients for factored forms.
    fn polish(&self, x: &[f64], c: &[f64], roots: &mut [f64]) -> Result<()> {
        let scale = 1.0 + roots.iter().fold(0.0, |a: f64, &l| a.max(l.abs()));
        let snapshot = roots.to_vec();
        let mut pt = vec![0.0; x.len()];
        let mut eval = |t: f64| -> Result<f64> {
            for i in 0..x.len() {
                pt[i] = t * self.e[i] - x[i];
            }
            self.float.eval(&pt)
        };
        for (j, t) in roots.iter_mut().enumerate() {
            let simple = *t != 0.0
                && snapshot.iter().enumerate().all(|(k, &u)| k == j || (u - *t).abs() > 1e-6 * scale);
            if !simple {
                continue;
            }
            let mut f = eval(*t)?;
            for _ in 0..4 {
                let (_, df) = horner(c, *t);
                if f == 0.0 || df == 0.0 {
                    break;
                }
                let cand = *t - f / df;
                let fc = eval(cand)?;
                if fc.abs() < f.abs() {
                    *t = cand;
                    f = fc;
                } else {
                    break;
                }
            }
        }
        roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(())
    }

    /// Multiplicity of `x`.
    pub fn mult(&self, x: &[f64]) -> Result<usize> {
        Ok(self.spectrum(x)?.mult)
    }

    /// Membership by eigenvalues: `lambda_min(x) >= -tau_eig`.
    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        let s = self.spectrum(x)?;
        Ok(s.min() >= -s.tau_eig())
    }

    /// Membership by signs of the coefficients `a_k(x)` of `p(x + te)`.
    pub fn contains_descartes(&self, x: &[f64], tol: f64) -> Result<bool> {
        let c = restrict_univariate(&self.float, x, &self.e)?;
        let scale = c.iter().fold(0.0, |a: f64, v| a.max(v.abs()));
        Ok(c.iter().all(|&v| v >= -tol * scale))
    }

    /// Derivative relaxation `D_dir p`; `dir` must be strictly inside the cone.
    pub fn derivative(&self, dir: &[f64]) -> Result<HyperbolicPoly> {
        let s = self.spectrum(dir)?;
        if s.eigenvalues.iter().any(|&l| l <= s.tau_eig()) {
            return Err(domain!("derivative direction is not in the open hyperbolicity cone"));
        }
        HyperbolicPoly::new(self.poly.directional_derivative(dir)?, self.e.clone())
    }

    /// Localization at `x` and the multiplicity read off from it; see [`localize`].
    pub fn localize(&self, x: &[f64]) -> Result<(HyperbolicPoly, usize)> {
        let (q, m) = localize(&self.poly, x)?;
        Ok((HyperbolicPoly::new(q, self.e.clone())?, m))
    }

    /// Lineality space of the hyperbolicity cone; see [`lineality_space`].
    pub fn lineality(&self) -> Result<Subspace> {
        lineality_space_of(self)
    }

    /// Convex tangent space of the hyperbolicity cone at `x`: the lineality
    /// space of the cone of the localization at `x`.
    pub fn tangent_space(&self, x: &[f64]) -> Result<Subspace> {
        self.localize(x)?.0.lineality()
    }

    /// Moves `y` to the boundary along `-e` until `|lambda_min| <= 1e-10 scale`.
    pub fn to_boundary(&self, y: &[f64]) -> Result<Vec<f64>> {
        let mut x = y.to_vec();
        for _ in 0..100 {
            let s = self.spectrum(&x)?;
            let lmin = s.min();
            if lmin.abs() <= 1e-10 * (1.0 + s.max_abs()) {
                return Ok(x);
            }
            for (xi, ei) in x.iter_mut().zip(&self.e) {
                *xi -= lmin * ei;
            }
        }
        Err(numerical!("boundary search did not reach |lambda_min| <= 1e-10 in 100 steps"))
    }
}

/// Hyperbolic eigenvalues of `x` with respect to `p` and `e`.
pub fn hyperbolic_eigenvalues(p: &SparsePoly, e: &[f64], x: &[f64]) -> Result<HyperbolicSpectrum> {
    HyperbolicPoly::new(p.clone(), e.to_vec())?.spectrum(x)
}

/// Result of [`check_hyperbolic`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HyperbolicityCheck {
    /// True when every sampled direction had only real roots.
    pub hyperbolic: bool,
    /// Largest imaginary residual seen.
    pub worst_residual: f64,
    /// Number of sampled directions.
    pub samples: usize,
}

/// Samples Gaussian points and checks that every characteristic polynomial is real-rooted.
pub fn check_hyperbolic(p: &SparsePoly, e: &[f64], num_samples: usize, seed: u64) -> Result<HyperbolicityCheck> {
    let h = HyperbolicPoly::new(p.clone(), e.to_vec())?;
    let mut worst: f64 = 0.0;
    let mut ok = true;
    let mut r = rng::rng(seed);
    for _ in 0..num_samples {
        let x = rng::normal_vec(&mut r, h.num_vars());
        match h.spectrum(&x) {
            Ok(s) => worst = worst.max(s.imag_residual),
            Err(Error::NotHyperbolic { residual }) => {
                ok = false;
                worst = worst.max(residual);
            }
            Err(err) => return Err(err),
        }
    }
    Ok(HyperbolicityCheck { hyperbolic: ok, worst_residual: worst, samples: num_samples })
}

/// Localization of `p` at `x`: the lowest-degree homogeneous part of `y -> p(x + y)`.
///
/// The shift is exact. The multiplicity is the lowest degree holding a
/// coefficient above `1e-10` of the largest shifted coefficient; every term of
/// that degree is kept, since dropping small ones would perturb the form.
/// At an interior point this is the constant `p(x)` with multiplicity zero.
pub fn localize(p: &SparsePoly, x: &[f64]) -> Result<(SparsePoly, usize)> {
    let shifted = p.shift(x)?;
    let cut = LOC_DROP * shifted.max_abs_coeff();
    let degree = |e: &[u32]| e.iter().sum::<u32>();
    let m = shifted
        .terms()
        .filter(|(_, c)| crate::poly::to_f64(c).abs() > cut)
        .map(|(e, _)| degree(e))
        .min()
        .unwrap_or(0);
    let low = shifted.terms().filter(|(e, _)| degree(e) == m).map(|(e, c)| (e.clone(), c.clone()));
    Ok((SparsePoly::from_terms(p.num_vars(), low)?, m as usize))
}

/// Lineality space `{x : mult_q(x) = deg q}` of the hyperbolicity cone of `q`.
///
/// With `q(x + te) = a_0 t^m + a_1(x) t^(m-1) + a_2(x) t^(m-2) + ...` the sum
/// of eigenvalues is `-a_1/a_0` and, on `ker a_1`, the sum of squared
/// eigenvalues is the quadratic form `-2 a_2 / a_0`. The lineality space is the
/// kernel of that form inside `ker a_1`. The answer is checked on random
/// elements of the result and of its complement in `ker a_1`.
pub fn lineality_space(q: &SparsePoly, e: &[f64]) -> Result<Subspace> {
    lineality_space_of(&HyperbolicPoly::new(q.clone(), e.to_vec())?)
}

fn lineality_space_of(h: &HyperbolicPoly) -> Result<Subspace> {
    let n = h.num_vars();
    let m = h.degree() as u32;
    if m == 0 {
        return Ok(Subspace::full(n));
    }
    let er = h.e.iter().map(|&v| rational(v)).collect::<Result<Vec<_>>>()?;
    let mut d = h.poly.clone();
    for _ in 0..m - 1 {
        d = d.derivative_along(&er)?;
    }
    let a1 = d.scale(&factorial(m - 1).recip()).linear_form()?;
    let a0 = h.float.eval(&h.e)?;
    let a1_row = DMatrix::from_row_slice(1, n, &a1);
    let k1 = if a1.iter().all(|&v| v == 0.0) { Subspace::full(n) } else { null_space(&a1_row, linalg::RANK_TOL) };
    let lin = if m == 1 {
        k1.clone()
    } else {
        let mut d2 = h.poly.clone();
        for _ in 0..m - 2 {
            d2 = d2.derivative_along(&er)?;
        }
        let a2 = d2.scale(&factorial(m - 2).recip()).quadratic_form()?;
        let g = DMatrix::from_fn(n, n, |i, j| -2.0 * a2[i][j] / a0);
        let nb = k1.basis();
        let mut mm = nb.transpose() * &g * nb;
        let s = mm.amax();
        if s > 0.0 {
            mm /= s;
        }
        let z = linalg::psd_kernel(&mm, 1e-9);
        Subspace::from_columns(&(nb * z), linalg::RANK_TOL)
    };
    verify_lineality(h, &k1, &lin)?;
    Ok(lin)
}

fn verify_lineality(h: &HyperbolicPoly, k1: &Subspace, lin: &Subspace) -> Result<()> {
    let mut r = rng::substream(0x11ea, lin.dim() as u64);
    let comp = lin.complement().intersection(k1);
    let n = h.num_vars();
    for _ in 0..10 {
        if lin.dim() > 0 {
            let g = rng::normal_vec(&mut r, lin.dim());
            let v = lin.basis() * nalgebra::DVector::from_vec(g);
            let v = v.normalize();
            let s = h.spectrum(v.as_slice())?;
            if s.mult != h.degree() {
                return Err(numerical!("lineality element has eigenvalues {:?}", s.eigenvalues));
            }
        }
        if comp.dim() > 0 {
            let g = rng::normal_vec(&mut r, comp.dim());
            let v = comp.basis() * nalgebra::DVector::from_vec(g);
            let v = v.normalize();
            let s = h.spectrum(v.as_slice())?;
            if s.mult == h.degree() {
                return Err(numerical!("element outside the computed lineality space has all eigenvalues zero"));
            }
        }
    }
    debug_assert_eq!(lin.ambient_dim(), n);
    Ok(())
}

/// Derivative relaxation `D_{e~} p`, with a spot check that sampled boundary points of the
/// original cone stay in the relaxed cone.
pub fn derivative_relaxation(p: &SparsePoly, e: &[f64], e_tilde: &[f64]) -> Result<SparsePoly> {
    let h = HyperbolicPoly::new(p.clone(), e.to_vec())?;
    let d = h.derivative(e_tilde)?;
    if d.degree() > 0 {
        let mut r = rng::rng(0xd0e5);
        for _ in 0..5 {
            let y = rng::normal_vec(&mut r, h.num_vars());
            let x = h.to_boundary(&y)?;
            let s = d.spectrum(&x)?;
            if s.min() < -s.tau_eig() {
                return Err(numerical!("relaxed cone misses a boundary point of the original cone"));
            }
        }
    }
    Ok(d.poly)
}

/// Checks the multiplicity correspondence between a cone and its derivative relaxation at `x`:
/// points of multiplicity `m >= 3` of the cone are exactly the points of multiplicity `m - 1`
/// of the relaxed cone.
pub fn verify_mult3(p: &SparsePoly, e: &[f64], e_tilde: &[f64], x: &[f64]) -> Result<bool> {
    let h = HyperbolicPoly::new(p.clone(), e.to_vec())?;
    let d = h.derivative(e_tilde)?;
    let sp = h.spectrum(x)?;
    let sd = d.spectrum(x)?;
    let in_p = sp.min() >= -sp.tau_eig();
    let in_d = sd.min() >= -sd.tau_eig();
    let pre_p = in_p && sp.mult >= 3;
    let pre_d = in_d && sd.mult >= 2;
    if !pre_p && !pre_d {
        return Err(domain!(
            "need mult_p >= 3 in the cone or mult_D >= 2 in the relaxed cone, got {} and {}",
            sp.mult,
            sd.mult
        ));
    }
    Ok(in_p && in_d && sd.mult + 1 == sp.mult)
}

/// Outcome of [`verify_tangent_derivative`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TangentDerivativeReport {
    /// Multiplicity of `x` for `p`.
    pub mult: usize,
    /// Positive `s` with `D(loc p x) = s loc(D p) x`, when one exists.
    pub scalar: Option<f64>,
    /// True when the two polynomials agree up to a positive scalar.
    pub polynomials_agree: bool,
    /// Sampled directions where both cones give the same membership verdict.
    pub membership_agree: usize,
    /// Number of sampled directions.
    pub num_dirs: usize,
    /// Grassmann distance between the two convex tangent spaces, when `mult >= 3`.
    pub lineality_distance: Option<f64>,
    /// Overall verdict.
    pub passed: bool,
}

/// Compares `D_{e~}(loc p x)` with `loc(D_{e~} p) x`, symbolically and by sampled membership;
/// for `mult_p(x) >= 3` also compares the tangent spaces of both cones at `x`.
pub fn verify_tangent_derivative(
    p: &SparsePoly,
    e: &[f64],
    e_tilde: &[f64],
    x: &[f64],
    num_dirs: usize,
    seed: u64,
) -> Result<TangentDerivativeReport> {
    let h = HyperbolicPoly::new(p.clone(), e.to_vec())?;
    let mult = h.mult(x)?;
    if mult == 0 {
        return Err(domain!("x is interior (multiplicity zero)"));
    }
    let (loc, _) = h.localize(x)?;
    let a = HyperbolicPoly::new(loc.poly.directional_derivative(e_tilde)?, e.to_vec())?;
    let d = h.derivative(e_tilde)?;
    let (b, _) = d.localize(x)?;
    let scalar = a.poly.proportional(&b.poly, 1e-8);
    let mut agree = 0;
    let mut r = rng::rng(seed);
    for _ in 0..num_dirs {
        let y = rng::normal_vec(&mut r, h.num_vars());
        if a.contains(&y)? == b.contains(&y)? {
            agree += 1;
        }
    }
    let lineality_distance = if mult >= 3 {
        Some(grassmann_distance(&loc.lineality()?, &b.lineality()?))
    } else {
        None
    };
    let passed = scalar.is_some() && agree == num_dirs && lineality_distance.is_none_or(|g| g <= EQ_TOL);
    Ok(TangentDerivativeReport {
        mult,
        scalar,
        polynomials_agree: scalar.is_some(),
        membership_agree: agree,
        num_dirs,
        lineality_distance,
        passed,
    })
}

/// Central-difference derivatives of the zero eigenvalues along a line.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenCurveSample {
    /// Direction `y`.
    pub direction: Vec<f64>,
    /// Step `h`.
    pub step: f64,
    /// Estimated derivatives at `s = 0` of the eigenvalues of `x + s y` that vanish at `x`, ascending.
    pub derivatives: Vec<f64>,
    /// Eigenvalues of `y` for the localization at `x`, ascending.
    pub loc_eigenvalues: Vec<f64>,
    /// Largest difference between the two lists.
    pub discrepancy: f64,
}

/// Estimates the derivatives of the zero eigenvalues of `x + s y` at `s = 0` and compares them
/// with the eigenvalues of `y` for the localization of `p` at `x`.
pub fn eigencurve_derivatives(
    p: &SparsePoly,
    e: &[f64],
    x: &[f64],
    y: &[f64],
    h: Option<f64>,
) -> Result<EigenCurveSample> {
    let hp = HyperbolicPoly::new(p.clone(), e.to_vec())?;
    let sx = hp.spectrum(x)?;
    if sx.min() < -sx.tau_eig() {
        return Err(domain!("x is not in the hyperbolicity cone"));
    }
    let m = sx.mult;
    let scale = 1.0 + sx.max_abs();
    let step = h.unwrap_or(1e-5 * scale);
    if !(step > 0.0) {
        return Err(usage!("step must be positive"));
    }
    let gap = sx.eigenvalues.iter().filter(|l| l.abs() > sx.tau_eig()).fold(f64::INFINITY, |a, l| a.min(l.abs()));
    let group = |s: f64| -> Result<Vec<f64>> {
        let pt: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + s * b).collect();
        let mut ev = hp.spectrum(&pt)?.eigenvalues;
        ev.reverse();
        let g: Vec<f64> = ev[..m].to_vec();
        let next = ev.get(m).copied().unwrap_or(f64::INFINITY);
        let top = g.iter().fold(0.0, |a: f64, v| a.max(v.abs()));
        if top >= 0.5 * gap || next <= top {
            return Err(numerical!("eigenvalue crossing at step {:.3e}; use a smaller step", step));
        }
        Ok(g)
    };
    let plus = group(step)?;
    let minus = group(-step)?;
    let mut derivatives: Vec<f64> = (0..m).map(|j| (plus[j] - minus[m - 1 - j]) / (2.0 * step)).collect();
    derivatives.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let (loc, _) = hp.localize(x)?;
    let mut loc_eigenvalues = loc.spectrum(y)?.eigenvalues;
    loc_eigenvalues.reverse();
    if loc_eigenvalues.len() != m {
        return Err(numerical!("localization degree {} differs from multiplicity {}", loc_eigenvalues.len(), m));
    }
    let discrepancy = derivatives.iter().zip(&loc_eigenvalues).fold(0.0, |a: f64, (u, v)| a.max((u - v).abs()));
    Ok(EigenCurveSample { direction: y.to_vec(), step, derivatives, loc_eigenvalues, discrepancy })
}

/// Standard hyperbolic polynomials with known extreme rays of their cones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "family")]
pub enum HyperbolicFamily {
    /// `x_1 ... x_d`, cone the orthant.
    Product {
        /// Degree.
        d: usize,
    },
    /// Determinant of a `d x d` symmetric matrix in upper-triangular coordinates, cone `S^d_+`.
    SymDet {
        /// Matrix side.
        d: usize,
    },
    /// Determinant of a `d x d` Hankel matrix, cone the PSD Hankel matrices.
    HankelDet {
        /// Matrix side.
        d: usize,
    },
}

impl HyperbolicFamily {
    /// The polynomial.
    pub fn poly(&self) -> SparsePoly {
        match *self {
            HyperbolicFamily::Product { d } => SparsePoly::product(d),
            HyperbolicFamily::SymDet { d } => SparsePoly::sym_det(d),
            HyperbolicFamily::HankelDet { d } => SparsePoly::hankel_det(d),
        }
    }

    /// Degree of the polynomial.
    pub fn degree(&self) -> usize {
        match *self {
            HyperbolicFamily::Product { d } | HyperbolicFamily::SymDet { d } | HyperbolicFamily::HankelDet { d } => d,
        }
    }

    /// Number of variables.
    pub fn num_vars(&self) -> usize {
        match *self {
            HyperbolicFamily::Product { d } => d,
            HyperbolicFamily::SymDet { d } => linalg::sym_dim(d),
            HyperbolicFamily::HankelDet { d } => 2 * d - 1,
        }
    }

    /// Interior direction: all ones, the identity, or the moment matrix of the
    /// integer nodes `-s..=s` with `s = d/2`.
    pub fn direction(&self) -> Vec<f64> {
        match *self {
            HyperbolicFamily::Product { d } => vec![1.0; d],
            HyperbolicFamily::SymDet { d } => linalg::SymVec::identity(d).to_raw(),
            HyperbolicFamily::HankelDet { d } => {
                let s = (d / 2) as i32;
                (0..2 * d - 1).map(|k| (-s..=s).map(|t| (t as f64).powi(k as i32)).sum()).collect()
            }
        }
    }

    /// The polynomial with its direction.
    pub fn hyperbolic(&self) -> Result<HyperbolicPoly> {
        if self.degree() == 0 {
            return Err(usage!("degree must be positive"));
        }
        HyperbolicPoly::new(self.poly(), self.direction())
    }

    /// A random extreme ray of the cone: a coordinate vector, `v v^T`, or the Hankel
    /// matrix of `(a^(2d-2), a^(2d-3) b, ..., b^(2d-2))` for a unit `(a, b)`.
    pub fn sample_extreme_ray(&self, r: &mut rng::Rng) -> Vec<f64> {
        match *self {
            HyperbolicFamily::Product { d } => {
                let mut x = vec![0.0; d];
                x[rng::index(r, d)] = 1.0;
                x
            }
            HyperbolicFamily::SymDet { d } => {
                let v = rng::unit_vec(r, d);
                linalg::SymVec::from_outer(&v).to_raw()
            }
            HyperbolicFamily::HankelDet { d } => {
                let ab = rng::unit_vec(r, 2);
                let top = 2 * d - 2;
                (0..=top).map(|k| ab[0].powi((top - k) as i32) * ab[1].powi(k as i32)).collect()
            }
        }
    }
}

/// Outcome of [`deriv_terracini_experiment`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DerivTerraciniReport {
    /// Degree of the relaxed polynomial.
    pub degree: usize,
    /// Number of derivatives taken.
    pub ell: usize,
    /// Collection size.
    pub k: usize,
    /// Number of trials.
    pub trials: usize,
    /// Trials whose check passed.
    pub passed: usize,
    /// `passed / trials`.
    pub pass_rate: f64,
    /// Extreme rays of the base cone used across all trials.
    pub base_rays: usize,
    /// Multiplicity-one boundary points used across all trials.
    pub boundary_points: usize,
    /// Failing trials.
    pub failures: Vec<TrialFailure>,
}

/// One failing trial.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialFailure {
    /// Trial index.
    pub trial: usize,
    /// Dimension of the tangent space at the sum.
    pub dim_lhs: usize,
    /// Dimension of the sum of tangent spaces.
    pub dim_rhs: usize,
    /// Vector in the larger side, away from the smaller one.
    pub certificate: Option<Vec<f64>>,
}

/// Samples collections of `k` extreme rays of the cone of `D_{e(l)} ... D_{e(1)} p` and runs
/// the primal Terracini check on each.
///
/// Rays are either extreme rays of the base cone (probability 3/4) or
/// multiplicity-one boundary points of the relaxed cone, reached by moving a
/// Gaussian point along `-e`.
pub fn deriv_terracini_experiment(
    family: &HyperbolicFamily,
    dirs: &[Vec<f64>],
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<DerivTerraciniReport> {
    let base = family.hyperbolic()?;
    if base.lineality()?.dim() != 0 {
        return Err(domain!("the base cone is not pointed"));
    }
    let mut relaxed = base.clone();
    for dir in dirs {
        if base.spectrum(dir)?.eigenvalues.iter().any(|&l| l <= tau_eig(0.0)) {
            return Err(domain!("derivative direction is not strictly interior"));
        }
        relaxed = relaxed.derivative(dir)?;
    }
    let cone = crate::cones::ConeModel::Hyperbolicity(relaxed.clone());
    let mut passed = 0;
    let mut base_rays = 0;
    let mut boundary_points = 0;
    let mut failures = Vec::new();
    for t in 0..trials {
        let mut r = rng::substream(seed, t as u64);
        let mut rays = Vec::with_capacity(k);
        while rays.len() < k {
            if rng::uniform(&mut r) < 0.75 {
                rays.push(family.sample_extreme_ray(&mut r));
                base_rays += 1;
            } else {
                let y = rng::normal_vec(&mut r, relaxed.num_vars());
                let x = relaxed.to_boundary(&y)?;
                if relaxed.mult(&x)? == 1 {
                    rays.push(x);
                    boundary_points += 1;
                }
            }
        }
        let v = crate::tangent::is_k_terracini_primal(&cone, &rays)?;
        if v.passed {
            passed += 1;
        } else {
            failures.push(TrialFailure { trial: t, dim_lhs: v.dim_lhs, dim_rhs: v.dim_rhs, certificate: v.certificate });
        }
    }
    Ok(DerivTerraciniReport {
        degree: relaxed.degree(),
        ell: dirs.len(),
        k,
        trials,
        passed,
        pass_rate: if trials == 0 { 1.0 } else { passed as f64 / trials as f64 },
        base_rays,
        boundary_points,
        failures,
    })
}
