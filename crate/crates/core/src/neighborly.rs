//! k-neighborliness of polyhedral cones, and the Veronese cone: monomial
//! coordinates, the Bombieri inner product, certificate functionals, growth
//! and regularity estimates, and the normal-cone spans used by the dual check.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use nalgebra::DMatrix;
use num_traits::Float;
use serde::Serialize;

use crate::cones::ConeModel;
use crate::error::{domain, unsupported, usage, Result};
use crate::linalg::{self, Subspace, RANK_TOL};
use crate::poly::combinations;
use crate::rng;
use crate::solver::{self, LpProblem, Status};

/// Exponent vectors of all monomials of degree `deg` in `n` variables, in
/// graded lexicographic order (`z_1^deg` first, `z_n^deg` last).
pub fn monomial_exponents(n: usize, deg: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, deg: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(deg as u32);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=deg).rev() {
            prefix.push(a as u32);
            rec(n, deg - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if deg == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, deg, &mut Vec::with_capacity(n), &mut out);
    out
}

fn monomial_values(exps: &[Vec<u32>], z: &[f64]) -> Vec<f64> {
    exps.iter().map(|a| a.iter().zip(z).map(|(&k, &x)| Float::powi(x, k as i32)).product()).collect()
}

/// `phi_{n,2d}(z)`: all monomials of degree `2d` evaluated at `z`.
pub fn veronese_phi(n: usize, two_d: usize, z: &[f64]) -> Result<Vec<f64>> {
    if two_d % 2 == 1 {
        return Err(usage!("degree {} is odd", two_d));
    }
    if z.len() != n {
        return Err(usage!("point of length {} for {} variables", z.len(), n));
    }
    Ok(monomial_values(&monomial_exponents(n, two_d), z))
}

/// Multinomial coefficient `deg! / prod(a_i!)`.
fn multinomial(a: &[u32]) -> f64 {
    let mut out = 1.0;
    let mut total = 0u32;
    for &k in a {
        for j in 1..=k {
            total += 1;
            out = out * total as f64 / j as f64;
        }
    }
    out
}

/// Bombieri weights of the monomials of degree `two_d`.
pub fn bombieri_weights(n: usize, two_d: usize) -> Vec<f64> {
    monomial_exponents(n, two_d).iter().map(|a| multinomial(a)).collect()
}

/// Bombieri inner product of two vectors in monomial coordinates:
/// `sum_a binom(2d; a) u_a v_a`, so that `<phi(y), phi(z)> = <y, z>^(2d)`.
pub fn bombieri_inner(u: &[f64], v: &[f64], n: usize, two_d: usize) -> Result<f64> {
    let w = bombieri_weights(n, two_d);
    if u.len() != w.len() || v.len() != w.len() {
        return Err(usage!("expected vectors of length {}, got {} and {}", w.len(), u.len(), v.len()));
    }
    Ok(w.iter().zip(u).zip(v).map(|((w, a), b)| w * a * b).sum())
}

/// A witness `l` exposing the cone over a subset of extreme rays.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    /// Generator indices of the subset.
    pub subset: Vec<usize>,
    /// The functional.
    pub functional: Vec<f64>,
}

/// Outcome of [`is_k_neighborly_polyhedral`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NeighborlinessVerdict {
    /// Largest subset size checked.
    pub k: usize,
    /// Whether every checked subset is exposed.
    pub passed: bool,
    /// First subset found not to be exposed.
    pub failing_subset: Option<Vec<usize>>,
    /// Exposing functionals of the checked subsets, in enumeration order.
    pub witnesses: Vec<Witness>,
    /// Subsets checked.
    pub subsets_checked: usize,
    /// Whether subsets were sampled instead of enumerated.
    pub sampled: bool,
    /// Indices of the generators that span extreme rays.
    pub extreme: Vec<usize>,
}

/// How to handle more than `MAX_SUBSETS` subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubsetPolicy {
    /// Fail with a usage error.
    Exhaustive,
    /// Check this many random subsets per size, from the given seed.
    Sample {
        /// Subsets per size.
        count: usize,
        /// Seed.
        seed: u64,
    },
}

/// Cap on exhaustive enumeration.
pub const MAX_SUBSETS: u128 = 1_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// A functional vanishing on `sub` and at least 1 on `rest`, or `None`.
fn exposing_functional(ambient: usize, sub: &[Vec<f64>], rest: &[Vec<f64>]) -> Result<Option<Vec<f64>>> {
    let m = rest.len();
    let nv = ambient + m;
    let mut a = Vec::with_capacity(sub.len() + m);
    for x in sub {
        let mut row = vec![0.0; nv];
        row[..ambient].copy_from_slice(x);
        a.push(row);
    }
    for (j, x) in rest.iter().enumerate() {
        let mut row = vec![0.0; nv];
        row[..ambient].copy_from_slice(x);
        row[ambient + j] = -1.0;
        a.push(row);
    }
    let mut b = vec![0.0; sub.len()];
    b.extend(vec![1.0; m]);
    let mut free = vec![true; ambient];
    free.extend(vec![false; m]);
    let sol = solver::solve_lp(&LpProblem { c: vec![0.0; nv], a, b, free })?;
    match sol.status {
        Status::Optimal => {}
        Status::Infeasible => return Ok(None),
        _ => return Err(crate::error::numerical!("neighborliness LP did not converge")),
    }
    // Clean up: project onto the complement of span(sub) and rescale so min over rest is 1.
    let s = Subspace::span(ambient, sub)?;
    let l0 = &sol.x[..ambient];
    let p = s.project(l0);
    let mut l: Vec<f64> = l0.iter().zip(&p).map(|(a, b)| a - b).collect();
    if m > 0 {
        let low = rest.iter().map(|x| linalg::dot(&l, x)).fold(f64::INFINITY, f64::min);
        if !(low > 0.0) {
            return Ok(None);
        }
        for v in l.iter_mut() {
            *v /= low;
        }
    }
    Ok(Some(l))
}

/// Checks that every set of at most `k` extreme rays spans an exposed face,
/// enumerating all subsets (sizes ascending, lexicographic, first failure stops).
pub fn is_k_neighborly_polyhedral(c: &ConeModel, k: usize) -> Result<NeighborlinessVerdict> {
    is_k_neighborly_polyhedral_with(c, k, SubsetPolicy::Exhaustive)
}

/// As [`is_k_neighborly_polyhedral`] with an explicit policy for large subset counts.
pub fn is_k_neighborly_polyhedral_with(c: &ConeModel, k: usize, policy: SubsetPolicy) -> Result<NeighborlinessVerdict> {
    let (ambient, generators) = match c {
        ConeModel::Polyhedral { ambient, generators } => (*ambient, generators),
        _ => return Err(unsupported!("neighborliness is checked for polyhedral cones")),
    };
    let extreme = c.extreme_generators()?;
    let unit: Vec<Vec<f64>> = extreme
        .iter()
        .map(|&j| {
            let g = &generators[j];
            let n = linalg::norm(g);
            g.iter().map(|v| v / n).collect()
        })
        .collect();
    let e = unit.len();
    let total: u128 = (1..=k.min(e)).map(|s| binomial(e, s)).sum();
    let sampled = total > MAX_SUBSETS;
    if sampled && policy == SubsetPolicy::Exhaustive {
        return Err(usage!("{} subsets exceed the cap of {}; enable sampling", total, MAX_SUBSETS));
    }
    let mut verdict = NeighborlinessVerdict {
        k,
        passed: true,
        failing_subset: None,
        witnesses: Vec::new(),
        subsets_checked: 0,
        sampled,
        extreme: extreme.clone(),
    };
    for size in 1..=k.min(e) {
        let subsets: Vec<Vec<usize>> = match (sampled, policy) {
            (true, SubsetPolicy::Sample { count, seed }) => {
                let mut r = rng::substream(seed, size as u64);
                (0..count).map(|_| rng::subset(&mut r, e, size)).collect()
            }
            _ => combinations(e, size),
        };
        for s in subsets {
            let sub: Vec<Vec<f64>> = s.iter().map(|&i| unit[i].clone()).collect();
            let rest: Vec<Vec<f64>> = (0..e).filter(|i| !s.contains(i)).map(|i| unit[i].clone()).collect();
            verdict.subsets_checked += 1;
            let names: Vec<usize> = s.iter().map(|&i| extreme[i]).collect();
            match exposing_functional(ambient, &sub, &rest)? {
                Some(l) => verdict.witnesses.push(Witness { subset: names, functional: l }),
                None => {
                    verdict.passed = false;
                    verdict.failing_subset = Some(names);
                    return Ok(verdict);
                }
            }
        }
    }
    Ok(verdict)
}

type FloatForm = BTreeMap<Vec<u32>, f64>;

fn form_mul(a: &FloatForm, b: &FloatForm) -> FloatForm {
    let mut out = FloatForm::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0.0) += ca * cb;
        }
    }
    out
}

/// `|z|^2 |w|^2 - <z, w>^2` as a quadratic form in `z`.
fn cauchy_schwarz_form(w: &[f64]) -> FloatForm {
    let n = w.len();
    let ww = linalg::dot(w, w);
    let mut f = FloatForm::new();
    for i in 0..n {
        for j in i..n {
            let mut e = vec![0u32; n];
            e[i] += 1;
            e[j] += 1;
            let c = if i == j { ww - w[i] * w[i] } else { -2.0 * w[i] * w[j] };
            *f.entry(e).or_insert(0.0) += c;
        }
    }
    f
}

fn norm_sq_form(n: usize) -> FloatForm {
    (0..n)
        .map(|i| {
            let mut e = vec![0u32; n];
            e[i] = 2;
            (e, 1.0)
        })
        .collect()
}

/// Coefficients, in monomial order of degree `2d`, of
/// `prod_i (|z|^2 |z_i|^2 - <z, z_i>^2) * |z|^(2(d - |I|))`.
///
/// Pairing these coefficients with `phi(z)` evaluates the form at `z`; it is
/// nonnegative and vanishes exactly on the lines through the points.
pub fn kw_certificate_veronese(points: &[Vec<f64>], d: usize) -> Result<Vec<f64>> {
    if points.len() > d {
        return Err(usage!("{} points exceed d = {}", points.len(), d));
    }
    let n = match points.first() {
        Some(p) => p.len(),
        None => return Err(usage!("at least one point is needed")),
    };
    if points.iter().any(|p| p.len() != n) {
        return Err(usage!("points have different lengths"));
    }
    for (i, p) in points.iter().enumerate() {
        if (linalg::norm(p) - 1.0).abs() > 1e-9 {
            return Err(domain!("point {} is not a unit vector", i));
        }
    }
    let mut f: FloatForm = [(vec![0u32; n], 1.0)].into_iter().collect();
    for p in points {
        f = form_mul(&f, &cauchy_schwarz_form(p));
    }
    let ns = norm_sq_form(n);
    for _ in points.len()..d {
        f = form_mul(&f, &ns);
    }
    Ok(monomial_exponents(n, 2 * d).iter().map(|e| f.get(e).copied().unwrap_or(0.0)).collect())
}

/// Sampled growth or regularity constants.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthCertificate {
    /// Smallest observed `l(x) / dist(x, I)^2` (infinite when vacuous).
    pub mu: f64,
    /// Neighborhood radius used for `mu`.
    pub epsilon: f64,
    /// Largest observed `l(x) / |x - x0|^2`.
    pub nu: f64,
    /// Neighborhood radius used for `nu`.
    pub delta: f64,
    /// Samples that landed in the neighborhood.
    pub num_samples: usize,
    /// Smallest ratio seen (equals `mu` for growth estimates, zero when unused).
    pub min_ratio_observed: f64,
    /// The bound `(1/2d) (eps^2 / 2d)^(d-1)` for growth estimates.
    pub analytic_bound: Option<f64>,
}

impl GrowthCertificate {
    /// Polyhedral cones: extreme rays are isolated, so both conditions hold vacuously.
    pub fn vacuous_polyhedral(epsilon: f64, delta: f64) -> Self {
        GrowthCertificate { mu: f64::INFINITY, epsilon, nu: 0.0, delta, num_samples: 0, min_ratio_observed: f64::INFINITY, analytic_bound: None }
    }
}

fn bombieri_dist_sq(y: &[f64], z: &[f64], two_d: usize) -> f64 {
    // For phi of vectors: |phi(y) - phi(z)|_B^2 = |y|^4d + |z|^4d - 2 <y,z>^2d.
    let yy = Float::powi(linalg::dot(y, y), two_d as i32);
    let zz = Float::powi(linalg::dot(z, z), two_d as i32);
    let yz = Float::powi(linalg::dot(y, z), two_d as i32);
    (yy + zz - 2.0 * yz).max(0.0)
}

/// Point near `center` on the unit sphere: `center + s g`, normalized, with a random scale.
fn nearby_unit(r: &mut rng::Rng, center: &[f64], radius: f64) -> Vec<f64> {
    let n = center.len();
    let g = rng::unit_vec(r, n);
    let s = radius * rng::uniform(r);
    let v: Vec<f64> = center.iter().zip(&g).map(|(c, x)| c + s * x).collect();
    let nv = linalg::norm(&v);
    v.iter().map(|x| x / nv).collect()
}

/// Estimates `mu` in `l_I(x) >= mu dist(x, I)^2` for the Veronese certificate
/// of the unit points `I`, over unit `z` with `phi(z)` within `epsilon` (Bombieri
/// distance) of some `phi(z_i)`.
pub fn estimate_growth_constant(
    points: &[Vec<f64>],
    d: usize,
    n: usize,
    num_samples: usize,
    epsilon: f64,
    seed: u64,
) -> Result<GrowthCertificate> {
    if !(epsilon > 0.0) {
        return Err(usage!("epsilon must be positive"));
    }
    if points.iter().any(|p| p.len() != n) {
        return Err(usage!("points must have length {}", n));
    }
    let two_d = 2 * d;
    let ell = kw_certificate_veronese(points, d)?;
    let mut r = rng::rng(seed);
    let mut ratio_min = f64::INFINITY;
    let mut landed = 0;
    let mut attempts = 0;
    // Angular radius generous enough to cover the Bombieri ball of radius epsilon.
    let radius = 2.0 * epsilon;
    while landed < num_samples {
        if attempts >= 10 * num_samples.max(1) {
            return Err(domain!("only {} of {} samples landed within epsilon", landed, num_samples));
        }
        attempts += 1;
        let i = rng::index(&mut r, points.len());
        let z = nearby_unit(&mut r, &points[i], radius);
        let dist_sq = points.iter().map(|p| bombieri_dist_sq(&z, p, two_d)).fold(f64::INFINITY, f64::min);
        if dist_sq > epsilon * epsilon {
            continue;
        }
        landed += 1;
        if dist_sq < 1e-18 {
            continue;
        }
        let val = linalg::dot(&ell, &veronese_phi(n, two_d, &z)?);
        ratio_min = ratio_min.min(val / dist_sq);
    }
    let bound = (1.0 / two_d as f64) * Float::powi(epsilon * epsilon / two_d as f64, d as i32 - 1);
    Ok(GrowthCertificate {
        mu: ratio_min,
        epsilon,
        nu: 0.0,
        delta: 0.0,
        num_samples: landed,
        min_ratio_observed: ratio_min,
        analytic_bound: Some(bound),
    })
}

/// Estimates `nu` in `l(x) <= nu |x - x0|^2` over unit `z` with `phi(z)` within
/// `delta` (Bombieri distance) of `x0 = phi(z0)`.
pub fn estimate_regularity(
    z0: &[f64],
    ell: &[f64],
    two_d: usize,
    num_samples: usize,
    delta: f64,
    seed: u64,
) -> Result<GrowthCertificate> {
    let n = z0.len();
    if (linalg::norm(z0) - 1.0).abs() > 1e-9 {
        return Err(domain!("z0 is not a unit vector"));
    }
    let x0 = veronese_phi(n, two_d, z0)?;
    if ell.len() != x0.len() {
        return Err(usage!("functional of length {}, expected {}", ell.len(), x0.len()));
    }
    if linalg::dot(ell, &x0).abs() > 1e-10 {
        return Err(domain!("the functional does not vanish at x0"));
    }
    let mut r = rng::rng(seed);
    let mut nu: f64 = 0.0;
    let mut landed = 0;
    let mut attempts = 0;
    while landed < num_samples {
        if attempts >= 10 * num_samples.max(1) {
            return Err(domain!("only {} of {} samples landed within delta", landed, num_samples));
        }
        attempts += 1;
        let z = nearby_unit(&mut r, z0, 2.0 * delta);
        let dist_sq = bombieri_dist_sq(&z, z0, two_d);
        if dist_sq > delta * delta {
            continue;
        }
        landed += 1;
        if dist_sq < 1e-18 {
            continue;
        }
        let val = linalg::dot(ell, &veronese_phi(n, two_d, &z)?);
        if val < -1e-10 {
            return Err(domain!("the functional is negative at a sampled extreme ray"));
        }
        nu = nu.max(val / dist_sq);
    }
    Ok(GrowthCertificate { mu: 0.0, epsilon: 0.0, nu, delta, num_samples: landed, min_ratio_observed: 0.0, analytic_bound: None })
}

/// Forms of degree `2d` (coefficient vectors) whose gradient vanishes at every point.
pub fn double_vanishing_space(points: &[Vec<f64>], n: usize, two_d: usize) -> Result<Subspace> {
    let exps = monomial_exponents(n, two_d);
    let mut rows = Vec::with_capacity(points.len() * n);
    for (i, p) in points.iter().enumerate() {
        if p.len() != n {
            return Err(usage!("point {} has length {}, expected {}", i, p.len(), n));
        }
        if linalg::norm(p) == 0.0 {
            return Err(domain!("point {} is zero", i));
        }
        for j in 0..n {
            let row: Vec<f64> = exps
                .iter()
                .map(|a| {
                    if a[j] == 0 {
                        return 0.0;
                    }
                    let mut v = a[j] as f64;
                    for (t, &k) in a.iter().enumerate() {
                        let k = if t == j { k - 1 } else { k };
                        v *= Float::powi(p[t], k as i32);
                    }
                    v
                })
                .collect();
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Ok(Subspace::full(exps.len()));
    }
    Ok(linalg::null_space(&linalg::rows(exps.len(), &rows)?, RANK_TOL))
}

/// Dimension of [`double_vanishing_space`].
pub fn double_vanishing_dimension(points: &[Vec<f64>], n: usize, two_d: usize) -> Result<usize> {
    Ok(double_vanishing_space(points, n, two_d)?.dim())
}

/// Span of the forms `m(z)' Q m(z)` with `Q` symmetric and `Q m(z_i) = 0` for
/// every point, `m` the monomials of degree `d`: the span of the sums of squares
/// vanishing at the points.
pub fn sos_vanishing_span(points: &[Vec<f64>], n: usize, two_d: usize) -> Result<Subspace> {
    if two_d % 2 == 1 {
        return Err(usage!("degree {} is odd", two_d));
    }
    let half = monomial_exponents(n, two_d / 2);
    let full = monomial_exponents(n, two_d);
    let index: BTreeMap<&Vec<u32>, usize> = full.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let m = half.len();
    let vals: Vec<Vec<f64>> = points
        .iter()
        .map(|p| {
            if p.len() != n {
                Err(usage!("point has length {}, expected {}", p.len(), n))
            } else {
                Ok(monomial_values(&half, p))
            }
        })
        .collect::<Result<_>>()?;
    let z = if vals.is_empty() {
        DMatrix::identity(m, m)
    } else {
        Subspace::span(m, &vals)?.complement().basis().clone()
    };
    let r = z.ncols();
    // Image of Q = Z S Z' for S ranging over a basis of symmetric r x r matrices.
    let mut gens = Vec::new();
    for a in 0..r {
        for b in a..r {
            let za = z.column(a);
            let zb = z.column(b);
            let q = za * zb.transpose() + zb * za.transpose();
            let mut coef = vec![0.0; full.len()];
            for i in 0..m {
                for j in 0..m {
                    let e: Vec<u32> = half[i].iter().zip(&half[j]).map(|(x, y)| x + y).collect();
                    coef[index[&e]] += q[(i, j)];
                }
            }
            gens.push(coef);
        }
    }
    Subspace::span(full.len(), &gens)
}

/// The seven points of `R^4` with two or four coordinates equal to one, among them
/// all pairs of coordinates: `(1,1,0,0), (1,0,1,0), (1,0,0,1), (0,1,1,0), (0,1,0,1), (0,0,1,1), (1,1,1,1)`.
pub fn blekherman_s() -> Vec<Vec<f64>> {
    vec![
        vec![1.0, 1.0, 0.0, 0.0],
        vec![1.0, 0.0, 1.0, 0.0],
        vec![1.0, 0.0, 0.0, 1.0],
        vec![0.0, 1.0, 1.0, 0.0],
        vec![0.0, 1.0, 0.0, 1.0],
        vec![0.0, 0.0, 1.0, 1.0],
        vec![1.0, 1.0, 1.0, 1.0],
    ]
}

/// Named point sets.
pub fn builtin_points(name: &str) -> Result<Vec<Vec<f64>>> {
    match name {
        "blekherman-s" => Ok(blekherman_s()),
        _ => Err(usage!("unknown point set '{}'", name)),
    }
}

/// Cone over the cyclic polytope with nodes `t`: generators `(1, t, ..., t^(dim-1))`.
pub fn cyclic_cone(dim: usize, t: &[f64]) -> Result<ConeModel> {
    let gens = t.iter().map(|&x| (0..dim).map(|k| Float::powi(x, k as i32)).collect()).collect();
    ConeModel::polyhedral(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_order() {
        assert_eq!(monomial_exponents(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomial_exponents(3, 1), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(monomial_exponents(4, 4).len(), 35);
        assert_eq!(monomial_exponents(3, 2)[1], vec![1, 1, 0]);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(veronese_phi(2, 2, &[1.0, 1.0]).unwrap(), vec![1.0, 1.0, 1.0]);
        assert_eq!(veronese_phi(2, 4, &[0.0, 0.0]).unwrap(), vec![0.0; 5]);
        assert_eq!(veronese_phi(2, 4, &[1.0, 2.0]).unwrap(), vec![1.0, 2.0, 4.0, 8.0, 16.0]);
        assert!(veronese_phi(2, 3, &[1.0, 2.0]).is_err());
    }

    #[test]
    fn bombieri_examples() {
        let a = veronese_phi(3, 4, &[1.0, 0.0, 0.0]).unwrap();
        assert!((bombieri_inner(&a, &a, 3, 4).unwrap() - 1.0).abs() < 1e-15);
        let y = veronese_phi(2, 2, &[1.0, 1.0]).unwrap();
        let z = veronese_phi(2, 2, &[1.0, -1.0]).unwrap();
        assert!(bombieri_inner(&y, &z, 2, 2).unwrap().abs() < 1e-15);
        assert!(bombieri_inner(&y, &z[..2], 2, 2).is_err());
    }

    #[test]
    fn neighborly_examples() {
        assert!(is_k_neighborly_polyhedral(&ConeModel::orthant(4), 4).unwrap().passed);
        let v = is_k_neighborly_polyhedral(&ConeModel::square_cone(), 2).unwrap();
        assert!(!v.passed);
        assert_eq!(v.failing_subset, Some(vec![0, 2]));
        let t: Vec<f64> = (0..8).map(|i| i as f64 * 0.5 - 2.0).collect();
        assert!(is_k_neighborly_polyhedral(&cyclic_cone(5, &t).unwrap(), 2).unwrap().passed);
    }

    #[test]
    fn witnesses_expose_their_subsets() {
        let c = crate::cones::random_polyhedral_cone(5, 9, 3).unwrap();
        let v = is_k_neighborly_polyhedral(&c, 2).unwrap();
        let gens = match &c {
            ConeModel::Polyhedral { generators, .. } => generators.clone(),
            _ => unreachable!(),
        };
        for w in &v.witnesses {
            for &j in &v.extreme {
                let g = &gens[j];
                let val = linalg::dot(&w.functional, g) / linalg::norm(g);
                if w.subset.contains(&j) {
                    assert!(val.abs() <= 1e-8);
                } else {
                    assert!(val >= 1.0 - 1e-9);
                }
            }
        }
    }

    #[test]
    fn certificate_examples() {
        // (|z|^2 - z1^2) |z|^2 = z2^2 (z1^2 + z2^2) = z1^2 z2^2 + z2^4.
        let c = kw_certificate_veronese(&[vec![1.0, 0.0]], 2).unwrap();
        assert_eq!(c, vec![0.0, 0.0, 1.0, 0.0, 1.0]);
        let c = kw_certificate_veronese(&[vec![1.0, 0.0], vec![0.0, 1.0]], 2).unwrap();
        let s = 1.0 / 2f64.sqrt();
        let v = linalg::dot(&c, &veronese_phi(2, 4, &[s, s]).unwrap());
        assert!((v - 0.25).abs() < 1e-14);
        let p = [vec![0.6, 0.8], vec![1.0, 0.0]];
        let c = kw_certificate_veronese(&p, 3).unwrap();
        for z in &p {
            assert!(linalg::dot(&c, &veronese_phi(2, 6, z).unwrap()).abs() < 1e-12);
        }
        assert!(kw_certificate_veronese(&p, 1).is_err());
    }

    #[test]
    fn double_vanishing_examples() {
        assert_eq!(double_vanishing_dimension(&[vec![1.0, 0.0]], 2, 2).unwrap(), 1);
        assert_eq!(double_vanishing_dimension(&[], 3, 4).unwrap(), 15);
    }

    #[test]
    fn sos_span_is_inside_double_vanishing() {
        let pts = [vec![1.0, 0.3, -0.2], vec![0.1, 1.0, 0.4]];
        let lhs = sos_vanishing_span(&pts, 3, 4).unwrap();
        let rhs = double_vanishing_space(&pts, 3, 4).unwrap();
        for v in lhs.basis_vectors() {
            assert!(rhs.contains(&v, 1e-8));
        }
    }

    #[test]
    fn growth_and_regularity_examples() {
        let g = estimate_growth_constant(&[vec![1.0, 0.0]], 2, 2, 200, 0.5, 1).unwrap();
        assert!(g.mu >= g.analytic_bound.unwrap());
        let ell = kw_certificate_veronese(&[vec![1.0, 0.0]], 2).unwrap();
        let r = estimate_regularity(&[1.0, 0.0], &ell, 4, 300, 0.5, 2).unwrap();
        assert!(r.nu.is_finite() && r.nu > 0.0);
        let r = estimate_regularity(&[1.0, 0.0], &[0.0; 5], 4, 50, 0.5, 2).unwrap();
        assert_eq!(r.nu, 0.0);
    }
}
