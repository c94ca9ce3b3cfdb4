//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Symbolic work (products, derivatives, shifts, determinants) is exact. Floating
//! point enters only when a polynomial is evaluated, restricted to a line, or
//! when a shift point is given as `f64` (converted exactly, binary fractions are
//! rationals). [`FloatPoly`] is a compiled copy for repeated evaluation.
//!
//! Variables are 0-based internally and written `x1, x2, ...` in text.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, usage, Result};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// Polynomial as a map from exponent vectors to nonzero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

/// Exact rational for a finite `f64`.
pub fn rational(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| usage!("non-finite value {}", x))
}

/// Nearest `f64` to a rational.
pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> BigRational {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= k;
    }
    BigRational::from_integer(f)
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * (n - i) / (i + 1);
    }
    b
}

impl SparsePoly {
    /// The zero polynomial in `num_vars` variables.
    pub fn zero(num_vars: usize) -> Self {
        SparsePoly { num_vars, terms: BTreeMap::new() }
    }

    /// Constant polynomial.
    pub fn constant(num_vars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(vec![0; num_vars], c);
        p
    }

    /// The variable `x_{i+1}`.
    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Self::from_terms(num_vars, [(e, BigRational::one())]).expect("valid monomial")
    }

    /// Linear form `sum_i a_i x_i`.
    pub fn linear(a: &[BigRational]) -> Self {
        let n = a.len();
        let mut p = Self::zero(n);
        for (i, c) in a.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated monomials are summed.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(usage!("exponent vector of length {} for {} variables", e.len(), num_vars));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Number of variables.
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Iterator over `(exponents, coefficient)` in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// True when every term has the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|k| k == d),
        }
    }

    /// Terms of total degree exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().sum::<u32>() == k)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        SparsePoly { num_vars: self.num_vars, terms }
    }

    /// Largest absolute coefficient, as `f64`.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| to_f64(c).abs()).fold(0.0, f64::max)
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(usage!("polynomials in {} and {} variables", self.num_vars, other.num_vars));
        }
        Ok(())
    }

    /// Sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        Ok(p)
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&int(-1)))
    }

    /// Product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut p = Self::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                p.add_term(e, ca * cb);
            }
        }
        Ok(p)
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero(self.num_vars);
        }
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect();
        SparsePoly { num_vars: self.num_vars, terms }
    }

    /// `k`-th power.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.num_vars, BigRational::one());
        for _ in 0..k {
            acc = acc.mul(self).expect("same variables");
        }
        acc
    }

    /// Partial derivative in variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut p = Self::zero(self.num_vars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                p.add_term(f, c * int(e[i] as i64));
            }
        }
        p
    }

    /// Directional derivative `sum_i v_i dp/dx_i`, with exact rational direction.
    pub fn derivative_along(&self, v: &[BigRational]) -> Result<Self> {
        if v.len() != self.num_vars {
            return Err(usage!("direction of length {} for {} variables", v.len(), self.num_vars));
        }
        let mut p = Self::zero(self.num_vars);
        for (e, c) in &self.terms {
            for (i, vi) in v.iter().enumerate() {
                if e[i] > 0 && !vi.is_zero() {
                    let mut f = e.clone();
                    f[i] -= 1;
                    p.add_term(f, c * vi * int(e[i] as i64));
                }
            }
        }
        Ok(p)
    }

    /// Directional derivative along a float direction. Requires degree at least one.
    pub fn directional_derivative(&self, v: &[f64]) -> Result<Self> {
        if self.degree() == 0 {
            return Err(domain!("derivative of a constant polynomial"));
        }
        let v = v.iter().map(|&x| rational(x)).collect::<Result<Vec<_>>>()?;
        self.derivative_along(&v)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, x: &[BigRational]) -> Result<BigRational> {
        if x.len() != self.num_vars {
            return Err(usage!("point of length {} for {} variables", x.len(), self.num_vars));
        }
        let mut s = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(xi.clone(), k as usize);
                }
            }
            s += t;
        }
        Ok(s)
    }

    /// Floating-point evaluation.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        FloatPoly::new(self).eval(x)
    }

    /// The polynomial `y -> p(x + y)`, computed exactly.
    pub fn shift(&self, x: &[f64]) -> Result<Self> {
        if x.len() != self.num_vars {
            return Err(usage!("point of length {} for {} variables", x.len(), self.num_vars));
        }
        let x = x.iter().map(|&v| rational(v)).collect::<Result<Vec<_>>>()?;
        self.shift_exact(&x)
    }

    /// The polynomial `y -> p(x + y)` for a rational point.
    pub fn shift_exact(&self, x: &[BigRational]) -> Result<Self> {
        if x.len() != self.num_vars {
            return Err(usage!("point of length {} for {} variables", x.len(), self.num_vars));
        }
        let n = self.num_vars;
        let maxdeg = self.terms.keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0);
        // powers[i][k] = x_i^k
        let powers: Vec<Vec<BigRational>> = x
            .iter()
            .map(|xi| {
                let mut v = Vec::with_capacity(maxdeg as usize + 1);
                v.push(BigRational::one());
                for k in 1..=maxdeg as usize {
                    let next = &v[k - 1] * xi;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            // Expand prod_i (y_i + x_i)^{e_i} one variable at a time.
            let mut partial: Vec<(Monomial, BigRational)> = vec![(vec![0; n], c.clone())];
            for i in 0..n {
                let k = e[i];
                if k == 0 {
                    continue;
                }
                let mut next = Vec::with_capacity(partial.len() * (k as usize + 1));
                for (m, cm) in &partial {
                    for j in 0..=k {
                        let w = &powers[i][(k - j) as usize];
                        if w.is_zero() {
                            continue;
                        }
                        let mut m2 = m.clone();
                        m2[i] = j;
                        let coef = cm * w * BigRational::from_integer(binomial(k, j));
                        next.push((m2, coef));
                    }
                }
                partial = next;
            }
            for (m, cm) in partial {
                out.add_term(m, cm);
            }
        }
        Ok(out)
    }

    /// Substitution `x_i = sum_j m[i][j] z_j`, producing a polynomial in `m[0].len()` variables.
    pub fn substitute_linear(&self, m: &[Vec<BigRational>]) -> Result<Self> {
        if m.len() != self.num_vars {
            return Err(usage!("{} substitution rows for {} variables", m.len(), self.num_vars));
        }
        let k = m.first().map_or(0, |r| r.len());
        let forms: Vec<SparsePoly> = m.iter().map(|r| SparsePoly::linear(r)).collect();
        let mut out = Self::zero(k);
        for (e, c) in &self.terms {
            let mut t = Self::constant(k, c.clone());
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    t = t.mul(&forms[i].pow(ei))?;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Symmetric coefficient matrix `Q` of a quadratic form, `p(x) = x^T Q x`.
    pub fn quadratic_form(&self) -> Result<Vec<Vec<f64>>> {
        let n = self.num_vars;
        let mut q = vec![vec![0.0; n]; n];
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() != 2 {
                return Err(domain!("quadratic_form of a polynomial that is not a quadratic form"));
            }
            let idx: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
            let c = to_f64(c);
            if idx.len() == 1 {
                q[idx[0]][idx[0]] += c;
            } else {
                q[idx[0]][idx[1]] += c / 2.0;
                q[idx[1]][idx[0]] += c / 2.0;
            }
        }
        Ok(q)
    }

    /// Coefficient vector `a` of a linear form, `p(x) = a^T x`.
    pub fn linear_form(&self) -> Result<Vec<f64>> {
        let mut a = vec![0.0; self.num_vars];
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() != 1 {
                return Err(domain!("linear_form of a polynomial that is not a linear form"));
            }
            let i = e.iter().position(|&k| k == 1).expect("degree one");
            a[i] = to_f64(c);
        }
        Ok(a)
    }

    /// Returns `s > 0` with `self = s * other` up to a relative coefficient error `tol`, if any.
    pub fn proportional(&self, other: &Self, tol: f64) -> Option<f64> {
        if self.num_vars != other.num_vars || self.is_zero() || other.is_zero() {
            return None;
        }
        let (e, c) = other.terms.iter().max_by(|a, b| {
            to_f64(a.1).abs().partial_cmp(&to_f64(b.1).abs()).unwrap_or(core::cmp::Ordering::Equal)
        })?;
        let s = to_f64(&self.coeff(e)) / to_f64(c);
        if !(s > 0.0) {
            return None;
        }
        let scale = self.max_abs_coeff();
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.extend(other.terms.keys());
        for k in keys {
            let diff = to_f64(&self.coeff(k)) - s * to_f64(&other.coeff(k));
            if diff.abs() > tol * scale {
                return None;
            }
        }
        Some(s)
    }

    /// Product `x_1 x_2 ... x_n`.
    pub fn product(n: usize) -> Self {
        Self::from_terms(n, [(vec![1; n], BigRational::one())]).expect("valid monomial")
    }

    /// Elementary symmetric polynomial `e_k` in `n` variables.
    pub fn elementary_symmetric(n: usize, k: usize) -> Self {
        let mut p = Self::zero(n);
        for s in combinations(n, k) {
            let mut e = vec![0; n];
            for i in s {
                e[i] = 1;
            }
            p.add_term(e, BigRational::one());
        }
        p
    }

    /// Determinant of a square matrix of polynomials, by Laplace expansion with memoized minors.
    pub fn det(entries: &[Vec<SparsePoly>]) -> Result<Self> {
        let d = entries.len();
        if d == 0 {
            return Err(usage!("determinant of an empty matrix"));
        }
        if entries.iter().any(|r| r.len() != d) {
            return Err(usage!("determinant of a non-square matrix"));
        }
        let n = entries[0][0].num_vars;
        if d > 16 {
            return Err(usage!("determinant of size {} is too large", d));
        }
        // minors[mask] = det of the rows d-|mask|.. and columns in mask.
        let mut minors: BTreeMap<u32, SparsePoly> = BTreeMap::new();
        minors.insert(0, Self::constant(n, BigRational::one()));
        for size in 1..=d {
            let row = d - size;
            for cols in combinations(d, size) {
                let mask = cols.iter().fold(0u32, |m, &c| m | (1 << c));
                let mut acc = Self::zero(n);
                for (pos, &c) in cols.iter().enumerate() {
                    let entry = &entries[row][c];
                    if entry.is_zero() {
                        continue;
                    }
                    let sub = &minors[&(mask & !(1 << c))];
                    let term = entry.mul(sub)?;
                    acc = if pos % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
                }
                minors.insert(mask, acc);
            }
        }
        Ok(minors.remove(&((1u32 << d) - 1)).expect("full minor"))
    }

    /// Determinant of a symmetric `d x d` matrix in its `d(d+1)/2` upper-triangular entries,
    /// ordered row by row (`X_11, X_12, ..., X_1d, X_22, ...`).
    pub fn sym_det(d: usize) -> Self {
        let n = crate::linalg::sym_dim(d);
        let entries: Vec<Vec<SparsePoly>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| SparsePoly::var(n, crate::linalg::sym_index(d, i.min(j), i.max(j))))
                    .collect()
            })
            .collect();
        Self::det(&entries).expect("square matrix")
    }

    /// Determinant of the `d x d` Hankel matrix `H_ij = z_{i+j}` in the `2d - 1` variables `z`.
    pub fn hankel_det(d: usize) -> Self {
        let n = 2 * d - 1;
        let entries: Vec<Vec<SparsePoly>> =
            (0..d).map(|i| (0..d).map(|j| SparsePoly::var(n, i + j)).collect()).collect();
        Self::det(&entries).expect("square matrix")
    }

    /// Parses text such as `"2 x1^2 x3 - x2 x3^2"`. Coefficients may be integers,
    /// decimals or fractions `p/q`; `*` between factors is optional. The number of
    /// variables is the largest index used, or `num_vars` when given.
    pub fn parse(text: &str, num_vars: Option<usize>) -> Result<Self> {
        let raw = parse_terms(text)?;
        let used = raw.iter().flat_map(|(f, _)| f.iter().map(|&(i, _)| i + 1)).max().unwrap_or(0);
        let n = match num_vars {
            Some(n) if n < used => {
                return Err(usage!("variable x{} exceeds the {} declared variables", used, n));
            }
            Some(n) => n,
            None => used,
        };
        let mut p = Self::zero(n);
        for (factors, c) in raw {
            let mut e = vec![0; n];
            for (i, k) in factors {
                e[i] += k;
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Higher total degree first, then lexicographically larger exponents.
        let mut keys: Vec<(&Monomial, &BigRational)> = self.terms.iter().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        for (k, (e, c)) in keys.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let constant = e.iter().all(|&x| x == 0);
            let mut parts: Vec<String> = Vec::new();
            if !a.is_one() || constant {
                parts.push(a.to_string());
            }
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => parts.push(alloc::format!("x{}", i + 1)),
                    _ => parts.push(alloc::format!("x{}^{}", i + 1, x)),
                }
            }
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

type RawTerm = (Vec<(usize, u32)>, BigRational);

fn parse_number(s: &str) -> Result<BigRational> {
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_number(p)?;
        let q = parse_number(q)?;
        if q.is_zero() {
            return Err(usage!("zero denominator in '{}'", s));
        }
        return Ok(p / q);
    }
    let (int_part, frac_part) = s.split_once('.').unwrap_or((s, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(usage!("empty number"));
    }
    let digits = alloc::format!("{}{}", int_part, frac_part);
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(usage!("bad number '{}'", s));
    }
    let n: BigInt = digits.parse().map_err(|_| usage!("bad number '{}'", s))?;
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    Ok(BigRational::new(n, den))
}

fn parse_factor(tok: &str) -> Result<(usize, u32)> {
    let body = tok.strip_prefix('x').ok_or_else(|| usage!("bad factor '{}'", tok))?;
    let (idx, exp) = match body.split_once('^') {
        Some((i, e)) => (i, e.parse::<u32>().map_err(|_| usage!("bad exponent in '{}'", tok))?),
        None => (body, 1),
    };
    let i: usize = idx.parse().map_err(|_| usage!("bad variable index in '{}'", tok))?;
    if i == 0 {
        return Err(usage!("variables are numbered from x1, got '{}'", tok));
    }
    Ok((i - 1, exp))
}

fn parse_term(t: &str, sign: i64) -> Result<RawTerm> {
    let mut coef = int(sign);
    let mut factors = Vec::new();
    for tok in t.split(|c: char| c.is_whitespace() || c == '*').filter(|s| !s.is_empty()) {
        if tok.starts_with('x') {
            factors.push(parse_factor(tok)?);
        } else {
            coef *= parse_number(tok)?;
        }
    }
    Ok((factors, coef))
}

fn parse_terms(text: &str) -> Result<Vec<RawTerm>> {
    let mut out = Vec::new();
    let mut sign = 1i64;
    let mut pending_sign = false;
    let mut current = String::new();
    for ch in text.chars() {
        if ch == '+' || ch == '-' {
            if current.trim().is_empty() {
                if pending_sign {
                    return Err(usage!("two signs in a row in '{}'", text));
                }
            } else {
                out.push(parse_term(&current, sign)?);
                current.clear();
                sign = 1;
            }
            if ch == '-' {
                sign = -sign;
            }
            pending_sign = true;
            continue;
        }
        if !ch.is_whitespace() {
            pending_sign = false;
        }
        current.push(ch);
    }
    if current.trim().is_empty() {
        return Err(if pending_sign {
            usage!("dangling sign in '{}'", text)
        } else {
            usage!("empty polynomial")
        });
    }
    out.push(parse_term(&current, sign)?);
    Ok(out)
}

/// Floating-point copy of a polynomial for fast evaluation and line restriction.
#[derive(Clone, Debug)]
pub struct FloatPoly {
    num_vars: usize,
    degree: usize,
    terms: Vec<(Vec<(usize, u32)>, f64)>,
}

impl FloatPoly {
    /// Compiles `p`.
    pub fn new(p: &SparsePoly) -> Self {
        let terms = p
            .terms
            .iter()
            .map(|(e, c)| {
                let f = e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| (i, k)).collect();
                (f, to_f64(c))
            })
            .collect();
        FloatPoly { num_vars: p.num_vars, degree: p.degree() as usize, terms }
    }

    /// Number of variables.
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Total degree.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Value at `x`.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.num_vars {
            return Err(usage!("point of length {} for {} variables", x.len(), self.num_vars));
        }
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: &[f64]) -> f64 {
        let mut s = 0.0;
        for (f, c) in &self.terms {
            let mut t = *c;
            for &(i, k) in f {
                t *= num_traits::Float::powi(x[i], k as i32);
            }
            s += t;
        }
        s
    }

    /// Sum of absolute term values at `x`, a scale for rounding errors of [`FloatPoly::eval`].
    pub fn abs_scale(&self, x: &[f64]) -> f64 {
        let mut s = 0.0;
        for (f, c) in &self.terms {
            let mut t = c.abs();
            for &(i, k) in f {
                t *= num_traits::Float::powi(x[i].abs(), k as i32);
            }
            s += t;
        }
        s
    }

    /// Coefficients `c_0, ..., c_deg` of `t -> p(x + t v)`, lowest degree first, by direct expansion.
    pub fn restrict(&self, x: &[f64], v: &[f64]) -> Result<Vec<f64>> {
        self.expand(x, v, false)
    }

    /// The same expansion with every coefficient, `x` and `v` replaced by its
    /// absolute value: a scale for the rounding errors of [`FloatPoly::restrict`].
    pub fn restrict_abs(&self, x: &[f64], v: &[f64]) -> Result<Vec<f64>> {
        let ax: Vec<f64> = x.iter().map(|a| a.abs()).collect();
        let av: Vec<f64> = v.iter().map(|a| a.abs()).collect();
        self.expand(&ax, &av, true)
    }

    fn expand(&self, x: &[f64], v: &[f64], abs: bool) -> Result<Vec<f64>> {
        if x.len() != self.num_vars || v.len() != self.num_vars {
            return Err(usage!("line data of wrong length for {} variables", self.num_vars));
        }
        let mut out = vec![0.0; self.degree + 1];
        let mut buf = Vec::with_capacity(self.degree + 1);
        let mut tmp = Vec::with_capacity(self.degree + 1);
        for (f, c) in &self.terms {
            buf.clear();
            buf.push(if abs { c.abs() } else { *c });
            for &(i, k) in f {
                for _ in 0..k {
                    // buf *= (x_i + t v_i)
                    tmp.clear();
                    tmp.resize(buf.len() + 1, 0.0);
                    for (j, &b) in buf.iter().enumerate() {
                        tmp[j] += b * x[i];
                        tmp[j + 1] += b * v[i];
                    }
                    core::mem::swap(&mut buf, &mut tmp);
                }
            }
            for (j, &b) in buf.iter().enumerate() {
                out[j] += b;
            }
        }
        Ok(out)
    }
}
