//! Root finding over the coefficient field and the local operations built on
//! it: multiplicities, tangent cones, binary-form factorization and
//! singular points.
//!
//! Roots are searched among the roots of the rational factors of degree at
//! most two of the norm down to the rationals; a quadratic left over after
//! that is solved with the quadratic formula. Anything that does not split
//! this way is reported as needing an extension (when an irreducible quadratic
//! witness is known) or as exceeding the tower bounds.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{CoefficientField, FieldElem};
use super::poly::BivariatePolynomial;
use super::unipoly::UniPoly;
use super::{ArithError, MinimalPolynomial, Rational};

/// A point of the affine plane over the coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Point {
    pub x: FieldElem,
    pub y: FieldElem,
}

impl Point {
    pub fn new(x: FieldElem, y: FieldElem) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::default()
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

/// The linear form `x*x + y*y`, normalized so the `x` coefficient is one,
/// or equal to `y` itself when `x` does not occur.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    pub x: FieldElem,
    pub y: FieldElem,
}

impl LinearForm {
    /// `x - r*y`: the line through the origin and `(r, 1)`.
    pub fn through(r: &FieldElem, f: &CoefficientField) -> Self {
        LinearForm { x: FieldElem::one(), y: f.neg(r) }
    }

    pub fn y_axis_form() -> Self {
        LinearForm { x: FieldElem::zero(), y: FieldElem::one() }
    }

    pub fn to_poly(&self, field: Arc<CoefficientField>) -> BivariatePolynomial {
        BivariatePolynomial::from_terms([((1, 0), self.x.clone()), ((0, 1), self.y.clone())], field)
    }
}

/// `form = constant * prod factor^mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryFactorization {
    pub constant: FieldElem,
    pub factors: Vec<(LinearForm, u32)>,
}

/// Where [`singular_points`] looks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Window {
    Plane,
    /// The line `x = c`.
    VerticalLine(FieldElem),
    /// The line `y = c`.
    HorizontalLine(FieldElem),
}

/// Multiplicity of `f` at `p`: the least total degree of `f` expanded at `p`.
pub fn order_at_point(f: &BivariatePolynomial, p: &Point) -> Result<u32, ArithError> {
    if f.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    Ok(f.shift(&p.x, &p.y).order().unwrap_or(0))
}

/// Lowest-degree homogeneous part of `f` expanded at `p`.
pub fn tangent_cone(f: &BivariatePolynomial, p: &Point) -> Result<BivariatePolynomial, ArithError> {
    if f.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    Ok(f.shift(&p.x, &p.y).lowest_form())
}

/// Number of distinct lines in a binary form over an algebraic closure;
/// needs no field extension.
pub fn distinct_lines(form: &BivariatePolynomial) -> usize {
    let (g, y_mult) = dehomogenize(form);
    let f = form.field();
    let sf = g.squarefree_part(f);
    sf.degree().unwrap_or(0) + usize::from(y_mult > 0)
}

/// `form(t, 1)` and the multiplicity of `y` as a factor of `form`.
fn dehomogenize(form: &BivariatePolynomial) -> (UniPoly, u32) {
    let m = form.total_degree().unwrap_or(0);
    let coeffs: Vec<FieldElem> = (0..=m).map(|i| form.coeff(i, m - i)).collect();
    let g = UniPoly::new(coeffs);
    let d = g.degree().unwrap_or(0) as u32;
    (g, m - d)
}

/// Complete linear factorization of a nonzero binary form over the current field.
pub fn factor_binary_form(form: &BivariatePolynomial) -> Result<BinaryFactorization, ArithError> {
    if form.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    if !form.is_homogeneous() {
        return Err(ArithError::NotHomogeneous);
    }
    let field = form.field().clone();
    let f = &*field;
    let (g, y_mult) = dehomogenize(form);
    let constant = g.leading();
    let mut factors: Vec<(LinearForm, u32)> = split_univariate(&g, &field)?
        .into_iter()
        .map(|(r, k)| (LinearForm::through(&r, f), k))
        .collect();
    factors.sort_by(|a, b| a.0.y.cmp(&b.0.y));
    if y_mult > 0 {
        factors.push((LinearForm::y_axis_form(), y_mult));
    }
    Ok(BinaryFactorization { constant, factors })
}

/// All roots of `g` in the field, with multiplicities, sorted. Fails when
/// `g` does not split into linear factors over the field.
pub fn split_univariate(
    g: &UniPoly,
    field: &Arc<CoefficientField>,
) -> Result<Vec<(FieldElem, u32)>, ArithError> {
    let f = &**field;
    let mut out = Vec::new();
    for (s, k) in g.squarefree_decomposition(f) {
        let roots = roots_of_squarefree(&s, f)?;
        let mut rem = s.clone();
        for r in &roots {
            rem = rem.exact_div(&UniPoly::linear_root(r, f), f);
        }
        match rem.degree().unwrap_or(0) {
            0 => {}
            2 => return Err(needs(field, rem.monic(f))),
            _ => {
                if let Some(r) = rem.rational_coeffs() {
                    if let Some(q) = rational_quadratic_factor(&r)? {
                        return Err(needs(field, UniPoly::from_rationals(q.to_vec()).monic(f)));
                    }
                }
                return Err(ArithError::TowerBoundExceeded {
                    needed: Some(MinimalPolynomial::new(field.clone(), rem.monic(f))),
                });
            }
        }
        out.extend(roots.into_iter().map(|r| (r, k)));
    }
    out.sort();
    Ok(out)
}

/// Distinct roots in the field, without failing when some factor does not split.
pub fn roots_in_field(g: &UniPoly, f: &CoefficientField) -> Result<Vec<FieldElem>, ArithError> {
    let mut out = Vec::new();
    for (s, _) in g.squarefree_decomposition(f) {
        out.extend(roots_of_squarefree(&s, f)?);
    }
    out.sort();
    Ok(out)
}

fn needs(field: &Arc<CoefficientField>, p: UniPoly) -> ArithError {
    ArithError::NeedsExtension(MinimalPolynomial::new(field.clone(), p))
}

fn roots_of_squarefree(s: &UniPoly, f: &CoefficientField) -> Result<Vec<FieldElem>, ArithError> {
    match s.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(1) => {
            let m = s.monic(f);
            return Ok(vec![f.neg(&m.coeff(0))]);
        }
        Some(2) => return Ok(quadratic_roots(s, f)),
        _ => {}
    }
    let norm = s.norm_to_rationals(f);
    let mut rest = norm.rational_coeffs().expect("norm has rational coefficients");
    let mut candidates: Vec<FieldElem> = Vec::new();
    for r in rational_roots(&rest)? {
        let lin = [-r.clone(), Rational::one()];
        rest = rational_exact_div(&rest, &lin);
        while rational_rem(&rest, &lin).iter().all(Zero::is_zero) && rest.len() > 1 {
            rest = rational_exact_div(&rest, &lin);
        }
        candidates.push(FieldElem::from_rational(r));
    }
    loop {
        match rest.len().saturating_sub(1) {
            0 | 1 => break,
            2 => {
                candidates.extend(quadratic_roots(&UniPoly::from_rationals(rest.clone()), f));
                break;
            }
            _ => match rational_quadratic_factor(&rest)? {
                Some(q) => {
                    candidates.extend(quadratic_roots(&UniPoly::from_rationals(q.to_vec()), f));
                    rest = rational_exact_div(&rest, &q);
                }
                None => break,
            },
        }
    }
    let mut roots: Vec<FieldElem> =
        candidates.into_iter().filter(|c| s.eval(c, f).is_zero()).collect();
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn quadratic_roots(s: &UniPoly, f: &CoefficientField) -> Vec<FieldElem> {
    let m = s.monic(f);
    let (p, q) = (m.coeff(1), m.coeff(0));
    let disc = f.sub(&f.mul(&p, &p), &f.scale_int(&q, 4));
    match f.sqrt(&disc) {
        Some(d) => {
            let half = Rational::new(BigInt::one(), BigInt::from(2));
            let mp = f.neg(&p);
            let mut r = vec![f.scale(&f.add(&mp, &d), &half), f.scale(&f.sub(&mp, &d), &half)];
            r.sort();
            r.dedup();
            r
        }
        None => Vec::new(),
    }
}

fn rational_rem(p: &[Rational], d: &[Rational]) -> Vec<Rational> {
    let (_, r) = rational_divrem(p, d);
    r
}

fn rational_exact_div(p: &[Rational], d: &[Rational]) -> Vec<Rational> {
    rational_divrem(p, d).0
}

fn rational_divrem(p: &[Rational], d: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = d.len() - 1;
    let mut rem = p.to_vec();
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut q = vec![Rational::zero(); rem.len() - dd];
    for k in (0..q.len()).rev() {
        let c = &rem[k + dd] / &d[dd];
        for (j, dj) in d.iter().enumerate() {
            rem[k + j] = &rem[k + j] - &c * dj;
        }
        q[k] = c;
    }
    rem.truncate(dd);
    while rem.last().is_some_and(Zero::is_zero) {
        rem.pop();
    }
    (q, rem)
}

/// Primitive integer coefficients of a nonzero rational polynomial.
fn integer_primitive(p: &[Rational]) -> Vec<BigInt> {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

const TRIAL_LIMIT: u64 = 1_000_000;
const SEARCH_LIMIT: usize = 2_000_000;

/// Positive divisors of `|n|`, `n != 0`. Gives up on numbers that trial
/// division cannot factor completely.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>, ArithError> {
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT && BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            primes.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        let limit = BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT);
        if n >= limit {
            return Err(ArithError::TowerBoundExceeded { needed: None });
        }
        primes.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
        if divs.len() > SEARCH_LIMIT {
            return Err(ArithError::TowerBoundExceeded { needed: None });
        }
    }
    divs.sort();
    Ok(divs)
}

fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Distinct rational roots of a rational polynomial, sorted.
pub fn rational_roots(p: &[Rational]) -> Result<Vec<Rational>, ArithError> {
    let mut c = p.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    if c.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut roots = Vec::new();
    let lead = c.iter().position(|a| !a.is_zero()).unwrap_or(0);
    if lead > 0 {
        roots.push(Rational::zero());
        c.drain(..lead);
    }
    if c.len() > 1 {
        let ints = integer_primitive(&c);
        let a0 = ints[0].clone();
        let an = ints[ints.len() - 1].clone();
        let (num, den) = (divisors(&a0)?, divisors(&an)?);
        if num.len().saturating_mul(den.len()) > SEARCH_LIMIT {
            return Err(ArithError::TowerBoundExceeded { needed: None });
        }
        for p in &num {
            for q in &den {
                if !p.gcd(q).is_one() {
                    continue;
                }
                for sgn in [1, -1] {
                    let cand = Rational::new(p * sgn, q.clone());
                    // q^n f(p/q) = sum a_i p^i q^(n-i)
                    let n = ints.len() - 1;
                    let mut acc = BigInt::zero();
                    for (i, a) in ints.iter().enumerate() {
                        acc += a * cand.numer().pow(i as u32) * cand.denom().pow((n - i) as u32);
                    }
                    if acc.is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// A monic quadratic factor over the rationals of a rational polynomial with
/// no rational roots, found by Kronecker's interpolation at `0, 1, -1`.
pub fn rational_quadratic_factor(p: &[Rational]) -> Result<Option<[Rational; 3]>, ArithError> {
    if p.len() < 5 {
        return Ok(None);
    }
    let ints = integer_primitive(p);
    let vals: Vec<BigInt> = [0i64, 1, -1].iter().map(|&t| eval_int(&ints, &BigInt::from(t))).collect();
    if vals.iter().any(Zero::is_zero) {
        // has a rational root; callers strip those first
        return Ok(None);
    }
    let ds: Vec<Vec<BigInt>> = vals.iter().map(divisors).collect::<Result<_, _>>()?;
    let combos = ds.iter().map(Vec::len).fold(1usize, |a, b| a.saturating_mul(b)).saturating_mul(8);
    if combos > SEARCH_LIMIT {
        return Err(ArithError::TowerBoundExceeded { needed: None });
    }
    let two = BigInt::from(2);
    for d0 in &ds[0] {
        for s0 in [1i32, -1] {
            let c = d0 * s0;
            for d1 in &ds[1] {
                for s1 in [1i32, -1] {
                    let v1 = d1 * s1;
                    for d2 in &ds[2] {
                        for s2 in [1i32, -1] {
                            let v2 = d2 * s2;
                            let sum = &v1 + &v2;
                            if !sum.is_even() {
                                continue;
                            }
                            let a = &sum / &two - &c;
                            if !a.is_positive() {
                                continue;
                            }
                            let b = (&v1 - &v2) / &two;
                            let q = [
                                Rational::from_integer(c.clone()),
                                Rational::from_integer(b),
                                Rational::from_integer(a),
                            ];
                            let rp: Vec<Rational> =
                                ints.iter().map(|x| Rational::from_integer(x.clone())).collect();
                            if rational_rem(&rp, &q).is_empty() {
                                let lead = q[2].clone();
                                return Ok(Some([&q[0] / &lead, &q[1] / &lead, Rational::one()]));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Resultant with respect to `y`, as a polynomial in `x`.
pub fn resultant_y(a: &BivariatePolynomial, b: &BivariatePolynomial) -> UniPoly {
    let f = a.field().clone();
    let (ra, rb) = (a.y_coeffs(), b.y_coeffs());
    if ra.is_empty() || rb.is_empty() {
        return UniPoly::zero();
    }
    let (m, n) = (ra.len() - 1, rb.len() - 1);
    if m == 0 && n == 0 {
        return UniPoly::constant(FieldElem::one());
    }
    let size = m + n;
    let mut mat = vec![vec![UniPoly::zero(); size]; size];
    for i in 0..n {
        for (j, c) in ra.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in rb.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    poly_det(mat, &f)
}

/// Fraction-free (Bareiss) determinant of a matrix over `F[x]`.
fn poly_det(mut m: Vec<Vec<UniPoly>>, f: &CoefficientField) -> UniPoly {
    let n = m.len();
    let mut prev = UniPoly::constant(FieldElem::one());
    let mut neg = false;
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    neg = !neg;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul(&m[i][j], f).sub(&m[i][k].mul(&m[k][j], f), f);
                m[i][j] = t.exact_div(&prev, f);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if neg {
        d.neg(f)
    } else {
        d
    }
}

/// Common zeros of `f`, `df/dx`, `df/dy` inside `window`, sorted.
pub fn singular_points(f: &BivariatePolynomial, window: &Window) -> Result<Vec<Point>, ArithError> {
    if f.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let field = f.field().clone();
    let fd = &*field;
    let (fx, fy) = (f.partial_x(), f.partial_y());
    let on_vertical = |c: &FieldElem| -> Result<Vec<Point>, ArithError> {
        let g = f.at_x(c).gcd(&fx.at_x(c), fd).gcd(&fy.at_x(c), fd);
        if g.is_zero() {
            return Err(ArithError::NotSquarefree);
        }
        Ok(split_univariate(&g, &field)?
            .into_iter()
            .map(|(r, _)| Point::new(c.clone(), r))
            .collect())
    };
    let mut pts = match window {
        Window::VerticalLine(c) => on_vertical(c)?,
        Window::HorizontalLine(c) => {
            let g = f.at_y(c).gcd(&fx.at_y(c), fd).gcd(&fy.at_y(c), fd);
            if g.is_zero() {
                return Err(ArithError::NotSquarefree);
            }
            split_univariate(&g, &field)?
                .into_iter()
                .map(|(r, _)| Point::new(r, c.clone()))
                .collect()
        }
        Window::Plane => {
            if f.is_constant() {
                return Ok(Vec::new());
            }
            let mut r = UniPoly::zero();
            for (a, b) in [(f, &fx), (f, &fy), (&fx, &fy)] {
                let res = resultant_y(a, b);
                if !res.is_zero() {
                    r = r.gcd(&res, fd);
                }
            }
            if r.is_zero() {
                // every resultant in y vanished; swap the roles of x and y
                let swap = |p: &BivariatePolynomial| {
                    BivariatePolynomial::from_terms(p.terms().map(|(m, c)| ((m.y, m.x), c.clone())), field.clone())
                };
                let sw = swap(f);
                if sw == *f && f.is_constant() {
                    return Ok(Vec::new());
                }
                let mut pts = singular_points_swapped(&sw)?;
                for p in &mut pts {
                    core::mem::swap(&mut p.x, &mut p.y);
                }
                pts.sort();
                return Ok(pts);
            }
            let mut pts = Vec::new();
            for (x0, _) in split_univariate(&r, &field)? {
                pts.extend(on_vertical(&x0)?);
            }
            pts
        }
    };
    pts.sort();
    pts.dedup();
    Ok(pts)
}

fn singular_points_swapped(f: &BivariatePolynomial) -> Result<Vec<Point>, ArithError> {
    let fd = &**f.field();
    let (fx, fy) = (f.partial_x(), f.partial_y());
    let mut r = UniPoly::zero();
    for (a, b) in [(f, &fx), (f, &fy), (&fx, &fy)] {
        let res = resultant_y(a, b);
        if !res.is_zero() {
            r = r.gcd(&res, fd);
        }
    }
    if r.is_zero() {
        return Err(ArithError::NotSquarefree);
    }
    let mut pts = Vec::new();
    for (x0, _) in split_univariate(&r, f.field())? {
        pts.extend(singular_points(f, &Window::VerticalLine(x0))?);
    }
    Ok(pts)
}

/// Integer value of a rational, when it is a small integer.
pub fn small_integer(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}
