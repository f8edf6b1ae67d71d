//! Sparse bivariate polynomials in `x`, `y`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::field::{CoefficientField, FieldElem};
use super::unipoly::{signed_coeff, UniPoly};

/// Exponent pair `x^x * y^y`, ordered degree-lexicographically with `x > y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(self) -> u32 {
        self.x + self.y
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `x`, `y` over a coefficient field. Zero coefficients are
/// never stored, so equality is structural.
#[derive(Clone, Debug)]
pub struct BivariatePolynomial {
    field: Arc<CoefficientField>,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl PartialEq for BivariatePolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for BivariatePolynomial {}

fn merged(a: &Arc<CoefficientField>, b: &Arc<CoefficientField>) -> Arc<CoefficientField> {
    if Arc::ptr_eq(a, b) || a.is_prefix_of(b) {
        b.clone()
    } else if b.is_prefix_of(a) {
        a.clone()
    } else {
        panic!("polynomials over incompatible coefficient fields: {} and {}", a, b)
    }
}

impl BivariatePolynomial {
    pub fn zero(field: Arc<CoefficientField>) -> Self {
        BivariatePolynomial { field, terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElem, field: Arc<CoefficientField>) -> Self {
        Self::monomial(c, 0, 0, field)
    }

    pub fn one(field: Arc<CoefficientField>) -> Self {
        Self::constant(FieldElem::one(), field)
    }

    pub fn x(field: Arc<CoefficientField>) -> Self {
        Self::monomial(FieldElem::one(), 1, 0, field)
    }

    pub fn y(field: Arc<CoefficientField>) -> Self {
        Self::monomial(FieldElem::one(), 0, 1, field)
    }

    pub fn monomial(c: FieldElem, x: u32, y: u32, field: Arc<CoefficientField>) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(x, y), c);
        }
        BivariatePolynomial { field, terms }
    }

    pub fn from_terms<I>(terms: I, field: Arc<CoefficientField>) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), FieldElem)>,
    {
        let mut p = BivariatePolynomial::zero(field);
        for ((a, b), c) in terms {
            p.add_term(Monomial::new(a, b), &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &FieldElem) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(old) => self.field.add(old, c),
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn field(&self) -> &Arc<CoefficientField> {
        &self.field
    }

    /// Reinterprets the polynomial over an extension of its field.
    pub fn over(&self, field: &Arc<CoefficientField>) -> Self {
        assert!(self.field.is_prefix_of(field), "target field does not extend {}", self.field);
        BivariatePolynomial { field: field.clone(), terms: self.terms.clone() }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, &FieldElem)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, x: u32, y: u32) -> FieldElem {
        self.terms.get(&Monomial::new(x, y)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.y).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x).max()
    }

    /// Leading term in the degree-lexicographic order.
    pub fn leading_term(&self) -> Option<(Monomial, &FieldElem)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        let f = &self.field;
        let mut p = BivariatePolynomial::zero(f.clone());
        for (m, a) in &self.terms {
            p.add_term(*m, &f.mul(a, c));
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BivariatePolynomial::one(self.field.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Scales so the leading coefficient is one; zero stays zero.
    pub fn normalized(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("nonzero");
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn eval(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let f = &self.field;
        let mut acc = FieldElem::zero();
        for (m, c) in &self.terms {
            let t = f.mul(c, &f.mul(&f.pow(x, m.x), &f.pow(y, m.y)));
            acc = f.add(&acc, &t);
        }
        acc
    }

    pub fn partial_x(&self) -> Self {
        let mut p = BivariatePolynomial::zero(self.field.clone());
        for (m, c) in &self.terms {
            if m.x > 0 {
                p.add_term(Monomial::new(m.x - 1, m.y), &self.field.scale_int(c, m.x as i64));
            }
        }
        p
    }

    pub fn partial_y(&self) -> Self {
        let mut p = BivariatePolynomial::zero(self.field.clone());
        for (m, c) in &self.terms {
            if m.y > 0 {
                p.add_term(Monomial::new(m.x, m.y - 1), &self.field.scale_int(c, m.y as i64));
            }
        }
        p
    }

    /// `self(X, Y)`.
    pub fn compose(&self, xs: &Self, ys: &Self) -> Self {
        let field = merged(&merged(&self.field, &xs.field), &ys.field);
        let max_x = self.degree_x().unwrap_or(0) as usize;
        let max_y = self.degree_y().unwrap_or(0) as usize;
        let one = BivariatePolynomial::one(field.clone());
        let mut px = vec![one.clone()];
        for i in 0..max_x {
            let next = &px[i] * xs;
            px.push(next);
        }
        let mut py = vec![one];
        for i in 0..max_y {
            let next = &py[i] * ys;
            py.push(next);
        }
        let mut out = BivariatePolynomial::zero(field);
        for (m, c) in &self.terms {
            let t = (&px[m.x as usize] * &py[m.y as usize]).scale(c);
            out = &out + &t;
        }
        out
    }

    /// `self(x + a, y + b)`: moves the point `(a, b)` to the origin.
    pub fn shift(&self, a: &FieldElem, b: &FieldElem) -> Self {
        if a.is_zero() && b.is_zero() {
            return self.clone();
        }
        let f = self.field.clone();
        let xs = &BivariatePolynomial::x(f.clone()) + &BivariatePolynomial::constant(a.clone(), f.clone());
        let ys = &BivariatePolynomial::y(f.clone()) + &BivariatePolynomial::constant(b.clone(), f);
        self.compose(&xs, &ys)
    }

    /// Least total degree of a term (the multiplicity at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    /// Homogeneous part of least degree.
    pub fn lowest_form(&self) -> Self {
        let mut p = BivariatePolynomial::zero(self.field.clone());
        if let Some(d) = self.order() {
            for (m, c) in self.terms.iter().take_while(|(m, _)| m.degree() == d) {
                p.terms.insert(*m, c.clone());
            }
        }
        p
    }

    /// Largest `k` with `x^k` dividing `self`.
    pub fn x_order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x).min()
    }

    pub fn y_order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.y).min()
    }

    /// Divides by `x^kx y^ky`; panics when the division is not exact.
    pub fn div_monomial(&self, kx: u32, ky: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                assert!(m.x >= kx && m.y >= ky, "monomial division is not exact");
                (Monomial::new(m.x - kx, m.y - ky), c.clone())
            })
            .collect();
        BivariatePolynomial { field: self.field.clone(), terms }
    }

    /// Restriction to the line `x = 0`, as a polynomial in `y`.
    pub fn restrict_x0(&self) -> UniPoly {
        let mut c = Vec::new();
        for (m, a) in self.terms.iter().filter(|(m, _)| m.x == 0) {
            let i = m.y as usize;
            if c.len() <= i {
                c.resize(i + 1, FieldElem::zero());
            }
            c[i] = a.clone();
        }
        UniPoly::new(c)
    }

    /// Restriction to the line `y = 0`, as a polynomial in `x`.
    pub fn restrict_y0(&self) -> UniPoly {
        let mut c = Vec::new();
        for (m, a) in self.terms.iter().filter(|(m, _)| m.y == 0) {
            let i = m.x as usize;
            if c.len() <= i {
                c.resize(i + 1, FieldElem::zero());
            }
            c[i] = a.clone();
        }
        UniPoly::new(c)
    }

    /// Substitutes `x = a`, giving a polynomial in `y`.
    pub fn at_x(&self, a: &FieldElem) -> UniPoly {
        self.shift(a, &FieldElem::zero()).restrict_x0()
    }

    /// Substitutes `y = b`, giving a polynomial in `x`.
    pub fn at_y(&self, b: &FieldElem) -> UniPoly {
        self.shift(&FieldElem::zero(), b).restrict_y0()
    }

    /// Coefficients as a polynomial in `y` over `F[x]`, lowest power first.
    pub fn y_coeffs(&self) -> Vec<UniPoly> {
        let dy = match self.degree_y() {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut rows: Vec<Vec<FieldElem>> = vec![Vec::new(); dy + 1];
        for (m, c) in &self.terms {
            let row = &mut rows[m.y as usize];
            if row.len() <= m.x as usize {
                row.resize(m.x as usize + 1, FieldElem::zero());
            }
            row[m.x as usize] = c.clone();
        }
        rows.into_iter().map(UniPoly::new).collect()
    }

    pub fn from_y_coeffs(rows: &[UniPoly], field: Arc<CoefficientField>) -> Self {
        let mut p = BivariatePolynomial::zero(field);
        for (j, row) in rows.iter().enumerate() {
            for (i, c) in row.coeffs().iter().enumerate() {
                p.add_term(Monomial::new(i as u32, j as u32), c);
            }
        }
        p
    }

    /// Bivariate polynomial in `x` alone.
    pub fn from_x_poly(u: &UniPoly, field: Arc<CoefficientField>) -> Self {
        Self::from_y_coeffs(core::slice::from_ref(u), field)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let field = merged(&self.field, &d.field);
        let f = field.clone();
        let (lm, lc) = d.leading_term().expect("division by the zero polynomial");
        let lc_inv = f.inv(lc).expect("nonzero");
        let mut rem = self.over(&field);
        let mut quot = BivariatePolynomial::zero(field);
        while let Some((m, c)) = rem.leading_term() {
            if m.x < lm.x || m.y < lm.y {
                return None;
            }
            let qm = Monomial::new(m.x - lm.x, m.y - lm.y);
            let qc = f.mul(c, &lc_inv);
            let t = BivariatePolynomial::monomial(qc.clone(), qm.x, qm.y, f.clone());
            rem = &rem - &(&t * d);
            quot.add_term(qm, &qc);
        }
        Some(quot)
    }

    /// Greatest common divisor, normalized to leading coefficient one.
    pub fn gcd(&self, other: &Self) -> Self {
        let field = merged(&self.field, &other.field);
        if self.is_zero() {
            return other.over(&field).normalized();
        }
        if other.is_zero() {
            return self.over(&field).normalized();
        }
        let f = &*field;
        let (ca, pa) = content_primitive(&self.y_coeffs(), f);
        let (cb, pb) = content_primitive(&other.y_coeffs(), f);
        let c = ca.gcd(&cb, f);
        let (mut u, mut v) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
        while !v.is_empty() {
            let r = pseudo_rem(&u, &v, f);
            u = v;
            v = if r.is_empty() { r } else { content_primitive(&r, f).1 };
        }
        let g = if u.len() <= 1 {
            vec![UniPoly::constant(FieldElem::one())]
        } else {
            content_primitive(&u, f).1
        };
        let g: Vec<UniPoly> = g.iter().map(|row| row.mul(&c, f)).collect();
        BivariatePolynomial::from_y_coeffs(&g, field.clone()).normalized()
    }

    /// Squarefree decomposition `self = c * prod f_k^k` with the `f_k`
    /// squarefree and pairwise coprime; constant factors are dropped.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let rad = |p: &Self| -> (Self, Self) {
            let g = p.gcd(&p.partial_x()).gcd(&p.partial_y());
            let r = p.div_exact(&g).expect("gcd divides").normalized();
            (r, g)
        };
        let (mut r_prev, mut cur) = rad(self);
        let mut k = 1;
        loop {
            let (r_next, next) = if cur.is_constant() {
                (BivariatePolynomial::one(self.field.clone()), cur.clone())
            } else {
                rad(&cur)
            };
            let fk = r_prev.div_exact(&r_next).expect("radicals are nested").normalized();
            if !fk.is_constant() {
                out.push((fk, k));
            }
            if r_next.is_constant() {
                break;
            }
            r_prev = r_next;
            cur = next;
            k += 1;
        }
        out
    }

    /// Squarefree part, normalized.
    pub fn squarefree_part(&self) -> Self {
        let mut acc = BivariatePolynomial::one(self.field.clone());
        for (p, _) in self.squarefree_decomposition() {
            acc = &acc * &p;
        }
        acc
    }
}

fn content_primitive(rows: &[UniPoly], f: &CoefficientField) -> (UniPoly, Vec<UniPoly>) {
    let mut c = UniPoly::zero();
    for r in rows {
        c = c.gcd(r, f);
        if c.degree() == Some(0) {
            break;
        }
    }
    if c.is_zero() {
        return (c, Vec::new());
    }
    let prim = rows.iter().map(|r| r.exact_div(&c, f)).collect();
    (c, prim)
}

/// Pseudo-remainder in `F[x][y]`, up to a nonzero factor from `F[x]`.
fn pseudo_rem(u: &[UniPoly], v: &[UniPoly], f: &CoefficientField) -> Vec<UniPoly> {
    let dv = v.len() - 1;
    let lc = &v[dv];
    let mut r: Vec<UniPoly> = u.to_vec();
    while r.len() > dv {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dv;
        for row in r.iter_mut() {
            *row = row.mul(lc, f);
        }
        for (j, vj) in v.iter().enumerate() {
            r[j + shift] = r[j + shift].sub(&vj.mul(&lr, f), f);
        }
        while r.last().is_some_and(UniPoly::is_zero) {
            r.pop();
        }
    }
    r
}

impl<'a> Add<&'a BivariatePolynomial> for &'a BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let field = merged(&self.field, &rhs.field);
        let mut p = self.over(&field);
        for (m, c) in &rhs.terms {
            p.add_term(*m, c);
        }
        p
    }
}

impl<'a> Sub<&'a BivariatePolynomial> for &'a BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        self + &(-rhs)
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        let terms = self.terms.iter().map(|(m, c)| (*m, self.field.neg(c))).collect();
        BivariatePolynomial { field: self.field.clone(), terms }
    }
}

impl<'a> Mul<&'a BivariatePolynomial> for &'a BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let field = merged(&self.field, &rhs.field);
        let mut p = BivariatePolynomial::zero(field.clone());
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                p.add_term(Monomial::new(m.x + n.x, m.y + n.y), &field.mul(a, b));
            }
        }
        p
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<BivariatePolynomial> for BivariatePolynomial {
            type Output = BivariatePolynomial;
            fn $m(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        -&self
    }
}

impl fmt::Display for BivariatePolynomial {
    /// Canonical form: terms in decreasing degree-lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (neg, body) = signed_coeff(&self.field, c);
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut vars = String::new();
            for (name, e) in [("x", m.x), ("y", m.y)] {
                if e == 0 {
                    continue;
                }
                if !vars.is_empty() {
                    vars.push('*');
                }
                vars.push_str(name);
                if e > 1 {
                    vars.push_str(&alloc::format!("^{}", e));
                }
            }
            match (vars.is_empty(), body == "1") {
                (true, _) => f.write_str(&body)?,
                (false, true) => f.write_str(&vars)?,
                (false, false) => write!(f, "{}*{}", body, vars)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::arith::parse_polynomial;

    fn p(s: &str) -> BivariatePolynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn canonical_print() {
        assert_eq!(p("y^2 - x^3").to_string(), "-x^3 + y^2");
        assert_eq!(p("(x+y)^2").to_string(), "x^2 + 2*x*y + y^2");
        assert_eq!(p("1/2*x - 3").to_string(), "1/2*x - 3");
    }

    #[test]
    fn shift_and_order() {
        let f = p("y^2 - x^3");
        let one = FieldElem::one();
        assert_eq!(f.shift(&one, &one).order(), Some(1));
        assert_eq!(f.lowest_form(), p("y^2"));
    }

    #[test]
    fn gcd_bivariate() {
        let a = p("(y - x^2)*(x + y + 1)");
        let b = p("(y - x^2)*(x - 2*y)^2");
        assert_eq!(a.gcd(&b), p("y - x^2").normalized());
        assert_eq!(p("x*(y-x)").gcd(&p("x^2")), p("x"));
        assert!(p("x + 1").gcd(&p("y")).is_constant());
    }

    #[test]
    fn squarefree_bivariate() {
        let f = p("x^2 * (y - x)^3 * (y + x^2)");
        let d = f.squarefree_decomposition();
        assert_eq!(d.len(), 3);
        assert_eq!(d[0], (p("y + x^2").normalized(), 1));
        assert_eq!(d[1], (p("x"), 2));
        assert_eq!(d[2], (p("y - x").normalized(), 3));
    }

    #[test]
    fn exact_division() {
        let f = p("(y - x)*(x^2 + y)");
        assert_eq!(f.div_exact(&p("y - x")), Some(p("x^2 + y")));
        assert_eq!(p("x^2 + y").div_exact(&p("x")), None);
    }
}
