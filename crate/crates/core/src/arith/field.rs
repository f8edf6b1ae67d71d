//! Coefficient fields: the rationals and towers of quadratic extensions.
//!
//! An element of a tower of depth `d` is stored as its coordinate vector in
//! the power basis `g_1^{e_1} ... g_d^{e_d}` (each `e_i` is 0 or 1), where bit
//! `i` of the index is the exponent of the `i`-th generator. Trailing zero
//! coordinates are trimmed, so an element of a subfield has the same
//! representation in every larger field of the tower.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::{self, Write};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::unipoly::UniPoly;
use super::Rational;

/// An element of a [`CoefficientField`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FieldElem(Vec<Rational>);

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem(Vec::new())
    }

    pub fn one() -> Self {
        FieldElem(vec![Rational::one()])
    }

    pub fn from_rational(r: Rational) -> Self {
        FieldElem::from_coords(vec![r])
    }

    pub fn from_int(n: i64) -> Self {
        FieldElem::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_coords(mut coords: Vec<Rational>) -> Self {
        while coords.last().is_some_and(Zero::is_zero) {
            coords.pop();
        }
        FieldElem(coords)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// `Some` when the element lies in the prime field.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.0.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.0.len() <= 1
    }

    /// Number of coordinates actually used; an element of the `k`-th level
    /// of a tower needs at most `2^k`.
    pub fn span(&self) -> usize {
        self.0.len()
    }

    fn padded(&self, len: usize) -> Vec<Rational> {
        let mut v = self.0.clone();
        v.resize(len, Rational::zero());
        v
    }
}

impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        let zero = Rational::zero();
        for i in 0..n {
            let a = self.0.get(i).unwrap_or(&zero);
            let b = other.0.get(i).unwrap_or(&zero);
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Bounds on how far the tower may grow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldLimits {
    pub max_depth: usize,
    /// Bound on the total degree over the rationals.
    pub max_degree: usize,
}

impl Default for FieldLimits {
    fn default() -> Self {
        FieldLimits { max_depth: 2, max_degree: 8 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("minimal polynomial is not monic")]
    NotMonic,
    #[error("only quadratic extensions are supported, got degree {0}")]
    UnsupportedDegree(usize),
    #[error("minimal polynomial is reducible over the base field")]
    Reducible,
    #[error("minimal polynomial has coefficients outside the base field")]
    CoefficientsOutsideField,
    #[error("extension would exceed the tower bounds (depth {depth}, degree {degree})")]
    TowerBoundExceeded { depth: usize, degree: usize },
}

/// One quadratic level `g^2 + p*g + q = 0` over the previous level.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Level {
    name: String,
    p: FieldElem,
    q: FieldElem,
}

/// The rationals together with an ordered tower of quadratic extensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientField {
    levels: Vec<Level>,
    limits: FieldLimits,
}

impl Default for CoefficientField {
    fn default() -> Self {
        CoefficientField::rationals()
    }
}

impl CoefficientField {
    pub fn rationals() -> Self {
        CoefficientField { levels: Vec::new(), limits: FieldLimits::default() }
    }

    pub fn with_limits(limits: FieldLimits) -> Self {
        CoefficientField { levels: Vec::new(), limits }
    }

    pub fn limits(&self) -> FieldLimits {
        self.limits
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Degree over the rationals.
    pub fn degree(&self) -> usize {
        1 << self.levels.len()
    }

    pub fn generator_name(&self, level: usize) -> &str {
        &self.levels[level].name
    }

    /// The generator adjoined at `level` (0-based).
    pub fn generator(&self, level: usize) -> FieldElem {
        let mut coords = vec![Rational::zero(); 1 << level];
        coords.push(Rational::one());
        FieldElem::from_coords(coords)
    }

    /// Monic minimal polynomial of the generator at `level`, over the field
    /// below it.
    pub fn minimal_polynomial(&self, level: usize) -> UniPoly {
        let l = &self.levels[level];
        UniPoly::new(vec![l.q.clone(), l.p.clone(), FieldElem::one()])
    }

    /// `true` when `self` is `other` or a subfield at the bottom of `other`'s tower.
    pub fn is_prefix_of(&self, other: &CoefficientField) -> bool {
        self.levels.len() <= other.levels.len()
            && self.levels.iter().zip(&other.levels).all(|(a, b)| a == b)
    }

    pub fn contains(&self, e: &FieldElem) -> bool {
        e.span() <= self.degree()
    }

    /// Whether a further extension of degree `deg` fits in the limits.
    pub fn can_extend(&self, deg: usize) -> bool {
        self.depth() < self.limits.max_depth && self.degree() * deg <= self.limits.max_degree
    }

    /// Adjoins a root of the monic irreducible quadratic `minpoly`.
    pub fn extend(&self, name: &str, minpoly: &UniPoly) -> Result<CoefficientField, FieldError> {
        let deg = minpoly.degree().unwrap_or(0);
        if deg != 2 {
            return Err(FieldError::UnsupportedDegree(deg));
        }
        if !minpoly.leading().is_one() {
            return Err(FieldError::NotMonic);
        }
        if minpoly.coeffs().iter().any(|c| !self.contains(c)) {
            return Err(FieldError::CoefficientsOutsideField);
        }
        if !self.can_extend(deg) {
            return Err(FieldError::TowerBoundExceeded {
                depth: self.depth() + 1,
                degree: self.degree() * deg,
            });
        }
        let p = minpoly.coeff(1);
        let q = minpoly.coeff(0);
        let disc = self.sub(&self.mul(&p, &p), &self.scale_int(&q, 4));
        if self.sqrt(&disc).is_some() {
            return Err(FieldError::Reducible);
        }
        let mut levels = self.levels.clone();
        levels.push(Level { name: name.to_string(), p, q });
        Ok(CoefficientField { levels, limits: self.limits })
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let n = a.span().max(b.span());
        let (x, y) = (a.padded(n), b.padded(n));
        FieldElem::from_coords(x.into_iter().zip(y).map(|(s, t)| s + t).collect())
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, a: &FieldElem, r: &Rational) -> FieldElem {
        FieldElem::from_coords(a.0.iter().map(|c| c * r).collect())
    }

    pub fn scale_int(&self, a: &FieldElem, n: i64) -> FieldElem {
        self.scale(a, &Rational::from_integer(BigInt::from(n)))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        if a.is_zero() || b.is_zero() {
            return FieldElem::zero();
        }
        let level = self.level_of(a.span().max(b.span()));
        let n = 1 << level;
        FieldElem::from_coords(self.mul_level(level, &a.padded(n), &b.padded(n)))
    }

    pub fn square(&self, a: &FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &FieldElem, mut e: u32) -> FieldElem {
        let mut base = a.clone();
        let mut acc = FieldElem::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return None;
        }
        let level = self.level_of(a.span());
        Some(FieldElem::from_coords(self.inv_level(level, &a.padded(1 << level))))
    }

    /// `a / b`; panics on division by zero.
    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let inv = self.inv(b).expect("division by zero in coefficient field");
        self.mul(a, &inv)
    }

    /// A square root inside the field, if one exists.
    pub fn sqrt(&self, a: &FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return Some(FieldElem::zero());
        }
        let level = self.level_of(a.span());
        // A square root of an element of a lower level may only exist higher up.
        for lv in level..=self.depth() {
            if let Some(r) = self.sqrt_level(lv, &a.padded(1 << lv)) {
                let r = FieldElem::from_coords(r);
                debug_assert_eq!(self.mul(&r, &r), *a);
                return Some(r);
            }
        }
        None
    }

    fn level_of(&self, span: usize) -> usize {
        let mut level = 0;
        while (1 << level) < span {
            level += 1;
        }
        assert!(level <= self.depth(), "element lies outside the coefficient field");
        level
    }

    fn level_pq(&self, level: usize) -> (Vec<Rational>, Vec<Rational>) {
        let l = &self.levels[level - 1];
        let half = 1 << (level - 1);
        (l.p.padded(half), l.q.padded(half))
    }

    fn mul_level(&self, level: usize, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if level == 0 {
            return vec![&a[0] * &b[0]];
        }
        let half = 1 << (level - 1);
        let (a0, a1) = a.split_at(half);
        let (b0, b1) = b.split_at(half);
        let (p, q) = self.level_pq(level);
        let lo = level - 1;
        let a0b0 = self.mul_level(lo, a0, b0);
        let a1b1 = self.mul_level(lo, a1, b1);
        let cross = add_vec(&self.mul_level(lo, a0, b1), &self.mul_level(lo, a1, b0));
        let c0 = sub_vec(&a0b0, &self.mul_level(lo, &q, &a1b1));
        let c1 = sub_vec(&cross, &self.mul_level(lo, &p, &a1b1));
        let mut out = c0;
        out.extend(c1);
        out
    }

    fn inv_level(&self, level: usize, a: &[Rational]) -> Vec<Rational> {
        if level == 0 {
            return vec![a[0].recip()];
        }
        let half = 1 << (level - 1);
        let lo = level - 1;
        let (a0, a1) = a.split_at(half);
        let (p, q) = self.level_pq(level);
        // norm = a0^2 - p a0 a1 + q a1^2, conjugate = (a0 - p a1) - a1 g
        let a0a0 = self.mul_level(lo, a0, a0);
        let a0a1 = self.mul_level(lo, a0, a1);
        let a1a1 = self.mul_level(lo, a1, a1);
        let norm = add_vec(
            &sub_vec(&a0a0, &self.mul_level(lo, &p, &a0a1)),
            &self.mul_level(lo, &q, &a1a1),
        );
        let ninv = self.inv_level(lo, &norm);
        let conj0 = sub_vec(a0, &self.mul_level(lo, &p, a1));
        let conj1: Vec<Rational> = a1.iter().map(|c| -c).collect();
        let mut out = self.mul_level(lo, &conj0, &ninv);
        out.extend(self.mul_level(lo, &conj1, &ninv));
        out
    }

    fn sqrt_level(&self, level: usize, a: &[Rational]) -> Option<Vec<Rational>> {
        if level == 0 {
            return rational_sqrt(&a[0]).map(|r| vec![r]);
        }
        let half = 1 << (level - 1);
        let lo = level - 1;
        let (a0, a1) = a.split_at(half);
        let (p, q) = self.level_pq(level);
        // Rewrite in the basis 1, s with s = g + p/2 and s^2 = delta.
        let two = Rational::from_integer(BigInt::from(2));
        let p_half: Vec<Rational> = p.iter().map(|c| c / &two).collect();
        let delta = sub_vec(&self.mul_level(lo, &p_half, &p_half), &q);
        let big_a = sub_vec(a0, &self.mul_level(lo, a1, &p_half));
        let big_b = a1.to_vec();
        let (u, w) = if is_zero_vec(&big_b) {
            if let Some(u) = self.sqrt_level(lo, &big_a) {
                (u, vec![Rational::zero(); half])
            } else {
                let q = self.mul_level(lo, &big_a, &self.inv_level(lo, &delta));
                (vec![Rational::zero(); half], self.sqrt_level(lo, &q)?)
            }
        } else {
            let norm = sub_vec(
                &self.mul_level(lo, &big_a, &big_a),
                &self.mul_level(lo, &delta, &self.mul_level(lo, &big_b, &big_b)),
            );
            let n = self.sqrt_level(lo, &norm)?;
            let mut found = None;
            for cand in [add_vec(&big_a, &n), sub_vec(&big_a, &n)] {
                let half_cand: Vec<Rational> = cand.iter().map(|c| c / &two).collect();
                if is_zero_vec(&half_cand) {
                    continue;
                }
                if let Some(u) = self.sqrt_level(lo, &half_cand) {
                    let two_u: Vec<Rational> = u.iter().map(|c| c * &two).collect();
                    let w = self.mul_level(lo, &big_b, &self.inv_level(lo, &two_u));
                    found = Some((u, w));
                    break;
                }
            }
            found?
        };
        // back to the basis 1, g: u + w s = (u + w p/2) + w g
        let mut out = add_vec(&u, &self.mul_level(lo, &w, &p_half));
        out.extend(w);
        Some(out)
    }

    /// Renders an element using the generator names, e.g. `1/2 - 3*a1`.
    pub fn fmt_elem(&self, e: &FieldElem) -> String {
        let mut s = String::new();
        if e.is_zero() {
            return "0".into();
        }
        for (idx, c) in e.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut names = Vec::new();
            for bit in 0..self.depth().max(1) {
                if idx & (1 << bit) != 0 {
                    names.push(self.levels.get(bit).map_or("?", |l| l.name.as_str()));
                }
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if names.is_empty() {
                let _ = write!(s, "{}", mag);
            } else {
                if !mag.is_one() {
                    let _ = write!(s, "{}*", mag);
                }
                s.push_str(&names.join("*"));
            }
        }
        s
    }

    /// Like [`fmt_elem`](Self::fmt_elem) but parenthesised when it has several terms.
    pub fn fmt_coeff(&self, e: &FieldElem) -> String {
        if e.0.iter().filter(|c| !c.is_zero()).count() > 1 {
            alloc::format!("({})", self.fmt_elem(e))
        } else {
            self.fmt_elem(e)
        }
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Q")?;
        for (i, l) in self.levels.iter().enumerate() {
            let below = CoefficientField { levels: self.levels[..i].to_vec(), limits: self.limits };
            write!(f, "({}: {})", l.name, self.minimal_polynomial(i).display(&below, &l.name))?;
        }
        Ok(())
    }
}

fn add_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Square root of a rational number, when it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn gaussian() -> CoefficientField {
        let f = CoefficientField::rationals();
        let mp = UniPoly::new(vec![FieldElem::one(), FieldElem::zero(), FieldElem::one()]);
        f.extend("i", &mp).unwrap()
    }

    #[test]
    fn gaussian_units() {
        let f = gaussian();
        let i = f.generator(0);
        assert_eq!(f.mul(&i, &i), FieldElem::from_int(-1));
        let z = FieldElem::from_coords(vec![q(3, 1), q(-2, 1)]);
        let zi = f.inv(&z).unwrap();
        assert!(f.mul(&z, &zi).is_one());
        assert_eq!(f.fmt_elem(&z), "3 - 2*i");
    }

    #[test]
    fn reducible_minpoly_rejected() {
        let f = CoefficientField::rationals();
        let mp = UniPoly::new(vec![FieldElem::from_int(-4), FieldElem::zero(), FieldElem::one()]);
        assert_eq!(f.extend("a", &mp), Err(FieldError::Reducible));
        let cubic = UniPoly::new(vec![
            FieldElem::from_int(-2),
            FieldElem::zero(),
            FieldElem::zero(),
            FieldElem::one(),
        ]);
        assert_eq!(f.extend("a", &cubic), Err(FieldError::UnsupportedDegree(3)));
    }

    #[test]
    fn depth_bound() {
        let f = CoefficientField::with_limits(FieldLimits { max_depth: 1, max_degree: 8 });
        let i = f
            .extend("i", &UniPoly::new(vec![FieldElem::one(), FieldElem::zero(), FieldElem::one()]))
            .unwrap();
        let r2 = UniPoly::new(vec![FieldElem::from_int(-2), FieldElem::zero(), FieldElem::one()]);
        assert!(matches!(i.extend("s", &r2), Err(FieldError::TowerBoundExceeded { .. })));
    }

    #[test]
    fn sqrt_in_towers() {
        let f = gaussian();
        // 2i = (1 + i)^2
        let two_i = FieldElem::from_coords(vec![q(0, 1), q(2, 1)]);
        let r = f.sqrt(&two_i).unwrap();
        assert_eq!(f.square(&r), two_i);
        // -1 has a root only above Q
        assert_eq!(f.sqrt(&FieldElem::from_int(-1)).map(|r| f.square(&r)), Some(FieldElem::from_int(-1)));
        assert!(f.sqrt(&FieldElem::from_int(2)).is_none());
        let mp = UniPoly::new(vec![FieldElem::from_int(-2), FieldElem::zero(), FieldElem::one()]);
        let g = f.extend("s", &mp).unwrap();
        // i * 2 = (1+i)^2 and 2 = s^2, so 4i has root s(1+i)... check i*s^2
        let target = g.mul(&g.generator(0), &FieldElem::from_int(2));
        let r = g.sqrt(&target).unwrap();
        assert_eq!(g.square(&r), target);
        assert!(g.sqrt(&g.generator(1)).is_none());
    }

    #[test]
    fn rational_roots() {
        assert_eq!(rational_sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(rational_sqrt(&q(2, 1)), None);
        assert_eq!(rational_sqrt(&q(-1, 1)), None);
    }
}
