//! Dense univariate polynomials over a [`CoefficientField`].

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_traits::Zero;

use super::field::{CoefficientField, FieldElem};
use super::Rational;

/// Coefficients are stored lowest degree first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<FieldElem>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(FieldElem::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_rationals(coeffs: Vec<Rational>) -> Self {
        UniPoly::new(coeffs.into_iter().map(FieldElem::from_rational).collect())
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| FieldElem::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElem) -> Self {
        UniPoly::new(vec![c])
    }

    /// `t - r`
    pub fn linear_root(r: &FieldElem, f: &CoefficientField) -> Self {
        UniPoly::new(vec![f.neg(r), FieldElem::one()])
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElem {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(FieldElem::is_rational)
    }

    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(FieldElem::as_rational).collect()
    }

    pub fn add(&self, o: &Self, f: &CoefficientField) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| f.add(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self, f: &CoefficientField) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| f.sub(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn neg(&self, f: &CoefficientField) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect() }
    }

    pub fn scale(&self, c: &FieldElem, f: &CoefficientField) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, o: &Self, f: &CoefficientField) -> Self {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![FieldElem::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, e: u32, f: &CoefficientField) -> Self {
        let mut acc = UniPoly::constant(FieldElem::one());
        for _ in 0..e {
            acc = acc.mul(self, f);
        }
        acc
    }

    /// Euclidean division; panics when `d` is zero.
    pub fn divrem(&self, d: &Self, f: &CoefficientField) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(&d.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![FieldElem::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dd], &lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, dj));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, d: &Self, f: &CoefficientField) -> Self {
        let (q, r) = self.divrem(d, f);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self, f: &CoefficientField) -> Self {
        match f.inv(&self.leading()) {
            Some(inv) => self.scale(&inv, f),
            None => UniPoly::zero(),
        }
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, o: &Self, f: &CoefficientField) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b, f).1;
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| {
                    let k = Rational::from_integer(BigInt::from(i));
                    FieldElem::from_coords(c.coords().iter().map(|x| x * &k).collect())
                })
                .collect(),
        )
    }

    pub fn eval(&self, x: &FieldElem, f: &CoefficientField) -> FieldElem {
        let mut acc = FieldElem::zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &FieldElem, f: &CoefficientField) -> u32 {
        let lin = UniPoly::linear_root(r, f);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            let (q, rem) = p.divrem(&lin, f);
            if !rem.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }

    /// Yun's squarefree decomposition: monic pairwise coprime squarefree
    /// factors `s_k` with `self = c * prod s_k^k`. Constant factors are dropped.
    pub fn squarefree_decomposition(&self, f: &CoefficientField) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let p = self.monic(f);
        let dp = p.derivative();
        let a0 = p.gcd(&dp, f);
        let mut b = p.exact_div(&a0, f);
        let mut c = dp.exact_div(&a0, f);
        let mut d = c.sub(&b.derivative(), f);
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d, f);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), k));
            }
            b = b.exact_div(&a, f);
            c = d.exact_div(&a, f);
            d = c.sub(&b.derivative(), f);
            k += 1;
        }
        out
    }

    /// Squarefree part, monic.
    pub fn squarefree_part(&self, f: &CoefficientField) -> Self {
        let mut acc = UniPoly::constant(FieldElem::one());
        for (s, _) in self.squarefree_decomposition(f) {
            acc = acc.mul(&s, f);
        }
        acc
    }

    /// Norm down to the rationals: the product of all conjugates of `self`
    /// under the automorphisms of the tower.
    pub fn norm_to_rationals(&self, f: &CoefficientField) -> UniPoly {
        let mut level = 0;
        while (1 << level) < self.coeffs.iter().map(FieldElem::span).max().unwrap_or(0) {
            level += 1;
        }
        let mut cur = self.clone();
        while level > 0 {
            let half = 1 << (level - 1);
            let split = |c: &FieldElem| {
                let coords = c.coords();
                let lo = FieldElem::from_coords(coords.iter().take(half).cloned().collect());
                let hi = FieldElem::from_coords(coords.iter().skip(half).cloned().collect());
                (lo, hi)
            };
            let (a, b): (Vec<_>, Vec<_>) = cur.coeffs.iter().map(split).unzip();
            let (a, b) = (UniPoly::new(a), UniPoly::new(b));
            let mp = f.minimal_polynomial(level - 1);
            let (p, q) = (mp.coeff(1), mp.coeff(0));
            // (A + B g)(A + B g') = A^2 - p A B + q B^2
            cur = a
                .mul(&a, f)
                .sub(&a.mul(&b, f).scale(&p, f), f)
                .add(&b.mul(&b, f).scale(&q, f), f);
            level -= 1;
        }
        cur
    }

    pub fn display(&self, f: &CoefficientField, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = signed_coeff(f, c);
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let unit = body == "1";
            match i {
                0 => s.push_str(&body),
                _ => {
                    if !unit {
                        let _ = write!(s, "{}*", body);
                    }
                    s.push_str(var);
                    if i > 1 {
                        let _ = write!(s, "^{}", i);
                    }
                }
            }
        }
        s
    }
}

/// Splits a coefficient into a sign and a printable magnitude.
pub(crate) fn signed_coeff(f: &CoefficientField, c: &FieldElem) -> (bool, String) {
    if let Some(r) = c.as_rational() {
        let neg = r < Rational::zero();
        let mag = if neg { -r } else { r };
        (neg, alloc::format!("{}", mag))
    } else {
        let mut nz = c.coords().iter().filter(|r| !r.is_zero());
        match (nz.next(), nz.next()) {
            (Some(r), None) if *r < Rational::zero() => (true, f.fmt_coeff(&f.neg(c))),
            _ => (false, f.fmt_coeff(c)),
        }
    }
}

/// Integer multiple of the one element; handy for building test polynomials.
#[cfg(test)]
pub(crate) fn int(n: i64) -> FieldElem {
    if n == 0 {
        FieldElem::zero()
    } else {
        FieldElem::from_rational(Rational::from_integer(BigInt::from(n)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn yun_decomposition() {
        let f = CoefficientField::rationals();
        // (t-1)^2 (t+2)^3 t
        let a = UniPoly::from_ints(&[-1, 1]);
        let b = UniPoly::from_ints(&[2, 1]);
        let t = UniPoly::from_ints(&[0, 1]);
        let p = a.pow(2, &f).mul(&b.pow(3, &f), &f).mul(&t, &f).scale(&int(5), &f);
        let d = p.squarefree_decomposition(&f);
        assert_eq!(d, vec![(t, 1), (a, 2), (b, 3)]);
    }

    #[test]
    fn gcd_and_division() {
        let f = CoefficientField::rationals();
        let a = UniPoly::from_ints(&[-1, 0, 1]);
        let b = UniPoly::from_ints(&[1, 2, 1]);
        assert_eq!(a.gcd(&b, &f), UniPoly::from_ints(&[1, 1]));
        let (q, r) = b.divrem(&UniPoly::from_ints(&[0, 1]), &f);
        assert_eq!(q, UniPoly::from_ints(&[2, 1]));
        assert_eq!(r, UniPoly::from_ints(&[1]));
    }

    #[test]
    fn norm_of_gaussian_linear() {
        let f = CoefficientField::rationals()
            .extend("i", &UniPoly::from_ints(&[1, 0, 1]))
            .unwrap();
        // t - i has norm t^2 + 1
        let p = UniPoly::linear_root(&f.generator(0), &f);
        assert_eq!(p.norm_to_rationals(&f), UniPoly::from_ints(&[1, 0, 1]));
        assert_eq!(p.display(&f, "t"), "t - i");
    }

    #[test]
    fn display_forms() {
        let f = CoefficientField::rationals();
        assert_eq!(UniPoly::from_ints(&[1, 0, 1]).display(&f, "z"), "z^2 + 1");
        assert_eq!(UniPoly::from_ints(&[0, -3, 0, 1]).display(&f, "z"), "z^3 - 3*z");
    }
}
