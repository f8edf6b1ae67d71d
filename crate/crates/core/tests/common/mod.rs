//! Independent oracles and generators shared by the integration tests. The
//! oracles use their own small representations and none of the library's
//! algebra.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use nalink_core::arith::{parse_polynomial, BivariatePolynomial, CoefficientField, FieldElem, Point, UniPoly};
use nalink_core::blowup::{resolve, PairDescriptor, PointRef, ResolutionModel, ResolveOptions};
use nalink_core::graph::{DualGraph, Vertex, VertexId, VertexKind};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// Tjurina oracle: dim k[t,X,Y]_(t,X,Y) / I for an m-primary ideal I, read off
// as the stable value of dim k[t,X,Y] / (I + m^K).

type Mono3 = [u32; 3];
pub type Poly3 = BTreeMap<Mono3, Q>;

fn monos_below(k: u32) -> Vec<Mono3> {
    let mut out = Vec::new();
    for d in 0..k {
        for a in 0..=d {
            for b in 0..=d - a {
                out.push([a, b, d - a - b]);
            }
        }
    }
    out
}

fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, piv);
        let inv = Q::one() / rows[r][c].clone();
        let pivot_row: Vec<Q> = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..ncols {
                    let t = &f * &pivot_row[j];
                    rows[i][j] -= t;
                }
            }
        }
        rows[r] = pivot_row;
        r += 1;
    }
    r
}

fn truncated_quotient_dim(gens: &[Poly3], k: u32) -> usize {
    let basis = monos_below(k);
    let index: BTreeMap<Mono3, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        for m in &basis {
            let mut row = vec![Q::zero(); basis.len()];
            let mut any = false;
            for (e, c) in g {
                let prod = [e[0] + m[0], e[1] + m[1], e[2] + m[2]];
                if let Some(&i) = index.get(&prod) {
                    row[i] += c;
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    basis.len() - rank(rows)
}

/// Length of the local algebra at the origin of an m-primary ideal.
pub fn local_quotient_dim(gens: &[Poly3]) -> usize {
    let mut prev = truncated_quotient_dim(gens, 1);
    for k in 2..64 {
        let d = truncated_quotient_dim(gens, k);
        if d == prev {
            return d;
        }
        prev = d;
    }
    panic!("ideal is not primary to the maximal ideal");
}

/// Tjurina number of `XY - t^n` in variables `(t, X, Y)`.
pub fn tjurina_xy_minus_t_pow(n: u32) -> usize {
    let mono = |t, x, y, c: i64| -> Poly3 { [([t, x, y], q(c))].into_iter().collect() };
    let mut f = mono(0, 1, 1, 1);
    f.insert([n, 0, 0], q(-1));
    let ft = mono(n - 1, 0, 0, -(n as i64));
    let fx = mono(0, 0, 1, 1);
    let fy = mono(0, 1, 0, 1);
    local_quotient_dim(&[f, ft, fx, fy])
}

// ---------------------------------------------------------------------------
// Hand-chart oracle: integer polynomials pushed through explicit chart
// substitutions, exponents of the chart axes read off at the end.

pub type IntPoly = BTreeMap<(u32, u32), BigInt>;

pub fn int_poly(terms: &[((u32, u32), i64)]) -> IntPoly {
    let mut p = IntPoly::new();
    for &(e, c) in terms {
        *p.entry(e).or_insert_with(BigInt::zero) += c;
    }
    p.retain(|_, c| !c.is_zero());
    p
}

fn binom(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Copy, Debug)]
pub enum HandChart {
    /// `x = a + x'`, `y = b + x'y'`
    A(i64, i64),
    /// `x = a + x'y'`, `y = b + y'`
    B(i64, i64),
}

/// Substitutes one chart into `p`.
pub fn substitute(p: &IntPoly, chart: HandChart) -> IntPoly {
    let mut out = IntPoly::new();
    for (&(i, j), c) in p {
        // (a + X)^i (b + Y)^j with X, Y the chart monomials
        let (a, b, xm, ym) = match chart {
            HandChart::A(a, b) => (a, b, (1u32, 0u32), (1u32, 1u32)),
            HandChart::B(a, b) => (a, b, (1, 1), (0, 1)),
        };
        for s in 0..=i {
            let cs = binom(i, s) * BigInt::from(a).pow(i - s);
            if cs.is_zero() {
                continue;
            }
            for r in 0..=j {
                let cr = binom(j, r) * BigInt::from(b).pow(j - r);
                if cr.is_zero() {
                    continue;
                }
                let e = (xm.0 * s + ym.0 * r, xm.1 * s + ym.1 * r);
                *out.entry(e).or_insert_with(BigInt::zero) += c * &cs * &cr;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Largest powers of `x` and `y` dividing `p`.
pub fn axis_exponents(p: &IntPoly) -> (u32, u32) {
    (p.keys().map(|e| e.0).min().unwrap_or(0), p.keys().map(|e| e.1).min().unwrap_or(0))
}

/// Self-intersections from `(pi^* div f) . E_i = 0`:
/// `E_i^2 = -(sum_j N_j E_i.E_j + Z~.E_i) / N_i`.
pub fn projection_self_ints(n: &[i64], adjacency: &[(usize, usize)], boundary_meets: &[usize]) -> Vec<i64> {
    (0..n.len())
        .map(|i| {
            let mut s: i64 = adjacency
                .iter()
                .filter_map(|&(a, b)| if a == i { Some(n[b]) } else if b == i { Some(n[a]) } else { None })
                .sum();
            s += boundary_meets.iter().filter(|&&k| k == i).count() as i64;
            assert_eq!(s % n[i], 0, "projection formula is not integral");
            -s / n[i]
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Matrix oracle for a two-level tower with rational level polynomials.

pub type Mat = Vec<Vec<Q>>;

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

fn kron(a: &Mat, b: &Mat) -> Mat {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![Q::zero(); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

/// Multiplication-by-generator on the basis `{1, g}` of `g^2 + p g + q`.
fn companion(p: &Q, qq: &Q) -> Mat {
    vec![vec![Q::zero(), -qq.clone()], vec![Q::one(), -p.clone()]]
}

/// Matrix of multiplication by the element with coordinates `c` on the basis
/// `g1^i g2^j` (index `i + 2j`) of `Q(g1)(g2)`.
pub fn tower_matrix(levels: &[(Q, Q); 2], c: &[Q]) -> Mat {
    let i2 = identity(2);
    // index = i + 2j with i the g1 exponent: g2 is the slow coordinate
    let m1 = kron(&i2, &companion(&levels[0].0, &levels[0].1));
    let m2 = kron(&companion(&levels[1].0, &levels[1].1), &i2);
    let powers = [identity(4), m1.clone(), m2.clone(), mat_mul(&m1, &m2)];
    let mut out = vec![vec![Q::zero(); 4]; 4];
    for (idx, coef) in c.iter().enumerate() {
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] += coef * &powers[idx][i][j];
            }
        }
    }
    out
}

pub fn first_column(m: &Mat) -> Vec<Q> {
    m.iter().map(|r| r[0].clone()).collect()
}

pub fn rational_tower(levels: &[(i64, i64); 2]) -> CoefficientField {
    let mut f = CoefficientField::rationals();
    for (i, (p, qq)) in levels.iter().enumerate() {
        f = f.extend(&format!("g{}", i + 1), &UniPoly::from_ints(&[*qq, *p, 1])).unwrap();
    }
    f
}

// ---------------------------------------------------------------------------
// Continued-fraction determinant: D_k = -b_k D_{k-1} - D_{k-2}.

pub fn chain_det(b: &[i64]) -> i64 {
    let (mut d2, mut d1) = (0i64, 1i64);
    for &bk in b {
        let d = -bk * d1 - d2;
        d2 = d1;
        d1 = d;
    }
    d1
}

// ---------------------------------------------------------------------------
// Corpus and generators.

pub fn poly(s: &str) -> BivariatePolynomial {
    parse_polynomial(s).unwrap()
}

pub const CORPUS_CURVES: &[&str] = &[
    "y^2 - x^3",
    "y^2 - x^4",
    "x*y",
    "y^2 - x^5",
    "y^3 - x^4",
    "y^3 - x^5",
    "x*y*(x - y)",
    "y*(y - x^2)",
    "(y^2 - x^3)^2",
    "y^2 - x^2 - x^3",
];

pub fn corpus_pairs() -> Vec<PairDescriptor> {
    let mut out = vec![PairDescriptor::Point];
    out.extend(CORPUS_CURVES.iter().map(|s| PairDescriptor::Curve(poly(s))));
    out
}

pub fn corpus_models() -> Vec<(ResolutionModel, DualGraph)> {
    corpus_pairs().iter().map(|p| resolve(p, &ResolveOptions::default()).unwrap()).collect()
}

/// A point on the exceptional locus of `m` picked at random: a tracked
/// point, or a fresh point `(0, c)` of the first chart of some blowup.
pub fn random_exceptional_point<R: Rng>(m: &ResolutionModel, rng: &mut R) -> Option<PointRef> {
    if m.num_blowups() == 0 {
        return Some(PointRef::base_origin());
    }
    for _ in 0..32 {
        let cand = if rng.gen_bool(0.4) {
            m.special_points().choose(rng).cloned()?
        } else {
            let k = rng.gen_range(1..=m.num_blowups());
            let (ca, cb) = ResolutionModel::charts_of(k);
            if rng.gen_bool(0.2) {
                PointRef::new(cb, Point::origin())
            } else {
                PointRef::new(ca, Point::new(FieldElem::zero(), FieldElem::from_int(rng.gen_range(-3..=3))))
            }
        };
        if let Ok(c) = m.canonical_point(&cand) {
            if c.chart != 0 {
                return Some(c);
            }
        }
    }
    None
}

/// Random small polynomial with integer coefficients.
pub fn random_poly<R: Rng>(rng: &mut R, field: &Arc<CoefficientField>, max_deg: u32, terms: usize) -> BivariatePolynomial {
    loop {
        let mut t = Vec::new();
        for _ in 0..terms {
            let d = rng.gen_range(0..=max_deg);
            let a = rng.gen_range(0..=d);
            t.push(((a, d - a), FieldElem::from_int(rng.gen_range(-4..=4))));
        }
        let p = BivariatePolynomial::from_terms(t, field.clone());
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random graph with a negative definite exceptional part, built by random
/// blowups (leaves and subdivisions) on a pair of boundary vertices.
pub fn random_blowup_graph<R: Rng>(rng: &mut R, steps: usize) -> DualGraph {
    let mut g = DualGraph::new();
    let a = g.add_vertex(Vertex { label: "B1".into(), kind: VertexKind::Boundary, n: 1, self_int: 0, rational: false });
    let b = g.add_vertex(Vertex { label: "B2".into(), kind: VertexKind::Boundary, n: 1, self_int: 0, rational: false });
    g.add_edge(a, b).unwrap();
    random_blowups(rng, &mut g, steps);
    g
}

/// Applies random point blowups to `g`; returns the new vertices.
pub fn random_blowups<R: Rng>(rng: &mut R, g: &mut DualGraph, steps: usize) -> Vec<VertexId> {
    let mut fresh = Vec::new();
    for _ in 0..steps {
        let label = format!("F{}", g.num_vertices());
        let edges: Vec<_> = g.edges().iter().copied().filter(|(u, v)| u != v).collect();
        if !edges.is_empty() && rng.gen_bool(0.5) {
            let (u, v) = *edges.choose(rng).unwrap();
            fresh.push(g.subdivide_edge(u, v, label).unwrap());
        } else {
            let ids: Vec<_> = g.ids().collect();
            let u = *ids.choose(rng).unwrap();
            fresh.push(g.attach_leaf(u, label).unwrap());
        }
    }
    fresh
}

/// Random multigraph without loops and arbitrary weights.
pub fn random_graph<R: Rng>(rng: &mut R) -> DualGraph {
    let n = rng.gen_range(2..8);
    let mut g = DualGraph::new();
    for i in 0..n {
        let kind = if rng.gen_bool(0.3) { VertexKind::Boundary } else { VertexKind::Exceptional };
        g.add_vertex(Vertex {
            label: format!("V{}", i),
            kind,
            n: rng.gen_range(1..6),
            self_int: rng.gen_range(-6..3),
            rational: rng.gen_bool(0.8),
        });
    }
    for _ in 0..rng.gen_range(1..12) {
        let a = rng.gen_range(0..n) as u32;
        let b = rng.gen_range(0..n) as u32;
        if a != b {
            g.add_edge(VertexId(a), VertexId(b)).unwrap();
        }
    }
    g
}

pub fn rational_abs(x: &Q) -> Q {
    x.abs()
}
