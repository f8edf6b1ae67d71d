use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{DualGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionMatrix {
    pub ids: Vec<VertexId>,
    pub entries: Vec<Vec<i64>>,
    pub negative_definite: bool,
}

impl IntersectionMatrix {
    pub fn determinant(&self) -> BigInt {
        determinant(&self.entries)
    }
}

/// `M_ii` is the self-intersection, `M_ij` the number of edges `i`-`j`.
/// Unknown ids are skipped. Definiteness is read off the leading principal
/// minors: `(-1)^k D_k > 0` for every `k`.
pub fn intersection_matrix(g: &DualGraph, subset: &[VertexId]) -> IntersectionMatrix {
    let mut ids: Vec<VertexId> = subset.iter().copied().filter(|v| g.contains(*v)).collect();
    ids.sort();
    ids.dedup();
    let n = ids.len();
    let mut m = vec![vec![0i64; n]; n];
    for (i, v) in ids.iter().enumerate() {
        m[i][i] = g.vertex(*v).expect("filtered").self_int;
    }
    for &(a, b) in g.edges() {
        if a == b {
            continue;
        }
        if let (Ok(i), Ok(j)) = (ids.binary_search(&a), ids.binary_search(&b)) {
            m[i][j] += 1;
            m[j][i] += 1;
        }
    }
    let negative_definite = n > 0
        && leading_minors(&m)
            .iter()
            .enumerate()
            .all(|(k, d)| if k % 2 == 0 { d.is_negative() } else { d.is_positive() });
    IntersectionMatrix { ids, entries: m, negative_definite }
}

/// Leading principal minors `D_1..D_n` by fraction-free elimination; the
/// tail is zero once a vanishing minor is met.
fn leading_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut out = Vec::with_capacity(n);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            out.resize(n, BigInt::zero());
            return out;
        }
        out.push(a[k][k].clone());
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    out
}

/// Exact determinant (Bareiss with row pivoting).
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut prev = BigInt::from(1);
    let mut sign = 1;
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].clone() * sign
}
