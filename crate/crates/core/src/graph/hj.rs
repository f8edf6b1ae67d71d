use alloc::format;
use alloc::vec::Vec;

use num_integer::Integer;

use super::{DualGraph, Vertex, VertexKind};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HjError {
    #[error("bad parameters: need n >= 2, 1 <= q < n, gcd(n, q) = 1")]
    BadParameters,
}

/// `n/q = b1 - 1/(b2 - 1/(...))` with every `b_i >= 2`.
pub fn continued_fraction(n: u64, q: u64) -> Result<Vec<u64>, HjError> {
    if n < 2 || q < 1 || q >= n || n.gcd(&q) != 1 {
        return Err(HjError::BadParameters);
    }
    let (mut n, mut q) = (n, q);
    let mut out = Vec::new();
    while q > 0 {
        let b = n.div_ceil(q);
        out.push(b);
        let r = b * q - n;
        n = q;
        q = r;
    }
    Ok(out)
}

/// Chain `A0 - C1 - ... - Cm - A1` with `C_i` of self-intersection `-b_i`
/// and two boundary anchors of self-intersection 0. `N = 1` throughout.
pub fn hj_chain(n: u64, q: u64) -> Result<DualGraph, HjError> {
    let bs = continued_fraction(n, q)?;
    let mut g = DualGraph::new();
    let anchor = |i| Vertex { label: format!("A{}", i), kind: VertexKind::Boundary, n: 1, self_int: 0, rational: false };
    let a0 = g.add_vertex(anchor(0));
    let mut prev = a0;
    for (i, b) in bs.iter().enumerate() {
        let v = g.add_vertex(Vertex {
            label: format!("C{}", i + 1),
            kind: VertexKind::Exceptional,
            n: 1,
            self_int: -(*b as i64),
            rational: true,
        });
        g.add_edge(prev, v).expect("fresh vertices");
        prev = v;
    }
    let a1 = g.add_vertex(anchor(1));
    g.add_edge(prev, a1).expect("fresh vertices");
    Ok(g)
}
