//! Weighted dual graphs and the blow-down calculus.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

mod contract;
mod hj;
mod matrix;

pub use contract::{
    contract, contract_all, contract_all_ordered, ClusterOutcome, ClusterReport, ContractError,
    ContractionReport, FailReason,
};
pub use hj::{continued_fraction, hj_chain, HjError};
pub use matrix::{determinant, intersection_matrix, IntersectionMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexKind {
    Exceptional,
    Boundary,
}

impl VertexKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VertexKind::Exceptional => "Exceptional",
            VertexKind::Boundary => "Boundary",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub label: String,
    pub kind: VertexKind,
    pub n: u64,
    pub self_int: i64,
    pub rational: bool,
}

/// Local type of the image point of a contraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalType {
    /// Smooth point lying on the listed surviving components.
    SmoothPoint { branches: Vec<VertexId> },
    /// Cyclic quotient point of type `A_len`.
    SingularPoint { len: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionEvent {
    /// Vertices that landed on the image point.
    pub cluster: Vec<VertexId>,
    pub local_type: LocalType,
}

/// Vertices keyed by id, edges as a sorted multiset of unordered pairs.
#[derive(Clone, Debug, Default)]
pub struct DualGraph {
    vertices: BTreeMap<VertexId, Vertex>,
    edges: Vec<(VertexId, VertexId)>,
    point_log: Vec<ContractionEvent>,
}

/// Equality ignores the contraction log.
impl PartialEq for DualGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for DualGraph {}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexId),
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
}

fn ordered(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl DualGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a vertex under the next free id.
    pub fn add_vertex(&mut self, v: Vertex) -> VertexId {
        let id = VertexId(self.vertices.keys().next_back().map_or(0, |k| k.0 + 1));
        self.vertices.insert(id, v);
        id
    }

    pub fn insert_vertex(&mut self, id: VertexId, v: Vertex) -> Result<(), GraphError> {
        if v.n == 0 {
            return Err(GraphError::ZeroMultiplicity);
        }
        if self.vertices.contains_key(&id) {
            return Err(GraphError::DuplicateVertex(id));
        }
        self.vertices.insert(id, v);
        Ok(())
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<(), GraphError> {
        for v in [a, b] {
            if !self.vertices.contains_key(&v) {
                return Err(GraphError::UnknownVertex(v));
            }
        }
        let e = ordered(a, b);
        let pos = self.edges.partition_point(|x| *x <= e);
        self.edges.insert(pos, e);
        Ok(())
    }

    pub fn remove_vertex(&mut self, v: VertexId) -> Option<Vertex> {
        self.edges.retain(|&(a, b)| a != v && b != v);
        self.vertices.remove(&v)
    }

    /// Removes one copy of the edge; returns whether it existed.
    pub fn remove_edge(&mut self, a: VertexId, b: VertexId) -> bool {
        let e = ordered(a, b);
        match self.edges.iter().position(|x| *x == e) {
            Some(i) => {
                self.edges.remove(i);
                true
            }
            None => false,
        }
    }

    pub fn vertex(&self, v: VertexId) -> Option<&Vertex> {
        self.vertices.get(&v)
    }

    pub fn vertex_mut(&mut self, v: VertexId) -> Option<&mut Vertex> {
        self.vertices.get_mut(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, &Vertex)> {
        self.vertices.iter().map(|(k, v)| (*k, v))
    }

    pub fn ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.keys().copied()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn point_log(&self) -> &[ContractionEvent] {
        &self.point_log
    }

    pub(crate) fn log_event(&mut self, e: ContractionEvent) {
        self.point_log.push(e);
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains_key(&v)
    }

    pub fn find_label(&self, label: &str) -> Option<VertexId> {
        self.vertices.iter().find(|(_, v)| v.label == label).map(|(k, _)| *k)
    }

    pub fn label(&self, v: VertexId) -> &str {
        self.vertices.get(&v).map_or("?", |x| x.label.as_str())
    }

    /// Number of edges between `a` and `b` (loops when equal).
    pub fn edge_count(&self, a: VertexId, b: VertexId) -> usize {
        let e = ordered(a, b);
        self.edges.iter().filter(|x| **x == e).count()
    }

    /// Neighbours with edge counts, loops excluded.
    pub fn neighbours(&self, v: VertexId) -> BTreeMap<VertexId, usize> {
        let mut out = BTreeMap::new();
        for &(a, b) in &self.edges {
            if a == v && b != v {
                *out.entry(b).or_insert(0) += 1;
            } else if b == v && a != v {
                *out.entry(a).or_insert(0) += 1;
            }
        }
        out
    }

    /// Edge endpoints at `v`, a loop counting twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().map(|&(a, b)| usize::from(a == v) + usize::from(b == v)).sum()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|(a, b)| a == b)
    }

    pub fn has_parallel_edges(&self) -> bool {
        self.edges.windows(2).any(|w| w[0] == w[1])
    }

    /// Number of independent cycles: `E - V + components`.
    pub fn cycle_rank(&self) -> usize {
        let comps = self.components(|_| true).len();
        self.edges.len() + comps - self.vertices.len()
    }

    /// Connected components of the subgraph induced on vertices passing `keep`.
    pub fn components(&self, keep: impl Fn(VertexId) -> bool) -> Vec<Vec<VertexId>> {
        let ids: Vec<VertexId> = self.ids().filter(|v| keep(*v)).collect();
        let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for &(a, b) in &self.edges {
            if let (Some(&i), Some(&j)) = (index.get(&a), index.get(&b)) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for (i, v) in ids.iter().enumerate() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(*v);
        }
        groups.into_values().collect()
    }

    /// Blows up a point of the edge `a`-`b`: a new (-1) vertex replaces one
    /// copy of the edge and both ends lose one in self-intersection.
    pub fn subdivide_edge(&mut self, a: VertexId, b: VertexId, label: String) -> Result<VertexId, GraphError> {
        if !self.remove_edge(a, b) {
            return Err(GraphError::UnknownVertex(if self.contains(a) { b } else { a }));
        }
        let n = self.vertices[&a].n + self.vertices[&b].n;
        let e = self.add_vertex(Vertex { label, kind: VertexKind::Exceptional, n, self_int: -1, rational: true });
        for v in [a, b] {
            self.vertices.get_mut(&v).expect("checked").self_int -= 1;
            self.add_edge(v, e)?;
        }
        Ok(e)
    }

    /// Blows up a free point of `a`: a new (-1) leaf.
    pub fn attach_leaf(&mut self, a: VertexId, label: String) -> Result<VertexId, GraphError> {
        let n = self.vertices.get(&a).ok_or(GraphError::UnknownVertex(a))?.n;
        let e = self.add_vertex(Vertex { label, kind: VertexKind::Exceptional, n, self_int: -1, rational: true });
        self.vertices.get_mut(&a).expect("checked").self_int -= 1;
        self.add_edge(a, e)?;
        Ok(e)
    }

    pub fn exceptional_ids(&self) -> Vec<VertexId> {
        self.vertices().filter(|(_, v)| v.kind == VertexKind::Exceptional).map(|(k, _)| k).collect()
    }

    pub fn boundary_ids(&self) -> Vec<VertexId> {
        self.vertices().filter(|(_, v)| v.kind == VertexKind::Boundary).map(|(k, _)| k).collect()
    }
}
