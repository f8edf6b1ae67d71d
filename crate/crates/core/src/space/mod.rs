//! Vertex sets of a reference graph and the fibers of their complements.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::blowup::ResolutionModel;
use crate::graph::{contract_all, ClusterOutcome, ContractionReport, DualGraph, FailReason, VertexId, VertexKind};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("no analytic boundary declared")]
    EmptyBoundary,
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("boundary vertex {0} is missing from the set")]
    BoundaryNotContained(VertexId),
    #[error("component {0} is not a disc or an annulus")]
    NonSimpleComponent(usize),
}

/// A subset `S` of the vertices of a reference graph containing the
/// analytic boundary and every boundary-kind vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    reference: Arc<DualGraph>,
    members: BTreeSet<VertexId>,
    boundary: BTreeSet<VertexId>,
}

impl VertexSet {
    pub fn new(
        reference: Arc<DualGraph>,
        members: BTreeSet<VertexId>,
        boundary: BTreeSet<VertexId>,
    ) -> Result<Self, SpaceError> {
        if boundary.is_empty() {
            return Err(SpaceError::EmptyBoundary);
        }
        for v in members.iter().chain(&boundary) {
            if !reference.contains(*v) {
                return Err(SpaceError::UnknownVertex(*v));
            }
        }
        for v in boundary.iter().copied().chain(reference.boundary_ids()) {
            if !members.contains(&v) {
                return Err(SpaceError::BoundaryNotContained(v));
            }
        }
        Ok(VertexSet { reference, members, boundary })
    }

    /// Every vertex of the reference graph.
    pub fn full(reference: Arc<DualGraph>, boundary: BTreeSet<VertexId>) -> Result<Self, SpaceError> {
        let all = reference.ids().collect();
        Self::new(reference, all, boundary)
    }

    pub fn reference(&self) -> &Arc<DualGraph> {
        &self.reference
    }

    pub fn members(&self) -> &BTreeSet<VertexId> {
        &self.members
    }

    pub fn boundary(&self) -> &BTreeSet<VertexId> {
        &self.boundary
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `S` minus one vertex; `None` when it is a boundary vertex.
    pub fn without(&self, v: VertexId) -> Option<Self> {
        if self.boundary.contains(&v) || self.reference.vertex(v).is_none_or(|x| x.kind == VertexKind::Boundary) {
            return None;
        }
        let mut out = self.clone();
        out.members.remove(&v);
        Some(out)
    }

    pub fn complement(&self) -> BTreeSet<VertexId> {
        self.reference.ids().filter(|v| !self.members.contains(v)).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.members.iter().map(|v| String::from(self.reference.label(*v))).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiberClass {
    Disc,
    StandardAnnulus,
    /// Modulus at least two.
    Annulus(u32),
    NonSimple(FailReason),
}

impl FiberClass {
    pub fn annulus(modulus: u32) -> Self {
        if modulus == 1 {
            FiberClass::StandardAnnulus
        } else {
            FiberClass::Annulus(modulus)
        }
    }

    pub fn modulus(self) -> Option<u32> {
        match self {
            FiberClass::StandardAnnulus => Some(1),
            FiberClass::Annulus(n) => Some(n),
            _ => None,
        }
    }
}

impl fmt::Display for FiberClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberClass::Disc => f.write_str("Disc"),
            FiberClass::StandardAnnulus => f.write_str("StandardAnnulus"),
            FiberClass::Annulus(n) => write!(f, "Annulus({})", n),
            FiberClass::NonSimple(r) => write!(f, "NonSimple({})", r),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplementComponent {
    PureEdge { a: VertexId, b: VertexId },
    Cluster { vertices: Vec<VertexId>, attaching: Vec<(VertexId, VertexId)> },
}

impl ComplementComponent {
    pub fn vertices(&self) -> &[VertexId] {
        match self {
            ComplementComponent::PureEdge { .. } => &[],
            ComplementComponent::Cluster { vertices, .. } => vertices,
        }
    }
}

/// The boundary of a resolved pair: its boundary-kind components.
pub fn analytic_boundary_of_model(model: &ResolutionModel) -> BTreeSet<VertexId> {
    model
        .components()
        .map(|cs| cs.into_iter().filter(|c| c.kind == VertexKind::Boundary).map(|c| c.id).collect())
        .unwrap_or_default()
}

/// A declared boundary, else the boundary-kind vertices of the graph.
pub fn analytic_boundary(g: &DualGraph, declared: Option<&[VertexId]>) -> Result<BTreeSet<VertexId>, SpaceError> {
    let out: BTreeSet<VertexId> = match declared {
        Some(d) => d.iter().copied().collect(),
        None => g.boundary_ids().into_iter().collect(),
    };
    if out.is_empty() {
        return Err(SpaceError::EmptyBoundary);
    }
    if let Some(v) = out.iter().find(|v| !g.contains(**v)) {
        return Err(SpaceError::UnknownVertex(*v));
    }
    Ok(out)
}

/// Clusters (ordered by least vertex) followed by the edges inside `S`.
pub fn complement_components(s: &VertexSet) -> Vec<ComplementComponent> {
    let g = &s.reference;
    let mut out = Vec::new();
    for vertices in g.components(|v| !s.contains(v)) {
        let set: BTreeSet<VertexId> = vertices.iter().copied().collect();
        let attaching = g
            .edges()
            .iter()
            .filter_map(|&(a, b)| match (set.contains(&a), set.contains(&b)) {
                (true, false) => Some((a, b)),
                (false, true) => Some((b, a)),
                _ => None,
            })
            .collect();
        out.push(ComplementComponent::Cluster { vertices, attaching });
    }
    for &(a, b) in g.edges() {
        if s.contains(a) && s.contains(b) {
            out.push(ComplementComponent::PureEdge { a, b });
        }
    }
    out
}

fn cluster_report(s: &VertexSet, vertices: &[VertexId]) -> ContractionReport {
    contract_all(&s.reference, &vertices.iter().copied().collect())
}

pub fn classify_component(s: &VertexSet, c: &ComplementComponent) -> FiberClass {
    match c {
        ComplementComponent::PureEdge { .. } => FiberClass::StandardAnnulus,
        ComplementComponent::Cluster { vertices, .. } => {
            let report = cluster_report(s, vertices);
            match &report.clusters[0].outcome {
                ClusterOutcome::SmoothPoint { branches } => match branches.len() {
                    1 => FiberClass::Disc,
                    2 => FiberClass::StandardAnnulus,
                    _ => FiberClass::NonSimple(FailReason::NoBranch),
                },
                ClusterOutcome::SingularPoint { len } => FiberClass::annulus(*len as u32 + 1),
                ClusterOutcome::Failed { reason } => FiberClass::NonSimple(*reason),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub regular: bool,
    pub components: Vec<(ComplementComponent, FiberClass)>,
}

/// Regular when every complement component is a disc or a standard annulus.
pub fn is_regular(s: &VertexSet) -> RegularityReport {
    let components: Vec<_> = complement_components(s)
        .into_iter()
        .map(|c| {
            let k = classify_component(s, &c);
            (c, k)
        })
        .collect();
    let regular = components.iter().all(|(_, k)| matches!(k, FiberClass::Disc | FiberClass::StandardAnnulus));
    RegularityReport { regular, components }
}

fn regular(s: &VertexSet) -> bool {
    is_regular(s).regular
}

/// Greedy removal, least id first, of vertices whose removal keeps the set
/// regular.
pub fn log_essential(reference: Arc<DualGraph>, boundary: BTreeSet<VertexId>) -> Result<VertexSet, SpaceError> {
    let order: Vec<VertexId> = reference.ids().collect();
    log_essential_ordered(reference, boundary, &order)
}

/// As [`log_essential`] with candidates tried in `order`.
pub fn log_essential_ordered(
    reference: Arc<DualGraph>,
    boundary: BTreeSet<VertexId>,
    order: &[VertexId],
) -> Result<VertexSet, SpaceError> {
    let mut s = VertexSet::full(reference, boundary)?;
    'outer: loop {
        for &v in order {
            if !s.contains(v) {
                continue;
            }
            if let Some(t) = s.without(v) {
                if regular(&t) {
                    s = t;
                    continue 'outer;
                }
            }
        }
        return Ok(s);
    }
}

/// Graph of the model of `S`: the reference with the complement contracted
/// as far as it goes.
pub fn model_of(s: &VertexSet) -> ContractionReport {
    contract_all(&s.reference, &s.complement())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetCheck {
    pub holds: bool,
    pub diagnostics: Vec<String>,
}

/// `S1 <= S2`, confirmed by contracting `S2 \ S1` on the model of `S2` and
/// comparing with the model of `S1`.
pub fn model_poset_check(s1: &VertexSet, s2: &VertexSet) -> PosetCheck {
    let mut diagnostics = Vec::new();
    if s1.reference != s2.reference {
        diagnostics.push(String::from("different reference graphs"));
        return PosetCheck { holds: false, diagnostics };
    }
    if let Some(v) = s1.members.iter().find(|v| !s2.contains(**v)) {
        diagnostics.push(format!("{} is in the first set only", s1.reference.label(*v)));
        return PosetCheck { holds: false, diagnostics };
    }
    let m1 = model_of(s1);
    let m2 = model_of(s2);
    let diff: BTreeSet<VertexId> = s2.members.difference(&s1.members).copied().collect();
    let step = contract_all(&m2.graph, &diff);
    if step.graph != m1.graph {
        diagnostics.push(String::from("contracting the difference does not reach the smaller model"));
    }
    match step.replay(&m2.graph) {
        Ok(g) if g == step.graph => {}
        _ => diagnostics.push(String::from("contraction trace does not replay")),
    }
    match m1.replay(&s1.reference) {
        Ok(g) if g == m1.graph => {}
        _ => diagnostics.push(String::from("model trace does not replay")),
    }
    PosetCheck { holds: diagnostics.is_empty(), diagnostics }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    pub vertices: Vec<VertexId>,
    /// `(a, b, length)`
    pub edges: Vec<(VertexId, VertexId, u32)>,
}

impl Skeleton {
    pub fn cycle_rank(&self) -> usize {
        let mut g = DualGraph::new();
        for v in &self.vertices {
            g.insert_vertex(
                *v,
                crate::graph::Vertex {
                    label: String::new(),
                    kind: VertexKind::Boundary,
                    n: 1,
                    self_int: 0,
                    rational: false,
                },
            )
            .expect("distinct");
        }
        for (a, b, _) in &self.edges {
            g.add_edge(*a, *b).expect("known");
        }
        g.cycle_rank()
    }

    pub fn total_length(&self) -> u64 {
        self.edges.iter().map(|e| u64::from(e.2)).sum()
    }
}

/// Vertices `S`, one edge per annulus of the complement weighted by its modulus.
pub fn skeleton(s: &VertexSet) -> Result<Skeleton, SpaceError> {
    let mut edges = Vec::new();
    for (i, c) in complement_components(s).iter().enumerate() {
        let class = classify_component(s, c);
        let ends = match (c, class) {
            (_, FiberClass::Disc) => continue,
            (_, FiberClass::NonSimple(_)) => return Err(SpaceError::NonSimpleComponent(i)),
            (ComplementComponent::PureEdge { a, b }, _) => (*a, *b),
            (ComplementComponent::Cluster { vertices, attaching }, FiberClass::StandardAnnulus) => {
                let report = cluster_report(s, vertices);
                match &report.clusters[0].outcome {
                    ClusterOutcome::SmoothPoint { branches } if branches.len() == 2 => (branches[0], branches[1]),
                    _ => match attaching[..] {
                        [(_, a), (_, b)] => (a, b),
                        _ => return Err(SpaceError::NonSimpleComponent(i)),
                    },
                }
            }
            (ComplementComponent::Cluster { attaching, .. }, FiberClass::Annulus(_)) => match attaching[..] {
                [(_, a), (_, b)] => (a, b),
                _ => return Err(SpaceError::NonSimpleComponent(i)),
            },
        };
        let (a, b) = if ends.0 <= ends.1 { ends } else { (ends.1, ends.0) };
        edges.push((a, b, class.modulus().expect("annulus")));
    }
    edges.sort();
    Ok(Skeleton { vertices: s.members.iter().copied().collect(), edges })
}
