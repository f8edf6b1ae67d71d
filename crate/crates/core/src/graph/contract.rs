use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{ContractionEvent, DualGraph, LocalType, VertexId, VertexKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ContractError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("boundary vertices are never contracted")]
    BoundaryVertex,
    #[error("vertex is not rational")]
    NotRational,
    #[error("self-intersection is not -1")]
    NotMinusOne,
    #[error("image would be a triple point")]
    TriplePoint,
    #[error("image would be a node of a single branch")]
    NodeOnImage,
}

/// Why a cluster did not contract to a disc or annulus point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FailReason {
    TriplePoint,
    NodeOnImage,
    NotRational,
    BoundaryVertex,
    NotContractible,
    /// The image point lies on no surviving component.
    NoBranch,
}

impl FailReason {
    pub fn as_str(self) -> &'static str {
        match self {
            FailReason::TriplePoint => "TriplePoint",
            FailReason::NodeOnImage => "NodeOnImage",
            FailReason::NotRational => "NotRational",
            FailReason::BoundaryVertex => "BoundaryVertex",
            FailReason::NotContractible => "NotContractible",
            FailReason::NoBranch => "NoBranch",
        }
    }
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl From<ContractError> for FailReason {
    fn from(e: ContractError) -> Self {
        match e {
            ContractError::TriplePoint => FailReason::TriplePoint,
            ContractError::NodeOnImage => FailReason::NodeOnImage,
            ContractError::NotRational => FailReason::NotRational,
            ContractError::BoundaryVertex => FailReason::BoundaryVertex,
            ContractError::UnknownVertex(_) | ContractError::NotMinusOne => FailReason::NotContractible,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClusterOutcome {
    SmoothPoint { branches: Vec<VertexId> },
    /// An all-(-2) chain of this length was left: an `A_len` point.
    SingularPoint { len: usize },
    Failed { reason: FailReason },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterReport {
    pub members: Vec<VertexId>,
    pub outcome: ClusterOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionReport {
    pub graph: DualGraph,
    pub clusters: Vec<ClusterReport>,
    /// Contracted vertices in order.
    pub trace: Vec<VertexId>,
}

impl ContractionReport {
    /// Replays the trace on `start`.
    pub fn replay(&self, start: &DualGraph) -> Result<DualGraph, ContractError> {
        let mut g = start.clone();
        for &v in &self.trace {
            contract_in_place(&mut g, v)?;
        }
        Ok(g)
    }

    pub fn fully_contracted(&self) -> bool {
        self.clusters.iter().all(|c| matches!(c.outcome, ClusterOutcome::SmoothPoint { .. }))
    }
}

/// Castelnuovo contraction of a rational (-1) vertex, refusing anything that
/// would break normal crossings at the image point.
pub fn contract(g: &DualGraph, v: VertexId) -> Result<DualGraph, ContractError> {
    let mut out = g.clone();
    contract_in_place(&mut out, v)?;
    Ok(out)
}

fn check(g: &DualGraph, v: VertexId) -> Result<BTreeMap<VertexId, usize>, ContractError> {
    let x = g.vertex(v).ok_or(ContractError::UnknownVertex(v))?;
    if x.kind == VertexKind::Boundary {
        return Err(ContractError::BoundaryVertex);
    }
    if !x.rational {
        return Err(ContractError::NotRational);
    }
    if x.self_int != -1 {
        return Err(ContractError::NotMinusOne);
    }
    if g.degree(v) >= 3 {
        return Err(ContractError::TriplePoint);
    }
    let nb = g.neighbours(v);
    if g.edge_count(v, v) > 0 || nb.values().any(|&k| k > 1) {
        return Err(ContractError::NodeOnImage);
    }
    Ok(nb)
}

fn contract_in_place(g: &mut DualGraph, v: VertexId) -> Result<Vec<VertexId>, ContractError> {
    let nb = check(g, v)?;
    g.remove_vertex(v);
    for (&a, &k) in &nb {
        g.vertex_mut(a).expect("neighbour exists").self_int += (k * k) as i64;
    }
    let branches: Vec<VertexId> = nb.keys().copied().collect();
    if let [a, b] = branches[..] {
        g.add_edge(a, b).expect("neighbours exist");
    }
    g.log_event(ContractionEvent { cluster: vec![v], local_type: LocalType::SmoothPoint { branches: branches.clone() } });
    Ok(branches)
}

/// Contracts as much of `r` as possible, always taking the least id that
/// contracts legally.
pub fn contract_all(g: &DualGraph, r: &BTreeSet<VertexId>) -> ContractionReport {
    let order: Vec<VertexId> = r.iter().copied().collect();
    contract_all_ordered(g, r, &order)
}

/// As [`contract_all`], with ties broken by position in `order`. Members of
/// `r` missing from `order` are never contracted.
pub fn contract_all_ordered(g: &DualGraph, r: &BTreeSet<VertexId>, order: &[VertexId]) -> ContractionReport {
    let r: BTreeSet<VertexId> = r.iter().copied().filter(|v| g.contains(*v)).collect();
    let clusters = g.components(|v| r.contains(&v));
    let mut work = g.clone();
    let mut left = r.clone();
    let mut trace = Vec::new();
    let mut landed: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    'outer: loop {
        for &v in order {
            if !left.contains(&v) || work.vertex(v).is_none_or(|x| x.self_int != -1) {
                continue;
            }
            if let Ok(branches) = contract_in_place(&mut work, v) {
                left.remove(&v);
                trace.push(v);
                landed.insert(v, branches);
                continue 'outer;
            }
        }
        break;
    }
    let mut reports = Vec::new();
    for members in clusters {
        let rest: Vec<VertexId> = members.iter().copied().filter(|v| left.contains(v)).collect();
        let outcome = if rest.is_empty() {
            let last = trace.iter().rev().find(|v| members.contains(v)).expect("cluster contracted");
            ClusterOutcome::SmoothPoint { branches: landed[last].clone() }
        } else if let Some(len) = a_chain_length(&work, &rest) {
            work.log_event(ContractionEvent { cluster: rest.clone(), local_type: LocalType::SingularPoint { len } });
            ClusterOutcome::SingularPoint { len }
        } else {
            let reason = rest
                .iter()
                .filter(|v| work.vertex(**v).is_some_and(|x| x.self_int == -1 || x.kind == VertexKind::Boundary))
                .find_map(|v| check(&work, *v).err())
                .map_or(FailReason::NotContractible, FailReason::from);
            ClusterOutcome::Failed { reason }
        };
        reports.push(ClusterReport { members, outcome });
    }
    ContractionReport { graph: work, clusters: reports, trace }
}

/// Length of `vs` when it is a chain of rational (-2) curves meeting the rest
/// of the graph in exactly one edge at each end.
fn a_chain_length(g: &DualGraph, vs: &[VertexId]) -> Option<usize> {
    let set: BTreeSet<VertexId> = vs.iter().copied().collect();
    for v in vs {
        let x = g.vertex(*v)?;
        if x.kind != VertexKind::Exceptional || !x.rational || x.self_int != -2 {
            return None;
        }
    }
    let mut inner = 0usize;
    let mut outer: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut inner_deg: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &(a, b) in g.edges() {
        match (set.contains(&a), set.contains(&b)) {
            (true, true) => {
                if a == b {
                    return None;
                }
                inner += 1;
                *inner_deg.entry(a).or_insert(0) += 1;
                *inner_deg.entry(b).or_insert(0) += 1;
            }
            (true, false) => *outer.entry(a).or_insert(0) += 1,
            (false, true) => *outer.entry(b).or_insert(0) += 1,
            _ => {}
        }
    }
    let n = vs.len();
    if inner != n - 1 || g.components(|v| set.contains(&v)).len() != 1 {
        return None;
    }
    if inner_deg.values().any(|&d| d > 2) || outer.values().sum::<usize>() != 2 {
        return None;
    }
    // each attaching edge sits at an end of the path
    for (v, k) in &outer {
        let d = inner_deg.get(v).copied().unwrap_or(0);
        if d + k != 2 {
            return None;
        }
    }
    Some(n)
}
