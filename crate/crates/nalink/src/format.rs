//! Graph and vertex-set JSON, and DOT export.
//!
//! Vertex ids in files are the vertex labels.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use nalink_core::graph::{DualGraph, GraphError, Vertex, VertexId, VertexKind};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("bad JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown vertex kind {0:?}")]
    Kind(String),
    #[error("duplicate vertex id {0:?}")]
    Duplicate(String),
    #[error("unknown vertex id {0:?}")]
    Unknown(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexJson {
    pub id: String,
    pub kind: String,
    #[serde(rename = "N")]
    pub n: u64,
    pub self_int: i64,
    pub rational: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSetJson {
    pub reference: String,
    #[serde(rename = "S")]
    pub s: Vec<String>,
    pub boundary: Vec<String>,
}

fn kind_of(s: &str) -> Result<VertexKind, FormatError> {
    match s {
        "Exceptional" | "exceptional" => Ok(VertexKind::Exceptional),
        "Boundary" | "boundary" => Ok(VertexKind::Boundary),
        _ => Err(FormatError::Kind(s.to_string())),
    }
}

pub fn labels(g: &DualGraph, ids: impl IntoIterator<Item = VertexId>) -> Vec<String> {
    ids.into_iter().map(|v| g.label(v).to_string()).collect()
}

pub fn graph_to_json(g: &DualGraph, boundary: Option<&BTreeSet<VertexId>>) -> GraphJson {
    GraphJson {
        vertices: g
            .vertices()
            .map(|(_, v)| VertexJson {
                id: v.label.clone(),
                kind: v.kind.as_str().to_string(),
                n: v.n,
                self_int: v.self_int,
                rational: v.rational,
            })
            .collect(),
        edges: g.edges().iter().map(|&(a, b)| [g.label(a).to_string(), g.label(b).to_string()]).collect(),
        boundary: boundary.map(|b| labels(g, b.iter().copied())),
    }
}

/// Builds the graph in file order; returns the declared boundary too.
pub fn graph_from_json(j: &GraphJson) -> Result<(DualGraph, Option<Vec<VertexId>>), FormatError> {
    let mut g = DualGraph::new();
    let mut ids = BTreeMap::new();
    for v in &j.vertices {
        if ids.contains_key(&v.id) {
            return Err(FormatError::Duplicate(v.id.clone()));
        }
        let vertex = Vertex { label: v.id.clone(), kind: kind_of(&v.kind)?, n: v.n, self_int: v.self_int, rational: v.rational };
        if v.n == 0 {
            return Err(GraphError::ZeroMultiplicity.into());
        }
        ids.insert(v.id.clone(), g.add_vertex(vertex));
    }
    let look = |s: &String| ids.get(s).copied().ok_or_else(|| FormatError::Unknown(s.clone()));
    for [a, b] in &j.edges {
        g.add_edge(look(a)?, look(b)?)?;
    }
    let boundary = j.boundary.as_ref().map(|b| b.iter().map(look).collect::<Result<Vec<_>, _>>()).transpose()?;
    Ok((g, boundary))
}

/// Stable identifier: a prefix of the SHA-256 of the compact graph JSON.
pub fn graph_id(j: &GraphJson) -> String {
    let bytes = serde_json::to_vec(j).expect("graph JSON serializes");
    let digest = Sha256::digest(&bytes);
    let mut out = String::from("sha256:");
    for b in &digest[..8] {
        write!(out, "{:02x}", b).unwrap();
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", escape(s))
}

/// Undirected DOT; members of `highlight` are drawn bold.
pub fn to_dot(g: &DualGraph, highlight: Option<&BTreeSet<VertexId>>) -> String {
    let mut out = String::from("graph dual {\n    node [shape=circle];\n");
    for (id, v) in g.vertices() {
        let mut attrs = vec![format!("label=\"{}\\nN={} self={}\"", escape(&v.label), v.n, v.self_int)];
        if v.kind == VertexKind::Boundary {
            attrs.push("shape=box".into());
        }
        if !v.rational {
            attrs.push("style=dashed".into());
        }
        if highlight.is_some_and(|h| h.contains(&id)) {
            attrs.push("penwidth=2".into());
        }
        writeln!(out, "    {} [{}];", quote(&v.label), attrs.join(", ")).unwrap();
    }
    for &(a, b) in g.edges() {
        writeln!(out, "    {} -- {};", quote(g.label(a)), quote(g.label(b))).unwrap();
    }
    out.push_str("}\n");
    out
}
