//! `nalink resolve|essential|check|classify|skeleton|eval|hj`.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 arithmetic limits,
//! 3 invalid vertex set.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalink_core::arith::{parse_polynomial, ArithError};
use nalink_core::blowup::{resolve, BlowupError, Locus, PairDescriptor, ResolutionModel};
use nalink_core::graph::{hj_chain, DualGraph, VertexId};
use nalink_core::space::{
    analytic_boundary, analytic_boundary_of_model, classify_component, complement_components, is_regular,
    log_essential, skeleton, ComplementComponent, FiberClass, SpaceError, VertexSet,
};
use nalink_core::valuation::{DivisorialValuation, ValuationError};
use serde::Serialize;

use crate::format::{graph_from_json, graph_id, graph_to_json, labels, to_dot, GraphJson, VertexSetJson};
use crate::input::{parse_pair, resolve_options, PairInput};

pub const EXT_BOUND_VAR: &str = "NALINK_EXT_BOUND";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Parse = 1,
    Limits = 2,
    InvalidSet = 3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Parser, Debug)]
#[command(name = "nalink", version, about = "Resolution graphs, essential vertex sets and skeleta of plane pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Pair description (TOML) or graph (JSON).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest degree over Q of the coefficient field.
    #[arg(long, global = true)]
    ext_bound: Option<usize>,
    #[arg(long, global = true)]
    blowup_cap: Option<usize>,
    /// Add wall-clock time to the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Args, Debug, Default)]
struct SetArgs {
    /// Vertex-set JSON file.
    #[arg(long, visible_alias = "vertex-set", conflicts_with = "members")]
    set: Option<PathBuf>,
    /// Comma-separated vertex ids; the boundary is the input's.
    #[arg(long, value_delimiter = ',')]
    members: Option<Vec<String>>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Embedded resolution: dual graph and divisor table.
    Resolve,
    /// The log-essential vertex set.
    Essential {
        /// Emit vertex-set JSON instead of a label list.
        #[arg(long)]
        as_set: bool,
    },
    /// Whether a vertex set is regular.
    Check(SetArgs),
    /// Classify the complement components of a vertex set (default: all vertices).
    Classify(SetArgs),
    /// Skeleton of a vertex set (default: the essential set).
    Skeleton(SetArgs),
    /// Value of a polynomial at a divisorial valuation.
    Eval {
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        poly: String,
    },
    /// Hirzebruch-Jung chain of the cyclic quotient of type (n, q).
    Hj {
        n: u64,
        q: u64,
        /// Keep the two boundary anchors.
        #[arg(long)]
        boundary: bool,
    },
}

#[derive(Debug, Serialize)]
struct Failure {
    #[serde(skip)]
    exit: Exit,
    error: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    minimal_polynomial: Option<String>,
}

impl Failure {
    fn new(exit: Exit, error: &'static str, message: impl ToString) -> Self {
        Failure { exit, error, message: message.to_string(), minimal_polynomial: None }
    }

    fn parse(message: impl ToString) -> Self {
        Failure::new(Exit::Parse, "parse", message)
    }
}

impl From<BlowupError> for Failure {
    fn from(e: BlowupError) -> Self {
        match &e {
            BlowupError::Arith(a @ (ArithError::NeedsExtension(_) | ArithError::TowerBoundExceeded { .. })) => Failure {
                exit: Exit::Limits,
                error: "extension",
                message: e.to_string(),
                minimal_polynomial: a.minimal_polynomial().map(|m| m.to_string()),
            },
            BlowupError::BlowupCapExceeded { .. } => Failure::new(Exit::Limits, "blowup_cap", &e),
            BlowupError::InvalidPair(_) => Failure::parse(&e),
            _ => Failure::new(Exit::Parse, "model", &e),
        }
    }
}

impl From<SpaceError> for Failure {
    fn from(e: SpaceError) -> Self {
        Failure::new(Exit::InvalidSet, "vertex_set", e)
    }
}

/// Same as the `From` impl, with vertex ids replaced by labels.
fn space_failure(g: &DualGraph, e: SpaceError) -> Failure {
    let message = match e {
        SpaceError::UnknownVertex(v) => format!("unknown vertex {}", g.label(v)),
        SpaceError::BoundaryNotContained(v) => format!("boundary vertex {} is missing from the set", g.label(v)),
        other => other.to_string(),
    };
    Failure::new(Exit::InvalidSet, "vertex_set", message)
}

impl From<ValuationError> for Failure {
    fn from(e: ValuationError) -> Self {
        match e {
            ValuationError::Model(m) => m.into(),
            other => Failure::new(Exit::Parse, "valuation", other),
        }
    }
}

/// A graph with its boundary, and the model behind it when there is one.
struct Analysis {
    graph: Arc<DualGraph>,
    boundary: BTreeSet<VertexId>,
    model: Option<(Arc<ResolutionModel>, PairDescriptor)>,
}

impl Analysis {
    fn graph_json(&self) -> GraphJson {
        graph_to_json(&self.graph, Some(&self.boundary))
    }

    fn vertex(&self, label: &str) -> Result<VertexId, Failure> {
        self.graph.find_label(label).ok_or_else(|| Failure::new(Exit::InvalidSet, "vertex_set", format!("unknown vertex {:?}", label)))
    }
}

enum Loaded {
    Pair(PairInput),
    Graph(DualGraph, Option<Vec<VertexId>>),
}

fn load(cli: &Cli) -> Result<Loaded, Failure> {
    let path = cli.input.as_ref().ok_or_else(|| Failure::parse("--input is required"))?;
    let text = std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {}", path.display(), e)))?;
    if text.trim_start().starts_with('{') {
        let mut value: serde_json::Value = serde_json::from_str(&text).map_err(Failure::parse)?;
        // a resolve report carries its graph under "graph"
        if let Some(g) = value.get_mut("graph") {
            value = g.take();
        }
        let j: GraphJson = serde_json::from_value(value).map_err(Failure::parse)?;
        let (g, b) = graph_from_json(&j).map_err(Failure::parse)?;
        Ok(Loaded::Graph(g, b))
    } else {
        parse_pair(&text).map(Loaded::Pair).map_err(Failure::parse)
    }
}

fn env_ext_bound() -> Result<Option<usize>, Failure> {
    match std::env::var(EXT_BOUND_VAR) {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| Failure::parse(format!("{} must be a positive integer", EXT_BOUND_VAR))),
        Err(_) => Ok(None),
    }
}

fn resolve_pair(cli: &Cli, p: &PairInput) -> Result<(ResolutionModel, DualGraph), Failure> {
    let opts = resolve_options(p, cli.ext_bound, cli.blowup_cap, env_ext_bound()?);
    Ok(resolve(&p.pair, &opts)?)
}

fn analyse(cli: &Cli) -> Result<Analysis, Failure> {
    match load(cli)? {
        Loaded::Pair(p) => {
            let (model, graph) = resolve_pair(cli, &p)?;
            let boundary = analytic_boundary_of_model(&model);
            Ok(Analysis { graph: Arc::new(graph), boundary, model: Some((Arc::new(model), p.pair)) })
        }
        Loaded::Graph(graph, declared) => {
            let boundary = analytic_boundary(&graph, declared.as_deref())?;
            Ok(Analysis { graph: Arc::new(graph), boundary, model: None })
        }
    }
}

fn vertex_set(a: &Analysis, args: &SetArgs) -> Result<Option<VertexSet>, Failure> {
    if let Some(path) = &args.set {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {}", path.display(), e)))?;
        let j: VertexSetJson = serde_json::from_str(&text).map_err(Failure::parse)?;
        let id = graph_id(&a.graph_json());
        if j.reference != id {
            return Err(Failure::new(Exit::InvalidSet, "vertex_set", format!("set refers to {}, input is {}", j.reference, id)));
        }
        let members = j.s.iter().map(|l| a.vertex(l)).collect::<Result<BTreeSet<_>, _>>()?;
        let boundary = j.boundary.iter().map(|l| a.vertex(l)).collect::<Result<BTreeSet<_>, _>>()?;
        if boundary.is_empty() {
            return Err(SpaceError::EmptyBoundary.into());
        }
        return VertexSet::new(a.graph.clone(), members, boundary).map(Some).map_err(|e| space_failure(&a.graph, e));
    }
    if let Some(ls) = &args.members {
        let members = ls.iter().map(|l| a.vertex(l.trim())).collect::<Result<BTreeSet<_>, _>>()?;
        return VertexSet::new(a.graph.clone(), members, a.boundary.clone()).map(Some).map_err(|e| space_failure(&a.graph, e));
    }
    Ok(None)
}

#[derive(Serialize)]
struct Equation {
    chart: usize,
    poly: String,
}

#[derive(Serialize)]
struct Divisor {
    id: String,
    kind: &'static str,
    #[serde(rename = "N")]
    n: u64,
    self_int: i64,
    rational: bool,
    locus: &'static str,
    equations: Vec<Equation>,
}

#[derive(Serialize)]
struct ResolveReport {
    command: &'static str,
    input: String,
    field: String,
    blowups: usize,
    graph_id: String,
    divisors: Vec<Divisor>,
    graph: GraphJson,
}

#[derive(Serialize)]
struct ComponentReport {
    vertices: Vec<String>,
    attaching: Vec<[String; 2]>,
    class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    modulus: Option<u32>,
}

#[derive(Serialize)]
struct CheckReport {
    regular: bool,
    components: Vec<ComponentReport>,
}

#[derive(Serialize)]
struct ClassifyReport {
    components: Vec<ComponentReport>,
}

#[derive(Serialize)]
struct EssentialReport {
    essential: Vec<String>,
}

#[derive(Serialize)]
struct SkeletonReport {
    vertices: Vec<String>,
    edges: Vec<(String, String, u32)>,
    cycle_rank: usize,
    total_length: u64,
}

#[derive(Serialize)]
struct EvalReport {
    vertex: String,
    poly: String,
    value: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalized: Option<String>,
}

#[derive(Serialize)]
struct HjReport {
    n: u64,
    q: u64,
    chain: Vec<i64>,
    graph: GraphJson,
}

#[derive(Serialize)]
struct Timed<T: Serialize> {
    #[serde(flatten)]
    report: T,
    timing_ms: f64,
}

fn component_report(s: &VertexSet, c: &ComplementComponent, class: FiberClass) -> ComponentReport {
    let g = s.reference();
    let pair = |&(a, b): &(VertexId, VertexId)| [g.label(a).to_string(), g.label(b).to_string()];
    let (vertices, attaching) = match c {
        ComplementComponent::PureEdge { a, b } => (Vec::new(), vec![pair(&(*a, *b))]),
        ComplementComponent::Cluster { vertices, attaching } => {
            (labels(g, vertices.iter().copied()), attaching.iter().map(pair).collect())
        }
    };
    ComponentReport { vertices, attaching, class: class.to_string(), modulus: class.modulus() }
}

fn components(s: &VertexSet) -> Vec<ComponentReport> {
    complement_components(s).iter().map(|c| component_report(s, c, classify_component(s, c))).collect()
}

fn serialize<T: Serialize>(report: T, cli: &Cli, start: Instant) -> String {
    let mut text = if cli.timing {
        serde_json::to_string(&Timed { report, timing_ms: start.elapsed().as_secs_f64() * 1e3 })
    } else {
        serde_json::to_string(&report)
    }
    .expect("reports serialize");
    text.push('\n');
    text
}

fn no_dot(cli: &Cli) -> Result<(), Failure> {
    match cli.format {
        Format::Json => Ok(()),
        Format::Dot => Err(Failure::parse("DOT output is available for resolve, essential and hj only")),
    }
}

fn cmd_resolve(cli: &Cli, start: Instant) -> Result<String, Failure> {
    let p = match load(cli)? {
        Loaded::Pair(p) => p,
        Loaded::Graph(..) => return Err(Failure::parse("resolve needs a pair description")),
    };
    let (model, graph) = resolve_pair(cli, &p)?;
    let boundary = analytic_boundary_of_model(&model);
    if cli.format == Format::Dot {
        return Ok(to_dot(&graph, None));
    }
    let field = model.field().clone();
    let divisors = model
        .components()?
        .into_iter()
        .map(|c| Divisor {
            id: c.label,
            kind: c.kind.as_str(),
            n: c.n,
            self_int: c.self_int,
            rational: c.rational,
            locus: match c.locus {
                Locus::Exceptional { .. } => "exceptional",
                Locus::Branch { .. } => "branch",
            },
            equations: c.local_equations.iter().map(|(chart, f)| Equation { chart: *chart, poly: f.to_string() }).collect(),
        })
        .collect();
    let gj = graph_to_json(&graph, Some(&boundary));
    let report = ResolveReport {
        command: "resolve",
        input: cli.input.as_ref().map(|p| p.display().to_string()).unwrap_or_default(),
        field: field.to_string(),
        blowups: model.num_blowups(),
        graph_id: graph_id(&gj),
        divisors,
        graph: gj,
    };
    Ok(serialize(report, cli, start))
}

fn cmd_essential(cli: &Cli, as_set: bool, start: Instant) -> Result<String, Failure> {
    let a = analyse(cli)?;
    let ess = log_essential(a.graph.clone(), a.boundary.clone())?;
    if cli.format == Format::Dot {
        return Ok(to_dot(&a.graph, Some(ess.members())));
    }
    if as_set {
        let set = VertexSetJson {
            reference: graph_id(&a.graph_json()),
            s: ess.labels(),
            boundary: labels(&a.graph, ess.boundary().iter().copied()),
        };
        return Ok(serialize(set, cli, start));
    }
    Ok(serialize(EssentialReport { essential: ess.labels() }, cli, start))
}

fn cmd_check(cli: &Cli, args: &SetArgs, start: Instant) -> Result<String, Failure> {
    no_dot(cli)?;
    let a = analyse(cli)?;
    let s = vertex_set(&a, args)?.ok_or_else(|| Failure::parse("check needs --set or --members"))?;
    let rep = is_regular(&s);
    let components = rep.components.iter().map(|(c, k)| component_report(&s, c, *k)).collect();
    Ok(serialize(CheckReport { regular: rep.regular, components }, cli, start))
}

fn cmd_classify(cli: &Cli, args: &SetArgs, start: Instant) -> Result<String, Failure> {
    no_dot(cli)?;
    let a = analyse(cli)?;
    let s = match vertex_set(&a, args)? {
        Some(s) => s,
        None => VertexSet::full(a.graph.clone(), a.boundary.clone())?,
    };
    Ok(serialize(ClassifyReport { components: components(&s) }, cli, start))
}

fn cmd_skeleton(cli: &Cli, args: &SetArgs, start: Instant) -> Result<String, Failure> {
    no_dot(cli)?;
    let a = analyse(cli)?;
    let s = match vertex_set(&a, args)? {
        Some(s) => s,
        None => log_essential(a.graph.clone(), a.boundary.clone())?,
    };
    let sk = skeleton(&s)?;
    let g = &a.graph;
    let report = SkeletonReport {
        vertices: labels(g, sk.vertices.iter().copied()),
        edges: sk.edges.iter().map(|&(x, y, l)| (g.label(x).to_string(), g.label(y).to_string(), l)).collect(),
        cycle_rank: sk.cycle_rank(),
        total_length: sk.total_length(),
    };
    Ok(serialize(report, cli, start))
}

fn cmd_eval(cli: &Cli, vertex: &str, poly: &str, start: Instant) -> Result<String, Failure> {
    no_dot(cli)?;
    let a = analyse(cli)?;
    let (model, pair) = a.model.as_ref().ok_or_else(|| Failure::parse("eval needs a pair description"))?;
    let v = a.vertex(vertex)?;
    let f = parse_polynomial(poly).map_err(Failure::parse)?.over(model.field());
    let val = DivisorialValuation::new(model.clone(), v)?;
    let value = val.eval(&f)?;
    let normalized = match val.normalize(pair) {
        Ok(nv) => Some(nv.eval(&f)?.to_string()),
        Err(ValuationError::NotCenteredInZ) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(serialize(EvalReport { vertex: vertex.to_string(), poly: f.to_string(), value, normalized }, cli, start))
}

fn cmd_hj(cli: &Cli, n: u64, q: u64, keep_anchors: bool, start: Instant) -> Result<String, Failure> {
    let mut g = hj_chain(n, q).map_err(Failure::parse)?;
    let chain: Vec<i64> = g.exceptional_ids().iter().map(|v| g.vertex(*v).expect("chain vertex").self_int).collect();
    let anchors: BTreeSet<VertexId> = g.boundary_ids().into_iter().collect();
    if !keep_anchors {
        for v in &anchors {
            g.remove_vertex(*v).expect("anchor");
        }
    }
    if cli.format == Format::Dot {
        return Ok(to_dot(&g, None));
    }
    let graph = graph_to_json(&g, keep_anchors.then_some(&anchors));
    Ok(serialize(HjReport { n, q, chain, graph }, cli, start))
}

/// Writes through a temporary file in the same directory.
fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let start = Instant::now();
    match &cli.command {
        Command::Resolve => cmd_resolve(cli, start),
        Command::Essential { as_set } => cmd_essential(cli, *as_set, start),
        Command::Check(args) => cmd_check(cli, args, start),
        Command::Classify(args) => cmd_classify(cli, args, start),
        Command::Skeleton(args) => cmd_skeleton(cli, args, start),
        Command::Eval { vertex, poly } => cmd_eval(cli, vertex, poly, start),
        Command::Hj { n, q, boundary } => cmd_hj(cli, *n, *q, *boundary, start),
    }
}

/// Runs the command line and returns the exit code; errors go to stderr as
/// one JSON line.
pub fn run<I, T>(args: I) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Exit::Ok,
                _ => Exit::Parse,
            };
        }
    };
    let result = execute(&cli).and_then(|text| match &cli.out {
        Some(path) => write_atomic(path, &text).map_err(|e| Failure::parse(format!("{}: {}", path.display(), e))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(Failure::parse),
    });
    match result {
        Ok(()) => Exit::Ok,
        Err(f) => {
            eprintln!("{}", serde_json::to_string(&f).expect("failure serializes"));
            f.exit
        }
    }
}
