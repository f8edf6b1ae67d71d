//! Iterated point blowups over the origin of the plane.
//!
//! Everything is local at the origin: `Z` is either the origin itself or the
//! germ of `V(f)` there, and only points lying over the origin are ever
//! blown up. Each blowup adds two charts; a point of the newest exceptional
//! curve `E_k` is named by the chart of `E_k` that sees it, as `(0, c)` in
//! the first chart or the origin of the second.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{
    distinct_lines, factor_binary_form, ArithError, BivariatePolynomial, CoefficientField, FieldElem,
    LinearForm, Point,
};
use crate::graph::{DualGraph, GraphError, Vertex, VertexId, VertexKind};

mod resolve;

pub use resolve::{resolve, resolve_model, ResolveOptions};

pub type ChartId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChartKind {
    Base,
    /// Parent coordinates `(a + x, b + x*y)`.
    A,
    /// Parent coordinates `(a + x*y, b + y)`.
    B,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub id: ChartId,
    pub parent: Option<ChartId>,
    pub kind: ChartKind,
    /// Blown-up point `(a, b)` in parent coordinates.
    pub center: Point,
    /// 1-based index of the blowup that made this chart.
    pub blowup: Option<usize>,
}

impl Chart {
    /// Local equation of the newest exceptional curve: `x` or `y`.
    pub fn exceptional_equation(&self, field: &Arc<CoefficientField>) -> Option<BivariatePolynomial> {
        match self.kind {
            ChartKind::Base => None,
            ChartKind::A => Some(BivariatePolynomial::x(field.clone())),
            ChartKind::B => Some(BivariatePolynomial::y(field.clone())),
        }
    }

    /// Parent coordinates as polynomials in this chart's coordinates.
    pub fn substitution(&self, field: &Arc<CoefficientField>) -> (BivariatePolynomial, BivariatePolynomial) {
        let x = BivariatePolynomial::x(field.clone());
        let y = BivariatePolynomial::y(field.clone());
        let a = BivariatePolynomial::constant(self.center.x.clone(), field.clone());
        let b = BivariatePolynomial::constant(self.center.y.clone(), field.clone());
        let xy = &x * &y;
        match self.kind {
            ChartKind::Base => (x, y),
            ChartKind::A => (&a + &x, &b + &xy),
            ChartKind::B => (&a + &xy, &b + &y),
        }
    }

    pub fn to_parent(&self, p: &Point, f: &CoefficientField) -> Point {
        let xy = f.mul(&p.x, &p.y);
        match self.kind {
            ChartKind::Base => p.clone(),
            ChartKind::A => Point::new(f.add(&self.center.x, &p.x), f.add(&self.center.y, &xy)),
            ChartKind::B => Point::new(f.add(&self.center.x, &xy), f.add(&self.center.y, &p.y)),
        }
    }
}

/// The subscheme `Z` of the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairDescriptor {
    /// `Z` is the origin, ideal `(x, y)`.
    Point,
    /// `Z = V(f)` with `f(0, 0) = 0`.
    Curve(BivariatePolynomial),
}

impl PairDescriptor {
    /// Generators of the ideal of `Z` over `field`.
    pub fn ideal(&self, field: &Arc<CoefficientField>) -> Vec<BivariatePolynomial> {
        match self {
            PairDescriptor::Point => vec![BivariatePolynomial::x(field.clone()), BivariatePolynomial::y(field.clone())],
            PairDescriptor::Curve(f) => vec![f.over(field)],
        }
    }

    pub fn over(&self, field: &Arc<CoefficientField>) -> Self {
        match self {
            PairDescriptor::Point => PairDescriptor::Point,
            PairDescriptor::Curve(f) => PairDescriptor::Curve(f.over(field)),
        }
    }
}

/// A closed point on some chart, by chart id and coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointRef {
    pub chart: ChartId,
    pub at: Point,
}

impl PointRef {
    pub fn new(chart: ChartId, at: Point) -> Self {
        PointRef { chart, at }
    }

    pub fn base_origin() -> Self {
        PointRef { chart: 0, at: Point::origin() }
    }

    pub fn render(&self, f: &CoefficientField) -> String {
        format!("chart {} ({}, {})", self.chart, f.fmt_elem(&self.at.x), f.fmt_elem(&self.at.y))
    }
}

/// Which coordinate line through a point an exceptional curve is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    /// `x = const`
    X0,
    /// `y = const`
    Y0,
}

/// A strict-transform germ of one squarefree class of `f` at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Germ {
    class: usize,
    poly: BivariatePolynomial,
}

/// A point that carries germs or where two exceptional curves meet.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct LivePoint {
    exc: Vec<(usize, Axis)>,
    germs: Vec<Germ>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blowup {
    /// 1-based; the new curve is `E_index`.
    pub index: usize,
    pub center: PointRef,
    /// Exceptional curves through the center.
    pub through: Vec<usize>,
    /// Multiplicity of the strict transform of `Z` at the center.
    pub multiplicity: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationReason {
    ComponentSingular,
    Tangency,
    TriplePoint,
    NonPrincipalPullback,
}

impl ViolationReason {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationReason::ComponentSingular => "ComponentSingular",
            ViolationReason::Tangency => "Tangency",
            ViolationReason::TriplePoint => "TriplePoint",
            ViolationReason::NonPrincipalPullback => "NonPrincipalPullback",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub at: PointRef,
    pub reason: ViolationReason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Locus {
    /// `E_index`, seen as `x = 0` and `y = 0` in the two charts of its blowup.
    Exceptional { index: usize },
    /// One analytic branch of the strict transform of `Z`.
    Branch { at: PointRef, class: usize, tangent: Option<LinearForm> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorComponent {
    pub id: VertexId,
    pub label: String,
    pub kind: VertexKind,
    pub n: u64,
    pub self_int: i64,
    pub rational: bool,
    pub locus: Locus,
    pub local_equations: Vec<(ChartId, BivariatePolynomial)>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BlowupError {
    #[error("center does not lie on the current total transform")]
    CenterOffLocus,
    #[error("invalid pair: {0}")]
    InvalidPair(&'static str),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("blowup cap of {cap} exceeded")]
    BlowupCapExceeded { cap: usize },
    #[error("divisor is not normal crossings ({} violations)", .0.len())]
    NotNormalCrossings(Vec<Violation>),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct ExcData {
    n: u64,
    self_int: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionModel {
    pair: PairDescriptor,
    field: Arc<CoefficientField>,
    classes: Vec<(BivariatePolynomial, u32)>,
    charts: Vec<Chart>,
    blowups: Vec<Blowup>,
    exceptional: Vec<ExcData>,
    points: BTreeMap<PointRef, LivePoint>,
}

impl ResolutionModel {
    /// The unmodified plane over `field`.
    pub fn new(pair: &PairDescriptor, field: Arc<CoefficientField>) -> Result<Self, BlowupError> {
        let pair = pair.over(&field);
        let base = Chart { id: 0, parent: None, kind: ChartKind::Base, center: Point::origin(), blowup: None };
        let mut classes = Vec::new();
        let mut origin = LivePoint::default();
        if let PairDescriptor::Curve(f) = &pair {
            if f.is_constant() {
                return Err(BlowupError::InvalidPair("polynomial is constant"));
            }
            if !f.eval(&FieldElem::zero(), &FieldElem::zero()).is_zero() {
                return Err(BlowupError::InvalidPair("polynomial does not vanish at the origin"));
            }
            for (g, k) in f.squarefree_decomposition() {
                if g.eval(&FieldElem::zero(), &FieldElem::zero()).is_zero() {
                    origin.germs.push(Germ { class: classes.len(), poly: g.clone() });
                    classes.push((g, k));
                }
            }
        }
        let mut points = BTreeMap::new();
        points.insert(PointRef::base_origin(), origin);
        Ok(ResolutionModel { pair, field, classes, charts: vec![base], blowups: Vec::new(), exceptional: Vec::new(), points })
    }

    pub fn pair(&self) -> &PairDescriptor {
        &self.pair
    }

    pub fn field(&self) -> &Arc<CoefficientField> {
        &self.field
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn blowups(&self) -> &[Blowup] {
        &self.blowups
    }

    pub fn num_blowups(&self) -> usize {
        self.blowups.len()
    }

    /// Squarefree classes of `f` through the origin, with multiplicities.
    pub fn classes(&self) -> &[(BivariatePolynomial, u32)] {
        &self.classes
    }

    /// `N` and self-intersection of `E_index`.
    pub fn exceptional_data(&self, index: usize) -> Option<(u64, i64)> {
        self.exceptional.get(index.checked_sub(1)?).map(|d| (d.n, d.self_int))
    }

    /// Chart ids of the two charts of blowup `index`.
    pub fn charts_of(index: usize) -> (ChartId, ChartId) {
        (2 * index - 1, 2 * index)
    }

    /// Whether the pullback of the ideal of `Z` is principal everywhere.
    pub fn base_locus_resolved(&self) -> bool {
        match self.pair {
            PairDescriptor::Point => !self.blowups.is_empty(),
            PairDescriptor::Curve(_) => true,
        }
    }

    /// Points currently tracked: germs of the strict transform, or crossings
    /// of two exceptional curves.
    pub fn special_points(&self) -> Vec<PointRef> {
        self.points.keys().cloned().collect()
    }

    /// Chart ids from the base chart down to `c`.
    pub fn chart_path(&self, c: ChartId) -> Vec<ChartId> {
        let mut path = vec![c];
        let mut cur = c;
        while let Some(p) = self.charts[cur].parent {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Total transform of `f` (given in base coordinates) in chart `c`.
    pub fn pullback(&self, f: &BivariatePolynomial, c: ChartId) -> BivariatePolynomial {
        let mut g = f.over(&self.field);
        for id in self.chart_path(c).into_iter().skip(1) {
            let (xs, ys) = self.charts[id].substitution(&self.field);
            g = g.compose(&xs, &ys);
        }
        g
    }

    /// Strict transform of `f` in chart `c`: at each step the exceptional
    /// factor is divided out to the multiplicity at the center.
    pub fn strict_transform(&self, f: &BivariatePolynomial, c: ChartId) -> BivariatePolynomial {
        let mut g = f.over(&self.field);
        for id in self.chart_path(c).into_iter().skip(1) {
            let ch = &self.charts[id];
            let m = g.shift(&ch.center.x, &ch.center.y).order().unwrap_or(0);
            let (xs, ys) = ch.substitution(&self.field);
            g = g.compose(&xs, &ys);
            g = match ch.kind {
                ChartKind::A => g.div_monomial(m, 0),
                _ => g.div_monomial(0, m),
            };
        }
        g
    }

    /// Canonical name of a point on the current exceptional locus, or the
    /// base origin before any blowup.
    pub fn canonical_point(&self, r: &PointRef) -> Result<PointRef, BlowupError> {
        let f = &*self.field;
        if !f.contains(&r.at.x) || !f.contains(&r.at.y) {
            return Err(BlowupError::Arith(ArithError::TowerBoundExceeded { needed: None }));
        }
        let chart = self.charts.get(r.chart).ok_or(BlowupError::CenterOffLocus)?;
        let canon = match chart.kind {
            ChartKind::Base => {
                if !r.at.is_origin() {
                    return Err(BlowupError::CenterOffLocus);
                }
                r.clone()
            }
            ChartKind::A => {
                if !r.at.x.is_zero() {
                    return Err(BlowupError::CenterOffLocus);
                }
                r.clone()
            }
            ChartKind::B => {
                if !r.at.y.is_zero() {
                    return Err(BlowupError::CenterOffLocus);
                }
                if r.at.x.is_zero() {
                    r.clone()
                } else {
                    let c = f.inv(&r.at.x).expect("nonzero");
                    PointRef::new(r.chart - 1, Point::new(FieldElem::zero(), c))
                }
            }
        };
        if self.blowups.iter().any(|b| b.center == canon) {
            return Err(BlowupError::CenterOffLocus);
        }
        Ok(canon)
    }

    fn live_point(&self, r: &PointRef) -> LivePoint {
        if let Some(p) = self.points.get(r) {
            return p.clone();
        }
        let chart = &self.charts[r.chart];
        let k = chart.blowup.unwrap_or(0);
        match chart.kind {
            ChartKind::Base => LivePoint::default(),
            ChartKind::A => LivePoint { exc: vec![(k, Axis::X0)], germs: Vec::new() },
            ChartKind::B => LivePoint { exc: vec![(k, Axis::Y0)], germs: Vec::new() },
        }
    }

    fn class_mult(&self, class: usize) -> u64 {
        u64::from(self.classes[class].1)
    }

    /// Blows up one point on the total transform.
    pub fn blow_up(&self, center: &PointRef) -> Result<ResolutionModel, BlowupError> {
        let q = self.canonical_point(center)?;
        let lp = self.live_point(&q);
        let field = self.field.clone();
        let f = &*field;
        let (a, b) = (q.at.x.clone(), q.at.y.clone());
        let k = self.blowups.len() + 1;
        let (ca, cb) = Self::charts_of(k);
        let a_origin = PointRef::new(ca, Point::origin());
        let b_origin = PointRef::new(cb, Point::origin());

        let x = BivariatePolynomial::x(field.clone());
        let y = BivariatePolynomial::y(field.clone());
        let xy = &x * &y;
        let mut m: u64 = 0;
        let mut fresh: BTreeMap<PointRef, LivePoint> = BTreeMap::new();
        for g in &lp.germs {
            let gs = g.poly.shift(&a, &b);
            let mg = gs.order().unwrap_or(0);
            m += self.class_mult(g.class) * u64::from(mg);
            let fac = factor_binary_form(&gs.lowest_form())?;
            let ga = gs.compose(&x, &xy).div_monomial(mg, 0);
            let gb = gs.compose(&xy, &y).div_monomial(0, mg);
            for (lf, _) in &fac.factors {
                let (at, poly) = if lf.x.is_zero() {
                    (a_origin.clone(), ga.clone())
                } else if lf.y.is_zero() {
                    (b_origin.clone(), gb.clone())
                } else {
                    let c = f.neg(&f.inv(&lf.y).expect("nonzero"));
                    (PointRef::new(ca, Point::new(FieldElem::zero(), c)), ga.clone())
                };
                fresh.entry(at).or_default().germs.push(Germ { class: g.class, poly });
            }
        }
        if matches!(self.pair, PairDescriptor::Point) && self.blowups.is_empty() {
            m = 1;
        }
        for &(i, axis) in &lp.exc {
            let at = match axis {
                Axis::X0 => b_origin.clone(),
                Axis::Y0 => a_origin.clone(),
            };
            fresh.entry(at).or_default().exc.push((i, axis));
        }
        let mut points = self.points.clone();
        points.remove(&q);
        for (r, mut p) in fresh {
            let axis = if r.chart == ca { Axis::X0 } else { Axis::Y0 };
            p.exc.push((k, axis));
            p.exc.sort();
            p.germs.sort_by_key(|g| g.class);
            points.insert(r, p);
        }

        let mut exceptional = self.exceptional.clone();
        let n = m + lp.exc.iter().map(|(i, _)| exceptional[i - 1].n).sum::<u64>();
        for (i, _) in &lp.exc {
            exceptional[i - 1].self_int -= 1;
        }
        exceptional.push(ExcData { n, self_int: -1 });

        let mut charts = self.charts.clone();
        for (id, kind) in [(ca, ChartKind::A), (cb, ChartKind::B)] {
            charts.push(Chart { id, parent: Some(q.chart), kind, center: q.at.clone(), blowup: Some(k) });
        }
        let mut blowups = self.blowups.clone();
        blowups.push(Blowup {
            index: k,
            center: q,
            through: lp.exc.iter().map(|(i, _)| *i).collect(),
            multiplicity: m,
        });
        Ok(ResolutionModel {
            pair: self.pair.clone(),
            field,
            classes: self.classes.clone(),
            charts,
            blowups,
            exceptional,
            points,
        })
    }

    /// Points where the support of the total transform is not normal
    /// crossings or the ideal of `Z` does not pull back to a principal one.
    pub fn nc_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (r, lp) in &self.points {
            if matches!(self.pair, PairDescriptor::Point) && self.blowups.is_empty() {
                out.push(Violation { at: r.clone(), reason: ViolationReason::NonPrincipalPullback });
                continue;
            }
            if lp.germs.is_empty() {
                continue;
            }
            let shifted: Vec<BivariatePolynomial> = lp.germs.iter().map(|g| g.poly.shift(&r.at.x, &r.at.y)).collect();
            let mut s = BivariatePolynomial::one(self.field.clone());
            for g in &shifted {
                s = &s * g;
            }
            let ms = s.order().unwrap_or(0);
            let e = lp.exc.len();
            let cone = s.lowest_form();
            let lines = distinct_lines(&cone);
            let reason = if e >= 2 || (e == 1 && ms >= 2 && lines >= 2) {
                Some(ViolationReason::TriplePoint)
            } else if ms >= 3 {
                Some(if lines >= 3 { ViolationReason::TriplePoint } else { ViolationReason::ComponentSingular })
            } else if ms == 2 && lines == 1 {
                let two_smooth = shifted.len() == 2 && shifted.iter().all(|g| g.order() == Some(1));
                Some(if two_smooth { ViolationReason::Tangency } else { ViolationReason::ComponentSingular })
            } else if ms == 1 && e == 1 {
                let along = match lp.exc[0].1 {
                    Axis::X0 => cone.coeff(0, 1).is_zero(),
                    Axis::Y0 => cone.coeff(1, 0).is_zero(),
                };
                along.then_some(ViolationReason::Tangency)
            } else {
                None
            };
            if let Some(reason) = reason {
                out.push(Violation { at: r.clone(), reason });
            }
        }
        out
    }

    /// `c[i][j]`: coefficient of the strict transform of `E_j` in the total
    /// transform of `E_i`, from the proximity relations.
    fn proximity_coefficients(&self) -> Vec<Vec<i64>> {
        let k = self.blowups.len();
        let mut c = vec![vec![0i64; k + 1]; k + 1];
        for i in (1..=k).rev() {
            c[i][i] = 1;
            for l in i + 1..=k {
                if self.blowups[l - 1].through.contains(&i) {
                    for j in 1..=k {
                        c[i][j] += c[l][j];
                    }
                }
            }
        }
        c
    }

    fn branch_self_int(&self, r: &PointRef, lp: &LivePoint, germ: &Germ, c: &[Vec<i64>]) -> i64 {
        let f = &*self.field;
        let mut meet = Vec::new();
        for &(j, axis) in &lp.exc {
            let (line, root) = match axis {
                Axis::X0 => (germ.poly.at_x(&r.at.x), &r.at.y),
                Axis::Y0 => (germ.poly.at_y(&r.at.y), &r.at.x),
            };
            meet.push((j, i64::from(line.root_multiplicity(root, f))));
        }
        let mut total = 0i64;
        for row in c.iter().skip(1) {
            let e: i64 = meet.iter().map(|&(j, ij)| row[j] * ij).sum();
            total += e * e;
        }
        -total
    }

    /// Components of the divisor, boundary first, in the id order used by
    /// [`to_dual_graph`](Self::to_dual_graph).
    pub fn components(&self) -> Result<Vec<DivisorComponent>, BlowupError> {
        let field = &self.field;
        let c = self.proximity_coefficients();
        let mut out = Vec::new();
        if let PairDescriptor::Curve(_) = self.pair {
            let mut branches = Vec::new();
            for (r, lp) in &self.points {
                for g in &lp.germs {
                    let gs = g.poly.shift(&r.at.x, &r.at.y);
                    let self_int = self.branch_self_int(r, lp, g, &c);
                    if lp.exc.is_empty() && gs.order() == Some(2) && distinct_lines(&gs.lowest_form()) == 2 {
                        for (lf, _) in factor_binary_form(&gs.lowest_form())?.factors {
                            branches.push((r.clone(), g, Some(lf), self_int));
                        }
                    } else {
                        branches.push((r.clone(), g, None, self_int));
                    }
                }
            }
            let single = branches.len() == 1;
            for (i, (r, g, tangent, self_int)) in branches.into_iter().enumerate() {
                out.push(DivisorComponent {
                    id: VertexId(out.len() as u32),
                    label: if single { String::from("Z~") } else { format!("Z~{}", i + 1) },
                    kind: VertexKind::Boundary,
                    n: self.class_mult(g.class),
                    self_int,
                    rational: false,
                    local_equations: vec![(r.chart, g.poly.clone())],
                    locus: Locus::Branch { at: r, class: g.class, tangent },
                });
            }
        }
        for (i, d) in self.exceptional.iter().enumerate() {
            let index = i + 1;
            let (ca, cb) = Self::charts_of(index);
            let point_boundary = index == 1 && matches!(self.pair, PairDescriptor::Point);
            out.push(DivisorComponent {
                id: VertexId(out.len() as u32),
                label: format!("E{}", index),
                kind: if point_boundary { VertexKind::Boundary } else { VertexKind::Exceptional },
                n: d.n,
                self_int: d.self_int,
                rational: true,
                locus: Locus::Exceptional { index },
                local_equations: vec![
                    (ca, BivariatePolynomial::x(field.clone())),
                    (cb, BivariatePolynomial::y(field.clone())),
                ],
            });
        }
        Ok(out)
    }

    /// Dual graph of the divisor; needs normal crossings.
    pub fn to_dual_graph(&self) -> Result<DualGraph, BlowupError> {
        let v = self.nc_violations();
        if !v.is_empty() {
            return Err(BlowupError::NotNormalCrossings(v));
        }
        self.divisor_graph()
    }

    /// The same graph without the normal-crossings requirement; intersection
    /// points of higher contact still give a single edge.
    pub fn divisor_graph(&self) -> Result<DualGraph, BlowupError> {
        let comps = self.components()?;
        let mut g = DualGraph::new();
        let mut exc_vertex: BTreeMap<usize, VertexId> = BTreeMap::new();
        let mut at_point: BTreeMap<PointRef, Vec<VertexId>> = BTreeMap::new();
        for c in &comps {
            g.insert_vertex(
                c.id,
                Vertex { label: c.label.clone(), kind: c.kind, n: c.n, self_int: c.self_int, rational: c.rational },
            )?;
            match &c.locus {
                Locus::Exceptional { index } => {
                    exc_vertex.insert(*index, c.id);
                }
                Locus::Branch { at, .. } => at_point.entry(at.clone()).or_default().push(c.id),
            }
        }
        for (r, lp) in &self.points {
            let exc: Vec<VertexId> = lp.exc.iter().map(|(i, _)| exc_vertex[i]).collect();
            if let [a, b] = exc[..] {
                g.add_edge(a, b)?;
            }
            let branches = at_point.get(r).cloned().unwrap_or_default();
            for &bv in &branches {
                for &ev in &exc {
                    g.add_edge(bv, ev)?;
                }
            }
            for (i, &u) in branches.iter().enumerate() {
                for &w in &branches[i + 1..] {
                    g.add_edge(u, w)?;
                }
            }
        }
        Ok(g)
    }

    /// Exceptional curves and their crossings only.
    pub fn exceptional_graph(&self) -> DualGraph {
        let mut g = DualGraph::new();
        for (i, d) in self.exceptional.iter().enumerate() {
            let v = Vertex { label: format!("E{}", i + 1), kind: VertexKind::Exceptional, n: d.n, self_int: d.self_int, rational: true };
            g.insert_vertex(VertexId(i as u32), v).expect("fresh id");
        }
        for lp in self.points.values() {
            if let [(i, _), (j, _)] = lp.exc[..] {
                g.add_edge(VertexId(i as u32 - 1), VertexId(j as u32 - 1)).expect("known ids");
            }
        }
        g
    }
}

impl fmt::Display for ResolutionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} blowups over {}", self.blowups.len(), self.field)
    }
}

#[cfg(test)]
mod tests;
