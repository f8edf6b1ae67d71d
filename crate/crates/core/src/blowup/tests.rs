use alloc::string::ToString;
use alloc::vec::Vec;

use super::*;
use crate::arith::{parse_polynomial, FieldLimits};

fn curve(s: &str) -> PairDescriptor {
    PairDescriptor::Curve(parse_polynomial(s).unwrap())
}

fn q() -> Arc<CoefficientField> {
    Arc::new(CoefficientField::rationals())
}

fn exc_data(m: &ResolutionModel) -> (Vec<u64>, Vec<i64>) {
    (1..=m.num_blowups()).map(|i| m.exceptional_data(i).unwrap()).unzip()
}

#[test]
fn origin_blowup() {
    let m = ResolutionModel::new(&PairDescriptor::Point, q()).unwrap();
    assert_eq!(m.nc_violations()[0].reason, ViolationReason::NonPrincipalPullback);
    let m = m.blow_up(&PointRef::base_origin()).unwrap();
    assert_eq!(m.exceptional_data(1), Some((1, -1)));
    assert!(m.base_locus_resolved());
    assert!(m.nc_violations().is_empty());
    let g = m.to_dual_graph().unwrap();
    assert_eq!((g.num_vertices(), g.num_edges()), (1, 0));
}

#[test]
fn cusp_first_blowup() {
    let m = ResolutionModel::new(&curve("y^2 - x^3"), q()).unwrap();
    let m = m.blow_up(&PointRef::base_origin()).unwrap();
    assert_eq!(m.exceptional_data(1), Some((2, -1)));
    let strict = m.strict_transform(&parse_polynomial("y^2 - x^3").unwrap(), 1);
    assert_eq!(strict, parse_polynomial("y^2 - x").unwrap());
    let total = m.pullback(&parse_polynomial("y^2 - x^3").unwrap(), 1);
    assert_eq!(total, parse_polynomial("x^2*(y^2 - x)").unwrap());
    let v = m.nc_violations();
    assert_eq!(v, vec![Violation { at: PointRef::new(1, Point::origin()), reason: ViolationReason::Tangency }]);
    let m = m.blow_up(&v[0].at).unwrap();
    let v = m.nc_violations();
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].reason, ViolationReason::TriplePoint);
}

#[test]
fn line_self_intersection_drops() {
    let m = ResolutionModel::new(&curve("y"), q()).unwrap();
    assert_eq!(m.components().unwrap()[0].self_int, 0);
    let m = m.blow_up(&PointRef::base_origin()).unwrap();
    assert_eq!(m.components().unwrap()[0].self_int, -1);
}

#[test]
fn cusp_resolution() {
    let (m, g) = resolve(&curve("y^2 - x^3"), &ResolveOptions::default()).unwrap();
    assert_eq!(m.num_blowups(), 3);
    assert_eq!(exc_data(&m), (vec![2, 3, 6], vec![-3, -2, -1]));
    assert_eq!((g.num_vertices(), g.num_edges()), (4, 3));
    let e3 = g.find_label("E3").unwrap();
    assert_eq!(g.degree(e3), 3);
    let z = g.find_label("Z~").unwrap();
    assert_eq!(g.edge_count(z, e3), 1);
}

#[test]
fn node_and_tacnode() {
    let (m, g) = resolve(&curve("x*y"), &ResolveOptions::default()).unwrap();
    assert_eq!(m.num_blowups(), 0);
    assert_eq!((g.num_vertices(), g.num_edges()), (2, 1));
    assert_eq!(g.boundary_ids().len(), 2);

    let (m, g) = resolve(&curve("y^2 - x^4"), &ResolveOptions::default()).unwrap();
    assert_eq!(m.num_blowups(), 2);
    assert_eq!(exc_data(&m), (vec![2, 4], vec![-2, -1]));
    let labels: Vec<_> = g.vertices().map(|(_, v)| v.label.clone()).collect();
    assert_eq!(labels, ["Z~1", "Z~2", "E1", "E2"]);
    let e = |s| g.find_label(s).unwrap();
    for (a, b) in [("E1", "E2"), ("E2", "Z~1"), ("E2", "Z~2")] {
        assert_eq!(g.edge_count(e(a), e(b)), 1);
    }
    assert_eq!(g.num_edges(), 3);
}

#[test]
fn gaussian_node_needs_extension() {
    let tight = ResolveOptions { limits: FieldLimits { max_depth: 2, max_degree: 1 }, blowup_cap: 64 };
    match resolve(&curve("x^2 + y^2"), &tight) {
        Err(BlowupError::Arith(ArithError::TowerBoundExceeded { needed: Some(mp) })) => {
            assert_eq!(mp.to_string(), "z^2 + 1")
        }
        other => panic!("unexpected {:?}", other),
    }
    let (m, g) = resolve(&curve("x^2 + y^2"), &ResolveOptions::default()).unwrap();
    assert_eq!(m.field().degree(), 2);
    assert_eq!((g.num_vertices(), g.num_edges()), (2, 1));
}

#[test]
fn idempotent_resolution() {
    for s in ["y^2 - x^3", "y^3 - x^5", "x*y*(x - y)"] {
        let (m, _) = resolve(&curve(s), &ResolveOptions::default()).unwrap();
        let (m2, _, added) = resolve_model(&m, &ResolveOptions::default()).unwrap();
        assert_eq!(added, 0);
        assert_eq!(m2, m);
    }
}

#[test]
fn centers_off_the_locus() {
    let m = ResolutionModel::new(&curve("y^2 - x^3"), q()).unwrap();
    let off = PointRef::new(0, Point::new(FieldElem::one(), FieldElem::one()));
    assert_eq!(m.blow_up(&off), Err(BlowupError::CenterOffLocus));
    let m = m.blow_up(&PointRef::base_origin()).unwrap();
    assert_eq!(m.blow_up(&PointRef::base_origin()), Err(BlowupError::CenterOffLocus));
    // (2, 0) in the second chart is (0, 1/2) in the first
    let p = PointRef::new(2, Point::new(FieldElem::from_int(2), FieldElem::zero()));
    let canon = m.canonical_point(&p).unwrap();
    assert_eq!(canon.chart, 1);
}

#[test]
fn cap_is_enforced() {
    let opts = ResolveOptions { blowup_cap: 2, ..Default::default() };
    assert_eq!(
        resolve(&curve("y^2 - x^3"), &opts).map(|_| ()),
        Err(BlowupError::BlowupCapExceeded { cap: 2 })
    );
}

#[test]
fn nonreduced_input() {
    let (m, g) = resolve(&curve("y^2"), &ResolveOptions::default()).unwrap();
    assert_eq!(m.num_blowups(), 0);
    assert_eq!(g.vertex(VertexId(0)).unwrap().n, 2);
    let (m, _) = resolve(&curve("(y^2 - x^3)^2"), &ResolveOptions::default()).unwrap();
    assert_eq!(exc_data(&m).0, vec![4, 6, 12]);
}
