use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{BlowupError, PairDescriptor, PointRef, ResolutionModel};
use crate::arith::{ArithError, CoefficientField, FieldLimits, MinimalPolynomial};
use crate::graph::DualGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolveOptions {
    pub limits: FieldLimits,
    pub blowup_cap: usize,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions { limits: FieldLimits::default(), blowup_cap: 64 }
    }
}

/// Embedded resolution of the pair: blow up the first violation (least
/// chart, then least point) until the divisor is normal crossings. The
/// field is extended whenever a center or branch needs it.
pub fn resolve(pair: &PairDescriptor, opts: &ResolveOptions) -> Result<(ResolutionModel, DualGraph), BlowupError> {
    let field = Arc::new(CoefficientField::with_limits(opts.limits));
    let (m, g, _) = drive(pair, field, &[], opts)?;
    Ok((m, g))
}

/// Continues resolving an existing model; also returns how many blowups
/// were added.
pub fn resolve_model(
    model: &ResolutionModel,
    opts: &ResolveOptions,
) -> Result<(ResolutionModel, DualGraph, usize), BlowupError> {
    let history: Vec<PointRef> = model.blowups().iter().map(|b| b.center.clone()).collect();
    let (m, g, _) = drive(model.pair(), model.field().clone(), &history, opts)?;
    let added = m.num_blowups() - history.len();
    Ok((m, g, added))
}

fn drive(
    pair: &PairDescriptor,
    mut field: Arc<CoefficientField>,
    history: &[PointRef],
    opts: &ResolveOptions,
) -> Result<(ResolutionModel, DualGraph, usize), BlowupError> {
    loop {
        match attempt(pair, &field, history, opts) {
            Err(BlowupError::Arith(ArithError::NeedsExtension(mp))) => field = extend(&field, mp)?,
            other => return other,
        }
    }
}

fn extend(field: &Arc<CoefficientField>, mp: MinimalPolynomial) -> Result<Arc<CoefficientField>, BlowupError> {
    let name = format!("a{}", field.depth() + 1);
    let poly = mp.poly.clone();
    field
        .extend(&name, &poly)
        .map(Arc::new)
        .map_err(|_| BlowupError::Arith(ArithError::TowerBoundExceeded { needed: Some(mp) }))
}

fn attempt(
    pair: &PairDescriptor,
    field: &Arc<CoefficientField>,
    history: &[PointRef],
    opts: &ResolveOptions,
) -> Result<(ResolutionModel, DualGraph, usize), BlowupError> {
    let mut model = ResolutionModel::new(pair, field.clone())?;
    for c in history {
        model = model.blow_up(c)?;
    }
    loop {
        let v = model.nc_violations();
        match v.first() {
            None => {
                let g = model.to_dual_graph()?;
                let n = model.num_blowups();
                return Ok((model, g, n));
            }
            Some(first) => {
                if model.num_blowups() >= opts.blowup_cap {
                    return Err(BlowupError::BlowupCapExceeded { cap: opts.blowup_cap });
                }
                model = model.blow_up(&first.at)?;
            }
        }
    }
}
