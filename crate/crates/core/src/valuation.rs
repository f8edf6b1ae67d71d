//! Divisorial valuations: orders of vanishing along divisor components.

use alloc::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{BivariatePolynomial, LinearForm, Rational};
use crate::blowup::{BlowupError, ChartId, Locus, PairDescriptor, ResolutionModel};
use crate::graph::VertexId;
use crate::space::{complement_components, ComplementComponent, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ValuationError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("ideal has no nonzero generator")]
    EmptyIdeal,
    #[error("valuation is not centered in Z")]
    NotCenteredInZ,
    #[error("ratio undefined: the denominator has value 0")]
    DivisionUndefined,
    #[error(transparent)]
    Model(#[from] BlowupError),
}

/// Order of vanishing along one component of a model, read in the chart
/// where the component's generic point is visible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorialValuation {
    model: Arc<ResolutionModel>,
    pub vertex: VertexId,
    pub chart: ChartId,
    pub equation: BivariatePolynomial,
    locus: Locus,
}

impl DivisorialValuation {
    pub fn new(model: Arc<ResolutionModel>, vertex: VertexId) -> Result<Self, ValuationError> {
        let comp = model
            .components()?
            .into_iter()
            .find(|c| c.id == vertex)
            .ok_or(ValuationError::UnknownVertex(vertex))?;
        let (chart, equation) = comp.local_equations[0].clone();
        Ok(DivisorialValuation { model, vertex, chart, equation, locus: comp.locus })
    }

    pub fn model(&self) -> &Arc<ResolutionModel> {
        &self.model
    }

    /// `v(f)` for `f` in base coordinates.
    pub fn eval(&self, f: &BivariatePolynomial) -> Result<u64, ValuationError> {
        if f.is_zero() {
            return Err(ValuationError::ZeroPolynomial);
        }
        let pulled = self.model.pullback(f, self.chart);
        match &self.locus {
            Locus::Exceptional { .. } => Ok(u64::from(pulled.x_order().unwrap_or(0))),
            Locus::Branch { at, tangent, .. } => Ok(branch_order(pulled, &self.equation, &at.at, tangent.as_ref())),
        }
    }

    pub fn eval_ideal(&self, gens: &[BivariatePolynomial]) -> Result<u64, ValuationError> {
        gens.iter()
            .filter(|g| !g.is_zero())
            .map(|g| self.eval(g))
            .try_fold(None, |acc: Option<u64>, v| v.map(|v| Some(acc.map_or(v, |a| a.min(v)))))?
            .ok_or(ValuationError::EmptyIdeal)
    }

    /// Rescales so that the ideal of `Z` has value one.
    pub fn normalize(&self, pair: &PairDescriptor) -> Result<NormalizedValuation, ValuationError> {
        let vz = self.eval_ideal(&pair.ideal(self.model.field()))?;
        if vz == 0 {
            return Err(ValuationError::NotCenteredInZ);
        }
        Ok(NormalizedValuation { valuation: self.clone(), scale: Rational::new(BigInt::from(1), BigInt::from(vz)) })
    }

    /// `v(f) / v(g)`.
    pub fn log_ratio(&self, f: &BivariatePolynomial, g: &BivariatePolynomial) -> Result<Rational, ValuationError> {
        let vg = self.eval(g)?;
        if vg == 0 {
            return Err(ValuationError::DivisionUndefined);
        }
        let vf = self.eval(f)?;
        Ok(Rational::new(BigInt::from(vf), BigInt::from(vg)))
    }
}

/// Number of times the branch of `eq` through `p` divides `f`. With a
/// tangent given, only factors tangent to it there count.
fn branch_order(
    mut f: BivariatePolynomial,
    eq: &BivariatePolynomial,
    p: &crate::arith::Point,
    tangent: Option<&LinearForm>,
) -> u64 {
    let mut count = 0;
    loop {
        let h = f.gcd(eq);
        if h.is_constant() || !h.eval(&p.x, &p.y).is_zero() {
            return count;
        }
        if let Some(l) = tangent {
            let fd = h.field().clone();
            let cone = h.shift(&p.x, &p.y).lowest_form();
            if !cone.eval(&fd.neg(&l.y), &l.x).is_zero() {
                return count;
            }
        }
        f = f.div_exact(&h).expect("gcd divides");
        count += 1;
    }
}

/// A valuation times a positive rational scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedValuation {
    pub valuation: DivisorialValuation,
    pub scale: Rational,
}

impl NormalizedValuation {
    pub fn scaled(valuation: DivisorialValuation, scale: Rational) -> Self {
        NormalizedValuation { valuation, scale }
    }

    pub fn eval(&self, f: &BivariatePolynomial) -> Result<Rational, ValuationError> {
        Ok(&self.scale * Rational::from_integer(BigInt::from(self.valuation.eval(f)?)))
    }

    pub fn eval_ideal(&self, gens: &[BivariatePolynomial]) -> Result<Rational, ValuationError> {
        Ok(&self.scale * Rational::from_integer(BigInt::from(self.valuation.eval_ideal(gens)?)))
    }

    /// Normalizes again; the returned scale is relative to `self`.
    pub fn normalize(&self, pair: &PairDescriptor) -> Result<NormalizedValuation, ValuationError> {
        let vz = self.eval_ideal(&pair.ideal(self.valuation.model.field()))?;
        if vz.is_zero() {
            return Err(ValuationError::NotCenteredInZ);
        }
        Ok(NormalizedValuation { valuation: self.valuation.clone(), scale: Rational::from_integer(1.into()) / vz })
    }

    pub fn log_ratio(&self, f: &BivariatePolynomial, g: &BivariatePolynomial) -> Result<Rational, ValuationError> {
        let vg = self.eval(g)?;
        if vg.is_zero() {
            return Err(ValuationError::DivisionUndefined);
        }
        Ok(self.eval(f)? / vg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Vertex(VertexId),
    /// Index into [`complement_components`] and the component itself.
    Component(usize, ComplementComponent),
}

/// Where the valuation of vertex `v` is centered on the model of `S`.
pub fn center(v: VertexId, s: &VertexSet) -> Result<Location, ValuationError> {
    if !s.reference().contains(v) {
        return Err(ValuationError::UnknownVertex(v));
    }
    if s.contains(v) {
        return Ok(Location::Vertex(v));
    }
    complement_components(s)
        .into_iter()
        .enumerate()
        .find(|(_, c)| c.vertices().contains(&v))
        .map(|(i, c)| Location::Component(i, c))
        .ok_or(ValuationError::UnknownVertex(v))
}
