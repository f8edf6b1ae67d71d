//! Exact arithmetic: rationals, quadratic towers over them, polynomials in
//! one and two variables, and the local algebra used by the blowup engine.

use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

pub mod field;
pub mod parse;
pub mod poly;
pub mod roots;
pub mod unipoly;

pub use field::{CoefficientField, FieldElem, FieldError, FieldLimits};
pub use parse::{parse_polynomial, ParseError};
pub use poly::{BivariatePolynomial, Monomial};
pub use roots::{
    distinct_lines, factor_binary_form, order_at_point, singular_points, split_univariate,
    tangent_cone, BinaryFactorization, LinearForm, Point, Window,
};
pub use unipoly::UniPoly;

pub type Rational = num_rational::BigRational;

/// An irreducible polynomial over a given field, used to report which
/// extension would be needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPolynomial {
    pub field: Arc<CoefficientField>,
    pub poly: UniPoly,
}

impl MinimalPolynomial {
    pub fn new(field: Arc<CoefficientField>, poly: UniPoly) -> Self {
        MinimalPolynomial { field, poly }
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn render(&self) -> String {
        self.poly.display(&self.field, "z")
    }
}

impl fmt::Display for MinimalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("form is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("needs extension by a root of {0}")]
    NeedsExtension(MinimalPolynomial),
    #[error("extension tower bound exceeded{}", needed.as_ref().map(|m| alloc::format!(" (needs a root of {m})")).unwrap_or_default())]
    TowerBoundExceeded { needed: Option<MinimalPolynomial> },
}

impl ArithError {
    pub fn minimal_polynomial(&self) -> Option<&MinimalPolynomial> {
        match self {
            ArithError::NeedsExtension(m) => Some(m),
            ArithError::TowerBoundExceeded { needed } => needed.as_ref(),
            _ => None,
        }
    }
}
