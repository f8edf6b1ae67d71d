//! Human-written pair descriptions.
//!
//! ```toml
//! [Z]
//! type = "curve"
//! poly = "y^2 - x^3"
//!
//! [options]
//! ext_bound = 4
//! blowup_cap = 64
//! ```

use nalink_core::arith::{parse_polynomial, FieldLimits, ParseError};
use nalink_core::blowup::{PairDescriptor, ResolveOptions};
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("bad pair description: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("bad polynomial: {0}")]
    Poly(#[from] ParseError),
    #[error("curve polynomial is missing")]
    MissingPoly,
    #[error("unknown Z type {0:?}")]
    UnknownType(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairFile {
    #[serde(rename = "Z", alias = "z")]
    z: ZSection,
    #[serde(default)]
    options: OptionsSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ZSection {
    #[serde(rename = "type")]
    kind: String,
    poly: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OptionsSection {
    ext_bound: Option<usize>,
    blowup_cap: Option<usize>,
}

/// A parsed pair plus the options it asked for.
#[derive(Clone, Debug)]
pub struct PairInput {
    pub pair: PairDescriptor,
    pub ext_bound: Option<usize>,
    pub blowup_cap: Option<usize>,
}

pub fn parse_pair(text: &str) -> Result<PairInput, InputError> {
    let file: PairFile = toml::from_str(text)?;
    let pair = match file.z.kind.as_str() {
        "point" => PairDescriptor::Point,
        "curve" => PairDescriptor::Curve(parse_polynomial(file.z.poly.as_deref().ok_or(InputError::MissingPoly)?)?),
        other => return Err(InputError::UnknownType(other.to_string())),
    };
    Ok(PairInput { pair, ext_bound: file.options.ext_bound, blowup_cap: file.options.blowup_cap })
}

/// Flag, then file, then environment, then the built-in default.
pub fn resolve_options(input: &PairInput, ext_flag: Option<usize>, cap_flag: Option<usize>, ext_env: Option<usize>) -> ResolveOptions {
    let mut opts = ResolveOptions::default();
    if let Some(d) = ext_flag.or(input.ext_bound).or(ext_env) {
        opts.limits = FieldLimits { max_degree: d, ..opts.limits };
    }
    if let Some(c) = cap_flag.or(input.blowup_cap) {
        opts.blowup_cap = c;
    }
    opts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_points_and_curves() {
        let p = parse_pair("[Z]\ntype = \"point\"\n").unwrap();
        assert_eq!(p.pair, PairDescriptor::Point);
        let c = parse_pair("[Z]\ntype = \"curve\"\npoly = \"y^2-x^3\"\n[options]\next_bound = 1\n").unwrap();
        assert_eq!(c.ext_bound, Some(1));
        assert!(matches!(c.pair, PairDescriptor::Curve(_)));
        assert!(matches!(parse_pair("[Z]\ntype = \"curve\"\n"), Err(InputError::MissingPoly)));
        assert!(matches!(parse_pair("[Z]\ntype = \"line\"\n"), Err(InputError::UnknownType(_))));
    }

    #[test]
    fn option_precedence() {
        let p = parse_pair("[Z]\ntype = \"point\"\n[options]\next_bound = 2\n").unwrap();
        assert_eq!(resolve_options(&p, Some(1), None, Some(4)).limits.max_degree, 1);
        assert_eq!(resolve_options(&p, None, None, Some(4)).limits.max_degree, 2);
        let q = parse_pair("[Z]\ntype = \"point\"\n").unwrap();
        assert_eq!(resolve_options(&q, None, None, Some(4)).limits.max_degree, 4);
        assert_eq!(resolve_options(&q, None, Some(3), None).blowup_cap, 3);
    }
}
