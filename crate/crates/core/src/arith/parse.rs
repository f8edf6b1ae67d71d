//! Text syntax for rational bivariate polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (['*'|'/'] power)*        juxtaposition means '*'
//! power  := atom ['^' integer]
//! atom   := integer | 'x' | 'y' | '(' expr ')'
//! ```
//! Division is only allowed by a nonzero constant.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::field::{CoefficientField, FieldElem};
use super::poly::BivariatePolynomial;
use super::Rational;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at offset {at}")]
    UnexpectedChar { ch: char, at: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {expected} at offset {at}")]
    Expected { expected: &'static str, at: usize },
    #[error("division by a non-constant or zero polynomial at offset {at}")]
    BadDivision { at: usize },
    #[error("exponent too large at offset {at}")]
    ExponentTooLarge { at: usize },
    #[error("empty input")]
    Empty,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    X,
    Y,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                let mut n = BigInt::from(0);
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    n = n * 10 + BigInt::from(bytes[i] as u32 - '0' as u32);
                    i += 1;
                }
                out.push((Tok::Num(n), start));
                continue;
            }
            'x' | 'X' => Tok::X,
            'y' | 'Y' => Tok::Y,
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ch => return Err(ParseError::UnexpectedChar { ch, at: i }),
        };
        out.push((tok, i));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    field: Arc<CoefficientField>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(usize::MAX, |(_, o)| *o)
    }

    fn expr(&mut self) -> Result<BivariatePolynomial, ParseError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -self.term()?
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BivariatePolynomial, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.offset();
                    let d = self.power()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(ParseError::BadDivision { at });
                    }
                    let inv = self.field.inv(&d.coeff(0, 0)).expect("nonzero constant");
                    acc = acc.scale(&inv);
                }
                Some(Tok::Num(_)) | Some(Tok::X) | Some(Tok::Y) | Some(Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<BivariatePolynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let at = self.offset();
            match self.toks.get(self.pos) {
                Some((Tok::Num(n), _)) => {
                    let e: u32 = u32::try_from(n).ok().filter(|&e| e <= 4096).ok_or(ParseError::ExponentTooLarge { at })?;
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                Some(_) => Err(ParseError::Expected { expected: "integer exponent", at }),
                None => Err(ParseError::UnexpectedEnd),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<BivariatePolynomial, ParseError> {
        let at = self.offset();
        let f = self.field.clone();
        let tok = self.peek().cloned().ok_or(ParseError::UnexpectedEnd)?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(BivariatePolynomial::constant(FieldElem::from_rational(Rational::from_integer(n)), f)),
            Tok::X => Ok(BivariatePolynomial::x(f)),
            Tok::Y => Ok(BivariatePolynomial::y(f)),
            Tok::LParen => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(_) => Err(ParseError::Expected { expected: "')'", at: self.offset() }),
                    None => Err(ParseError::UnexpectedEnd),
                }
            }
            _ => Err(ParseError::Expected { expected: "number, variable or '('", at }),
        }
    }
}

/// Parses a polynomial with rational coefficients in `x`, `y`.
pub fn parse_polynomial(s: &str) -> Result<BivariatePolynomial, ParseError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut p = Parser { toks, pos: 0, field: Arc::new(CoefficientField::rationals()) };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(ParseError::Expected { expected: "operator", at: p.offset() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parses_standard_inputs() {
        let f = parse_polynomial("y^2-x^3").unwrap();
        assert_eq!(f.to_string(), "-x^3 + y^2");
        let g = parse_polynomial("2x(y - 1/2)").unwrap();
        assert_eq!(g.to_string(), "2*x*y - x");
        assert_eq!(parse_polynomial("-(x+y)^2 + 2*x*y").unwrap().to_string(), "-x^2 - y^2");
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_polynomial("x +* y"), Err(ParseError::Expected { .. })));
        assert!(matches!(parse_polynomial("x/y"), Err(ParseError::BadDivision { .. })));
        assert!(matches!(parse_polynomial("z"), Err(ParseError::UnexpectedChar { .. })));
        assert_eq!(parse_polynomial("(x"), Err(ParseError::UnexpectedEnd));
        assert_eq!(parse_polynomial("  "), Err(ParseError::Empty));
    }

    #[test]
    fn round_trips_canonical_text() {
        for s in ["x*y*(x+y)", "y^2 - x^4", "3/4*x^2 - y + 7"] {
            let p = parse_polynomial(s).unwrap();
            assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
        }
    }
}
