//! Integer polynomials in x, y, z: parsing, canonical printing and support.

use crate::error::{Error, Result};
use crate::lattice::Vector;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

pub type ExponentVector = [u32; 3];

pub const VARIABLES: [&str; 3] = ["x", "y", "z"];

/// A finite map from exponent vectors to nonzero integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl Polynomial {
    /// Builds a polynomial, combining like terms and dropping zero coefficients.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, C)>,
        C: Into<BigInt>,
    {
        let mut map: BTreeMap<ExponentVector, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(BigInt::zero) += c.into();
        }
        map.retain(|_, c| !c.is_zero());
        Polynomial { terms: map }
    }

    pub fn monomial(e: ExponentVector) -> Self {
        Self::from_terms([(e, 1)])
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coefficient(&self, e: ExponentVector) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Exponent vectors carrying a nonzero coefficient.
    pub fn support(&self) -> BTreeSet<ExponentVector> {
        self.terms.keys().copied().collect()
    }

    /// The support as lattice vectors.
    pub fn support_vectors(&self) -> Vec<Vector> {
        self.terms
            .keys()
            .map(|e| [e[0] as i64, e[1] as i64, e[2] as i64])
            .collect()
    }

    /// Sub-sum of the terms whose exponents satisfy `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&ExponentVector) -> bool) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }
}

/// Formats a term map in graded-lexicographic order, highest degree first.
pub fn format_terms<'a, I>(terms: I, names: &[String]) -> String
where
    I: IntoIterator<Item = (&'a [u32], &'a BigInt)>,
{
    let mut items: Vec<(&[u32], &BigInt)> = terms.into_iter().collect();
    items.sort_by(|a, b| {
        let da: u64 = a.0.iter().map(|&x| x as u64).sum();
        let db: u64 = b.0.iter().map(|&x| x as u64).sum();
        db.cmp(&da).then_with(|| b.0.cmp(a.0))
    });
    if items.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in items.iter().enumerate() {
        let negative = c.is_negative();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let factors: Vec<String> = e
            .iter()
            .zip(names)
            .filter(|(k, _)| **k > 0)
            .map(|(k, name)| {
                if *k == 1 {
                    name.clone()
                } else {
                    format!("{name}^{k}")
                }
            })
            .collect();
        let magnitude = c.abs();
        if factors.is_empty() {
            out.push_str(&magnitude.to_string());
        } else {
            if !magnitude.is_one() {
                out.push_str(&magnitude.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = VARIABLES.iter().map(|s| s.to_string()).collect();
        let s = format_terms(self.terms.iter().map(|(e, c)| (&e[..], c)), &names);
        f.write_str(&s)
    }
}

impl FromStr for Polynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}

/// Parses text such as `"y^3 + x*z^2 - x^4"` or `"x^2y^2 + z^3 = 0"`.
pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    let tokens: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut parser = Parser { tokens, i: 0 };
    let terms = parser.polynomial()?;
    let p = Polynomial::from_terms(terms);
    if p.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    Ok(p)
}

pub fn support(p: &Polynomial) -> BTreeSet<ExponentVector> {
    p.support()
}

struct Parser {
    tokens: Vec<(usize, char)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.tokens.get(self.i).map(|t| t.1)
    }

    fn pos(&self) -> usize {
        self.tokens
            .get(self.i)
            .map(|t| t.0)
            .unwrap_or_else(|| self.tokens.last().map(|t| t.0 + 1).unwrap_or(0))
    }

    fn syntax(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos(),
            msg: msg.to_string(),
        }
    }

    fn polynomial(&mut self) -> Result<Vec<(ExponentVector, BigInt)>> {
        let mut terms = Vec::new();
        if self.peek().is_none() {
            return Err(self.syntax("empty input"));
        }
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.i += 1;
                    1
                }
                Some('-') | Some('\u{2212}') => {
                    self.i += 1;
                    -1
                }
                _ if first => 1,
                None => break,
                Some('=') => break,
                Some(_) => return Err(self.syntax("expected '+' or '-'")),
            };
            first = false;
            let (e, c) = self.term()?;
            terms.push((e, c * sign));
            match self.peek() {
                None | Some('=') => break,
                _ => {}
            }
        }
        if self.peek() == Some('=') {
            self.i += 1;
            if self.peek() != Some('0') {
                return Err(self.syntax("expected '0' after '='"));
            }
            self.i += 1;
        }
        if self.peek().is_some() {
            return Err(self.syntax("unexpected trailing input"));
        }
        Ok(terms)
    }

    fn number(&mut self) -> Option<BigInt> {
        let start = self.i;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.i += 1;
        }
        if self.i == start {
            return None;
        }
        let digits: String = self.tokens[start..self.i].iter().map(|t| t.1).collect();
        digits.parse().ok()
    }

    fn term(&mut self) -> Result<(ExponentVector, BigInt)> {
        let mut coefficient = BigInt::one();
        let mut exponent = [0u32; 3];
        let mut seen_factor = false;
        if let Some(n) = self.number() {
            coefficient = n;
            seen_factor = true;
            if self.peek() == Some('*') {
                self.i += 1;
                if !matches!(self.peek(), Some(c) if c.is_alphabetic()) {
                    return Err(self.syntax("expected a variable after '*'"));
                }
            }
        }
        loop {
            match self.peek() {
                Some(c) if c.is_alphabetic() => {
                    let pos = self.pos();
                    let idx = match c {
                        'x' => 0,
                        'y' => 1,
                        'z' => 2,
                        other => {
                            return Err(Error::UnknownVariable {
                                pos,
                                name: other.to_string(),
                            })
                        }
                    };
                    self.i += 1;
                    let k = self.exponent()?;
                    exponent[idx] = exponent[idx]
                        .checked_add(k)
                        .ok_or_else(|| self.syntax("exponent overflow"))?;
                    seen_factor = true;
                    if self.peek() == Some('*') {
                        self.i += 1;
                        if !matches!(self.peek(), Some(c) if c.is_alphabetic()) {
                            return Err(self.syntax("expected a variable after '*'"));
                        }
                    }
                }
                Some(c) if c.is_ascii_digit() && seen_factor => {
                    return Err(self.syntax("unexpected number inside a term"));
                }
                _ => break,
            }
        }
        if !seen_factor {
            return Err(self.syntax("expected a coefficient or a variable"));
        }
        Ok((exponent, coefficient))
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.i += 1;
        if matches!(self.peek(), Some('-') | Some('\u{2212}')) {
            return Err(Error::NegativeExponent { pos: self.pos() });
        }
        let pos = self.pos();
        let n = self
            .number()
            .ok_or_else(|| self.syntax("expected an exponent after '^'"))?;
        let k: u32 = u32::try_from(n).map_err(|_| Error::Syntax {
            pos,
            msg: "exponent too large".into(),
        })?;
        if k == 0 {
            return Err(Error::Syntax {
                pos,
                msg: "exponent must be at least 1".into(),
            });
        }
        Ok(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn parses_elliptic_example() {
        let f = p("y^3 + x*z^2 - x^4");
        assert_eq!(f.coefficient([0, 3, 0]), BigInt::from(1));
        assert_eq!(f.coefficient([1, 0, 2]), BigInt::from(1));
        assert_eq!(f.coefficient([4, 0, 0]), BigInt::from(-1));
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn parses_juxtaposition_and_trailing_equation() {
        let f = p("z^3+y^3*z+x^2*y^2");
        let g = p("z^3 + y^3z + x^2y^2 = 0");
        assert_eq!(f, g);
        assert_eq!(
            f.support(),
            [[0, 0, 3], [0, 3, 1], [2, 2, 0]].into_iter().collect()
        );
    }

    #[test]
    fn combines_like_terms_and_rejects_cancellation() {
        assert_eq!(p("x + 2x - y"), p("3*x - y"));
        assert_eq!(parse_polynomial("x^2 - x^2"), Err(Error::EmptyPolynomial));
    }

    #[test]
    fn reports_errors_with_positions() {
        assert!(matches!(
            parse_polynomial("x^-2"),
            Err(Error::NegativeExponent { pos: 2 })
        ));
        assert!(matches!(
            parse_polynomial("x + w"),
            Err(Error::UnknownVariable { pos: 4, .. })
        ));
        assert!(matches!(parse_polynomial("x +* y"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x^"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn prints_canonically() {
        assert_eq!(p("y^3 + x*z^2 - x^4").to_string(), "-x^4 + x*z^2 + y^3");
        assert_eq!(p("-2*x*y + 7 - z").to_string(), "-2*x*y - z + 7");
        assert_eq!(p("x").to_string(), "x");
    }

    #[test]
    fn support_of_b_type_equation() {
        let f = p("x^7*z - x^2*y^2 - y^2*z");
        assert_eq!(
            f.support(),
            [[7, 0, 1], [2, 2, 0], [0, 2, 1]].into_iter().collect()
        );
    }
}
