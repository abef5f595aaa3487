//! Recursive-descent parser for the polynomial input grammar:
//!
//! ```text
//! expr     := sign? term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' nat)?
//! base     := 'x' | 'y' | rational | '(' expr ')'
//! rational := int ('/' posint)?
//! ```
//!
//! Whitespace is ignored. Implicit multiplication (`2x`) is rejected.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Parses `text` into a canonical [`Poly`]; arithmetic is exact.
pub fn parse_poly(text: &str) -> Result<Poly> {
    let mut p = Parser {
        chars: text.char_indices().collect(),
        pos: 0,
        len: text.len(),
    };
    let out = p.expr()?;
    p.skip_ws();
    if let Some(&(at, c)) = p.chars.get(p.pos) {
        return Err(syntax(at, format!("unexpected '{c}'")));
    }
    Ok(out)
}

fn syntax(pos: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        message: message.into(),
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self
            .chars
            .get(self.pos)
            .is_some_and(|(_, c)| c.is_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(at, _)| at)
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn expr(&mut self) -> Result<Poly> {
        let negate = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c == 'x' || c == 'y' || c == '(' || c.is_ascii_digit() => {
                    return Err(syntax(
                        self.offset(),
                        "implicit multiplication is not allowed; use '*'",
                    ));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.base()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        match self.peek() {
            Some('-') => Err(Error::NegativeExponent { pos: self.offset() }),
            Some(c) if c.is_ascii_digit() => {
                let at = self.offset();
                let e = self.integer()?;
                let e = e
                    .to_u32()
                    .ok_or_else(|| syntax(at, "exponent is too large"))?;
                Ok(base.pow(e))
            }
            _ => Err(syntax(
                self.offset(),
                "expected a natural exponent after '^'",
            )),
        }
    }

    fn base(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('x') => {
                self.bump();
                Ok(Poly::x())
            }
            Some('y') => {
                self.bump();
                Ok(Poly::y())
            }
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(syntax(self.offset(), "expected ')'"));
                }
                self.bump();
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.rational().map(Poly::constant),
            Some(c) => Err(syntax(self.offset(), format!("unexpected '{c}'"))),
            None => Err(syntax(self.offset(), "unexpected end of input")),
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.integer()?;
        if self.peek() != Some('/') {
            return Ok(Rational::from_integer(num));
        }
        self.bump();
        let at = self.offset();
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(syntax(at, "expected a positive denominator after '/'"));
        }
        let den = self.integer()?;
        if den.is_zero() {
            return Err(syntax(at, "denominator must be positive"));
        }
        Ok(Rational::new(num, den))
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|(_, c)| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(syntax(self.offset(), "expected digits"));
        }
        let digits: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        Ok(digits.parse().expect("ascii digits"))
    }
}
