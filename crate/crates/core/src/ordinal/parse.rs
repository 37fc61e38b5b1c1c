//! Ordinal expression grammar:
//!
//! ```text
//! expr   := term ( '+' term )*
//! term   := factor ( '*' nat )?
//! factor := 'w' ( '^' factor )? | nat | '(' expr ')'
//! nat    := decimal integer >= 0
//! ```
//!
//! Input need not be in normal form; `+`, `*` and `w^` are evaluated with
//! ordinal semantics, left to right.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{Ordinal, DEFAULT_DEPTH_CAP};
use crate::error::{Error, Result};

/// How to spell omega when rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Notation {
    #[default]
    Ascii,
    Unicode,
}

impl Notation {
    fn omega(self) -> &'static str {
        match self {
            Notation::Ascii => "w",
            Notation::Unicode => "ω",
        }
    }
}

pub fn parse_ordinal(text: &str) -> Result<Ordinal> {
    parse_ordinal_with_cap(text, DEFAULT_DEPTH_CAP)
}

/// [`parse_ordinal`] for a fragment starting at byte `offset` of a longer
/// line, so that error positions refer to the line.
pub(crate) fn parse_ordinal_at(text: &str, offset: usize) -> Result<Ordinal> {
    parse_ordinal(text).map_err(|e| match e {
        Error::Parse { pos, msg, .. } => Error::parse(offset + pos, msg),
        other => other,
    })
}

pub fn parse_ordinal_with_cap(text: &str, depth_cap: usize) -> Result<Ordinal> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        depth_cap,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.unexpected("end of input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth_cap: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, wanted: &str) -> Error {
        match self.src.get(self.pos) {
            Some(_) => {
                let found = String::from_utf8_lossy(&self.src[self.pos..])
                    .chars()
                    .next()
                    .unwrap_or('?');
                Error::parse(self.pos, format!("expected {wanted}, found '{found}'"))
            }
            None => Error::parse(self.pos, format!("expected {wanted}, found end of input")),
        }
    }

    fn expr(&mut self) -> Result<Ordinal> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            let rhs = self.term()?;
            acc = &acc + &rhs;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal> {
        let f = self.factor()?;
        if self.eat(b'*') {
            let at = self.pos;
            let n = self.nat()?;
            if n.is_zero() {
                return Err(Error::Domain(format!(
                    "coefficient 0 at position {at} (coefficients must be at least 1)"
                )));
            }
            return Ok(&f * &Ordinal::nat(n));
        }
        Ok(f)
    }

    fn factor(&mut self) -> Result<Ordinal> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                if self.eat(b'^') {
                    let e = self.factor()?;
                    e.omega_pow_capped(self.depth_cap)
                } else {
                    Ok(Ordinal::omega())
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.unexpected("')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            _ => Err(self.unexpected("'w', a number or '('")),
        }
    }

    fn nat(&mut self) -> Result<BigUint> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected("a number"));
        }
        // Digits only, so this cannot fail.
        Ok(BigUint::parse_bytes(&self.src[start..self.pos], 10).expect("decimal digits"))
    }
}

impl Ordinal {
    /// Canonical normal-form text, e.g. `w^(w)*2 + w^2 + 3`.
    pub fn render(&self, notation: Notation) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let w = notation.omega();
        let parts: Vec<String> = self
            .terms()
            .iter()
            .map(|t| {
                let (e, c) = (t.exponent(), t.coefficient());
                if e.is_zero() {
                    return c.to_string();
                }
                let mut s = if e.is_one() {
                    w.to_string()
                } else if let Some(n) = e.as_nat() {
                    format!("{w}^{n}")
                } else {
                    format!("{w}^({})", e.render(notation))
                };
                if !c.is_one() {
                    s.push('*');
                    s.push_str(&c.to_string());
                }
                s
            })
            .collect();
        parts.join(" + ")
    }

    fn is_one(&self) -> bool {
        self.as_nat().is_some_and(|n| n.is_one())
    }
}
