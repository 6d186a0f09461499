//! Text syntax for polynomials.
//!
//! ```text
//! expr   := sign? term (sign term)*
//! term   := factor (['*'] factor | '/' factor)*
//! factor := atom ['^' uint]
//! atom   := uint | var | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. The `*` may be dropped after a number or a
//! closing parenthesis; division is only by nonzero constants. Examples:
//! `x^3-23x^2+7x-1`, `3/2x^2 + 1`, `(1/2)b^2+3`, `(x+1)^2/8`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::RatPoly;
use crate::error::{Error, Result};

pub fn parse_poly(input: &str, var: &str) -> Result<RatPoly> {
    let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    let var: Vec<char> = var.chars().collect();
    if chars.is_empty() {
        return Err(err("empty polynomial"));
    }
    let mut p = Parser { s: &chars, pos: 0, var: &var };
    let out = p.expr()?;
    if p.pos < chars.len() {
        return Err(err(format!("unexpected {:?} at position {}", chars[p.pos], p.pos)));
    }
    Ok(out)
}

struct Parser<'a> {
    s: &'a [char],
    pos: usize,
    var: &'a [char],
}

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn at_var(&self) -> bool {
        self.s[self.pos..].starts_with(self.var)
    }

    fn expr(&mut self) -> Result<RatPoly> {
        let mut acc = RatPoly::zero();
        let mut first = true;
        loop {
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                return Ok(acc);
            };
            first = false;
            let t = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
            if self.pos >= self.s.len() {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatPoly> {
        let (mut acc, mut implicit_ok) = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?.0;
                implicit_ok = false;
            } else if self.eat('/') {
                let (d, _) = self.factor()?;
                let c = match d.degree() {
                    Some(0) => d.coeff(0),
                    _ => return Err(err("division is only by nonzero constants")),
                };
                acc = acc.scale(&c.recip());
                implicit_ok = true;
            } else if implicit_ok && (self.peek() == Some('(') || self.at_var() && self.pos < self.s.len()) {
                let (f, ok) = self.factor()?;
                acc = &acc * &f;
                implicit_ok = ok;
            } else {
                return Ok(acc);
            }
        }
    }

    /// The flag says whether a factor may follow without `*`.
    fn factor(&mut self) -> Result<(RatPoly, bool)> {
        let (base, implicit_ok) = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(err(format!("missing ')' at position {}", self.pos)));
                }
                (e, true)
            }
            Some(c) if c.is_ascii_digit() => (RatPoly::constant(BigRational::from_integer(self.bigint()?)), true),
            _ if self.at_var() && self.pos < self.s.len() => {
                self.pos += self.var.len();
                (RatPoly::monomial(1), false)
            }
            _ => return Err(err(format!("expected a term at position {}", self.pos))),
        };
        if self.eat('^') {
            let k: u32 = self.uint()?.try_into().map_err(|_| err("exponent too large"))?;
            return Ok((base.pow(k), implicit_ok));
        }
        Ok((base, implicit_ok))
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(format!("expected digits at position {start}")));
        }
        Ok(self.s[start..self.pos].iter().collect())
    }

    fn bigint(&mut self) -> Result<BigInt> {
        self.digits()?.parse().map_err(|_| err("bad integer"))
    }

    fn uint(&mut self) -> Result<u64> {
        self.digits()?.parse().map_err(|_| err("bad exponent"))
    }
}
