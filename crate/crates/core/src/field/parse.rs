//! Recursive-descent parser for scalar literals.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := power (('*' | '/') power | power)*     juxtaposition multiplies
//! power  := atom ('^' digits)?
//! atom   := digits | 't' | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::{Field, FieldError, Scalar};

/// Parses `s` as an element of `field`. Integers are reduced mod p in F_p;
/// `t` is only accepted in Q(t).
pub fn parse_scalar(field: Field, s: &str) -> Result<Scalar, FieldError> {
    let mut p = Parser {
        src: s,
        bytes: s.as_bytes(),
        pos: 0,
        field,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    field: Field,
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> FieldError {
        FieldError::Syntax {
            literal: self.src.to_string(),
            reason: format!("{reason} at offset {}", self.pos),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar, FieldError> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            -self.term()?
        } else {
            self.term()?
        };
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, FieldError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = acc.checked_div(&self.power()?)?;
                }
                Some(b't' | b'(') => acc = acc * self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Scalar, FieldError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self
                .digits()
                .ok_or_else(|| self.err("expected exponent"))?
                .to_string()
                .parse::<u64>()
                .map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, FieldError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b't') => {
                let v = self
                    .field
                    .variable()
                    .ok_or_else(|| self.err("variable t outside Q(t)"))?;
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits().expect("digit present");
                Ok(self.field.from_bigint(&n))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.src[start..self.pos].parse().expect("ascii digits"))
    }
}
