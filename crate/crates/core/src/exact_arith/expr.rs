//! Polynomial expressions in the field generator, e.g. `zeta^2`, `1/2 - 3*r`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{NumberField, NumberFieldElement, Rational};
use crate::error::{Error, Result};

/// Evaluates an expression built from rationals, the generator name,
/// `+ - * / ^` and parentheses. Division is only allowed by rationals.
pub fn parse_element(field: &Arc<NumberField>, text: &str) -> Result<NumberFieldElement> {
    let mut parser = Parser {
        field,
        src: text.as_bytes(),
        pos: 0,
    };
    let value = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    field: &'a Arc<NumberField>,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<NumberFieldElement> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { acc.add(&rhs)? } else { acc.sub(&rhs)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<NumberFieldElement> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            if op == b'*' {
                acc = acc.mul(&rhs)?;
            } else {
                let divisor = rhs
                    .as_rational()
                    .cloned()
                    .ok_or_else(|| self.error("division is only supported by rationals"))?;
                if divisor.is_zero() {
                    return Err(self.error("division by zero"));
                }
                acc = acc.scale(&(Rational::from_integer(1.into()) / divisor));
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<NumberFieldElement> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<NumberFieldElement> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let exp: u32 = digits
                .parse()
                .map_err(|_| self.error("expected a nonnegative integer exponent"))?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<NumberFieldElement> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let value: BigInt = digits.parse().expect("digits");
                Ok(NumberFieldElement::from_rational(
                    self.field,
                    Rational::from_integer(value),
                ))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if name == self.field.generator_name() {
                    Ok(NumberFieldElement::generator(self.field))
                } else {
                    self.pos = start;
                    Err(self.error(&format!("unknown identifier `{name}`")))
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
