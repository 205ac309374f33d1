//! Parser for parameter expressions: numbers, `i`, parameter names and the
//! infix operators `^ * / + -` with parentheses.

use alloc::string::{String, ToString};

use crate::error::{Error, Result};
use crate::number::{Number, Rational};
use crate::scalar::Scalar;
use crate::symbols::Param;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn err(offset: usize, message: &str) -> Error {
    Error::Parse { offset, message: message.to_string() }
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<char> {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                return Some(if c == '\u{2212}' { '-' } else { c });
            }
        }
        None
    }

    fn bump(&mut self) {
        if let Some(c) = self.src[self.pos..].chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some('/') => {
                    let at = self.pos;
                    self.bump();
                    let d = self.unary()?;
                    acc = acc.div(&d).map_err(|_| err(at, "division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some('-') => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.primary()?;
        if self.peek() == Some('^') {
            self.bump();
            let at = self.pos;
            let e = self.exponent()?;
            return base.pow(e).map_err(|_| err(at, "negative power of zero"));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        let at = self.pos;
        let (neg, paren) = match self.peek() {
            Some('(') => {
                self.bump();
                let neg = self.peek() == Some('-');
                if neg {
                    self.bump();
                }
                (neg, true)
            }
            Some('-') => {
                self.bump();
                (true, false)
            }
            _ => (false, false),
        };
        self.peek();
        let digits = self.take_while(|c| c.is_ascii_digit());
        let v: i64 = digits.parse().map_err(|_| err(at, "expected integer exponent"))?;
        if paren {
            if self.peek() != Some(')') {
                return Err(err(self.pos, "expected ')'"));
            }
            self.bump();
        }
        Ok(if neg { -v } else { v })
    }

    fn take_while<F: Fn(char) -> bool>(&mut self, f: F) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if f(c) {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    fn primary(&mut self) -> Result<Scalar> {
        let at = self.pos;
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(err(self.pos, "expected ')'"));
                }
                self.bump();
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let r = Rational::parse_integer(digits).ok_or_else(|| err(at, "bad integer"))?;
                Ok(Scalar::number(Number::real(r)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                if name == "i" {
                    return Ok(Scalar::i());
                }
                Param::parse(name).map(Scalar::param).ok_or_else(|| err(at, "unknown symbol"))
            }
            Some(_) => Err(err(at, "unexpected character")),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

/// Parses an expression into a reduced [`Scalar`].
pub fn parse_scalar(src: &str) -> Result<Scalar> {
    let mut p = Parser { src, pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(err(p.pos, "trailing input"));
    }
    Ok(v)
}

impl core::str::FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scalar> {
        parse_scalar(s)
    }
}

/// Convenience used by tests and builders; panics on malformed input.
pub fn sc(src: &str) -> Scalar {
    match parse_scalar(src) {
        Ok(s) => s,
        Err(e) => panic!("{}: {e}", String::from(src)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        assert_eq!(sc("1 + 2*3^2"), Scalar::int(19));
        assert_eq!(sc("-2^2"), Scalar::int(-4));
        assert_eq!(sc("(u+1)^2 - u^2 - 2*u"), Scalar::one());
        assert_eq!(sc("i*i"), Scalar::int(-1));
        assert_eq!(sc("u^(-1)*u"), Scalar::one());
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_scalar("u + foo") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_scalar("1/(u-u)").is_err());
        assert!(parse_scalar("(u").is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        for s in ["u^2*p1 - 3/4*i*q_1 + 1", "(u + 1)/(u - sigma_1_2)", "(1/2 - 3*i)*u", "-i*p/(u^2 + 1)"] {
            let v = sc(s);
            assert_eq!(sc(&v.to_text()), v, "{s} -> {}", v.to_text());
        }
    }
}
