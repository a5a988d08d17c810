//! Text grammar for scalars:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | 'v' | 'q' | 'd' | '(' expr ')'
//! ```
//!
//! `q` stands for `v^2` and `d` for the loop value `q/(1+q)^2`.

use num_bigint::BigInt;

use super::poly::Poly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::parse(p.pos, "unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.unary()?;
                    acc = acc.div(&rhs).map_err(|_| Error::parse(at, "division by zero"))?;
                }
                Some(c) if c.is_ascii_digit() || matches!(c, b'v' | b'q' | b'd' | b'(') => {
                    acc = acc * self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.pos;
        let e = self.integer()?;
        let e: i32 = e
            .try_into()
            .map_err(|_| Error::parse(at, "exponent out of range"))?;
        base.pow(if neg { -e } else { e })
            .map_err(|_| Error::parse(at, "zero raised to a negative power"))
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Scalar::from_poly(Poly::constant(self.integer()?))),
            Some(b'v') => {
                self.pos += 1;
                Ok(Scalar::v())
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(Scalar::q())
            }
            Some(b'd') => {
                self.pos += 1;
                Ok(Scalar::delta())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::parse(self.pos, "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(Error::parse(self.pos, "unexpected character")),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_alias() {
        assert_eq!(parse_scalar("q/(1+q)^2").unwrap(), Scalar::delta());
        assert_eq!(parse_scalar("d").unwrap(), Scalar::delta());
    }

    #[test]
    fn markov_constant() {
        assert_eq!(parse_scalar("-v/(1+v^2)").unwrap(), Scalar::markov_f());
    }

    #[test]
    fn division_by_zero_is_reported() {
        match parse_scalar("1/0") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn juxtaposition_and_negative_powers() {
        assert_eq!(parse_scalar("2v^2").unwrap(), parse_scalar("2*q").unwrap());
        assert_eq!(parse_scalar("q^-1").unwrap(), Scalar::q().inv().unwrap());
        assert_eq!(parse_scalar("(1+v)(1-v)").unwrap(), parse_scalar("1-q").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_scalar("1 + x"), Err(Error::Parse { position: 4, .. })));
        assert!(matches!(parse_scalar("(1+v"), Err(Error::Parse { position: 4, .. })));
        assert!(matches!(parse_scalar(""), Err(Error::Parse { position: 0, .. })));
    }
}
