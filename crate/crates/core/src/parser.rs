//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := integer | variable ['^' exponent] | '(' expr ')' ['^' exponent]
//! ```
//!
//! Whitespace is ignored. Integers of any length are reduced mod p. Products
//! need an explicit `*`: `xy` is read as one identifier and is rejected
//! unless the ring declares a variable named `xy`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::monomial::Monomial;
use crate::poly::{Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Byte offset into the source.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

pub fn parse_poly(src: &str, ring: &Arc<Ring>) -> Result<Polynomial, ParseError> {
    let mut parser = Parser {
        src: src.as_bytes(),
        pos: 0,
        ring,
    };
    parser.skip_ws();
    if parser.pos >= parser.src.len() {
        return Err(parser.error("empty expression"));
    }
    let poly = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        let c = parser.src[parser.pos] as char;
        let msg = if c.is_ascii_alphanumeric() || c == '(' {
            format!("unexpected {c:?}; products need an explicit '*'")
        } else if c == ')' {
            "unbalanced ')'".to_string()
        } else {
            format!("unexpected {c:?}")
        };
        return Err(parser.error(msg));
    }
    Ok(poly)
}

/// Parses a comma-separated list of polynomials.
pub fn parse_poly_list(src: &str, ring: &Arc<Ring>) -> Result<Vec<Polynomial>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in src.split(',') {
        let poly = parse_poly(piece, ring).map_err(|e| ParseError {
            position: e.position + offset,
            message: e.message,
        })?;
        out.push(poly);
        offset += piece.len() + 1;
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<Ring>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos.min(self.src.len()),
            message: message.into(),
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

    fn wrap(&self, r: crate::error::Result<Polynomial>, at: usize) -> PResult<Polynomial> {
        r.map_err(|e| ParseError {
            position: at,
            message: e.to_string(),
        })
    }

    fn expr(&mut self) -> PResult<Polynomial> {
        let start = self.pos;
        let negate_first = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate_first {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.wrap(acc.add(&t), start)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.wrap(acc.sub(&t), start)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let at = self.pos;
            let f = self.factor()?;
            acc = self.wrap(acc.mul(&f), at)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> PResult<Polynomial> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(ParseError {
                        position: open,
                        message: "unbalanced '('".to_string(),
                    });
                }
                self.pos += 1;
                match self.exponent()? {
                    None => Ok(inner),
                    Some(k) => {
                        let at = self.pos;
                        self.wrap(inner.pow(k as u32), at)
                    }
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let p = self.ring.characteristic();
                let mut value = 0u32;
                while let Some(&d) = self.src.get(self.pos).filter(|d| d.is_ascii_digit()) {
                    value = p.add(p.mul(value, 10 % p.get()), (d - b'0') as u32 % p.get());
                    self.pos += 1;
                }
                Ok(Polynomial::constant(self.ring, value as i64))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .src
                    .get(self.pos)
                    .is_some_and(|d| d.is_ascii_alphanumeric() || *d == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                let Some(index) = self.ring.var_index(name) else {
                    return Err(ParseError {
                        position: start,
                        message: format!("unknown variable {name:?}"),
                    });
                };
                let power = self.exponent()?.unwrap_or(1);
                Ok(Polynomial::monomial(
                    self.ring,
                    Monomial::var(index, power),
                    1,
                ))
            }
            Some(b')') => Err(self.error("unbalanced ')'")),
            Some(c) => Err(self.error(format!("unexpected {:?}", c as char))),
        }
    }

    /// Parses an optional `^ k` with `1 <= k <= 65535`.
    fn exponent(&mut self) -> PResult<Option<u16>> {
        if self.peek() != Some(b'^') {
            return Ok(None);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("malformed exponent: expected a positive integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        match digits.parse::<u16>() {
            Ok(k) if k >= 1 => Ok(Some(k)),
            Ok(_) => Err(ParseError {
                position: start,
                message: "malformed exponent: must be positive".to_string(),
            }),
            Err(_) => Err(ParseError {
                position: start,
                message: format!("malformed exponent: {digits} exceeds {}", u16::MAX),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeChar;
    use crate::monomial::MonomialOrder;

    fn ring(p: u32) -> Arc<Ring> {
        Ring::xyz(PrimeChar::new(p).unwrap(), MonomialOrder::GlobalDegRevLex)
    }

    #[test]
    fn table_equation_parses() {
        let f = parse_poly("z^2+x^3+y^5+y^3*z", &ring(2)).unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(f.total_degree(), 5);
    }

    #[test]
    fn minus_is_plus_in_char_two() {
        let r = ring(2);
        assert_eq!(
            parse_poly("z^2 - x*y", &r).unwrap(),
            parse_poly("z^2+x*y", &r).unwrap()
        );
    }

    #[test]
    fn coefficients_reduce() {
        assert!(parse_poly("3*x^2", &ring(3)).unwrap().is_zero());
        let r = ring(5);
        let big = parse_poly("123456789012345678901234567890*x", &r).unwrap();
        assert!(big.is_zero());
        assert_eq!(parse_poly("-x", &r).unwrap().to_string(), "4*x");
        assert_eq!(
            parse_poly("(x+y)^2", &r).unwrap().to_string(),
            "x^2+2*x*y+y^2"
        );
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring(2);
        let e = parse_poly("x+w", &r).unwrap_err();
        assert_eq!(e.position, 2);
        assert!(e.message.contains("unknown variable"));

        let e = parse_poly("xy+z", &r).unwrap_err();
        assert_eq!(e.position, 0);

        let e = parse_poly("x^", &r).unwrap_err();
        assert!(e.message.contains("malformed exponent"));
        assert!(parse_poly("x^0", &r)
            .unwrap_err()
            .message
            .contains("positive"));
        assert!(parse_poly("x^99999", &r).is_err());

        let e = parse_poly("(x+y", &r).unwrap_err();
        assert_eq!(e.position, 0);
        assert!(e.message.contains("unbalanced"));
        assert!(parse_poly("x+y)", &r)
            .unwrap_err()
            .message
            .contains("unbalanced"));
        assert!(parse_poly("2x", &r).unwrap_err().message.contains("'*'"));
        assert!(parse_poly("", &r).is_err());
        assert!(parse_poly("   ", &r).is_err());
        assert!(parse_poly("x+", &r).is_err());
        assert!(parse_poly("x**y", &r).is_err());
    }

    #[test]
    fn multi_letter_variables() {
        let r = Ring::new(
            PrimeChar::new(3).unwrap(),
            &["xy", "t"],
            MonomialOrder::GlobalDegRevLex,
        )
        .unwrap();
        let f = parse_poly("xy^2*t + t", &r).unwrap();
        assert_eq!(f.to_string(), "xy^2*t+t");
    }

    #[test]
    fn list_offsets() {
        let r = ring(2);
        let gens = parse_poly_list("x^2, y*z, z", &r).unwrap();
        assert_eq!(gens.len(), 3);
        let e = parse_poly_list("x, q", &r).unwrap_err();
        assert_eq!(e.position, 3);
    }
}
