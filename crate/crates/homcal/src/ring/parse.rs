//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := primary ['^' natural]
//! primary := rational | variable | '(' expr ')'
//! rational:= integer ['/' integer]
//! ```
//!
//! `/` appears only inside rational literals (`-7/2`); there is no division
//! of polynomials. Errors carry the byte offset of the offending token.

use std::sync::Arc;

use num::{BigInt, BigRational, Zero};

use super::{Poly, PolyRing};
use crate::{Error, Result};

pub(super) fn parse_poly(ring: &Arc<PolyRing>, src: &str) -> Result<Poly> {
    let tokens = lex(src)?;
    let mut p = Parser {
        ring,
        tokens,
        at: 0,
    };
    let poly = p.expr()?;
    match p.peek() {
        (Tok::End, _) => Ok(poly),
        (tok, pos) => Err(err(pos, format!("unexpected {} after expression", tok.describe()))),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number '{n}'"),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, i));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, i));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i]
                    .parse()
                    .map_err(|_| err(start, "invalid integer literal"))?;
                out.push((Tok::Int(n), start));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
            }
            other => return Err(err(i, format!("unexpected character {other:?}"))),
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    tokens: Vec<(Tok, usize)>,
    at: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> (&Tok, usize) {
        let (tok, pos) = &self.tokens[self.at];
        (tok, *pos)
    }

    fn bump(&mut self) -> (Tok, usize) {
        let item = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        item
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut negate = false;
        if matches!(self.peek().0, Tok::Minus) {
            self.bump();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek().0 {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while matches!(self.peek().0, Tok::Star) {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.primary()?;
        if matches!(self.peek().0, Tok::Caret) {
            self.bump();
            let (tok, pos) = self.bump();
            match tok {
                Tok::Int(n) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| err(pos, "exponent too large"))?;
                    Ok(base.pow(e))
                }
                other => Err(err(
                    pos,
                    format!(
                        "exponent must be a nonnegative integer, found {}",
                        other.describe()
                    ),
                )),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Poly> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => {
                // Optional '/denominator' completes a rational literal.
                if matches!(self.peek().0, Tok::Slash) {
                    self.bump();
                    let (dtok, dpos) = self.bump();
                    match dtok {
                        Tok::Int(d) => {
                            if d.is_zero() {
                                return Err(err(dpos, "zero denominator in rational literal"));
                            }
                            Ok(Poly::constant(self.ring, BigRational::new(n, d)))
                        }
                        other => Err(err(
                            dpos,
                            format!("expected integer denominator, found {}", other.describe()),
                        )),
                    }
                } else {
                    Ok(Poly::constant(self.ring, BigRational::from_integer(n)))
                }
            }
            Tok::Ident(name) => match self.ring.var_index(&name) {
                Some(mu) => Ok(Poly::var(self.ring, mu)),
                None => Err(err(
                    pos,
                    format!(
                        "unknown variable '{name}' (ring variables: {})",
                        self.ring.var_list()
                    ),
                )),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let (tok, pos) = self.bump();
                if tok == Tok::RParen {
                    Ok(inner)
                } else {
                    Err(err(pos, format!("expected ')', found {}", tok.describe())))
                }
            }
            other => Err(err(
                pos,
                format!("expected a polynomial term, found {}", other.describe()),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(["x", "y"]).unwrap()
    }

    #[test]
    fn parses_rational_coefficients_and_powers() {
        let r = ring();
        let p = r.parse("-7/2 * x * y^2 + 3").unwrap();
        assert_eq!(p.to_string(), "-7/2*x*y^2 + 3");
    }

    #[test]
    fn whitespace_is_insignificant() {
        let r = ring();
        assert_eq!(
            r.parse("x^2+2*x*y").unwrap(),
            r.parse("  x ^ 2 + 2 * x * y ").unwrap()
        );
    }

    #[test]
    fn parenthesized_expressions_expand() {
        let r = ring();
        assert_eq!(
            r.parse("(x + y)^2").unwrap(),
            r.parse("x^2 + 2*x*y + y^2").unwrap()
        );
        assert_eq!(
            r.parse("-(x - y) * 2").unwrap(),
            r.parse("2*y - 2*x").unwrap()
        );
    }

    #[test]
    fn unknown_variable_is_reported_with_position() {
        let r = ring();
        match r.parse("x + z").unwrap_err() {
            Error::Parse { pos, msg } => {
                assert_eq!(pos, 4);
                assert!(msg.contains("unknown variable 'z'"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn division_of_polynomials_is_rejected() {
        let r = ring();
        assert!(r.parse("x / 2").is_err());
        assert!(r.parse("1/0").is_err());
        // Rational literal followed by '*' is fine.
        assert!(r.parse("1/2 * x").is_ok());
    }

    #[test]
    fn negative_exponent_is_rejected() {
        let r = ring();
        match r.parse("x^-1").unwrap_err() {
            Error::Parse { msg, .. } => assert!(msg.contains("nonnegative"), "{msg}"),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn trailing_garbage_is_rejected() {
        let r = ring();
        assert!(r.parse("x + y )").is_err());
        assert!(r.parse("x y").is_err());
        assert!(r.parse("").is_err());
    }
}
