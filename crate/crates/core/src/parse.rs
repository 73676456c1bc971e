//! Polynomial expression grammar.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' integer)?
//! primary := integer | identifier | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. Juxtaposition (`2x`, `x y`) is rejected.
//! Columns in errors are 1-based character positions.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};

/// Term budget for `^` inside expressions.
const PARSE_TERM_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            _ if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => out.push((Tok::Plus, col)),
            '-' => out.push((Tok::Minus, col)),
            '*' => out.push((Tok::Star, col)),
            '^' => out.push((Tok::Caret, col)),
            '(' => out.push((Tok::LParen, col)),
            ')' => out.push((Tok::RParen, col)),
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse().map_err(|_| Error::Parse {
                    column: col,
                    message: format!("integer literal `{s}` too large"),
                })?;
                out.push((Tok::Int(v), col));
                continue;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
                continue;
            }
            _ => {
                return Err(Error::Parse {
                    column: col,
                    message: format!("unexpected character `{c}`"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            column: self.col(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                base.pow(n, PARSE_TERM_BUDGET)
            }
            _ => self.err("expected a non-negative integer exponent after `^`"),
        }
    }

    fn primary(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let p = self.ring.characteristic() as u64;
                Ok(self.ring.constant((n % p) as i64))
            }
            Some(Tok::Ident(name)) => match self.ring.variable_index(&name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(self.ring.var(i))
                }
                None => self.err(format!("unknown variable `{name}`")),
            },
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected {}", describe(&t))),
            None => self.err("unexpected end of expression"),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("integer `{n}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
    }
}

pub fn parse_poly(ring: &Arc<PolyRing>, text: &str) -> Result<Poly> {
    let toks = lex(text)?;
    let mut parser = Parser {
        ring,
        toks,
        pos: 0,
        end_col: text.chars().count() + 1,
    };
    let poly = parser.expr()?;
    match parser.peek() {
        None => Ok(poly),
        Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen) => {
            parser.err("implicit multiplication is not allowed; use `*`")
        }
        Some(t) => {
            let msg = format!("unexpected {}", describe(t));
            parser.err(msg)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(3, &["x", "y", "z"]).unwrap()
    }

    fn col_of(e: Error) -> usize {
        match e {
            Error::Parse { column, .. } => column,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn precedence_and_unary_minus() {
        let r = ring();
        assert_eq!(r.parse("-x^2").unwrap(), r.parse("2*x^2").unwrap());
        assert_eq!(r.parse("2*(x + y)^2").unwrap(), r.parse("2*x^2 + x*y + 2*y^2").unwrap());
        assert_eq!(r.parse("  x*y -z^2 ").unwrap(), r.parse("x*y-z^2").unwrap());
        assert_eq!(r.parse("4").unwrap(), r.one());
        assert_eq!(r.parse("x - -y").unwrap(), r.parse("x + y").unwrap());
    }

    #[test]
    fn dangling_operator() {
        let e = parse_poly(&ring(), "x*y -").unwrap_err();
        assert_eq!(col_of(e), 6);
    }

    #[test]
    fn implicit_multiplication_rejected() {
        let e = parse_poly(&ring(), "2x").unwrap_err();
        assert_eq!(col_of(e.clone()), 2);
        assert!(e.to_string().contains("implicit multiplication"));
        assert_eq!(col_of(parse_poly(&ring(), "x y").unwrap_err()), 3);
        assert_eq!(col_of(parse_poly(&ring(), "(x)(y)").unwrap_err()), 4);
    }

    #[test]
    fn other_errors() {
        assert_eq!(col_of(parse_poly(&ring(), "x + w").unwrap_err()), 5);
        assert_eq!(col_of(parse_poly(&ring(), "x ^ y").unwrap_err()), 5);
        assert_eq!(col_of(parse_poly(&ring(), "(x + y").unwrap_err()), 7);
        assert_eq!(col_of(parse_poly(&ring(), "x $ y").unwrap_err()), 3);
        assert_eq!(col_of(parse_poly(&ring(), "").unwrap_err()), 1);
    }
}
