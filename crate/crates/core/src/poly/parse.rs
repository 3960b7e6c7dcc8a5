//! Recursive-descent reader for polynomial expressions.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := variable | integer | integer '/' integer | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant and implicit multiplication is rejected.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{Polynomial, WeightedRing};
use crate::error::Error;

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

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next token with its starting offset.
    fn next(&mut self) -> Result<(Tok, usize), Error> {
        self.skip_ws();
        let start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Ok((Tok::End, start));
        };
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                return Ok((Tok::Int(text.parse().unwrap()), start));
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                return Ok((Tok::Ident(text.to_string()), start));
            }
            other => {
                return Err(Error::Syntax { position: start, message: format!("unexpected character {:?}", other as char) })
            }
        };
        self.pos += 1;
        Ok((tok, start))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    at: usize,
    ring: &'a Arc<WeightedRing>,
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<(), Error> {
        let (t, at) = self.lexer.next()?;
        self.tok = t;
        self.at = at;
        Ok(())
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, Error> {
        Err(Error::Syntax { position: self.at, message: message.into() })
    }

    fn expr(&mut self) -> Result<Polynomial, Error> {
        let negate = match self.tok {
            Tok::Minus => {
                self.bump()?;
                true
            }
            Tok::Plus => {
                self.bump()?;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.tok {
                Tok::Plus => {
                    self.bump()?;
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump()?;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, Error> {
        let mut acc = self.factor()?;
        while self.tok == Tok::Star {
            self.bump()?;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, Error> {
        let base = self.atom()?;
        if self.tok != Tok::Caret {
            return Ok(base);
        }
        self.bump()?;
        match &self.tok {
            Tok::Int(n) => {
                let e: u32 = n.try_into().or_else(|_| self.error("exponent too large"))?;
                self.bump()?;
                Ok(base.pow(e))
            }
            _ => self.error("expected a non-negative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, Error> {
        match self.tok.clone() {
            Tok::Int(n) => {
                self.bump()?;
                if self.tok == Tok::Slash {
                    self.bump()?;
                    let Tok::Int(d) = self.tok.clone() else {
                        return self.error("expected an integer denominator");
                    };
                    let at = self.at;
                    self.bump()?;
                    let c = self.ring.field().ratio(&n, &d).map_err(|e| match e {
                        Error::DivisionByZero => Error::Syntax { position: at, message: "division by zero in a coefficient".into() },
                        other => other,
                    })?;
                    Ok(Polynomial::constant(self.ring, c))
                } else {
                    Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&n)))
                }
            }
            Tok::Ident(name) => {
                let Some(i) = self.ring.var_index(&name) else {
                    return Err(Error::UnboundVariable { name, position: self.at });
                };
                self.bump()?;
                Ok(Polynomial::var(self.ring, i))
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return self.error("expected ')'");
                }
                self.bump()?;
                Ok(inner)
            }
            Tok::End => self.error("unexpected end of input"),
            other => self.error(format!("unexpected token {other:?}")),
        }
    }
}

/// Parses `text` into a polynomial of `ring`.
pub fn parse_poly(text: &str, ring: &Arc<WeightedRing>) -> Result<Polynomial, Error> {
    let mut p = Parser { lexer: Lexer { src: text.as_bytes(), pos: 0 }, tok: Tok::End, at: 0, ring };
    p.bump()?;
    let out = p.expr()?;
    match p.tok {
        Tok::End => Ok(out),
        // "2 x0" and "x0 x1" land here
        _ => p.error("expected an operator or end of input"),
    }
}
