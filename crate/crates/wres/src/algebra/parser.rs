//! Recursive-descent parser for the polynomial grammar.
//!
//! Grammar (ASCII, whitespace insignificant):
//! variables `[a-zA-Z_][a-zA-Z0-9_']*`; integer and fraction literals
//! (`3`, `7/2`); operators `+ - * ^` and parentheses; `^` binds tighter
//! than `*`, which binds tighter than `+`/`-`; unary minus allowed.

use super::{Poly, Rat, Ring};
use crate::error::{Error, Result};
use num::BigInt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(usize, Tok)>> {
        let mut lx = Lexer {
            src: src.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        loop {
            while lx.pos < lx.src.len() && lx.src[lx.pos].is_ascii_whitespace() {
                lx.pos += 1;
            }
            if lx.pos >= lx.src.len() {
                break;
            }
            let start = lx.pos;
            let c = lx.src[lx.pos];
            let tok = match c {
                b'+' => {
                    lx.pos += 1;
                    Tok::Plus
                }
                b'-' => {
                    lx.pos += 1;
                    Tok::Minus
                }
                b'*' => {
                    lx.pos += 1;
                    Tok::Star
                }
                b'^' => {
                    lx.pos += 1;
                    Tok::Caret
                }
                b'/' => {
                    lx.pos += 1;
                    Tok::Slash
                }
                b'(' => {
                    lx.pos += 1;
                    Tok::LParen
                }
                b')' => {
                    lx.pos += 1;
                    Tok::RParen
                }
                b'0'..=b'9' => {
                    while lx.pos < lx.src.len() && lx.src[lx.pos].is_ascii_digit() {
                        lx.pos += 1;
                    }
                    let text = std::str::from_utf8(&lx.src[start..lx.pos]).unwrap();
                    Tok::Int(text.parse().unwrap())
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    lx.pos += 1;
                    while lx.pos < lx.src.len()
                        && (lx.src[lx.pos].is_ascii_alphanumeric()
                            || lx.src[lx.pos] == b'_'
                            || lx.src[lx.pos] == b'\'')
                    {
                        lx.pos += 1;
                    }
                    let text = std::str::from_utf8(&lx.src[start..lx.pos]).unwrap();
                    Tok::Ident(text.to_string())
                }
                other => {
                    return Err(Error::Syntax {
                        pos: start,
                        msg: format!("unexpected character `{}`", other as char),
                    })
                }
            };
            out.push((start, tok));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|(_, t)| t.clone());
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.i += 1;
            Ok(())
        } else {
            Err(Error::Syntax {
                pos: self.pos(),
                msg: format!("expected {what}"),
            })
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut negate = false;
        // Leading sign(s).
        loop {
            match self.peek() {
                Some(Tok::Minus) => {
                    negate = !negate;
                    self.i += 1;
                }
                Some(Tok::Plus) => {
                    self.i += 1;
                }
                _ => break,
            }
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.i += 1;
                    let t = self.term()?;
                    acc = acc.add(&t)?;
                }
                Some(Tok::Minus) => {
                    self.i += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.i += 1;
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        if self.peek() == Some(&Tok::Minus) {
            self.i += 1;
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.i += 1;
            let pos = self.pos();
            match self.bump() {
                Some(Tok::Int(e)) => {
                    let e: u64 = e.try_into().map_err(|_| Error::Syntax {
                        pos,
                        msg: "exponent out of range".into(),
                    })?;
                    return base.pow(e);
                }
                _ => {
                    return Err(Error::Syntax {
                        pos,
                        msg: "expected integer exponent after `^`".into(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => Ok(Poly::var(self.ring, i)),
                None => Err(Error::UnknownVar(name)),
            },
            Some(Tok::Int(n)) => {
                // Fraction literal: INT '/' INT.
                if self.peek() == Some(&Tok::Slash) {
                    self.i += 1;
                    let dpos = self.pos();
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            if d == BigInt::from(0) {
                                return Err(Error::Syntax {
                                    pos: dpos,
                                    msg: "zero denominator".into(),
                                });
                            }
                            Ok(Poly::constant(self.ring, Rat::new(n, d)))
                        }
                        _ => Err(Error::Syntax {
                            pos: dpos,
                            msg: "expected integer denominator".into(),
                        }),
                    }
                } else {
                    Ok(Poly::constant(self.ring, Rat::from_integer(n)))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(_) => Err(Error::Syntax {
                pos,
                msg: "expected variable, number, or `(`".into(),
            }),
            None => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parse `text` as a polynomial over `ring`.
pub fn parse_poly(ring: &Arc<Ring>, text: &str) -> Result<Poly> {
    let toks = Lexer::tokens(text)?;
    let mut parser = Parser {
        ring,
        toks,
        i: 0,
        end: text.len(),
    };
    let p = parser.expr()?;
    if parser.i != parser.toks.len() {
        return Err(Error::Syntax {
            pos: parser.pos(),
            msg: "trailing input".into(),
        });
    }
    Ok(p)
}

/// Parse a semicolon- or comma-separated generator list.
pub fn parse_ideal_gens(ring: &Arc<Ring>, text: &str) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(parse_poly(ring, part)?);
    }
    if out.is_empty() {
        return Err(Error::Input("empty generator list".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_reference_inputs() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let f = parse_poly(&r, "x^5 + x^3*y^3 + y^8").unwrap();
        assert_eq!(f.num_terms(), 3);
        let r4 = Ring::new(&["x", "y1", "y2", "y3"]).unwrap();
        let g = parse_poly(&r4, "x^2 - y1*y2*y3").unwrap();
        assert_eq!(g.num_terms(), 2);
        let h = parse_poly(&r, "(x+y)^2").unwrap();
        assert_eq!(h, parse_poly(&r, "x^2 + 2*x*y + y^2").unwrap());
    }

    #[test]
    fn fractions_and_signs() {
        let r = Ring::new(&["x"]).unwrap();
        assert_eq!(
            parse_poly(&r, "7/2*x").unwrap().to_string(),
            "7/2*x"
        );
        assert_eq!(parse_poly(&r, "-x - -x").unwrap().to_string(), "0");
        assert_eq!(parse_poly(&r, "3 - 1/2").unwrap().to_string(), "5/2");
    }

    #[test]
    fn primed_variables() {
        let r = Ring::new(&["u", "y'"]).unwrap();
        let f = parse_poly(&r, "1 + y'^3 + u*y'^8").unwrap();
        assert_eq!(f.to_string(), "u*y'^8 + y'^3 + 1");
    }

    #[test]
    fn error_positions() {
        let r = Ring::new(&["x", "y"]).unwrap();
        match parse_poly(&r, "x + $") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(
            parse_poly(&r, "x + z"),
            Err(Error::UnknownVar(v)) if v == "z"
        ));
        assert!(parse_poly(&r, "x y").is_err());
        assert!(parse_poly(&r, "x / y").is_err());
    }
}
