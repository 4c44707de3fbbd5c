//! Text grammar for polynomials.
//!
//! ```text
//! poly    := sign? term (sign term)*
//! term    := factor ('*'? factor)*
//! factor  := atom ('^' integer)?
//! atom    := integer ('/' integer)? | 'x' | 'y' | 'T' '_'? integer | '(' poly ')'
//! ```
//! Whitespace is ignored, `−` is accepted as a minus sign.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::field::Field;
use crate::algebra::poly::{BiPoly, Var};
use crate::error::{Error, Result};

/// Parses `src` into a polynomial over `field` with `nt` `T`-variables.
pub fn parse_poly(src: &str, field: Field, nt: usize) -> Result<BiPoly> {
    let chars: Vec<(usize, char)> = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut p = Parser {
        chars,
        pos: 0,
        end: src.len(),
        field,
        nt,
    };
    let out = p.poly()?;
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected character '{}'", p.chars[p.pos].1)));
    }
    Ok(out)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
    field: Field,
    nt: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(o, _)| o)
    }

    fn error(&self, message: String) -> Error {
        Error::Parse {
            offset: self.offset(),
            message,
        }
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some('-') | Some('\u{2212}') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn poly(&mut self) -> Result<BiPoly> {
        if self.peek().is_none() {
            return Err(self.error("empty polynomial".into()));
        }
        let neg = self.sign().unwrap_or(false);
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        while let Some(neg) = self.sign() {
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(c) if c.is_ascii_digit() || c == 'x' || c == 'y' || c == 'T' || c == '(' => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<BiPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.small_integer()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BiPoly> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.peek() == Some('/') {
                    self.pos += 1;
                    self.integer()?
                } else {
                    BigInt::one()
                };
                let offset = self.offset();
                let c = self.field.from_fraction(&num, &den).map_err(|e| Error::Parse {
                    offset,
                    message: format!("{e}"),
                })?;
                Ok(BiPoly::constant(self.field, self.nt, c))
            }
            Some('x') => {
                self.pos += 1;
                Ok(BiPoly::var(self.field, self.nt, Var::X))
            }
            Some('y') => {
                self.pos += 1;
                Ok(BiPoly::var(self.field, self.nt, Var::Y))
            }
            Some('T') => {
                self.pos += 1;
                if self.peek() == Some('_') {
                    self.pos += 1;
                }
                let i = self.small_integer()? as usize;
                if i == 0 || i > self.nt {
                    return Err(self.error(format!(
                        "variable T{i} is outside the ring with {} T-variables",
                        self.nt
                    )));
                }
                Ok(BiPoly::var(self.field, self.nt, Var::T(i)))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.poly()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) => Err(self.error(format!("unexpected character '{c}'"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }

    fn digits(&mut self) -> Result<String> {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        if s.is_empty() {
            return Err(self.error("expected an integer".into()));
        }
        Ok(s)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let s = self.digits()?;
        s.parse::<BigInt>().map_err(|e| self.error(format!("{e}")))
    }

    fn small_integer(&mut self) -> Result<u32> {
        let s = self.digits()?;
        s.parse::<u32>()
            .ok()
            .filter(|&v| v <= u16::MAX as u32)
            .ok_or_else(|| self.error(format!("integer {s} is too large")))
    }
}
