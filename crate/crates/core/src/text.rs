//! Shared lexing helpers for the textual formats (polynomials, bracket
//! expressions, endomorphism images).

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::exactalg::Rat;

/// A syntax error together with the byte offset at which it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    /// Next non-whitespace character, without consuming it.
    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, message)
    }

    /// Reads a run of ASCII digits directly at the cursor (no whitespace skip).
    pub(crate) fn digits(&mut self) -> Option<&'a str> {
        let rest = &self.src[self.pos..];
        let len = rest.bytes().take_while(|b| b.is_ascii_digit()).count();
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }

    pub(crate) fn index(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        let digits = self
            .digits()
            .ok_or_else(|| self.error("expected an index"))?;
        let value: usize = digits
            .parse()
            .map_err(|_| ParseError::new(start, "index too large"))?;
        if value == 0 {
            return Err(ParseError::new(start, "indices start at 1"));
        }
        Ok(value)
    }

    /// Unsigned rational literal `INT` or `INT/INT`.
    pub(crate) fn rational(&mut self) -> Result<Rat, ParseError> {
        self.skip_ws();
        let num = self
            .digits()
            .ok_or_else(|| self.error("expected a number"))?;
        let num: BigInt = num.parse().expect("digit run");
        if self.eat('/') {
            self.skip_ws();
            let den_pos = self.pos;
            let den = self
                .digits()
                .ok_or_else(|| self.error("expected a denominator"))?;
            let den: BigInt = den.parse().expect("digit run");
            if den.is_zero() {
                return Err(ParseError::new(den_pos, "zero denominator"));
            }
            Ok(Rat::new(num, den))
        } else {
            Ok(Rat::from_integer(num))
        }
    }

    pub(crate) fn peek_digit(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit())
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses a signed rational literal such as `-3/4`.
pub fn parse_rat(s: &str) -> Result<Rat, ParseError> {
    let mut cur = Cursor::new(s);
    let neg = cur.eat('-');
    let r = cur.rational()?;
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    Ok(if neg { -r } else { r })
}
