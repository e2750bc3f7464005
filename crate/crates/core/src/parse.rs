//! Shared cursor for the small textual grammars (scalars, functions, orders,
//! c.l.s. expressions). Whitespace is insignificant everywhere.

use std::fmt;

use num_rational::Rational64;
use thiserror::Error;

/// A parse failure with the byte offset where it happened and what was expected there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub position: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at position {}: expected {}, found {}",
            self.position, self.expected, self.found
        )
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
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    /// Consumes `token` if the remaining input starts with it.
    pub(crate) fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("'{token}'")))
        }
    }

    pub(crate) fn expect_end(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    pub(crate) fn error(&mut self, expected: impl Into<String>) -> ParseError {
        self.skip_ws();
        let found = match self.rest().chars().next() {
            None => "end of input".to_string(),
            Some(_) => {
                let snippet: String = self.rest().chars().take(12).collect();
                format!("'{snippet}'")
            }
        };
        ParseError {
            position: self.pos,
            expected: expected.into(),
            found,
        }
    }

    /// An identifier: ASCII letter followed by letters, digits or underscores.
    pub(crate) fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() => {}
            _ => return None,
        }
        let end = chars
            .find(|&(_, c)| !(c.is_ascii_alphanumeric() || c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        self.pos += end;
        Some(&rest[..end])
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest
            .char_indices()
            .find(|&(_, c)| !c.is_ascii_digit())
            .map_or(rest.len(), |(i, _)| i);
        if end == 0 {
            return None;
        }
        self.pos += end;
        Some(&rest[..end])
    }

    pub(crate) fn unsigned(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        let text = self
            .digits()
            .ok_or_else(|| self.error("a nonnegative integer"))?;
        text.parse().map_err(|_| ParseError {
            position: start,
            expected: "an integer that fits in 64 bits".into(),
            found: format!("'{text}'"),
        })
    }

    pub(crate) fn integer(&mut self) -> Result<i64, ParseError> {
        let negative = if self.eat("-") {
            true
        } else {
            self.eat("+");
            false
        };
        let magnitude = self.unsigned()?;
        let value = i64::try_from(magnitude).map_err(|_| ParseError {
            position: self.pos,
            expected: "an integer that fits in 64 bits".into(),
            found: magnitude.to_string(),
        })?;
        Ok(if negative { -value } else { value })
    }

    /// `p` or `p/q` with an optional sign.
    pub(crate) fn rational(&mut self) -> Result<Rational64, ParseError> {
        let numer = self.integer()?;
        if self.eat("/") {
            let at = self.pos;
            let denom = self.integer()?;
            if denom == 0 {
                return Err(ParseError {
                    position: at,
                    expected: "a nonzero denominator".into(),
                    found: "0".into(),
                });
            }
            Ok(Rational64::new(numer, denom))
        } else {
            Ok(Rational64::from_integer(numer))
        }
    }

    pub(crate) fn starts_with_digit_or_sign(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '-' || c == '+')
    }
}
