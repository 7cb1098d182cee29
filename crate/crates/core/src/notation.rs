//! Parser for the bracketed code notation.
//!
//! ```text
//! ea        := "[[" int "," int ("," dist)? ";" int "]]" ("_" int)?
//! classical := "["  int "," int ("," int)?          "]"  ("_" int)?
//! dist      := (">=" | "≥")? int
//! ```
//!
//! Whitespace is allowed between any two tokens. The alphabet defaults to 2.
//! A `>=`/`≥` prefix marks the distance as a lower bound, which is how
//! concatenated codes are rendered.

use std::str::FromStr;

use serde::Serialize;

use crate::code::{ClassicalCode, Distance, DistanceKind, EaCode};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ParsedCode {
    Ea(EaCode),
    Classical(ClassicalCode),
}

pub fn parse_code(text: &str) -> Result<ParsedCode> {
    let mut p = Parser::new(text);
    p.skip_ws();
    p.expect('[')?;
    p.skip_ws();
    let parsed = if p.eat('[') {
        let (n, k, d) = p.head()?;
        p.expect(';')?;
        p.skip_ws();
        let c = p.int("ebit count c")?;
        p.skip_ws();
        p.expect(']')?;
        p.skip_ws();
        p.expect(']')?;
        let q = p.alphabet()?;
        ParsedCode::Ea(EaCode::with_params(n, k, d, c, q)?)
    } else {
        let (n, k, d) = p.head()?;
        p.expect(']')?;
        let q = p.alphabet()?;
        let d = match d {
            Some(Distance {
                value,
                kind: DistanceKind::Exact,
            }) => value,
            Some(_) => {
                return Err(Error::Syntax {
                    position: p.pos,
                    message: "lower-bound distances are only meaningful for quantum codes".into(),
                })
            }
            None => return Err(Error::Invariant("a classical code needs its minimum distance".into())),
        };
        ParsedCode::Classical(ClassicalCode::new(n, k, d, q)?)
    };
    p.skip_ws();
    if let Some(ch) = p.peek() {
        return Err(p.error(format!("unexpected trailing `{ch}`")));
    }
    Ok(parsed)
}

impl FromStr for EaCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match parse_code(s)? {
            ParsedCode::Ea(code) => Ok(code),
            ParsedCode::Classical(_) => Err(Error::Syntax {
                position: 0,
                message: "expected an entanglement-assisted code `[[n,k,d;c]]`".into(),
            }),
        }
    }
}

impl FromStr for ClassicalCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match parse_code(s)? {
            ParsedCode::Classical(code) => Ok(code),
            ParsedCode::Ea(_) => Err(Error::Syntax {
                position: 0,
                message: "expected a classical code `[n,k,d]`".into(),
            }),
        }
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Self {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, message: String) -> Error {
        Error::Syntax {
            position: self.pos,
            message,
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(match self.peek() {
                Some(found) => self.error(format!("expected `{ch}`, found `{found}`")),
                None => self.error(format!("expected `{ch}`, found end of input")),
            })
        }
    }

    fn int(&mut self, what: &str) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            self.pos = start;
            return Err(self.error(format!("expected {what}")));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| Error::Syntax {
            position: start,
            message: format!("{what} is out of range"),
        })
    }

    /// `n "," k ("," dist)?` followed by optional whitespace.
    fn head(&mut self) -> Result<(u64, u64, Option<Distance>)> {
        self.skip_ws();
        let n = self.int("length n")?;
        self.skip_ws();
        self.expect(',')?;
        self.skip_ws();
        let k = self.int("dimension k")?;
        self.skip_ws();
        let mut d = None;
        if self.eat(',') {
            self.skip_ws();
            let kind = if self.eat('≥')
                || (self.peek() == Some('>') && self.eat('>') && {
                    self.expect('=')?;
                    true
                }) {
                self.skip_ws();
                DistanceKind::LowerBound
            } else {
                DistanceKind::Exact
            };
            let value = self.int("distance d")?;
            d = Some(Distance { value, kind });
            self.skip_ws();
        }
        Ok((n, k, d))
    }

    fn alphabet(&mut self) -> Result<u64> {
        self.skip_ws();
        if self.eat('_') {
            self.skip_ws();
            self.int("alphabet size q")
        } else {
            Ok(2)
        }
    }
}
