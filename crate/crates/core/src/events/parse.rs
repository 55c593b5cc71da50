//! Text syntax: atoms `P01`..`P23`, `S01`..`S23`; `&` binds tighter than `|`;
//! parentheses group. Whitespace between tokens is ignored.

use thiserror::Error;

use super::{AtomicEvent, EventExpr, EventKind};

const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprParseError {
    #[error("unexpected character {ch:?} at byte {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("unexpected end of expression")]
    UnexpectedEnd,
    #[error("invalid atom {text:?} at byte {pos}")]
    InvalidAtom { text: String, pos: usize },
    #[error("parentheses nested deeper than {MAX_DEPTH}")]
    TooDeep,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn union(&mut self) -> Result<EventExpr, ExprParseError> {
        let mut parts = vec![self.intersection()?];
        while self.peek() == Some('|') {
            self.bump();
            parts.push(self.intersection()?);
        }
        Ok(collapse(parts, EventExpr::Or))
    }

    fn intersection(&mut self) -> Result<EventExpr, ExprParseError> {
        let mut parts = vec![self.primary()?];
        while self.peek() == Some('&') {
            self.bump();
            parts.push(self.primary()?);
        }
        Ok(collapse(parts, EventExpr::And))
    }

    fn primary(&mut self) -> Result<EventExpr, ExprParseError> {
        match self.peek() {
            None => Err(ExprParseError::UnexpectedEnd),
            Some('(') => {
                self.bump();
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    return Err(ExprParseError::TooDeep);
                }
                let inner = self.union()?;
                self.depth -= 1;
                match self.bump() {
                    Some(')') => Ok(inner),
                    Some(ch) => Err(ExprParseError::UnexpectedChar {
                        ch,
                        pos: self.pos - ch.len_utf8(),
                    }),
                    None => Err(ExprParseError::UnexpectedEnd),
                }
            }
            Some(_) => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<EventExpr, ExprParseError> {
        let start = self.pos;
        let rest = &self.src[start..];
        let end = rest
            .char_indices()
            .find(|(_, c)| !c.is_ascii_alphanumeric())
            .map_or(rest.len(), |(i, _)| i);
        let text = &rest[..end];
        if text.is_empty() {
            let ch = rest.chars().next().expect("peeked a character");
            return Err(ExprParseError::UnexpectedChar { ch, pos: start });
        }
        let invalid = || ExprParseError::InvalidAtom {
            text: text.to_string(),
            pos: start,
        };
        let b = text.as_bytes();
        if b.len() != 3 {
            return Err(invalid());
        }
        let kind = match b[0] {
            b'P' => EventKind::PrefixMax,
            b'S' => EventKind::SuffixMax,
            _ => return Err(invalid()),
        };
        let digit = |c: u8| c.is_ascii_digit().then(|| (c - b'0') as usize);
        let (Some(i), Some(j)) = (digit(b[1]), digit(b[2])) else {
            return Err(invalid());
        };
        let atom = AtomicEvent::new(kind, i, j).ok_or_else(invalid)?;
        self.pos += end;
        Ok(EventExpr::Atom(atom))
    }
}

fn collapse(mut parts: Vec<EventExpr>, wrap: fn(Vec<EventExpr>) -> EventExpr) -> EventExpr {
    if parts.len() == 1 {
        parts.pop().expect("one element")
    } else {
        wrap(parts)
    }
}

pub fn parse_event_expr(text: &str) -> Result<EventExpr, ExprParseError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        depth: 0,
    };
    let e = p.union()?;
    match p.peek() {
        None => Ok(e),
        Some(ch) => Err(ExprParseError::UnexpectedChar { ch, pos: p.pos }),
    }
}
