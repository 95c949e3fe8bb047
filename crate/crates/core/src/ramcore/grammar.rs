//! Bracket notation: `[1,3][2,2][2,2][2,2]` for ramification data and
//! `[1,3|2*][2*][2*][2*]` for families. Entries may carry a multiplicity
//! (`2^3`); the regular filler may be written `k*`, `k^*`, and may follow
//! either `|` or `,`.

use std::fmt;

use super::{FamilySpec, RamData, RamError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.pos, self.msg)
    }
}

#[derive(Debug, PartialEq)]
enum Item {
    Entries(u32, u32),
    Regular(u32),
}

struct Group {
    start: usize,
    items: Vec<Item>,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, msg: msg.into() })
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

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.err(format!("expected '{}', found '{}'", c as char, x as char)),
            None => self.err(format!("expected '{}', found end of input", c as char)),
        }
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.src.get(self.pos) {
                Some(&c) => self.err(format!("expected a number, found '{}'", c as char)),
                None => self.err("expected a number, found end of input"),
            };
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match text.parse::<u32>() {
            Ok(0) => Err(ParseError { pos: start, msg: "entries must be positive".into() }),
            Ok(v) => Ok(v),
            Err(_) => Err(ParseError { pos: start, msg: "number too large".into() }),
        }
    }

    fn item(&mut self) -> Result<Item, ParseError> {
        let value = self.number()?;
        match self.peek() {
            Some(b'*') => {
                self.pos += 1;
                Ok(Item::Regular(value))
            }
            Some(b'^') => {
                self.pos += 1;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    return Ok(Item::Regular(value));
                }
                let mult = self.number()?;
                Ok(Item::Entries(value, mult))
            }
            _ => Ok(Item::Entries(value, 1)),
        }
    }

    fn group(&mut self) -> Result<Group, ParseError> {
        self.skip_ws();
        let start = self.pos;
        self.expect(b'[')?;
        let mut items = Vec::new();
        if self.peek() == Some(b']') {
            self.pos += 1;
            return Ok(Group { start, items });
        }
        loop {
            items.push(self.item()?);
            match self.peek() {
                Some(b',') | Some(b'|') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    return Ok(Group { start, items });
                }
                Some(c) => return self.err(format!("expected ',', '|' or ']', found '{}'", c as char)),
                None => return self.err("unterminated '['"),
            }
        }
    }

    fn groups(&mut self) -> Result<Vec<Group>, ParseError> {
        let mut out = Vec::new();
        while self.peek().is_some() {
            out.push(self.group()?);
        }
        if out.is_empty() {
            return self.err("no partitions given");
        }
        Ok(out)
    }
}

fn semantic(pos: usize, e: RamError) -> ParseError {
    ParseError { pos, msg: e.to_string() }
}

pub fn parse_ram_data(input: &str) -> Result<RamData, ParseError> {
    let mut lx = Lexer { src: input.as_bytes(), pos: 0 };
    let groups = lx.groups()?;
    let mut parts = Vec::with_capacity(groups.len());
    for g in &groups {
        let mut entries = Vec::new();
        for it in &g.items {
            match *it {
                Item::Entries(v, m) => entries.extend(std::iter::repeat_n(v, m as usize)),
                Item::Regular(_) => {
                    return Err(ParseError { pos: g.start, msg: "'*' is only allowed in family notation".into() })
                }
            }
        }
        parts.push(super::Partition::new(entries).map_err(|e| semantic(g.start, e))?);
    }
    let starts: Vec<usize> = groups.iter().map(|g| g.start).collect();
    RamData::new(parts).map_err(|e| {
        let pos = match e {
            RamError::DegreeMismatch { slot, .. } | RamError::TrivialPartition { slot } => starts[slot],
            _ => 0,
        };
        semantic(pos, e)
    })
}

pub fn parse_family(input: &str) -> Result<FamilySpec, ParseError> {
    let mut lx = Lexer { src: input.as_bytes(), pos: 0 };
    let groups = lx.groups()?;
    let mut base = Vec::with_capacity(groups.len());
    let mut irregular = Vec::with_capacity(groups.len());
    for g in &groups {
        let mut k = None;
        let mut a = Vec::new();
        for it in &g.items {
            match *it {
                Item::Entries(v, m) => a.extend(std::iter::repeat_n(v, m as usize)),
                Item::Regular(v) if k.is_none() => k = Some(v),
                Item::Regular(_) => {
                    return Err(ParseError { pos: g.start, msg: "more than one regular entry in a slot".into() })
                }
            }
        }
        let Some(k) = k else {
            return Err(ParseError { pos: g.start, msg: "slot has no regular entry 'k*'".into() });
        };
        base.push(k);
        irregular.push(a);
    }
    let starts: Vec<usize> = groups.iter().map(|g| g.start).collect();
    FamilySpec::new(base, irregular).map_err(|e| {
        let pos = match e {
            RamError::BaseEntryTooSmall { slot, .. } | RamError::RegularEntryInIrregular { slot, .. } => starts[slot],
            _ => 0,
        };
        semantic(pos, e)
    })
}
