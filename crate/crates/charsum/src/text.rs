//! Text formats for groups, elements, sets, and group-ring elements.
//!
//! Group specs look like "Z4 x Z9" (case-insensitive, whitespace-tolerant).
//! Elements are residue tuples "(3,8)"; cyclic groups also accept the
//! multiplicative forms "g", "g^k", and "1". Sets are brace-enclosed comma
//! lists, and group-ring elements are monomial lists like
//! "7 + 3*(1,0) - 1*(2,3)". Parse errors carry the byte position.

use crate::error::{Error, Result};
use crate::group::{Element, Group};
use crate::ring::RingElement;

struct Cursor<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, bytes: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn expect(&mut self, want: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == want => {
                self.pos += 1;
                Ok(())
            }
            got => Err(self.error(format!(
                "expected {:?}, found {}",
                want as char,
                got.map_or("end of input".to_string(), |b| format!("{:?}", b as char))
            ))),
        }
    }

    fn error(&self, message: String) -> Error {
        Error::Parse { position: self.pos.min(self.src.len()), message }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') || self.bytes.get(self.pos) == Some(&b'+') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.error("expected an integer".into()));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error("integer out of range".into()))
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn expect_end(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input".into()))
        }
    }
}

/// Parses "Z4 x Z9" style group specs.
pub fn parse_group(s: &str) -> Result<Group> {
    let mut cur = Cursor::new(s);
    let mut orders = Vec::new();
    loop {
        match cur.bump() {
            Some(b'Z') | Some(b'z') => {}
            got => {
                return Err(cur.error(format!(
                    "expected 'Z', found {}",
                    got.map_or("end of input".to_string(), |b| format!("{:?}", b as char))
                )))
            }
        }
        let n = cur.integer()?;
        if n < 1 {
            return Err(cur.error(format!("component order must be >= 1, got {n}")));
        }
        orders.push(n as u64);
        match cur.peek() {
            None => break,
            Some(b'x') | Some(b'X') | Some(b'*') => {
                cur.pos += 1;
            }
            Some(b) => return Err(cur.error(format!("expected 'x', found {:?}", b as char))),
        }
    }
    Group::new(orders)
}

fn parse_tuple(cur: &mut Cursor<'_>, g: &Group) -> Result<Element> {
    cur.expect(b'(')?;
    let mut residues = Vec::new();
    if cur.peek() != Some(b')') {
        loop {
            residues.push(cur.integer()?);
            match cur.peek() {
                Some(b',') => {
                    cur.pos += 1;
                }
                Some(b')') => break,
                _ => return Err(cur.error("expected ',' or ')' in tuple".into())),
            }
        }
    }
    cur.expect(b')')?;
    let at = cur.pos;
    g.element(&residues).map_err(|e| Error::Parse {
        position: at,
        message: e.to_string(),
    })
}

fn parse_element_inner(cur: &mut Cursor<'_>, g: &Group) -> Result<Element> {
    match cur.peek() {
        Some(b'(') => parse_tuple(cur, g),
        Some(b'g') | Some(b'G') => {
            if g.orders().len() != 1 {
                return Err(cur.error(
                    "the multiplicative form g^k applies to cyclic groups only".into(),
                ));
            }
            cur.pos += 1;
            let k = if cur.peek() == Some(b'^') {
                cur.pos += 1;
                cur.integer()?
            } else {
                1
            };
            g.element(&[k])
        }
        Some(b'1') => {
            cur.pos += 1;
            Ok(g.identity())
        }
        _ => Err(cur.error("expected an element: a tuple '(..)', 'g^k', or '1'".into())),
    }
}

/// Parses a single element in tuple or multiplicative form.
pub fn parse_element(g: &Group, s: &str) -> Result<Element> {
    let mut cur = Cursor::new(s);
    let e = parse_element_inner(&mut cur, g)?;
    cur.expect_end()?;
    Ok(e)
}

/// Parses a brace-enclosed set of elements, rejecting duplicates.
pub fn parse_element_set(g: &Group, s: &str) -> Result<Vec<Element>> {
    let mut cur = Cursor::new(s);
    cur.expect(b'{')?;
    let mut out: Vec<Element> = Vec::new();
    if cur.peek() != Some(b'}') {
        loop {
            let at = cur.pos;
            let e = parse_element_inner(&mut cur, g)?;
            if out.contains(&e) {
                return Err(Error::Parse {
                    position: at,
                    message: format!("duplicate element {e} in set"),
                });
            }
            out.push(e);
            match cur.peek() {
                Some(b',') => {
                    cur.pos += 1;
                }
                Some(b'}') => break,
                _ => return Err(cur.error("expected ',' or '}' in set".into())),
            }
        }
    }
    cur.expect(b'}')?;
    cur.expect_end()?;
    Ok(out)
}

/// Parses a monomial-list group-ring element such as
/// "7 + 3*(1,0) - 1*(2,3)" (or "3*g^2 + g - 5" over a cyclic group).
pub fn parse_ring_element(g: &Group, s: &str) -> Result<RingElement> {
    let mut cur = Cursor::new(s);
    let mut terms: Vec<(Element, i64)> = Vec::new();
    let mut sign = match cur.peek() {
        Some(b'-') => {
            cur.pos += 1;
            -1i64
        }
        _ => 1,
    };
    loop {
        // term: INT ['*' atom] | atom
        let (coeff, elem) = match cur.peek() {
            Some(b) if b.is_ascii_digit() => {
                let c = cur.integer()?;
                if cur.peek() == Some(b'*') {
                    cur.pos += 1;
                    (c, parse_element_inner(&mut cur, g)?)
                } else {
                    (c, g.identity())
                }
            }
            _ => (1, parse_element_inner(&mut cur, g)?),
        };
        terms.push((elem, sign * coeff));
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                sign = 1;
            }
            Some(b'-') => {
                cur.pos += 1;
                sign = -1;
            }
            Some(b) => return Err(cur.error(format!("expected '+' or '-', found {:?}", b as char))),
        }
    }
    RingElement::from_terms(g, &terms)
}

/// Parses either a set ("{...}") as an indicator element or a monomial
/// list, whichever the input looks like.
pub fn parse_set_or_ring_element(g: &Group, s: &str) -> Result<RingElement> {
    if s.trim_start().starts_with('{') {
        let set = parse_element_set(g, s)?;
        RingElement::from_subset(g, &set)
    } else {
        parse_ring_element(g, s)
    }
}

/// Renders an element multiplicatively for cyclic groups ("1", "g", "g^k")
/// and as a residue tuple otherwise.
pub fn format_element(g: &Group, e: &Element) -> String {
    if g.orders().len() == 1 {
        match e.residues()[0] {
            0 => "1".to_string(),
            1 => "g".to_string(),
            k => format!("g^{k}"),
        }
    } else {
        e.to_string()
    }
}
