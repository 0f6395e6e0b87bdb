//! Text syntax for trees, forests, elements and move traces.
//!
//! ```text
//! tree    := "I" | ("a"|"b") "(" tree "," tree ")"
//! forest  := tree ("," tree)*
//! element := "[" tree "|" perm "|" tree "]"
//! perm    := "id" | "rot(" int ")" | "perm(" int* ")"
//! ```
//! Whitespace is allowed between tokens.

use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::forest::{Address, Colour, Forest, Tree};
use crate::perm::Permutation;
use crate::skein::{FlipDir, Move, MoveTrace, SkeinContext};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

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

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(c) => self.err(format!("expected {want:?}, found {c:?}")),
            None => self.err(format!("expected {want:?}, found end of input")),
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected {c:?} after end of term")),
        }
    }

    fn tree(&mut self) -> Result<Tree> {
        // explicit stack so deep inputs cannot overflow the call stack
        enum Frame {
            Node(Colour),
            Left(Colour, Tree),
        }
        let mut stack: Vec<Frame> = Vec::new();
        loop {
            let mut done = match self.peek() {
                Some('I') => {
                    self.bump();
                    Tree::Leaf
                }
                Some(c @ ('a' | 'b')) => {
                    self.bump();
                    self.expect('(')?;
                    stack.push(Frame::Node(if c == 'a' { Colour::A } else { Colour::B }));
                    continue;
                }
                Some(c) => return self.err(format!("expected 'I', 'a' or 'b', found {c:?}")),
                None => return self.err("expected a tree, found end of input"),
            };
            loop {
                match stack.pop() {
                    None => return Ok(done),
                    Some(Frame::Node(c)) => {
                        self.expect(',')?;
                        stack.push(Frame::Left(c, done));
                        break;
                    }
                    Some(Frame::Left(c, left)) => {
                        self.expect(')')?;
                        done = Tree::node(c, left, done);
                    }
                }
            }
        }
    }

    fn forest(&mut self) -> Result<Forest> {
        let mut trees = vec![self.tree()?];
        while self.peek() == Some(',') {
            self.bump();
            trees.push(self.tree()?);
        }
        Ok(Forest::new(trees))
    }

    fn uint(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.src[start..].chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return self.err("expected a number");
        }
        self.pos += digits;
        self.src[start..self.pos].parse().or_else(|_| {
            self.pos = start;
            self.err("number out of range")
        })
    }

    fn int(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let v = self.uint()? as i64;
        Ok(if neg { -v } else { v })
    }

    /// Permutation of size `m`.
    fn perm(&mut self, m: usize) -> Result<Permutation> {
        let start = self.pos;
        if self.keyword("id") {
            return Ok(Permutation::identity(m));
        }
        if self.keyword("rot") {
            self.expect('(')?;
            let r = self.int()?;
            self.expect(')')?;
            return Ok(Permutation::rotation(m, r));
        }
        if self.keyword("perm") {
            self.expect('(')?;
            let mut images = Vec::new();
            while self.peek() != Some(')') {
                images.push(self.uint()?);
            }
            self.expect(')')?;
            if images.len() != m {
                self.pos = start;
                return self.err(format!("permutation has {} entries, trees have {m} leaves", images.len()));
            }
            return Permutation::from_one_based(&images).map_err(|e| Error::Parse { pos: start, msg: e.to_string() });
        }
        self.err("expected 'id', 'rot(k)' or 'perm(...)'")
    }

    fn element(&mut self) -> Result<(Tree, Permutation, Tree)> {
        self.expect('[')?;
        let t = self.tree()?;
        self.expect('|')?;
        // the permutation size comes from the trees, so parse it from a
        // saved position once the denominator is known
        let perm_pos = self.pos;
        let mut depth = 0usize;
        loop {
            match self.bump() {
                Some('(') => depth += 1,
                Some(')') => depth = depth.saturating_sub(1),
                Some('|') if depth == 0 => break,
                Some(_) => {}
                None => return self.err("expected '|'"),
            }
        }
        let s = self.tree()?;
        self.expect(']')?;
        let after = self.pos;
        if t.leaves() != s.leaves() {
            return Err(Error::Arity { expected: s.leaves(), found: t.leaves() });
        }
        self.pos = perm_pos;
        let pi = self.perm(s.leaves())?;
        self.expect('|')?;
        self.pos = after;
        Ok((t, pi, s))
    }

    fn address(&mut self) -> Result<Address> {
        self.skip_ws();
        if self.src[self.pos..].starts_with('-') {
            self.pos += 1;
            return Ok(Address::root());
        }
        let bits: Vec<u8> = self.src[self.pos..]
            .chars()
            .take_while(|c| *c == '0' || *c == '1')
            .map(|c| (c == '1') as u8)
            .collect();
        if bits.is_empty() {
            return self.err("expected an address (bits, or '-' for the root)");
        }
        self.pos += bits.len();
        Ok(Address(bits))
    }
}

pub fn parse_tree(s: &str) -> Result<Tree> {
    let mut p = Parser::new(s);
    let t = p.tree()?;
    p.end()?;
    Ok(t)
}

pub fn parse_forest(s: &str) -> Result<Forest> {
    let mut p = Parser::new(s);
    let f = p.forest()?;
    p.end()?;
    Ok(f)
}

/// Element with its type inferred from the permutation.
pub fn parse_element(ctx: SkeinContext, s: &str) -> Result<GroupElement> {
    let mut p = Parser::new(s);
    let (t, pi, den) = p.element()?;
    p.end()?;
    GroupElement::from_parts(ctx, t, pi, den)
}

/// One move per line: `grow <addr> <tree>` or `flip <addr> <tau2rho|rho2tau>`.
/// The root address is written `-`. Blank lines and `#` comments are skipped.
pub fn parse_trace(s: &str) -> Result<MoveTrace> {
    let mut moves = Vec::new();
    let mut offset = 0;
    for line in s.split_inclusive('\n') {
        let body = line.split('#').next().unwrap_or("");
        let at = |e: Error| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
            e => e,
        };
        if !body.trim().is_empty() {
            let mut p = Parser::new(body);
            let m = if p.keyword("grow") {
                let a = p.address().map_err(at)?;
                let t = p.tree().map_err(at)?;
                Move::Grow(a, t)
            } else if p.keyword("flip") {
                let a = p.address().map_err(at)?;
                let d = if p.keyword("tau2rho") {
                    FlipDir::TauToRho
                } else if p.keyword("rho2tau") {
                    FlipDir::RhoToTau
                } else {
                    return p.err("expected 'tau2rho' or 'rho2tau'").map_err(at);
                };
                Move::Flip(a, d)
            } else {
                return p.err("expected 'grow' or 'flip'").map_err(at);
            };
            p.end().map_err(at)?;
            moves.push(m);
        }
        offset += line.len();
    }
    Ok(MoveTrace { moves })
}
