//! Elements of finite carriers.
//!
//! Every carrier of the element backends (finite sets and finite G-sets) is a
//! sorted list of [`Elem`] values. Atoms are opaque identifiers taken from
//! input files; everything else is built structurally by constructions
//! (products, functor images, power objects, pushout classes), so equal
//! constructions always yield equal elements.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    /// Opaque identifier.
    Atom(Arc<str>),
    /// Ordered pair, the element form of binary products.
    Pair(Arc<(Elem, Elem)>),
    /// Fixed-length tuple, used for exponentials `X^Σ` (indexed by label order).
    Tuple(Arc<[Elem]>),
    /// Finite set, kept sorted and duplicate free.
    Set(Arc<[Elem]>),
    /// Finite multiset, kept sorted.
    Bag(Arc<[Elem]>),
    /// Coproduct injection.
    Inj(u8, Arc<Elem>),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("cannot parse element at byte {position}: {message}")]
pub struct ElemParseError {
    pub position: usize,
    pub message: String,
}

pub fn is_atom_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-' | '\'' | '*' | '$')
}

impl Elem {
    pub fn atom(name: &str) -> Elem {
        Elem::Atom(Arc::from(name))
    }

    pub fn pair(a: Elem, b: Elem) -> Elem {
        Elem::Pair(Arc::new((a, b)))
    }

    pub fn tuple(items: Vec<Elem>) -> Elem {
        Elem::Tuple(items.into())
    }

    pub fn set<I: IntoIterator<Item = Elem>>(items: I) -> Elem {
        let mut v: Vec<Elem> = items.into_iter().collect();
        v.sort();
        v.dedup();
        Elem::Set(v.into())
    }

    pub fn bag<I: IntoIterator<Item = Elem>>(items: I) -> Elem {
        let mut v: Vec<Elem> = items.into_iter().collect();
        v.sort();
        Elem::Bag(v.into())
    }

    pub fn inj(tag: u8, e: Elem) -> Elem {
        Elem::Inj(tag, Arc::new(e))
    }

    pub fn empty_set() -> Elem {
        Elem::Set(Arc::from(Vec::new()))
    }

    pub fn as_pair(&self) -> Option<(&Elem, &Elem)> {
        match self {
            Elem::Pair(p) => Some((&p.0, &p.1)),
            _ => None,
        }
    }

    /// Members of a set element.
    pub fn as_set(&self) -> Option<&[Elem]> {
        match self {
            Elem::Set(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_bag(&self) -> Option<&[Elem]> {
        match self {
            Elem::Bag(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_tuple(&self) -> Option<&[Elem]> {
        match self {
            Elem::Tuple(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Elem::Atom(a) => Some(a),
            _ => None,
        }
    }

    /// Set membership for set elements (binary search on the sorted members).
    pub fn set_contains(&self, x: &Elem) -> bool {
        self.as_set().is_some_and(|s| s.binary_search(x).is_ok())
    }

    pub fn parse(input: &str) -> Result<Elem, ElemParseError> {
        let mut p = Parser { src: input.as_bytes(), pos: 0 };
        p.skip_ws();
        let e = p.elem()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

fn write_seq(f: &mut fmt::Formatter<'_>, open: char, items: &[Elem], close: char) -> fmt::Result {
    write!(f, "{open}")?;
    for (i, e) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{e}")?;
    }
    write!(f, "{close}")
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Atom(a) => write!(f, "{a}"),
            Elem::Pair(p) => write!(f, "({},{})", p.0, p.1),
            Elem::Tuple(t) => write_seq(f, '<', t, '>'),
            Elem::Set(s) => write_seq(f, '{', s, '}'),
            Elem::Bag(b) => write_seq(f, '[', b, ']'),
            Elem::Inj(tag, e) => write!(f, "#{tag}:{e}"),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> ElemParseError {
        ElemParseError { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ElemParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn seq(&mut self, close: u8) -> Result<Vec<Elem>, ElemParseError> {
        let mut items = Vec::new();
        self.skip_ws();
        if self.peek() == Some(close) {
            self.pos += 1;
            return Ok(items);
        }
        loop {
            self.skip_ws();
            items.push(self.elem()?);
            self.skip_ws();
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(c) if c == close => {
                    self.pos += 1;
                    return Ok(items);
                }
                _ => return Err(self.err("expected ',' or closing bracket")),
            }
        }
    }

    fn elem(&mut self) -> Result<Elem, ElemParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let a = self.elem()?;
                self.expect(b',')?;
                let b = self.elem()?;
                self.expect(b')')?;
                Ok(Elem::pair(a, b))
            }
            Some(b'<') => {
                self.pos += 1;
                Ok(Elem::tuple(self.seq(b'>')?))
            }
            Some(b'{') => {
                self.pos += 1;
                Ok(Elem::set(self.seq(b'}')?))
            }
            Some(b'[') => {
                self.pos += 1;
                Ok(Elem::bag(self.seq(b']')?))
            }
            Some(b'#') => {
                self.pos += 1;
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let tag: u8 = std::str::from_utf8(&self.src[start..self.pos])
                    .ok()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| self.err("bad injection tag"))?;
                self.expect(b':')?;
                Ok(Elem::inj(tag, self.elem()?))
            }
            Some(c) if is_atom_char(c as char) => {
                let start = self.pos;
                while self.peek().is_some_and(|c| is_atom_char(c as char)) {
                    self.pos += 1;
                }
                // atom chars are ASCII
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Elem::atom(s))
            }
            _ => Err(self.err("expected an element")),
        }
    }
}

/// Atoms `prefix0 .. prefix{n-1}`; handy for generated carriers.
pub fn atoms(prefix: &str, n: usize) -> Vec<Elem> {
    (0..n).map(|i| Elem::atom(&format!("{prefix}{i}"))).collect()
}
