//! Words in a free group and finite presentations.
//!
//! Presentation grammar:
//!
//! ```text
//! presentation := "gens:" ident* ";" "rels:" [word ("," word)*]
//! word         := factor*
//! factor       := atom ["^" int]
//! atom         := ident | "[" word "," word "]" | "(" word ")"
//! ```
//!
//! `[x,y]` stands for `x y x^-1 y^-1`. When all generator names are single
//! characters, identifiers in relators are read letter by letter, so
//! `aba^-1` is `a b a^-1`.

use std::fmt;
use std::str::FromStr;

use crate::linalg::IntMatrix;
use crate::{Error, Result};

/// Freely reduced word: `(generator, exponent)` pairs with nonzero
/// exponents and distinct adjacent generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<(usize, i64)>);

impl Word {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        Self(vec![(i, 1)])
    }

    /// Free reduction of arbitrary pairs.
    pub fn new(pairs: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (g, e) in pairs {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 == g => {
                    last.1 += e;
                    if last.1 == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        Self(out)
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        Self::new(self.0.iter().chain(&other.0).copied())
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Word::identity(), |acc, _| acc.concat(&base))
    }

    /// `x y x^-1 y^-1`.
    pub fn commutator(x: &Word, y: &Word) -> Self {
        x.concat(y).concat(&x.inverse()).concat(&y.inverse())
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|p| p.0).max()
    }

    /// Exponent sum of each of `n` generators.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for &(g, e) in &self.0 {
            v[g] += e;
        }
        v
    }

    /// Replaces generator `i` by `images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        self.0.iter().fold(Word::identity(), |acc, &(g, e)| acc.concat(&images[g].pow(e)))
    }

    /// Value under an assignment of generators to elements of a group given
    /// by its multiplication and inverse.
    pub fn evaluate<T: Clone>(&self, images: &[T], identity: T, mul: impl Fn(&T, &T) -> T, inv: impl Fn(&T) -> T) -> T {
        let mut acc = identity;
        for &(g, e) in &self.0 {
            let base = if e < 0 { inv(&images[g]) } else { images[g].clone() };
            for _ in 0..e.unsigned_abs() {
                acc = mul(&acc, &base);
            }
        }
        acc
    }
}

/// `⟨a_1, ..., a_n | r_1, ..., r_m⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        if relators.iter().filter_map(Word::max_generator).any(|g| g >= names.len()) {
            return Err(Error::ShapeMismatch("relator uses an undeclared generator".into()));
        }
        Ok(Self { names, relators })
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_identity() {
            return "1".into();
        }
        w.syllables()
            .iter()
            .map(|&(g, e)| if e == 1 { self.names[g].clone() } else { format!("{}^{e}", self.names[g]) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "gens: {}; rels: {}", self.names.join(" "), rels.join(", "))
    }
}

impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_presentation(s)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    names: Vec<String>,
    /// Read identifiers one letter at a time.
    letters: bool,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected {c:?}")))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw) {
            self.pos += kw.len();
            self.expect(':')
        } else {
            Err(self.err(format!("expected {kw:?}")))
        }
    }

    fn ident(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .char_indices()
            .find(|&(i, c)| !(c == '_' || c.is_ascii_alphabetic() || (i > 0 && c.is_ascii_digit())))
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return None;
        }
        let len = if self.letters { rest.chars().next().unwrap().len_utf8() } else { len };
        self.pos += len;
        Some((start, &rest[..len]))
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+'))))
            .map_or(rest.len(), |(i, _)| i);
        let k = rest[..len].parse().map_err(|_| Error::Parse { pos: start, msg: "expected an integer exponent".into() })?;
        self.pos += len;
        Ok(k)
    }

    fn generator_word(&self, start: usize, name: &str) -> Result<Word> {
        match self.names.iter().position(|n| n == name) {
            Some(i) => Ok(Word::generator(i)),
            None => Err(Error::Parse { pos: start, msg: format!("unknown generator {name:?}") }),
        }
    }

    fn atom(&mut self) -> Result<Option<Word>> {
        if self.eat('[') {
            let x = self.word()?;
            self.expect(',')?;
            let y = self.word()?;
            self.expect(']')?;
            return Ok(Some(Word::commutator(&x, &y)));
        }
        if self.eat('(') {
            let x = self.word()?;
            self.expect(')')?;
            return Ok(Some(x));
        }
        match self.ident() {
            Some((start, name)) => self.generator_word(start, name).map(Some),
            None => Ok(None),
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = Word::identity();
        while let Some(mut a) = self.atom()? {
            if self.eat('^') {
                a = a.pow(self.int()?);
            }
            w = w.concat(&a);
        }
        Ok(w)
    }
}

/// Parses `gens: a b; rels: a^2, b^2, [a,b]`.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut p = Parser { src: text, pos: 0, names: Vec::new(), letters: false };
    p.keyword("gens")?;
    while let Some((start, name)) = p.ident() {
        if p.names.iter().any(|n| n == name) {
            return Err(Error::Parse { pos: start, msg: format!("duplicate generator {name:?}") });
        }
        p.names.push(name.to_string());
    }
    p.expect(';')?;
    p.keyword("rels")?;
    p.letters = p.names.iter().all(|n| n.chars().count() == 1);
    let mut relators = Vec::new();
    p.skip_ws();
    if p.pos < text.len() {
        loop {
            let start = p.pos;
            let w = p.word()?;
            if p.pos == start {
                return Err(p.err("expected a relator"));
            }
            relators.push(w);
            if !p.eat(',') {
                break;
            }
        }
    }
    p.eat(';');
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.err("unexpected input"));
    }
    Presentation::new(p.names, relators)
}

/// Row `j` holds the exponent sums of relator `j`.
pub fn exponent_matrix(p: &Presentation) -> IntMatrix {
    let rows: Vec<Vec<i64>> = p.relators.iter().map(|r| r.exponent_sums(p.generator_count())).collect();
    IntMatrix::from_rows(p.generator_count(), &rows)
}
