//! Word grammar for free-group elements and relators.
//!
//! ```text
//! word      := term+
//! term      := atom ('^' signed-integer)?
//! atom      := generator | '[' word ',' word ']' | '(' word ')' | '1'
//! generator := 'x' digits | identifier
//! ```
//!
//! Terms are separated by optional whitespace. `[a, b]` is `a⁻¹b⁻¹ab`.
//! Identifiers are resolved against a list of generator names; a run of
//! letters that is not itself a name but consists of single-letter names is
//! read letter by letter, so `(ab)^5` means `(a b)^5` over names `a, b`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::nilpotent::FreeGroupWord;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[error("parse error at offset {offset}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

/// Parsed word, keeping brackets and groupings as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordExpr(pub Vec<Term>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub atom: Atom,
    pub exponent: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Generator(u32),
    Identity,
    Commutator(WordExpr, WordExpr),
    Group(WordExpr),
}

impl WordExpr {
    /// Expands brackets into a freely reduced word.
    pub fn to_word(&self) -> FreeGroupWord {
        let mut w = FreeGroupWord::identity();
        for t in &self.0 {
            let base = match &t.atom {
                Atom::Generator(g) => FreeGroupWord::generator(*g),
                Atom::Identity => FreeGroupWord::identity(),
                Atom::Commutator(a, b) => FreeGroupWord::commutator(&a.to_word(), &b.to_word()),
                Atom::Group(inner) => inner.to_word(),
            };
            w = w.concat(&base.pow(t.exponent));
        }
        w
    }
}

impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            match &t.atom {
                Atom::Generator(g) => write!(f, "x{g}")?,
                Atom::Identity => f.write_str("1")?,
                Atom::Commutator(a, b) => write!(f, "[{a},{b}]")?,
                Atom::Group(inner) => write!(f, "({inner})")?,
            }
            if t.exponent != 1 {
                write!(f, "^{}", t.exponent)?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    names: &'a [String],
}

const ATOM_START: [&str; 5] = ["generator", "identifier", "'['", "'('", "'1'"];

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: match self.peek() {
                Some(c) => format!("'{c}'"),
                None => "end of input".into(),
            },
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&[&format!("'{c}'")]))
        }
    }

    fn word(&mut self) -> Result<WordExpr, ParseError> {
        let mut terms = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(',') | Some(']') | Some(')') | Some(';') => break,
                _ => terms.extend(self.terms()?),
            }
        }
        if terms.is_empty() {
            return Err(self.error(&ATOM_START));
        }
        Ok(WordExpr(terms))
    }

    /// One term, or several when an identifier splits into letters.
    fn terms(&mut self) -> Result<Vec<Term>, ParseError> {
        let atoms = self.atoms()?;
        let save = self.pos;
        self.skip_ws();
        let mut exponent = 1;
        if self.peek() == Some('^') {
            self.pos += 1;
            exponent = self.integer()?;
        } else {
            self.pos = save;
        }
        let n = atoms.len();
        Ok(atoms
            .into_iter()
            .enumerate()
            .map(|(k, atom)| Term {
                atom,
                exponent: if k + 1 == n { exponent } else { 1 },
            })
            .collect())
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.error(&["integer"]));
        }
        self.src[start..self.pos]
            .trim_start_matches('+')
            .parse()
            .map_err(|_| ParseError {
                offset: start,
                expected: vec!["integer within 64 bits".into()],
                found: self.src[start..self.pos].to_string(),
            })
    }

    fn atoms(&mut self) -> Result<Vec<Atom>, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(',')?;
                let b = self.word()?;
                self.expect(']')?;
                Ok(vec![Atom::Commutator(a, b)])
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.word()?;
                self.expect(')')?;
                Ok(vec![Atom::Group(inner)])
            }
            Some('1') => {
                self.pos += 1;
                Ok(vec![Atom::Identity])
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.identifier(),
            _ => Err(self.error(&ATOM_START)),
        }
    }

    fn identifier(&mut self) -> Result<Vec<Atom>, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        let ident = &self.src[start..self.pos];
        if let Some(i) = self.names.iter().position(|n| n == ident) {
            return Ok(vec![Atom::Generator(i as u32 + 1)]);
        }
        if let Some(digits) = ident.strip_prefix('x') {
            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                return match digits.parse::<u32>() {
                    Ok(g) if g >= 1 => Ok(vec![Atom::Generator(g)]),
                    _ => Err(ParseError {
                        offset: start + 1,
                        expected: vec!["generator index between 1 and 2^32 - 1".into()],
                        found: digits.to_string(),
                    }),
                };
            }
        }
        let letters: Option<Vec<Atom>> = ident
            .chars()
            .map(|c| {
                self.names
                    .iter()
                    .position(|n| n.len() == c.len_utf8() && n.starts_with(c))
                    .map(|i| Atom::Generator(i as u32 + 1))
            })
            .collect();
        match letters {
            Some(atoms) if !self.names.is_empty() => Ok(atoms),
            _ => Err(ParseError {
                offset: start,
                expected: if self.names.is_empty() {
                    vec!["generator x<digits>".into()]
                } else {
                    self.names
                        .iter()
                        .map(|n| format!("'{n}'"))
                        .chain(["x<digits>".to_string()])
                        .collect()
                },
                found: format!("'{ident}'"),
            }),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.error(&["end of input"]))
        }
    }
}

/// Parses a word over `x1, x2, …` keeping its structure.
pub fn parse_expr(text: &str) -> Result<WordExpr, ParseError> {
    parse_expr_with(text, &[])
}

pub fn parse_expr_with(text: &str, names: &[String]) -> Result<WordExpr, ParseError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        names,
    };
    let w = p.word()?;
    p.finish()?;
    Ok(w)
}

/// Parses and expands a word over `x1, x2, …`.
pub fn parse_word(text: &str) -> Result<FreeGroupWord, ParseError> {
    parse_expr(text).map(|e| e.to_word())
}

/// Parses and expands a word over named generators (`x<digits>` stays available).
pub fn parse_word_with(text: &str, names: &[String]) -> Result<FreeGroupWord, ParseError> {
    parse_expr_with(text, names).map(|e| e.to_word())
}

/// Parses a list of words separated by `,` or `;` at the top level.
pub fn parse_relators(text: &str, names: &[String]) -> Result<Vec<FreeGroupWord>, ParseError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        names,
    };
    let mut out = Vec::new();
    p.skip_ws();
    if p.pos == text.len() {
        return Ok(out);
    }
    loop {
        out.push(p.word()?.to_word());
        p.skip_ws();
        match p.peek() {
            Some(',') | Some(';') => p.pos += 1,
            None => return Ok(out),
            _ => return Err(p.error(&["','", "';'", "end of input"])),
        }
    }
}
