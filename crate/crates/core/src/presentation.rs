//! Group presentations and free-group words.
//!
//! Generators are single lowercase ASCII letters; the matching uppercase
//! letter denotes the inverse. A presentation file looks like
//!
//! ```text
//! # Klein bottle group
//! gens: x,y
//! rels: XyxY
//! ```

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Maximum number of generators (one per lowercase letter).
pub const MAX_GENERATORS: usize = 26;

/// A signed generator, packed as `2 * index + inverse`.
///
/// The derived ordering is the shortlex letter order
/// `x1 < x1^-1 < x2 < x2^-1 < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Letter {
        debug_assert!(generator < MAX_GENERATORS);
        Letter((generator as u8) << 1 | inverse as u8)
    }

    pub fn from_code(code: u8) -> Letter {
        Letter(code)
    }

    pub fn code(self) -> u8 {
        self.0
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    /// Exponent sign: `+1` for a generator, `-1` for its inverse.
    pub fn exponent(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// All `2n` signed generators in shortlex order.
    pub fn all(num_generators: usize) -> impl Iterator<Item = Letter> + Clone {
        (0..2 * num_generators as u8).map(Letter)
    }

    fn to_char(self) -> char {
        let c = (b'a' + (self.0 >> 1)) as char;
        if self.is_inverse() {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }
}

/// A word in the signed generators. Not necessarily reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    /// Concatenation (no reduction).
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Freely reduced form: cancels adjacent `x x^-1` and `x^-1 x` pairs.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// Freely and cyclically reduced form.
    pub fn cyclic_reduce(&self) -> Word {
        let reduced = self.free_reduce().0;
        let (mut lo, mut hi) = (0, reduced.len());
        while hi - lo >= 2 && reduced[lo] == reduced[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        Word(reduced[lo..hi].to_vec())
    }

    /// Group inverse: reverse and flip every exponent.
    pub fn invert(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, num_generators: usize) -> Vec<i64> {
        let mut sums = vec![0; num_generators];
        for l in &self.0 {
            if l.generator() < num_generators {
                sums[l.generator()] += l.exponent();
            }
        }
        sums
    }

    /// Parse a word over the first `num_generators` letters. `1` and the
    /// empty string denote the identity.
    pub fn parse(text: &str, num_generators: usize) -> Result<Word, WordError> {
        let text = text.trim();
        if text == "1" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::with_capacity(text.len());
        for (pos, c) in text.chars().enumerate() {
            if !c.is_ascii_alphabetic() {
                return Err(WordError::BadChar { c, pos });
            }
            let index = (c.to_ascii_lowercase() as u8 - b'a') as usize;
            if index >= num_generators {
                return Err(WordError::UnknownLetter { c, pos });
            }
            letters.push(Letter::new(index, c.is_ascii_uppercase()));
        }
        Ok(Word(letters))
    }
}

/// Shortlex comparison: shorter words first, then lexicographic by letter.
pub fn shortlex_cmp(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid character {c:?} at offset {pos}")]
    BadChar { c: char, pos: usize },
    #[error("unknown generator letter {c:?} at offset {pos}")]
    UnknownLetter { c: char, pos: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub index: usize,
    pub name: char,
}

/// A finite presentation `<generators | relators>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: duplicate generator name {name:?}")]
    DuplicateGenerator { line: usize, name: char },
    #[error("line {line}, column {column}: unknown letter {c:?} in relator")]
    UnknownLetter { line: usize, column: usize, c: char },
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

impl Presentation {
    /// Builds a presentation, reducing every relator and dropping the ones
    /// that reduce to the empty word.
    pub fn new(names: &[char], relators: Vec<Word>) -> Presentation {
        let generators = names
            .iter()
            .enumerate()
            .map(|(index, &name)| Generator { index, name })
            .collect();
        let relators = relators
            .iter()
            .map(Word::cyclic_reduce)
            .filter(|w| !w.is_empty())
            .collect();
        Presentation {
            generators,
            relators,
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Parses a word written with this presentation's generator names.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Ok(Word::empty());
        }
        let mut letters = Vec::with_capacity(text.len());
        for (pos, c) in text.chars().enumerate() {
            let lower = c.to_ascii_lowercase();
            if !c.is_ascii_alphabetic() {
                return Err(WordError::BadChar { c, pos });
            }
            match self.generators.iter().find(|g| g.name == lower) {
                Some(g) => letters.push(Letter::new(g.index, c.is_ascii_uppercase())),
                None => return Err(WordError::UnknownLetter { c, pos }),
            }
        }
        Ok(Word(letters))
    }

    /// Renders a word with this presentation's generator names.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters()
            .iter()
            .map(|l| {
                let c = self.generators[l.generator()].name;
                if l.is_inverse() {
                    c.to_ascii_uppercase()
                } else {
                    c
                }
            })
            .collect()
    }

    /// Parses the two-line presentation file format.
    pub fn parse(text: &str) -> Result<Presentation, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            });

        let (gens_line, gens_text) = lines
            .next()
            .ok_or_else(|| syntax(1, 1, "missing `gens:` line"))?;
        let gens_body = strip_key(gens_line, gens_text, "gens")?;
        let mut names: Vec<char> = Vec::new();
        for (column, token) in tokens(gens_text, gens_body) {
            let mut chars = token.chars();
            let name = match (chars.next(), chars.next()) {
                (Some(c), None) if c.is_ascii_lowercase() => c,
                _ => {
                    return Err(syntax(
                        gens_line,
                        column,
                        format!(
                            "generator name must be a single lowercase letter, found {token:?}"
                        ),
                    ))
                }
            };
            if names.contains(&name) {
                return Err(ParseError::DuplicateGenerator {
                    line: gens_line,
                    name,
                });
            }
            names.push(name);
        }
        if names.is_empty() {
            return Err(syntax(
                gens_line,
                gens_text.len() + 1,
                "expected at least one generator",
            ));
        }
        if names.len() > MAX_GENERATORS {
            return Err(syntax(gens_line, 1, "at most 26 generators are supported"));
        }

        let (rels_line, rels_text) = lines
            .next()
            .ok_or_else(|| syntax(gens_line + 1, 1, "missing `rels:` line"))?;
        let rels_body = strip_key(rels_line, rels_text, "rels")?;
        let mut relators = Vec::new();
        for (column, token) in tokens(rels_text, rels_body) {
            let mut letters = Vec::with_capacity(token.len());
            for (offset, c) in token.chars().enumerate() {
                let index = names.iter().position(|&n| n == c.to_ascii_lowercase());
                match index {
                    Some(index) if c.is_ascii_alphabetic() => {
                        letters.push(Letter::new(index, c.is_ascii_uppercase()))
                    }
                    _ => {
                        return Err(ParseError::UnknownLetter {
                            line: rels_line,
                            column: column + offset,
                            c,
                        })
                    }
                }
            }
            relators.push(Word(letters));
        }

        if let Some((line, _)) = lines.next() {
            return Err(syntax(line, 1, "unexpected content after `rels:` line"));
        }
        Ok(Presentation::new(&names, relators))
    }
}

/// Checks for `key:` and returns the byte offset of the text after the colon.
fn strip_key(line: usize, text: &str, key: &str) -> Result<usize, ParseError> {
    let trimmed = text.trim_start();
    let lead = text.len() - trimmed.len();
    let rest = trimmed
        .strip_prefix(key)
        .map(str::trim_start)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| syntax(line, lead + 1, format!("expected `{key}:`")))?;
    Ok(text.len() - rest.len())
}

/// Comma-separated tokens after `start`, with 1-based columns. An entirely
/// empty list yields no tokens; an empty item between commas is an error
/// reported as an empty token.
fn tokens(text: &str, start: usize) -> Vec<(usize, &str)> {
    let body = &text[start..];
    if body.trim().is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut offset = start;
    for piece in body.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        out.push((offset + lead + 1, piece.trim()));
        offset += piece.len() + 1;
    }
    out
}

impl fmt::Display for Presentation {
    /// Serializes back to the file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.generators.iter().map(|g| g.name.to_string()).collect();
        writeln!(f, "gens: {}", names.join(","))?;
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        if rels.is_empty() {
            writeln!(f, "rels:")
        } else {
            writeln!(f, "rels: {}", rels.join(", "))
        }
    }
}
