//! A small line-oriented language for seeds.
//!
//! ```text
//! # comments run to the end of the line
//! seed n = 2
//! initial: e2 == 0 && e1 ≡ 1 mod 2
//! class i: e1 - e2 ≡ 0 mod 2 -> offset (1, 0)
//! class ii: e1 - e2 ≡ 1 mod 2 -> offset (0, 1)
//! ```
//!
//! `e1` is the largest entry `a_1` and `en` the smallest `a_n`. Offsets are
//! listed smallest entry first. An atom is `term ≡ INT [mod INT]`,
//! `term == INT [mod INT]` or `term !≡ INT mod INT`; without `mod` it is an
//! equality.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::chains::{Atom, ChainError, Predicate, SeedClass, SeedSpec, Term, Test};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct SeedLangError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A parsed seed file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedFile {
    pub n: usize,
    pub initial: Predicate,
    pub classes: Vec<SeedClass>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Eq,
    EqEq,
    Cong,
    NotCong,
    And,
    Arrow,
    Minus,
    Colon,
    LParen,
    RParen,
    Comma,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(v) => write!(f, "`{v}`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::EqEq => write!(f, "`==`"),
            Tok::Cong => write!(f, "`≡`"),
            Tok::NotCong => write!(f, "`!≡`"),
            Tok::And => write!(f, "`&&`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
        }
    }
}

fn lex_line(text: &str, line: usize) -> Result<Vec<(Tok, usize)>, SeedLangError> {
    let chars: Vec<char> = text.chars().collect();
    let err = |column: usize, message: String| SeedLangError { line, column, message };
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let next = chars.get(i + 1).copied();
        match c {
            '#' => break,
            c if c.is_whitespace() => i += 1,
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse().map_err(|_| err(col, format!("integer `{s}` is too large")))?;
                out.push((Tok::Int(v), col));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            '=' if next == Some('=') => {
                out.push((Tok::EqEq, col));
                i += 2;
            }
            '=' => {
                out.push((Tok::Eq, col));
                i += 1;
            }
            '≡' => {
                out.push((Tok::Cong, col));
                i += 1;
            }
            '!' if next == Some('≡') => {
                out.push((Tok::NotCong, col));
                i += 2;
            }
            '&' if next == Some('&') => {
                out.push((Tok::And, col));
                i += 2;
            }
            '-' if next == Some('>') => {
                out.push((Tok::Arrow, col));
                i += 2;
            }
            '-' => {
                out.push((Tok::Minus, col));
                i += 1;
            }
            ':' => {
                out.push((Tok::Colon, col));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, col));
                i += 1;
            }
            ',' => {
                out.push((Tok::Comma, col));
                i += 1;
            }
            other => return Err(err(col, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct LineParser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_column: usize,
}

impl LineParser {
    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_column, |t| t.1)
    }

    fn err_at(&self, column: usize, message: impl Into<String>) -> SeedLangError {
        SeedLangError { line: self.line, column, message: message.into() }
    }

    fn err(&self, message: impl Into<String>) -> SeedLangError {
        self.err_at(self.column(), message)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn found(&self) -> String {
        self.peek().map_or("end of line".to_string(), |t| t.to_string())
    }

    fn expect(&mut self, tok: Tok) -> Result<(), SeedLangError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {tok}, found {}", self.found())))
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), SeedLangError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == word => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected `{word}`, found {}", self.found()))),
        }
    }

    fn int(&mut self) -> Result<(i64, usize), SeedLangError> {
        let col = self.column();
        match self.peek() {
            Some(&Tok::Int(v)) => {
                self.pos += 1;
                Ok((v, col))
            }
            _ => Err(self.err(format!("expected an integer, found {}", self.found()))),
        }
    }

    fn ident(&mut self) -> Result<String, SeedLangError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(format!("expected a name, found {}", self.found()))),
        }
    }

    fn done(&self) -> Result<(), SeedLangError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.err(format!("unexpected {} at end of line", self.found()))),
        }
    }

    fn entry(&mut self, n: usize) -> Result<usize, SeedLangError> {
        let col = self.column();
        let index = match self.peek() {
            Some(Tok::Ident(s)) if s == "e" => {
                self.pos += 1;
                self.int()?.0
            }
            Some(Tok::Ident(s)) if s.len() > 1 && s.starts_with('e') && s[1..].bytes().all(|b| b.is_ascii_digit()) => {
                let v = s[1..].parse().map_err(|_| self.err("entry index is too large"))?;
                self.pos += 1;
                v
            }
            _ => return Err(self.err(format!("expected an entry `e1`..`e{n}`, found {}", self.found()))),
        };
        if index < 1 || index as usize > n {
            return Err(self.err_at(col, format!("entry index {index} is outside e1..e{n}")));
        }
        Ok(index as usize)
    }

    fn term(&mut self, n: usize) -> Result<Term, SeedLangError> {
        let i = self.entry(n)?;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            let j = self.entry(n)?;
            return Ok(Term::Diff(i, j));
        }
        Ok(Term::Entry(i))
    }

    fn modulus(&mut self) -> Result<Option<i64>, SeedLangError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == "mod" => {
                self.pos += 1;
                let (m, col) = self.int()?;
                if m < 1 {
                    return Err(self.err_at(col, format!("modulus {m} is below 1")));
                }
                Ok(Some(m))
            }
            _ => Ok(None),
        }
    }

    fn atom(&mut self, n: usize) -> Result<Atom, SeedLangError> {
        let term = self.term(n)?;
        let negated = match self.peek() {
            Some(Tok::Cong) | Some(Tok::EqEq) => false,
            Some(Tok::NotCong) => true,
            _ => return Err(self.err(format!("expected `≡`, `==` or `!≡`, found {}", self.found()))),
        };
        self.pos += 1;
        let (value, _) = self.int()?;
        let test = match (negated, self.modulus()?) {
            (false, None) => Test::Equals(value),
            (false, Some(modulus)) => Test::Congruent { residue: value, modulus },
            (true, Some(modulus)) => Test::NotCongruent { residue: value, modulus },
            (true, None) => return Err(self.err("`!≡` needs a `mod` clause")),
        };
        Ok(Atom { term, test })
    }

    fn predicate(&mut self, n: usize) -> Result<Predicate, SeedLangError> {
        let mut atoms = vec![self.atom(n)?];
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            atoms.push(self.atom(n)?);
        }
        Ok(Predicate::new(atoms))
    }

    fn offset(&mut self, n: usize) -> Result<Vec<u32>, SeedLangError> {
        self.keyword("offset")?;
        let open = self.column();
        self.expect(Tok::LParen)?;
        let mut values = vec![self.int()?.0];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            values.push(self.int()?.0);
        }
        self.expect(Tok::RParen)?;
        let mut sorted = values.clone();
        sorted.sort_unstable();
        if sorted != (0..n as i64).collect::<Vec<_>>() {
            let shown: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            return Err(self.err_at(
                open,
                format!("offset ({}) is not a permutation of 0..{}", shown.join(","), n as i64 - 1),
            ));
        }
        Ok(values.into_iter().map(|v| v as u32).collect())
    }
}

/// Parses a seed file.
pub fn parse(text: &str) -> Result<SeedFile, SeedLangError> {
    let mut n = None;
    let mut initial = None;
    let mut classes: Vec<SeedClass> = Vec::new();
    let mut names = HashSet::new();
    let mut last_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = lex_line(raw, line)?;
        if toks.is_empty() {
            continue;
        }
        let mut p = LineParser { toks, pos: 0, line, end_column: raw.chars().count() + 1 };
        let Some(n_val) = n else {
            p.keyword("seed")?;
            p.keyword("n")?;
            p.expect(Tok::Eq)?;
            let (v, col) = p.int()?;
            if v < 1 {
                return Err(p.err_at(col, "n must be at least 1"));
            }
            p.done()?;
            n = Some(v as usize);
            continue;
        };
        let Some(Tok::Ident(word)) = p.peek().cloned() else {
            return Err(p.err(format!("expected `initial` or `class`, found {}", p.found())));
        };
        match word.as_str() {
            "initial" => {
                if initial.is_some() {
                    return Err(p.err("a second `initial` line"));
                }
                if !classes.is_empty() {
                    return Err(p.err("`initial` must come before the classes"));
                }
                p.pos += 1;
                p.expect(Tok::Colon)?;
                initial = Some(p.predicate(n_val)?);
                p.done()?;
            }
            "class" => {
                if initial.is_none() {
                    return Err(p.err("expected an `initial` line before the classes"));
                }
                p.pos += 1;
                let name_col = p.column();
                let name = p.ident()?;
                if !names.insert(name.clone()) {
                    return Err(p.err_at(name_col, format!("class `{name}` is declared twice")));
                }
                p.expect(Tok::Colon)?;
                let predicate = p.predicate(n_val)?;
                p.expect(Tok::Arrow)?;
                let offset = p.offset(n_val)?;
                p.done()?;
                classes.push(SeedClass { name, predicate, offset });
            }
            _ => return Err(p.err(format!("expected `initial` or `class`, found {}", p.found()))),
        }
    }
    let eof = |message: &str| SeedLangError { line: last_line, column: 1, message: message.into() };
    let n = n.ok_or_else(|| eof("missing `seed n = ...` header"))?;
    let initial = initial.ok_or_else(|| eof("missing `initial:` line"))?;
    if classes.is_empty() {
        return Err(eof("a seed needs at least one class"));
    }
    Ok(SeedFile { n, initial, classes })
}

impl SeedFile {
    pub fn from_spec(spec: &SeedSpec) -> Self {
        Self { n: spec.n(), initial: spec.initial().clone(), classes: spec.classes().to_vec() }
    }

    /// Canonical text; `parse(render(f)) == f`.
    pub fn render(&self) -> String {
        let mut out = format!("seed n = {}\ninitial: {}\n", self.n, self.initial);
        for class in &self.classes {
            let offset: Vec<String> = class.offset.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!(
                "class {}: {} -> offset ({})\n",
                class.name,
                class.predicate,
                offset.join(", ")
            ));
        }
        out
    }

    pub fn to_seedspec(&self) -> Result<SeedSpec, ChainError> {
        SeedSpec::new(self.n, self.initial.clone(), self.classes.clone())
    }
}

#[derive(Debug, Error)]
pub enum SeedLoadError {
    #[error(transparent)]
    Syntax(#[from] SeedLangError),
    #[error(transparent)]
    Seed(#[from] ChainError),
}

/// Parses and compiles in one step.
pub fn parse_seed(text: &str) -> Result<SeedSpec, SeedLoadError> {
    Ok(parse(text)?.to_seedspec()?)
}

/// The text of the seed files shipped in `seeds/`.
pub fn shipped_seed_text(n: usize) -> Option<&'static str> {
    match n {
        2 => Some(include_str!("../../../seeds/s2.seed")),
        3 => Some(include_str!("../../../seeds/s3.seed")),
        4 => Some(include_str!("../../../seeds/s4.seed")),
        _ => None,
    }
}
