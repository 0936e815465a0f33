//! Recursive-descent parser for the presentation DSL.
//!
//! ```text
//! presentation := "<" gen-list? "|" relator-list? ">"
//! gen-list     := ident ("," ident)*
//! relator-list := relator ("," relator)*
//! relator      := word ("=" word)*
//! word         := atom+
//! atom         := (ident | "1" | "(" word ")" | "[" word "," word "]") ("^" signed-int)?
//! ident        := [A-Za-z][A-Za-z0-9_']*
//! ```
//!
//! `⟨`/`⟩` are accepted for the angle brackets. An identifier that is not a
//! declared generator is split into declared names when that is possible, so
//! `aba` reads as `a b a` over generators `a, b`. A chain `w1 = w2 = ... = wk`
//! yields `wi wi+1^-1` for consecutive terms, except that a chain ending in
//! `1` yields each `wi` as its own relator. `[u, v]` is `u v u^-1 v^-1`.

use super::presentation::Presentation;
use super::word::{Letter, Word};
use super::FpError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

pub fn parse_presentation(text: &str) -> Result<Presentation, FpError> {
    let mut p = Parser::new(text);
    p.presentation()
}

/// Parses a single word over a known generator list.
pub fn parse_word(text: &str, generators: &[String]) -> Result<Word, FpError> {
    let mut p = Parser::new(text);
    p.generators = generators.to_vec();
    p.skip_ws();
    let w = p.word()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(w)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    generators: Vec<String>,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            generators: Vec::new(),
        }
    }

    fn error(&self, message: impl Into<String>) -> FpError {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> FpError {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        FpError::Parse(ParseError {
            line,
            column,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, options: &[char]) -> bool {
        self.skip_ws();
        match self.peek() {
            Some(c) if options.contains(&c) => {
                self.pos += 1;
                true
            }
            _ => false,
        }
    }

    fn expect(&mut self, options: &[char], what: &str) -> Result<(), FpError> {
        if self.eat(options) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn ident(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return None,
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
            self.pos += 1;
        }
        Some((start, self.chars[start..self.pos].iter().collect()))
    }

    fn presentation(&mut self) -> Result<Presentation, FpError> {
        self.expect(&['<', '⟨'], "'<'")?;
        self.skip_ws();
        if self.peek() != Some('|') {
            loop {
                let (start, name) = self
                    .ident()
                    .ok_or_else(|| self.error("expected generator name"))?;
                if self.generators.contains(&name) {
                    return Err(self.error_at(start, format!("generator {name} declared twice")));
                }
                self.generators.push(name);
                if !self.eat(&[',']) {
                    break;
                }
            }
        }
        self.expect(&['|'], "'|'")?;
        let mut relators = Vec::new();
        self.skip_ws();
        if !matches!(self.peek(), Some('>') | Some('⟩')) {
            loop {
                relators.extend(self.relator()?);
                if !self.eat(&[',']) {
                    break;
                }
            }
        }
        self.expect(&['>', '⟩'], "'>'")?;
        self.skip_ws();
        if self.pos < self.chars.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Presentation::new(std::mem::take(&mut self.generators), relators)
    }

    fn relator(&mut self) -> Result<Vec<Word>, FpError> {
        let mut terms = vec![self.word()?];
        let mut last_is_one = false;
        while self.eat(&['=']) {
            self.skip_ws();
            let save = self.pos;
            last_is_one = self.peek() == Some('1');
            let w = self.word()?;
            // `1` alone, not something like `1 a`.
            if last_is_one && !(w.is_empty() && self.pos == save + 1) {
                last_is_one = false;
            }
            terms.push(w);
        }
        if terms.len() == 1 {
            return Ok(terms);
        }
        if last_is_one {
            terms.pop();
            return Ok(terms);
        }
        Ok(terms
            .windows(2)
            .map(|p| p[0].mul(&p[1].inverse()))
            .collect())
    }

    fn word(&mut self) -> Result<Word, FpError> {
        let mut w = Word::identity();
        let mut any = false;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == '(' || c == '[' || c == '1' => {
                    let atom = self.atom()?;
                    w = w.mul(&atom);
                    any = true;
                }
                _ => break,
            }
        }
        if !any {
            return Err(self.error("expected a word"));
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<Word, FpError> {
        self.skip_ws();
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(&[')'], "')'")?;
                w
            }
            Some('[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(&[','], "',' in commutator")?;
                let v = self.word()?;
                self.expect(&[']'], "']'")?;
                Word::commutator(&u, &v)
            }
            Some('1') => {
                self.pos += 1;
                Word::identity()
            }
            _ => {
                let (start, name) = self
                    .ident()
                    .ok_or_else(|| self.error("expected generator"))?;
                self.resolve(start, &name)?
            }
        };
        if self.eat(&['^']) {
            let e = self.signed_int()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn resolve(&self, start: usize, name: &str) -> Result<Word, FpError> {
        if let Some(g) = self.generators.iter().position(|x| x == name) {
            return Ok(Word::generator(g));
        }
        // Split into declared names, longest match first, with backtracking.
        fn split(s: &str, gens: &[String], out: &mut Vec<usize>) -> bool {
            if s.is_empty() {
                return true;
            }
            let mut cands: Vec<(usize, &String)> = gens
                .iter()
                .enumerate()
                .filter(|(_, g)| s.starts_with(g.as_str()))
                .collect();
            cands.sort_by_key(|(i, g)| (std::cmp::Reverse(g.len()), *i));
            for (i, g) in cands {
                out.push(i);
                if split(&s[g.len()..], gens, out) {
                    return true;
                }
                out.pop();
            }
            false
        }
        let mut parts = Vec::new();
        if split(name, &self.generators, &mut parts) {
            Ok(Word::new(parts.into_iter().map(Letter::gen)))
        } else {
            Err(self.error_at(start, format!("undeclared generator {name}")))
        }
    }

    fn signed_int(&mut self) -> Result<i64, FpError> {
        self.skip_ws();
        let start = self.pos;
        let mut neg = false;
        if matches!(self.peek(), Some('-') | Some('+')) {
            neg = self.peek() == Some('-');
            self.pos += 1;
        }
        let digits_start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.error("expected integer exponent"));
        }
        let s: String = self.chars[digits_start..self.pos].iter().collect();
        let v: i64 = s
            .parse()
            .map_err(|_| self.error_at(start, "exponent out of range"))?;
        if v == 0 {
            return Err(self.error_at(start, "zero exponent"));
        }
        Ok(if neg { -v } else { v })
    }
}
