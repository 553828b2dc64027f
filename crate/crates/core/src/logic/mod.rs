//! Unary temporal logic with language-indexed modalities and two-variable
//! first-order logic with infix predicates, over finite words with two
//! unlabeled endpoint positions `0` and `|w|+1`.

pub mod equiv;
pub mod fo2;
#[cfg(feature = "fo2-to-tl")]
pub mod fo2_to_tl;
pub mod tl;
pub mod tlx;
pub mod xi;

use std::collections::BTreeMap;

use crate::lang::{combine, compile_str, Alphabet, BoolOp, Dfa, DfaJson, LangError};

pub use equiv::{tl_equiv, tl_equiv_classes};
pub use fo2::{eval_fo2, parse_fo2, tl_to_fo2, tl_to_fo2_sentence, Fo, Term, Var};
#[cfg(feature = "fo2-to-tl")]
pub use fo2_to_tl::{fo2_to_tl, fo2_to_tl_at};
pub use tl::{eval_tl, parse_tl, rank, tl_positions, Tl};
pub use tlx::{tl_plus_to_tlx, tlx_to_tl_plus};
pub use xi::{build_xi, MarkedProduct, Side};

#[derive(Debug, thiserror::Error)]
pub enum LogicError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown language {0:?}")]
    UnknownLanguage(String),
    #[error("unknown letter {0:?}")]
    UnknownLetter(char),
    #[error("language {0} is not of the form {{ε}}∪K or A⁺∩K with K in the class")]
    NotWellSuited(String),
    #[error("formula uses X or Y; translate to TL over the extended class first")]
    TlxNotSupported,
    #[error("position {position} outside 0..={max}")]
    BadPosition { position: usize, max: usize },
    #[error("size guard: {0}")]
    SizeGuard(String),
    #[error("invalid environment: {0}")]
    Env(String),
    #[error(transparent)]
    Lang(#[from] LangError),
    #[error(transparent)]
    Prevariety(#[from] crate::prevariety::PrevarietyError),
}

/// Named languages referenced by modalities and infix predicates.
#[derive(Clone, Debug)]
pub struct Env {
    alphabet: Alphabet,
    langs: BTreeMap<String, Dfa>,
}

impl Env {
    pub fn new(alphabet: Alphabet) -> Self {
        Env { alphabet, langs: BTreeMap::new() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn insert(&mut self, name: &str, dfa: Dfa) -> Result<(), LogicError> {
        if dfa.alphabet() != &self.alphabet {
            return Err(LangError::AlphabetMismatch.into());
        }
        if name.is_empty() || name.contains([']', '[']) {
            return Err(LogicError::Env(format!("bad language name {name:?}")));
        }
        self.langs.insert(name.to_string(), dfa);
        Ok(())
    }

    pub fn insert_regex(&mut self, name: &str, src: &str) -> Result<(), LogicError> {
        let d = compile_str(src, &self.alphabet)?;
        self.insert(name, d)
    }

    pub fn get(&self, name: &str) -> Result<&Dfa, LogicError> {
        self.langs.get(name).ok_or_else(|| LogicError::UnknownLanguage(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.langs.keys().map(String::as_str)
    }

    /// Name of a language equal to `dfa`, adding it under `hint` (made
    /// unique) when absent.
    pub fn intern(&mut self, hint: &str, dfa: Dfa) -> String {
        if let Some((name, _)) = self.langs.iter().find(|(_, d)| d.equivalent(&dfa)) {
            return name.clone();
        }
        let mut name = hint.to_string();
        let mut k = 1;
        while self.langs.contains_key(&name) {
            k += 1;
            name = format!("{hint}#{k}");
        }
        self.langs.insert(name.clone(), dfa.minimize());
        name
    }

    /// `{ε}`.
    pub fn epsilon(&mut self) -> String {
        let d = compile_str("eps", &self.alphabet).expect("valid");
        self.intern("eps", d)
    }

    /// `A*`.
    pub fn all(&mut self) -> String {
        let d = Dfa::universal(&self.alphabet, true);
        self.intern("All", d)
    }

    /// Loads `{"name": "regex" | dfa-object, ...}`.
    pub fn from_json(text: &str, alphabet: &Alphabet) -> Result<Self, LogicError> {
        let raw: BTreeMap<String, serde_json::Value> =
            serde_json::from_str(text).map_err(|e| LogicError::Env(e.to_string()))?;
        let mut env = Env::new(alphabet.clone());
        for (name, v) in raw {
            match v {
                serde_json::Value::String(src) => env.insert_regex(&name, &src)?,
                other => {
                    let dj: DfaJson = serde_json::from_value(other).map_err(|e| LogicError::Env(e.to_string()))?;
                    let d = dj.into_dfa(true)?;
                    if d.alphabet() != alphabet {
                        return Err(LangError::AlphabetMismatch.into());
                    }
                    env.insert(&name, d)?;
                }
            }
        }
        Ok(env)
    }

    pub(crate) fn letter_index(&self, c: char) -> Result<usize, LogicError> {
        self.alphabet.index(c).ok_or(LogicError::UnknownLetter(c))
    }

    pub(crate) fn difference(&self, x: &Dfa, y: &Dfa) -> Dfa {
        combine(x, y, BoolOp::Difference).expect("same alphabet")
    }
}

/// A word with a distinguished position in `0..=|w|+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedWord {
    pub word: Vec<usize>,
    pub position: usize,
}

impl PointedWord {
    pub fn new(word: Vec<usize>, position: usize) -> Result<Self, LogicError> {
        if position > word.len() + 1 {
            return Err(LogicError::BadPosition { position, max: word.len() + 1 });
        }
        Ok(PointedWord { word, position })
    }

    /// Parses `word@position`; a bare word is pointed at `0`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self, LogicError> {
        let (w, p) = match text.rsplit_once('@') {
            Some((w, p)) => (
                w,
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| LogicError::Syntax { position: text.len() - p.len(), message: e.to_string() })?,
            ),
            None => (text, 0),
        };
        PointedWord::new(alphabet.encode(w.trim())?, p)
    }

    /// Label of the position: a letter, or `None` for the endpoints.
    pub fn label(&self) -> Option<usize> {
        label_at(&self.word, self.position)
    }
}

pub(crate) fn label_at(word: &[usize], i: usize) -> Option<usize> {
    if i == 0 || i > word.len() {
        None
    } else {
        Some(word[i - 1])
    }
}

/// Letters strictly between positions `i < j`.
pub(crate) fn infix(word: &[usize], i: usize, j: usize) -> &[usize] {
    &word[i..j - 1]
}

// Shared tokenizer for both grammars.

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Bracket(String),
    LParen,
    RParen,
    Not,
    And,
    Or,
    Eq,
    Comma,
    Dot,
}

pub(crate) fn lex(src: &str) -> Result<Vec<(usize, Tok)>, LogicError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '!' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '=' => Tok::Eq,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '[' => {
                let close = chars[i..]
                    .iter()
                    .position(|&d| d == ']')
                    .ok_or(LogicError::Syntax { position: i, message: "unclosed '['".into() })?;
                let name: String = chars[i + 1..i + close].iter().collect();
                i += close + 1;
                out.push((start, Tok::Bracket(name.trim().to_string())));
                continue;
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => return Err(LogicError::Syntax { position: i, message: format!("unexpected {other:?}") }),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

pub(crate) struct Cursor {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Cursor {
    pub(crate) fn new(src: &str) -> Result<Self, LogicError> {
        Ok(Cursor { toks: lex(src)?, pos: 0, end: src.chars().count() })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    pub(crate) fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|(_, t)| t)
    }

    pub(crate) fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    pub(crate) fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> LogicError {
        LogicError::Syntax { position: self.offset(), message: message.into() }
    }

    pub(crate) fn expect(&mut self, tok: Tok) -> Result<(), LogicError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {tok:?}")))
        }
    }

    pub(crate) fn done(&self) -> Result<(), LogicError> {
        if self.pos < self.toks.len() {
            Err(self.error("trailing input"))
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_from_json() {
        let a = Alphabet::new(['a', 'b']).unwrap();
        let env = Env::from_json(r#"{"All": "A*", "Bst": "b*"}"#, &a).unwrap();
        assert!(env.get("Bst").unwrap().accepts_str("bb").unwrap());
        assert!(matches!(env.get("Nope"), Err(LogicError::UnknownLanguage(_))));
    }

    #[test]
    fn intern_reuses_equal_languages() {
        let a = Alphabet::new(['a', 'b']).unwrap();
        let mut env = Env::new(a.clone());
        env.insert_regex("Everything", "(a|b)*").unwrap();
        assert_eq!(env.all(), "Everything");
        let e1 = env.epsilon();
        assert_eq!(env.epsilon(), e1);
    }

    #[test]
    fn pointed_word_parse() {
        let a = Alphabet::new(['a', 'b']).unwrap();
        let pw = PointedWord::parse("ab@2", &a).unwrap();
        assert_eq!(pw.label(), Some(1));
        assert!(PointedWord::parse("ab@4", &a).is_err());
        assert_eq!(PointedWord::parse("@0", &a).unwrap().label(), None);
    }
}
