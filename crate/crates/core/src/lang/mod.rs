//! Alphabets, regular expressions and minimal deterministic automata.

mod alphabet;
mod dfa;
mod regex;

pub use alphabet::Alphabet;
pub use dfa::{
    combine, compile, compile_str, concat, concat_marked, is_marked_concat_unambiguous, BoolOp, ConcatMode, Dfa,
    DfaJson, TransitionJson,
};
pub use regex::{parse_regex, Regex};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LangError {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("invalid letter {0:?}: letters must be in a..z")]
    InvalidLetter(char),
    #[error("duplicate letter {0:?}")]
    DuplicateLetter(char),
    #[error("unknown letter {letter:?} at position {position}")]
    UnknownLetter { letter: char, position: usize },
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("automaton is partial: state {state} has no transition on {letter:?}")]
    PartialDfa { state: usize, letter: char },
    #[error("invalid automaton: {0}")]
    InvalidDfa(String),
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("malformed JSON: {0}")]
    Json(String),
}

/// Membership test on a string; see [`Dfa::accepts_str`].
pub fn word_in(d: &Dfa, w: &str) -> Result<bool, LangError> {
    d.accepts_str(w)
}
