//! Text formats for matrices, automata, circuits, sentences and samples.
//!
//! Blank lines and lines whose first token is `#` are ignored by every parser.

mod automaton;
mod circuit;
mod sentence;

pub use automaton::{parse_automaton, parse_matrix, parse_mta, parse_mwa, write_matrix, write_mta, write_mwa, AnyAutomaton};
pub use circuit::{parse_circuit, write_circuit};
pub use sentence::{parse_sample, parse_sentence, write_sample, write_sentence};

use std::fmt;

/// A parse failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, column, message: message.into() })
}

pub(crate) fn is_comment(line: &str) -> bool {
    line.split_whitespace().next().is_none_or(|t| t == "#")
}

/// Whitespace-separated tokens with their 1-based columns.
pub(crate) fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (i, c)) in line.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((col + 1, i)),
            (true, Some((sc, si))) => {
                out.push((sc, &line[si..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((sc, si)) = start {
        out.push((sc, &line[si..]));
    }
    out
}

/// Significant lines with their 1-based numbers.
pub(crate) struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
    end: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        let all: Vec<&str> = text.lines().collect();
        let lines = all.iter().enumerate().filter(|(_, l)| !is_comment(l)).map(|(i, l)| (i + 1, *l)).collect();
        Lines { lines, pos: 0, end: all.len() + 1 }
    }

    pub(crate) fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    pub(crate) fn next(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        match self.peek() {
            Some(l) => {
                self.pos += 1;
                Ok(l)
            }
            None => err(self.end, 1, format!("unexpected end of input, expected {what}")),
        }
    }

    pub(crate) fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some((n, l)) => err(n, tokens(l).first().map_or(1, |t| t.0), "unexpected trailing content"),
        }
    }
}

/// `key: value…` with the tokens after the key.
pub(crate) fn keyed<'a>(line: (usize, &'a str), key: &str) -> Result<Vec<(usize, &'a str)>, ParseError> {
    let (n, text) = line;
    let toks = tokens(text);
    match toks.first() {
        Some((_, k)) if *k == key => Ok(toks[1..].to_vec()),
        Some((c, k)) => err(n, *c, format!("expected `{key}`, found `{k}`")),
        None => err(n, 1, format!("expected `{key}`")),
    }
}

pub(crate) fn parse_count(n: usize, (col, tok): (usize, &str), what: &str) -> Result<usize, ParseError> {
    tok.parse().or_else(|_| err(n, col, format!("expected {what}, found `{tok}`")))
}

pub(crate) fn scalar_at(n: usize, (col, tok): (usize, &str)) -> Result<crate::Scalar, ParseError> {
    crate::scalar::parse_scalar(tok).or_else(|e| err(n, col, format!("malformed rational: {e}")))
}
