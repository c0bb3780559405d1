//! Ranked alphabets.

use std::collections::HashMap;

use crate::tree::HOLE;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlphabetError {
    #[error("alphabet is empty")]
    Empty,
    #[error("duplicate symbol `{0}`")]
    Duplicate(String),
    #[error("invalid symbol name `{0}`")]
    InvalidName(String),
}

/// Symbol names are non-empty and free of whitespace and of the characters
/// `( ) , / :`; `_` alone is reserved for the context hole.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != HOLE
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '(' | ')' | ',' | '/' | ':'))
}

/// Finite set of symbols, each with an arity, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedAlphabet {
    symbols: Vec<(String, usize)>,
    index: HashMap<String, usize>,
}

impl RankedAlphabet {
    pub fn new<S: Into<String>>(
        symbols: impl IntoIterator<Item = (S, usize)>,
    ) -> Result<Self, AlphabetError> {
        let symbols: Vec<(String, usize)> =
            symbols.into_iter().map(|(s, k)| (s.into(), k)).collect();
        if symbols.is_empty() {
            return Err(AlphabetError::Empty);
        }
        let mut index = HashMap::new();
        for (i, (name, _)) in symbols.iter().enumerate() {
            if !is_valid_name(name) {
                return Err(AlphabetError::InvalidName(name.clone()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(AlphabetError::Duplicate(name.clone()));
            }
        }
        Ok(RankedAlphabet { symbols, index })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[(String, usize)] {
        &self.symbols
    }

    pub fn name(&self, i: usize) -> &str {
        &self.symbols[i].0
    }

    pub fn arity(&self, i: usize) -> usize {
        self.symbols[i].1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Maximum arity.
    pub fn rank(&self) -> usize {
        self.symbols.iter().map(|s| s.1).max().unwrap_or(0)
    }

    /// Indices of the symbols of arity `k`.
    pub fn of_arity(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.symbols[i].1 == k)
    }

    /// Same symbols with the same arities, in any order.
    pub fn same_symbols(&self, other: &RankedAlphabet) -> bool {
        self.len() == other.len()
            && self
                .symbols
                .iter()
                .all(|(name, k)| other.index_of(name).map(|j| other.arity(j)) == Some(*k))
    }
}

/// Validates a plain (word) alphabet.
pub fn check_word_alphabet(letters: &[String]) -> Result<(), AlphabetError> {
    if letters.is_empty() {
        return Err(AlphabetError::Empty);
    }
    let mut seen = std::collections::HashSet::new();
    for l in letters {
        if !is_valid_name(l) {
            return Err(AlphabetError::InvalidName(l.clone()));
        }
        if !seen.insert(l.as_str()) {
            return Err(AlphabetError::Duplicate(l.clone()));
        }
    }
    Ok(())
}
