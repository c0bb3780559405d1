use std::collections::HashMap;

use super::ConsistencyError;
use crate::automaton::{format_word, Mwa};
use crate::scalar::Scalar;

/// Weighted words, each listed once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    alphabet: Vec<String>,
    pairs: Vec<(Vec<String>, Scalar)>,
}

impl Sample {
    /// Keeps the first occurrence of every word; a repeat must carry the
    /// same weight. The alphabet is the set of letters used, in order of
    /// first use.
    pub fn new(pairs: impl IntoIterator<Item = (Vec<String>, Scalar)>) -> Result<Self, ConsistencyError> {
        let mut seen: HashMap<Vec<String>, usize> = HashMap::new();
        let mut alphabet: Vec<String> = Vec::new();
        let mut out: Vec<(Vec<String>, Scalar)> = Vec::new();
        for (w, r) in pairs {
            match seen.get(&w) {
                Some(&i) if out[i].1 != r => return Err(ConsistencyError::ConflictingWeights(format_word(&w))),
                Some(_) => {}
                None => {
                    for l in &w {
                        if !alphabet.contains(l) {
                            alphabet.push(l.clone());
                        }
                    }
                    seen.insert(w.clone(), out.len());
                    out.push((w, r));
                }
            }
        }
        Ok(Sample { alphabet, pairs: out })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn pairs(&self) -> &[(Vec<String>, Scalar)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn weight(&self, word: &[String]) -> Option<&Scalar> {
        self.pairs.iter().find(|(w, _)| w == word).map(|(_, r)| r)
    }
}

/// Whether `a` gives every word of the sample exactly its weight.
pub fn verify_sample(a: &Mwa, sample: &Sample) -> Result<bool, ConsistencyError> {
    for (w, r) in sample.pairs() {
        if a.eval_word(w)? != *r {
            return Ok(false);
        }
    }
    Ok(true)
}
