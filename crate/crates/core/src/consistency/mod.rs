//! Existential sentences over the rationals, their encoding as weighted
//! samples, the three-state witness automaton, and Hankel-fragment learning.

mod figure;
mod learn;
mod sample;
mod sentence;

pub use figure::{
    build_figure_automaton, encode_sample, encode_word, excluded_words, figure_columns,
    figure_fragment, figure_rows, figure_table, sentence_alphabet, Cell, EncodedSample,
};
pub use learn::{hankel_from_sample, learn_from_hankel};
pub use sample::{verify_sample, Sample};
pub use sentence::{normalize_sentence, Formula, GeneralFormula, Monomial, Polynomial, Sentence};

use crate::automaton::AutomatonError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConsistencyError {
    #[error("polynomial {0} has no monomials")]
    EmptyPolynomial(usize),
    #[error("polynomial {polynomial} uses more than {num_vars} variables")]
    TooManyExponents { polynomial: usize, num_vars: usize },
    #[error("polynomial index {index} out of range 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("witness has {found} values, expected {expected}")]
    WitnessLength { expected: usize, found: usize },
    #[error("word `{0}` carries two different weights")]
    ConflictingWeights(String),
    #[error("Hankel fragment is singular")]
    SingularFragment,
    #[error("fragment shape: {0}")]
    FragmentShape(String),
    #[error("the empty word is missing from the {0} words")]
    MissingEmptyWord(&'static str),
    #[error("sample has no weight for `{0}`")]
    MissingWord(String),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}
