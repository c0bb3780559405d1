//! Multiplicity tree and word automata and their semantics.
//!
//! An MTA of dimension `n` assigns to each symbol `σ` of arity `k` an
//! `n^k × n` matrix. A tree is mapped to the row vector
//! `μ(σ(t1,…,tk)) = (μ(t1) ⊗ ⋯ ⊗ μ(tk)) · μ(σ)` and weighted by `μ(t) · γ`.
//! An MWA is the special case with unary letters and an initial row `α`.

use num_traits::One;

use crate::alphabet::{check_word_alphabet, AlphabetError, RankedAlphabet};
use crate::linalg::{dot, kron_vec, vec_mat, Matrix};
use crate::scalar::Scalar;
use crate::tree::{Context, Tree, HOLE};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutomatonError {
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error("expected {expected} transition matrices, found {found}")]
    MatrixCount { expected: usize, found: usize },
    #[error("matrix for `{name}` has shape {found:?}, expected {expected:?}")]
    Shape { name: String, expected: (usize, usize), found: (usize, usize) },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol `{symbol}` has arity {expected} but {found} children were given")]
    ArityMismatch { symbol: String, expected: usize, found: usize },
    #[error("alphabets differ")]
    AlphabetMismatch,
}

fn check_shape(name: &str, m: &Matrix, expected: (usize, usize)) -> Result<(), AutomatonError> {
    if m.shape() != expected {
        return Err(AutomatonError::Shape { name: name.to_string(), expected, found: m.shape() });
    }
    Ok(())
}

/// Multiplicity tree automaton `(n, Σ, μ, γ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mta {
    dim: usize,
    alphabet: RankedAlphabet,
    mu: Vec<Matrix>,
    gamma: Matrix,
}

impl Mta {
    /// `mu[i]` belongs to the `i`-th declared symbol; `gamma` is an `n × 1` column.
    pub fn new(
        dim: usize,
        alphabet: RankedAlphabet,
        mu: Vec<Matrix>,
        gamma: Matrix,
    ) -> Result<Self, AutomatonError> {
        if mu.len() != alphabet.len() {
            return Err(AutomatonError::MatrixCount { expected: alphabet.len(), found: mu.len() });
        }
        for (i, m) in mu.iter().enumerate() {
            let k = alphabet.arity(i);
            check_shape(alphabet.name(i), m, (dim.pow(k as u32), dim))?;
        }
        check_shape("final", &gamma, (dim, 1))?;
        Ok(Mta { dim, alphabet, mu, gamma })
    }

    /// The automaton with all weights zero.
    pub fn zero(dim: usize, alphabet: RankedAlphabet) -> Self {
        let mu = (0..alphabet.len())
            .map(|i| Matrix::zeros(dim.pow(alphabet.arity(i) as u32), dim))
            .collect();
        Mta { dim, alphabet, mu, gamma: Matrix::zeros(dim, 1) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alphabet(&self) -> &RankedAlphabet {
        &self.alphabet
    }

    pub fn mu(&self, i: usize) -> &Matrix {
        &self.mu[i]
    }

    pub fn mu_all(&self) -> &[Matrix] {
        &self.mu
    }

    pub fn mu_of(&self, name: &str) -> Option<&Matrix> {
        self.alphabet.index_of(name).map(|i| &self.mu[i])
    }

    pub fn gamma(&self) -> &Matrix {
        &self.gamma
    }

    pub fn gamma_vec(&self) -> Vec<Scalar> {
        self.gamma.col(0)
    }

    /// Total number of matrix entries, `Σ_σ n^{rk(σ)+1} + n`.
    pub fn size(&self) -> usize {
        self.mu.iter().map(|m| m.rows() * m.cols()).sum::<usize>() + self.dim
    }

    /// Same automaton with its symbols listed in the given order.
    pub fn with_symbol_order(&self, names: &[&str]) -> Result<Mta, AutomatonError> {
        let mut symbols = Vec::with_capacity(names.len());
        let mut mu = Vec::with_capacity(names.len());
        for name in names {
            let i = self
                .alphabet
                .index_of(name)
                .ok_or_else(|| AutomatonError::UnknownSymbol(name.to_string()))?;
            symbols.push((name.to_string(), self.alphabet.arity(i)));
            mu.push(self.mu[i].clone());
        }
        let alphabet = RankedAlphabet::new(symbols)?;
        if !alphabet.same_symbols(&self.alphabet) {
            return Err(AutomatonError::AlphabetMismatch);
        }
        Mta::new(self.dim, alphabet, mu, self.gamma.clone())
    }

    fn symbol(&self, t: &Tree) -> Result<usize, AutomatonError> {
        let i = self
            .alphabet
            .index_of(&t.symbol)
            .ok_or_else(|| AutomatonError::UnknownSymbol(t.symbol.clone()))?;
        let k = self.alphabet.arity(i);
        if k != t.children.len() {
            return Err(AutomatonError::ArityMismatch {
                symbol: t.symbol.clone(),
                expected: k,
                found: t.children.len(),
            });
        }
        Ok(i)
    }

    /// `μ(t)`, a row vector of length `n`.
    pub fn mu_tree(&self, t: &Tree) -> Result<Vec<Scalar>, AutomatonError> {
        let i = self.symbol(t)?;
        let mut acc = vec![Scalar::one()];
        for c in &t.children {
            acc = kron_vec(&acc, &self.mu_tree(c)?);
        }
        Ok(vec_mat(&acc, &self.mu[i]))
    }

    /// `‖A‖(t) = μ(t) · γ`.
    pub fn eval_tree(&self, t: &Tree) -> Result<Scalar, AutomatonError> {
        Ok(dot(&self.mu_tree(t)?, self.gamma.entries()))
    }

    /// `μ(c)`, an `n × n` matrix, with the hole read as a unary symbol mapped to `I_n`.
    pub fn mu_context(&self, c: &Context) -> Result<Matrix, AutomatonError> {
        self.mu_context_node(c.as_tree())
    }

    fn mu_context_node(&self, t: &Tree) -> Result<Matrix, AutomatonError> {
        if t.symbol == HOLE && t.children.is_empty() {
            return Ok(Matrix::identity(self.dim));
        }
        let i = self.symbol(t)?;
        let mut acc = Matrix::identity(1);
        for c in &t.children {
            let part = if c.hole_count() > 0 {
                self.mu_context_node(c)?
            } else {
                Matrix::row_vector(self.mu_tree(c)?)
            };
            acc = acc.kron(&part);
        }
        Ok(&acc * &self.mu[i])
    }

    /// `μ(c) · γ`, the backward vector of a context.
    pub fn context_vector(&self, c: &Context) -> Result<Vec<Scalar>, AutomatonError> {
        Ok((&self.mu_context(c)? * &self.gamma).col(0))
    }
}

/// Multiplicity word automaton `(n, Σ, μ, α, γ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mwa {
    dim: usize,
    alphabet: Vec<String>,
    mu: Vec<Matrix>,
    alpha: Matrix,
    gamma: Matrix,
}

impl Mwa {
    pub fn new(
        dim: usize,
        alphabet: Vec<String>,
        mu: Vec<Matrix>,
        alpha: Matrix,
        gamma: Matrix,
    ) -> Result<Self, AutomatonError> {
        check_word_alphabet(&alphabet)?;
        if mu.len() != alphabet.len() {
            return Err(AutomatonError::MatrixCount { expected: alphabet.len(), found: mu.len() });
        }
        for (name, m) in alphabet.iter().zip(&mu) {
            check_shape(name, m, (dim, dim))?;
        }
        check_shape("initial", &alpha, (1, dim))?;
        check_shape("final", &gamma, (dim, 1))?;
        Ok(Mwa { dim, alphabet, mu, alpha, gamma })
    }

    pub fn zero(dim: usize, alphabet: Vec<String>) -> Result<Self, AutomatonError> {
        let mu = vec![Matrix::zeros(dim, dim); alphabet.len()];
        Mwa::new(dim, alphabet, mu, Matrix::zeros(1, dim), Matrix::zeros(dim, 1))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn index_of(&self, letter: &str) -> Option<usize> {
        self.alphabet.iter().position(|l| l == letter)
    }

    pub fn mu(&self, i: usize) -> &Matrix {
        &self.mu[i]
    }

    pub fn mu_all(&self) -> &[Matrix] {
        &self.mu
    }

    pub fn mu_of(&self, letter: &str) -> Option<&Matrix> {
        self.index_of(letter).map(|i| &self.mu[i])
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn gamma(&self) -> &Matrix {
        &self.gamma
    }

    pub fn size(&self) -> usize {
        self.mu.len() * self.dim * self.dim + 2 * self.dim
    }

    /// Same automaton with its letters listed in the given order.
    pub fn with_letter_order(&self, letters: &[&str]) -> Result<Mwa, AutomatonError> {
        if letters.len() != self.alphabet.len() {
            return Err(AutomatonError::AlphabetMismatch);
        }
        let mu = letters
            .iter()
            .map(|l| self.mu_of(l).cloned().ok_or_else(|| AutomatonError::UnknownSymbol(l.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Mwa::new(
            self.dim,
            letters.iter().map(|l| l.to_string()).collect(),
            mu,
            self.alpha.clone(),
            self.gamma.clone(),
        )
    }

    /// `α · μ(w)`.
    pub fn forward_vector<S: AsRef<str>>(&self, word: &[S]) -> Result<Vec<Scalar>, AutomatonError> {
        let mut v = self.alpha.entries().to_vec();
        for letter in word {
            let letter = letter.as_ref();
            let m = self.mu_of(letter).ok_or_else(|| AutomatonError::UnknownSymbol(letter.to_string()))?;
            v = vec_mat(&v, m);
        }
        Ok(v)
    }

    /// `‖A‖(w) = α · μ(w) · γ`.
    pub fn eval_word<S: AsRef<str>>(&self, word: &[S]) -> Result<Scalar, AutomatonError> {
        Ok(dot(&self.forward_vector(word)?, self.gamma.entries()))
    }

    /// Name of the nullary symbol standing for the empty word in the tree view:
    /// `eps`, extended with underscores until it is fresh.
    pub fn leaf_symbol(&self) -> String {
        let mut s = String::from("eps");
        while self.alphabet.contains(&s) {
            s.push('_');
        }
        s
    }

    /// The MTA view: letters become unary symbols and a fresh leaf carries `α`.
    /// The leaf is declared first.
    pub fn as_mta(&self) -> Mta {
        let leaf = self.leaf_symbol();
        let symbols = std::iter::once((leaf, 0)).chain(self.alphabet.iter().map(|l| (l.clone(), 1)));
        let alphabet = RankedAlphabet::new(symbols).expect("word alphabet is valid");
        let mut mu = Vec::with_capacity(self.mu.len() + 1);
        mu.push(self.alpha.clone());
        mu.extend(self.mu.iter().cloned());
        Mta::new(self.dim, alphabet, mu, self.gamma.clone()).expect("shapes carry over")
    }
}

/// Encodes `σ1 … σk` as the tree `σk(…σ1(leaf)…)`.
pub fn word_to_tree<S: AsRef<str>>(word: &[S], leaf: &str) -> Tree {
    let mut t = Tree::leaf(leaf);
    for letter in word {
        t = Tree::node(letter.as_ref(), vec![t]);
    }
    t
}

/// Splits a space-separated word; the empty string is the empty word.
pub fn parse_word(text: &str) -> Vec<String> {
    text.split_whitespace().map(str::to_string).collect()
}

/// Inverse of [`parse_word`].
pub fn format_word<S: AsRef<str>>(word: &[S]) -> String {
    word.iter().map(|s| s.as_ref()).collect::<Vec<_>>().join(" ")
}
