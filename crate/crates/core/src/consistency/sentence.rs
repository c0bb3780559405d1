use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// `coeff · x_1^{e_1} ⋯ x_n^{e_n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Scalar,
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(coeff: Scalar, exponents: Vec<u32>) -> Self {
        Monomial { coeff, exponents }
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut v = self.coeff.clone();
        for (x, &e) in point.iter().zip(&self.exponents) {
            for _ in 0..e {
                v *= x;
            }
        }
        v
    }
}

/// A polynomial as a list of monomials, kept in the given order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub monomials: Vec<Monomial>,
}

impl Polynomial {
    pub fn new(monomials: Vec<Monomial>) -> Self {
        Polynomial { monomials }
    }

    pub fn constant(c: Scalar) -> Self {
        Polynomial::new(vec![Monomial::new(c, Vec::new())])
    }

    /// The variable `x_k` (0-based).
    pub fn var(k: usize) -> Self {
        let mut e = vec![0; k + 1];
        e[k] = 1;
        Polynomial::new(vec![Monomial::new(Scalar::one(), e)])
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        self.monomials.iter().map(|m| m.eval(point)).sum()
    }

    fn terms(&self) -> BTreeMap<Vec<u32>, Scalar> {
        let mut out: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
        for m in &self.monomials {
            let mut e = m.exponents.clone();
            while e.last() == Some(&0) {
                e.pop();
            }
            *out.entry(e).or_insert_with(Scalar::zero) += &m.coeff;
        }
        out
    }

    // Like terms combined, zero terms dropped, exponent vectors in
    // increasing order. The zero polynomial keeps one zero monomial.
    fn from_terms(terms: BTreeMap<Vec<u32>, Scalar>) -> Self {
        let monomials: Vec<Monomial> = terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| Monomial::new(c, e))
            .collect();
        if monomials.is_empty() {
            return Polynomial::constant(Scalar::zero());
        }
        Polynomial::new(monomials)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut t = self.terms();
        for (e, c) in other.terms() {
            *t.entry(e).or_insert_with(Scalar::zero) += c;
        }
        Polynomial::from_terms(t)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let t = self.terms().into_iter().map(|(e, x)| (e, x * c)).collect();
        Polynomial::from_terms(t)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let len = e1.len().max(e2.len());
                let e: Vec<u32> = (0..len)
                    .map(|i| e1.get(i).copied().unwrap_or(0) + e2.get(i).copied().unwrap_or(0))
                    .collect();
                *out.entry(e).or_insert_with(Scalar::zero) += &c1 * &c2;
            }
        }
        Polynomial::from_terms(out)
    }

    /// Highest variable index used plus one.
    pub fn width(&self) -> usize {
        self.monomials
            .iter()
            .map(|m| m.exponents.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1))
            .max()
            .unwrap_or(0)
    }

    fn padded(mut self, n: usize) -> Polynomial {
        for m in &mut self.monomials {
            m.exponents.resize(n, 0);
        }
        self
    }
}

/// `∃x_1 ⋯ ∃x_n ⋀_i f_i(x) = 0`. Every monomial has exactly `num_vars`
/// exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub num_vars: usize,
    pub polynomials: Vec<Polynomial>,
}

impl Sentence {
    /// Pads or checks exponent vectors to length `num_vars`.
    pub fn new(num_vars: usize, polynomials: Vec<Polynomial>) -> Result<Self, super::ConsistencyError> {
        for (i, p) in polynomials.iter().enumerate() {
            if p.monomials.is_empty() {
                return Err(super::ConsistencyError::EmptyPolynomial(i + 1));
            }
            if p.width() > num_vars {
                return Err(super::ConsistencyError::TooManyExponents { polynomial: i + 1, num_vars });
            }
        }
        let polynomials = polynomials.into_iter().map(|p| p.padded(num_vars)).collect();
        Ok(Sentence { num_vars, polynomials })
    }

    /// Whether every polynomial vanishes at `point`.
    pub fn holds_at(&self, point: &[Scalar]) -> bool {
        self.polynomials.iter().all(|p| p.eval(point).is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    /// `f = 0`.
    Atom(Polynomial),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
}

/// A Boolean combination of polynomial equations under `∃x_1 ⋯ ∃x_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralFormula {
    pub num_vars: usize,
    pub body: Formula,
}

struct Normaliser {
    next_var: usize,
}

impl Normaliser {
    fn fresh(&mut self) -> Polynomial {
        let x = Polynomial::var(self.next_var);
        self.next_var += 1;
        x
    }

    // Equations whose conjunction (with the fresh variables existentially
    // bound) is equisatisfiable with `f`, or with `¬f` when `positive` is false.
    fn conj(&mut self, f: &Formula, positive: bool) -> Vec<Polynomial> {
        match (f, positive) {
            (Formula::Atom(p), true) => vec![p.clone()],
            (Formula::Atom(p), false) => {
                let x = self.fresh();
                vec![x.mul(p).sub(&Polynomial::constant(Scalar::one()))]
            }
            (Formula::Not(g), _) => self.conj(g, !positive),
            (Formula::And(gs), true) | (Formula::Or(gs), false) => {
                gs.iter().flat_map(|g| self.conj(g, positive)).collect()
            }
            (Formula::Or(gs), true) | (Formula::And(gs), false) => {
                let mut parts = gs.iter();
                let Some(first) = parts.next() else {
                    return vec![Polynomial::constant(Scalar::one())];
                };
                let mut acc = self.conj(first, positive);
                for g in parts {
                    let rhs = self.conj(g, positive);
                    acc = self.either(acc, rhs);
                }
                acc
            }
        }
    }

    // `(⋀ f_i = 0) ∨ (⋀ g_j = 0)` as `x² − x = 0 ∧ ⋀ x·f_i = 0 ∧ ⋀ (1 − x)·g_j = 0`.
    fn either(&mut self, fs: Vec<Polynomial>, gs: Vec<Polynomial>) -> Vec<Polynomial> {
        let x = self.fresh();
        let one = Polynomial::constant(Scalar::one());
        let not_x = one.sub(&x);
        let mut out = vec![x.mul(&x).sub(&x)];
        out.extend(fs.iter().map(|f| x.mul(f)));
        out.extend(gs.iter().map(|g| not_x.mul(g)));
        out
    }
}

/// Rewrites `g` into conjunctive form. Disjunctions and negated equations
/// introduce fresh variables numbered after the original ones, in order of
/// introduction.
pub fn normalize_sentence(g: &GeneralFormula) -> Sentence {
    let mut norm = Normaliser { next_var: g.num_vars };
    let polys = norm.conj(&g.body, true);
    let n = polys.iter().map(Polynomial::width).max().unwrap_or(0).max(norm.next_var);
    Sentence::new(n, polys).expect("normalised polynomials fit")
}
