use num_traits::{One, Zero};

use super::sample::Sample;
use super::sentence::Sentence;
use super::ConsistencyError;
use crate::automaton::Mwa;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    S,
    T,
    Hash(usize),
    Coef(usize, usize),
    Var(usize),
}

fn kinds(s: &Sentence) -> Vec<Kind> {
    let mut out = vec![Kind::S, Kind::T];
    for (i, p) in s.polynomials.iter().enumerate() {
        out.push(Kind::Hash(i));
        out.extend((0..p.monomials.len()).map(|j| Kind::Coef(i, j)));
    }
    out.extend((0..s.num_vars).map(Kind::Var));
    out
}

fn name(k: Kind) -> String {
    match k {
        Kind::S => "s".into(),
        Kind::T => "t".into(),
        Kind::Hash(i) => format!("#{}", i + 1),
        Kind::Coef(i, j) => format!("c{}_{}", i + 1, j + 1),
        Kind::Var(k) => format!("x{}", k + 1),
    }
}

/// `s`, `t`, then per polynomial `#i` followed by its coefficient symbols
/// `ci_j`, then the variable symbols `xk`.
pub fn sentence_alphabet(s: &Sentence) -> Vec<String> {
    kinds(s).into_iter().map(name).collect()
}

/// `#i ci_1 xk… #i ci_2 … #i`: every monomial's coefficient symbol followed
/// by each variable symbol repeated by its exponent. `i` is 1-based.
pub fn encode_word(s: &Sentence, i: usize) -> Result<Vec<String>, ConsistencyError> {
    let m = s.polynomials.len();
    if i == 0 || i > m {
        return Err(ConsistencyError::IndexOutOfRange { index: i, m });
    }
    let hash = name(Kind::Hash(i - 1));
    let mut w = vec![hash.clone()];
    for (j, mono) in s.polynomials[i - 1].monomials.iter().enumerate() {
        w.push(name(Kind::Coef(i - 1, j)));
        for (k, &e) in mono.exponents.iter().enumerate() {
            w.extend(std::iter::repeat_n(name(Kind::Var(k)), e as usize));
        }
        w.push(hash.clone());
    }
    Ok(w)
}

/// The three-state automaton whose weight on `w_i` is `f_i(a)`.
pub fn build_figure_automaton(s: &Sentence, witness: &[Scalar]) -> Result<Mwa, ConsistencyError> {
    if witness.len() != s.num_vars {
        return Err(ConsistencyError::WitnessLength { expected: s.num_vars, found: witness.len() });
    }
    let one = Scalar::one();
    let ks = kinds(s);
    let mu = ks
        .iter()
        .map(|&k| {
            let mut m = Matrix::zeros(3, 3);
            let loops = |m: &mut Matrix, mid: Scalar| {
                m.set(0, 0, one.clone());
                m.set(1, 1, mid);
                m.set(2, 2, one.clone());
            };
            match k {
                Kind::S => m.set(0, 1, one.clone()),
                Kind::T => m.set(1, 2, one.clone()),
                Kind::Hash(_) => {
                    m.set(0, 0, one.clone());
                    m.set(0, 1, one.clone());
                    m.set(1, 2, one.clone());
                    m.set(2, 2, one.clone());
                }
                Kind::Coef(i, j) => loops(&mut m, s.polynomials[i].monomials[j].coeff.clone()),
                Kind::Var(k) => loops(&mut m, witness[k].clone()),
            }
            m
        })
        .collect();
    let alpha = Matrix::row_vector(vec![one.clone(), Scalar::zero(), Scalar::zero()]);
    let gamma = Matrix::col_vector(vec![Scalar::zero(), Scalar::zero(), one]);
    Ok(Mwa::new(3, ks.into_iter().map(name).collect(), mu, alpha, gamma)?)
}

/// A cell of the fixed fragment: a known weight, or the weight `a_k` of
/// the free variable `x_{k+1}`, which the sample leaves out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Value(Scalar),
    Witness(usize),
}

const PREFIXES: usize = 3;

/// Column words `st`, `t`, `ε`.
pub fn figure_columns() -> Vec<Vec<String>> {
    vec![vec!["s".into(), "t".into()], vec!["t".into()], Vec::new()]
}

fn prefix(p: usize) -> Vec<String> {
    [Kind::S, Kind::T].into_iter().take(p).map(name).collect()
}

// Row of the table for the prefix `ε`, `s` or `st` (p = 0, 1, 2) extended
// by `σ`.
fn table_row(s: &Sentence, p: usize, sigma: Option<Kind>) -> [Cell; 3] {
    let v = |x: i64| Cell::Value(Scalar::from_integer(x.into()));
    let unit = |j: usize| {
        let mut r = [v(0), v(0), v(0)];
        r[j] = v(1);
        r
    };
    match (p, sigma) {
        (p, None) => unit(p),
        (0, Some(Kind::S)) => unit(1),
        (1, Some(Kind::T)) => unit(2),
        (_, Some(Kind::S | Kind::T)) => [v(0), v(0), v(0)],
        (0, Some(Kind::Hash(_))) => [v(1), v(1), v(0)],
        (0, Some(_)) => unit(0),
        (1, Some(Kind::Hash(_))) => unit(2),
        (1, Some(Kind::Coef(i, j))) => {
            [v(0), Cell::Value(s.polynomials[i].monomials[j].coeff.clone()), v(0)]
        }
        (1, Some(Kind::Var(k))) => [v(0), Cell::Witness(k), v(0)],
        (_, Some(_)) => unit(2),
    }
}

/// Row words `X ∪ XΣ` for `X = {ε, s, st}`, without repeats.
pub fn figure_rows(s: &Sentence) -> Vec<Vec<String>> {
    figure_table(s).into_iter().map(|(u, _)| u).collect()
}

/// The fragment over rows [`figure_rows`] and columns [`figure_columns`].
pub fn figure_table(s: &Sentence) -> Vec<(Vec<String>, [Cell; 3])> {
    let ks = kinds(s);
    let mut rows: Vec<(Vec<String>, [Cell; 3])> = Vec::new();
    let mut push = |u: Vec<String>, cells: [Cell; 3]| {
        if !rows.iter().any(|(w, _)| *w == u) {
            rows.push((u, cells));
        }
    };
    for p in 0..PREFIXES {
        push(prefix(p), table_row(s, p, None));
    }
    for p in 0..PREFIXES {
        for &k in &ks {
            let mut u = prefix(p);
            u.push(name(k));
            push(u, table_row(s, p, Some(k)));
        }
    }
    rows
}

/// [`figure_table`] with witness cells filled in.
pub fn figure_fragment(s: &Sentence, witness: &[Scalar]) -> Result<Matrix, ConsistencyError> {
    if witness.len() != s.num_vars {
        return Err(ConsistencyError::WitnessLength { expected: s.num_vars, found: witness.len() });
    }
    let table = figure_table(s);
    let data = table
        .iter()
        .flat_map(|(_, cells)| cells.iter())
        .map(|c| match c {
            Cell::Value(x) => x.clone(),
            Cell::Witness(k) => witness[*k].clone(),
        })
        .collect();
    Ok(Matrix::new(table.len(), 3, data).expect("three columns"))
}

/// The words `s xk t` left out of the sample.
pub fn excluded_words(s: &Sentence) -> Vec<Vec<String>> {
    (0..s.num_vars).map(|k| vec![name(Kind::S), name(Kind::Var(k)), name(Kind::T)]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedSample {
    pub sample: Sample,
    pub dimension: usize,
}

/// The fragment cells other than the `s xk t` ones, followed by `(w_i, 0)`
/// for every polynomial, with dimension bound 3.
pub fn encode_sample(s: &Sentence) -> Result<EncodedSample, ConsistencyError> {
    let cols = figure_columns();
    let mut pairs = Vec::new();
    for (u, cells) in figure_table(s) {
        for (v, cell) in cols.iter().zip(cells) {
            if let Cell::Value(x) = cell {
                pairs.push((u.iter().chain(v).cloned().collect(), x));
            }
        }
    }
    for i in 1..=s.polynomials.len() {
        pairs.push((encode_word(s, i)?, Scalar::zero()));
    }
    let sample = Sample::new(pairs)?;
    Ok(EncodedSample { sample, dimension: 3 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consistency::{verify_sample, Monomial, Polynomial};
    use crate::hankel::word_hankel;
    use crate::scalar::{int, ratio};

    // x1² − 2
    fn sqrt_two() -> Sentence {
        let p = Polynomial::new(vec![
            Monomial::new(int(1), vec![2]),
            Monomial::new(int(-2), vec![0]),
        ]);
        Sentence::new(1, vec![p]).unwrap()
    }

    fn words(ws: &[&str]) -> Vec<String> {
        ws.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn alphabet_and_words() {
        let s = sqrt_two();
        assert_eq!(sentence_alphabet(&s), words(&["s", "t", "#1", "c1_1", "c1_2", "x1"]));
        assert_eq!(encode_word(&s, 1).unwrap(), words(&["#1", "c1_1", "x1", "x1", "#1", "c1_2", "#1"]));
        assert_eq!(encode_word(&s, 2), Err(ConsistencyError::IndexOutOfRange { index: 2, m: 1 }));
        assert_eq!(sentence_alphabet(&Sentence::new(0, vec![]).unwrap()), words(&["s", "t"]));
        let two = Sentence::new(2, vec![Polynomial::new(vec![Monomial::new(int(3), vec![1, 1])])]).unwrap();
        assert_eq!(sentence_alphabet(&two).len(), 6);
    }

    #[test]
    fn automaton_weights() {
        let s = sqrt_two();
        let a = build_figure_automaton(&s, &[int(1)]).unwrap();
        assert_eq!(a.eval_word(&["s", "t"]).unwrap(), int(1));
        assert_eq!(a.eval_word(&["s", "s"]).unwrap(), int(0));
        assert_eq!(a.eval_word(&encode_word(&s, 1).unwrap()).unwrap(), int(-1));
        assert_eq!(
            build_figure_automaton(&s, &[]),
            Err(ConsistencyError::WitnessLength { expected: 1, found: 0 })
        );
    }

    #[test]
    fn fragment_matches_table() {
        let s = sqrt_two();
        let w = [ratio(7, 3)];
        let a = build_figure_automaton(&s, &w).unwrap();
        let h = word_hankel(&a, &figure_rows(&s), &figure_columns()).unwrap();
        assert_eq!(h, figure_fragment(&s, &w).unwrap());
        // `ε·s` and `s·t` repeat the prefixes `s` and `st`.
        assert_eq!(h.rows(), 3 + 18 - 2);
    }

    #[test]
    fn sample_pairs() {
        let s = sqrt_two();
        let enc = encode_sample(&s).unwrap();
        assert_eq!(enc.dimension, 3);
        let get = |w: &[&str]| enc.sample.weight(&words(w)).cloned();
        assert_eq!(get(&["s", "#1"]), Some(int(1)));
        assert_eq!(get(&["s", "#1", "t"]), Some(int(0)));
        assert_eq!(get(&["s", "c1_2", "t"]), Some(int(-2)));
        assert_eq!(get(&["s", "x1", "t"]), None);
        assert_eq!(get(&["#1", "c1_1", "x1", "x1", "#1", "c1_2", "#1"]), Some(int(0)));
    }

    #[test]
    fn witness_soundness() {
        // x1·x2 − 6 = 0 ∧ x1 − 2 = 0
        let s = Sentence::new(
            2,
            vec![
                Polynomial::new(vec![Monomial::new(int(1), vec![1, 1]), Monomial::new(int(-6), vec![0, 0])]),
                Polynomial::new(vec![Monomial::new(int(1), vec![1, 0]), Monomial::new(int(-2), vec![0, 0])]),
            ],
        )
        .unwrap();
        let sample = encode_sample(&s).unwrap().sample;
        let good = build_figure_automaton(&s, &[int(2), int(3)]).unwrap();
        assert!(verify_sample(&good, &sample).unwrap());
        let bad = build_figure_automaton(&s, &[int(3), int(2)]).unwrap();
        assert!(!verify_sample(&bad, &sample).unwrap());
    }
}
