//! Difference and product automata.
//!
//! Both constructions align the second automaton's symbols with the first by
//! name, so the operands may declare their alphabets in different orders.
//! The result uses the first operand's order.

use crate::automaton::{AutomatonError, Mta, Mwa};
use crate::linalg::{kron_vec, Matrix};
use crate::scalar::Scalar;

fn aligned<'a>(a1: &Mta, a2: &'a Mta) -> Result<Vec<&'a Matrix>, AutomatonError> {
    if !a1.alphabet().same_symbols(a2.alphabet()) {
        return Err(AutomatonError::AlphabetMismatch);
    }
    Ok(a1
        .alphabet()
        .symbols()
        .iter()
        .map(|(name, _)| a2.mu_of(name).expect("same symbols"))
        .collect())
}

fn aligned_mwa<'a>(a1: &Mwa, a2: &'a Mwa) -> Result<Vec<&'a Matrix>, AutomatonError> {
    if a1.alphabet().len() != a2.alphabet().len() {
        return Err(AutomatonError::AlphabetMismatch);
    }
    a1.alphabet()
        .iter()
        .map(|l| a2.mu_of(l).ok_or(AutomatonError::AlphabetMismatch))
        .collect()
}

// Index of a tuple of digits in base `n`, first digit most significant.
fn tuple_index(digits: &[usize], n: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * n + d)
}

fn digits(mut index: usize, n: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for d in out.iter_mut().rev() {
        *d = index % n;
        index /= n;
    }
    out
}

/// Automaton of dimension `n1 + n2` recognising `‖a1‖ − ‖a2‖`.
///
/// States `0..n1` run `a1`, states `n1..n1+n2` run `a2`. A row of `μ(σ)`
/// indexed by a tuple of states copies the corresponding row of `μ1(σ)` when
/// every component is an `a1` state, the row of `μ2(σ)` when every component
/// is an `a2` state, and is zero otherwise.
pub fn difference(a1: &Mta, a2: &Mta) -> Result<Mta, AutomatonError> {
    let mu2 = aligned(a1, a2)?;
    let (n1, n2) = (a1.dim(), a2.dim());
    let n = n1 + n2;
    let mut mu = Vec::with_capacity(mu2.len());
    for (i, m2) in mu2.iter().enumerate() {
        let k = a1.alphabet().arity(i);
        let m1 = a1.mu(i);
        let mut m = Matrix::zeros(n.pow(k as u32), n);
        for r in 0..m1.rows() {
            let row = tuple_index(&digits(r, n1.max(1), k), n);
            for j in 0..n1 {
                m.set(row, j, m1.get(r, j).clone());
            }
        }
        for r in 0..m2.rows() {
            let shifted: Vec<usize> = digits(r, n2.max(1), k).iter().map(|d| d + n1).collect();
            let row = tuple_index(&shifted, n);
            for j in 0..n2 {
                m.set(row, n1 + j, m2.get(r, j).clone());
            }
        }
        mu.push(m);
    }
    let mut gamma = a1.gamma_vec();
    gamma.extend(a2.gamma_vec().into_iter().map(|x| -x));
    Mta::new(n, a1.alphabet().clone(), mu, Matrix::col_vector(gamma))
}

/// The permutation `P_k` of order `(n1·n2)^k` with
/// `(u1 ⊗ ⋯ ⊗ uk) ⊗ (v1 ⊗ ⋯ ⊗ vk) = ((u1 ⊗ v1) ⊗ ⋯ ⊗ (uk ⊗ vk)) · P_k`.
///
/// Row index: the interleaved tuple `((i1,j1),…,(ik,jk))`; column index: the
/// separated tuple `((i1,…,ik),(j1,…,jk))`.
pub fn interleave_permutation(k: usize, n1: usize, n2: usize) -> Matrix {
    let size = (n1 * n2).pow(k as u32);
    let mut p = Matrix::zeros(size, size);
    for r in 0..size {
        p.set(r, separated_index(r, k, n1, n2), Scalar::from_integer(1.into()));
    }
    p
}

// Maps an interleaved index over `[n1]×[n2]` pairs to the separated index.
fn separated_index(r: usize, k: usize, n1: usize, n2: usize) -> usize {
    let pairs = digits(r, n1 * n2, k);
    let is: Vec<usize> = pairs.iter().map(|p| p / n2).collect();
    let js: Vec<usize> = pairs.iter().map(|p| p % n2).collect();
    tuple_index(&is, n1) * n2.pow(k as u32) + tuple_index(&js, n2)
}

/// Automaton of dimension `n1 · n2` recognising the pointwise product
/// `‖a1‖ · ‖a2‖`, with `μ(σ) = P_k · (μ1(σ) ⊗ μ2(σ))` and `γ = γ1 ⊗ γ2`.
///
/// `P_k` is applied as a row permutation rather than multiplied out.
pub fn product(a1: &Mta, a2: &Mta) -> Result<Mta, AutomatonError> {
    let mu2 = aligned(a1, a2)?;
    let (n1, n2) = (a1.dim(), a2.dim());
    let n = n1 * n2;
    let mut mu = Vec::with_capacity(mu2.len());
    for (i, m2) in mu2.iter().enumerate() {
        let k = a1.alphabet().arity(i);
        let m1 = a1.mu(i);
        let rows = n.pow(k as u32);
        let mut data = Vec::with_capacity(rows * n);
        for r in 0..rows {
            let s = separated_index(r, k, n1, n2);
            let nk2 = n2.pow(k as u32);
            data.extend(kron_vec(m1.row(s / nk2), m2.row(s % nk2)));
        }
        mu.push(Matrix::new(rows, n, data).expect("sizes agree"));
    }
    let gamma = kron_vec(a1.gamma().entries(), a2.gamma().entries());
    Mta::new(n, a1.alphabet().clone(), mu, Matrix::col_vector(gamma))
}

/// Word-automaton difference: block-diagonal transitions, `α = [α1 α2]`,
/// `γ = [γ1; −γ2]`.
pub fn difference_mwa(a1: &Mwa, a2: &Mwa) -> Result<Mwa, AutomatonError> {
    let mu2 = aligned_mwa(a1, a2)?;
    let (n1, n2) = (a1.dim(), a2.dim());
    let n = n1 + n2;
    let mu = mu2
        .iter()
        .enumerate()
        .map(|(i, m2)| {
            let m1 = a1.mu(i);
            let mut m = Matrix::zeros(n, n);
            for r in 0..n1 {
                for c in 0..n1 {
                    m.set(r, c, m1.get(r, c).clone());
                }
            }
            for r in 0..n2 {
                for c in 0..n2 {
                    m.set(n1 + r, n1 + c, m2.get(r, c).clone());
                }
            }
            m
        })
        .collect();
    let mut alpha = a1.alpha().entries().to_vec();
    alpha.extend_from_slice(a2.alpha().entries());
    let mut gamma = a1.gamma().entries().to_vec();
    gamma.extend(a2.gamma().entries().iter().map(|x| -x));
    Mwa::new(n, a1.alphabet().to_vec(), mu, Matrix::row_vector(alpha), Matrix::col_vector(gamma))
}

/// Word-automaton product: `μ1 ⊗ μ2`, `α1 ⊗ α2`, `γ1 ⊗ γ2`.
pub fn product_mwa(a1: &Mwa, a2: &Mwa) -> Result<Mwa, AutomatonError> {
    let mu2 = aligned_mwa(a1, a2)?;
    let mu = mu2.iter().enumerate().map(|(i, m2)| a1.mu(i).kron(m2)).collect();
    Mwa::new(
        a1.dim() * a2.dim(),
        a1.alphabet().to_vec(),
        mu,
        a1.alpha().kron(a2.alpha()),
        a1.gamma().kron(a2.gamma()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::RankedAlphabet;
    use crate::scalar::int;
    use crate::tree::Tree;

    fn a_count() -> Mta {
        let alphabet = RankedAlphabet::new([("sigma", 2), ("a", 0), ("b", 0)]).unwrap();
        let mu = vec![
            Matrix::from_i64(&[&[1, 0], &[0, 1], &[0, 1], &[0, 0]]),
            Matrix::from_i64(&[&[1, 1]]),
            Matrix::from_i64(&[&[1, 0]]),
        ];
        Mta::new(2, alphabet, mu, Matrix::from_i64(&[&[0], &[1]])).unwrap()
    }

    fn w_count() -> Mwa {
        Mwa::new(
            2,
            vec!["a".into(), "b".into()],
            vec![Matrix::from_i64(&[&[1, 1], &[0, 1]]), Matrix::identity(2)],
            Matrix::from_i64(&[&[1, 0]]),
            Matrix::from_i64(&[&[0], &[1]]),
        )
        .unwrap()
    }

    #[test]
    fn difference_final_vector() {
        let d = difference(&a_count(), &a_count()).unwrap();
        assert_eq!(d.dim(), 4);
        assert_eq!(d.gamma(), &Matrix::from_i64(&[&[0], &[1], &[0], &[-1]]));
        for s in ["a", "sigma(a,b)", "sigma(sigma(a,a),a)"] {
            assert_eq!(d.eval_tree(&Tree::parse(s).unwrap()).unwrap(), int(0));
        }
    }

    #[test]
    fn product_final_vector() {
        let p = product(&a_count(), &a_count()).unwrap();
        assert_eq!(p.gamma(), &Matrix::from_i64(&[&[0], &[0], &[0], &[1]]));
        let t = Tree::parse("sigma(a,sigma(a,b))").unwrap();
        assert_eq!(p.eval_tree(&t).unwrap(), int(4));
    }

    #[test]
    fn word_product_through_tree_view() {
        let w = w_count().as_mta();
        let p = product(&w, &w).unwrap();
        let t = Tree::parse("a(a(eps))").unwrap();
        assert_eq!(p.eval_tree(&t).unwrap(), int(4));
        let pw = product_mwa(&w_count(), &w_count()).unwrap();
        assert_eq!(pw.eval_word(&["a", "a"]).unwrap(), int(4));
    }

    #[test]
    fn small_permutations() {
        assert_eq!(interleave_permutation(1, 2, 3), Matrix::identity(6));
        assert_eq!(interleave_permutation(0, 2, 3), Matrix::identity(1));
    }

    #[test]
    fn permutation_identity_on_coordinate_vectors() {
        let p = interleave_permutation(2, 2, 2);
        let e = |i: usize| Matrix::row_vector(crate::linalg::unit_vector(2, i));
        for i1 in 0..2 {
            for i2 in 0..2 {
                for j1 in 0..2 {
                    for j2 in 0..2 {
                        let (u1, u2, v1, v2) = (e(i1), e(i2), e(j1), e(j2));
                        let lhs = u1.kron(&u2).kron(&v1.kron(&v2));
                        let rhs = &u1.kron(&v1).kron(&u2.kron(&v2)) * &p;
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn mismatched_alphabets() {
        let other = Mta::zero(1, RankedAlphabet::new([("a", 0)]).unwrap());
        assert_eq!(difference(&a_count(), &other), Err(AutomatonError::AlphabetMismatch));
        assert_eq!(product(&a_count(), &other), Err(AutomatonError::AlphabetMismatch));
    }

    #[test]
    fn word_difference_matches_tree_view() {
        let w = w_count();
        let d = difference_mwa(&w, &w).unwrap();
        let dt = difference(&w.as_mta(), &w.as_mta()).unwrap();
        assert_eq!(d.as_mta(), dt);
    }
}
