use crate::automaton::Mta;
use crate::linalg::{kron_vec, vec_mat, SpanBuilder, Matrix};
use crate::scalar::Scalar;
use crate::tree::Tree;

use num_traits::One;

/// Rows `μ(t)` spanning the forward space, one witness tree per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForwardBasis {
    pub matrix: Matrix,
    pub witnesses: Vec<Tree>,
}

/// Saturation over symbols and tuples of rows found so far.
///
/// Round 0 handles the nullary symbols. Round `i ≥ 1` handles, for each symbol
/// of arity `k ≥ 1` in declaration order, the tuples in `[i]^k` that use row
/// `i` at least once, in lexicographic order. A candidate
/// `(F_{l1} ⊗ ⋯ ⊗ F_{lk}) · μ(σ)` is kept when it is independent of the rows
/// found so far. The loop ends once the round index passes the row count.
pub fn forward_basis(a: &Mta) -> ForwardBasis {
    let n = a.dim();
    let alphabet = a.alphabet();
    let mut builder = SpanBuilder::new(n);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut witnesses: Vec<Tree> = Vec::new();

    for s in alphabet.of_arity(0) {
        let v = a.mu(s).row(0).to_vec();
        if builder.insert(&v).expect("length n") {
            rows.push(v);
            witnesses.push(Tree::leaf(alphabet.name(s)));
        }
    }

    let mut i = 1;
    while i <= rows.len() && !builder.is_full() {
        for s in 0..alphabet.len() {
            let k = alphabet.arity(s);
            if k == 0 {
                continue;
            }
            let mut tuple = vec![0usize; k];
            loop {
                if tuple.contains(&(i - 1)) {
                    let mut acc = vec![Scalar::one()];
                    for &l in &tuple {
                        acc = kron_vec(&acc, &rows[l]);
                    }
                    let v = vec_mat(&acc, a.mu(s));
                    if builder.insert(&v).expect("length n") {
                        let children = tuple.iter().map(|&l| witnesses[l].clone()).collect();
                        rows.push(v);
                        witnesses.push(Tree::node(alphabet.name(s), children));
                        if builder.is_full() {
                            break;
                        }
                    }
                }
                if !advance(&mut tuple, i) {
                    break;
                }
            }
            if builder.is_full() {
                break;
            }
        }
        i += 1;
    }

    let matrix = Matrix::from_rows(rows, n).expect("rows have length n");
    ForwardBasis { matrix, witnesses }
}

pub(crate) fn advance(t: &mut [usize], base: usize) -> bool {
    for x in t.iter_mut().rev() {
        *x += 1;
        if *x < base {
            return true;
        }
        *x = 0;
    }
    false
}
