use std::collections::VecDeque;

use super::forward::{advance, ForwardBasis};
use crate::automaton::Mta;
use crate::linalg::{mat_vec, SpanBuilder, Matrix};
use crate::scalar::Scalar;

/// Columns spanning the backward space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackwardBasis {
    pub matrix: Matrix,
}

/// The one-step context matrices `G · μ(σ)` with
/// `G = F_{l1} ⊗ ⋯ ⊗ I_n ⊗ ⋯ ⊗ F_{lk}`, for every symbol of arity `k ≥ 1`,
/// every hole position and every tuple of forward rows.
pub fn context_matrices(a: &Mta, fb: &ForwardBasis) -> Vec<Matrix> {
    let n = a.dim();
    let f = &fb.matrix;
    let alphabet = a.alphabet();
    let mut out = Vec::new();
    for s in 0..alphabet.len() {
        let k = alphabet.arity(s);
        if k == 0 {
            continue;
        }
        if k == 1 {
            let m = a.mu(s);
            if !m.is_zero() && !out.contains(m) {
                out.push(m.clone());
            }
            continue;
        }
        if f.rows() == 0 {
            continue;
        }
        for pos in 0..k {
            let mut others = vec![0usize; k - 1];
            loop {
                let mut g = Matrix::identity(1);
                for slot in 0..k {
                    let part = match slot.cmp(&pos) {
                        std::cmp::Ordering::Less => Matrix::row_vector(f.row(others[slot]).to_vec()),
                        std::cmp::Ordering::Equal => Matrix::identity(n),
                        std::cmp::Ordering::Greater => {
                            Matrix::row_vector(f.row(others[slot - 1]).to_vec())
                        }
                    };
                    g = g.kron(&part);
                }
                let m = &g * a.mu(s);
                if !m.is_zero() && !out.contains(&m) {
                    out.push(m);
                }
                if !advance(&mut others, f.rows()) {
                    break;
                }
            }
        }
    }
    out
}

/// Closure of `{γ}` under the one-step context matrices, breadth first.
/// Columns of the result are the kept vectors themselves.
pub fn backward_basis(a: &Mta, fb: &ForwardBasis) -> BackwardBasis {
    let n = a.dim();
    let mats = context_matrices(a, fb);
    let mut builder = SpanBuilder::new(n);
    let mut kept: Vec<Vec<Scalar>> = Vec::new();
    let mut queue = VecDeque::new();
    let gamma = a.gamma_vec();
    if builder.insert(&gamma).expect("length n") {
        kept.push(gamma.clone());
        queue.push_back(gamma);
    }
    while let Some(v) = queue.pop_front() {
        if builder.is_full() {
            break;
        }
        for m in &mats {
            let w = mat_vec(m, &v);
            if builder.insert(&w).expect("length n") {
                kept.push(w.clone());
                queue.push_back(w);
                if builder.is_full() {
                    break;
                }
            }
        }
    }
    let matrix = Matrix::from_rows(kept, n).expect("columns have length n").transpose();
    BackwardBasis { matrix }
}
