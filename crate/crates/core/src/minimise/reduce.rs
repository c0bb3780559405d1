use std::collections::HashMap;

use num_traits::One;

use super::MinimiseError;
use crate::automaton::{Mta, Mwa};
use crate::linalg::{kron_vec, solve_right, unit_vector, vec_mat, SpanBuilder, LinalgError, Matrix};
use crate::scalar::Scalar;

/// Keeps row `i` of `f` exactly when it raises `rank(F_{[i]} · B)`.
/// Returns the kept rows and their indices in `f`.
pub fn select_rows(f: &Matrix, b: &Matrix) -> (Matrix, Vec<usize>) {
    if b.is_square() && *b == Matrix::identity(b.rows()) {
        return select_independent(f);
    }
    let fb = f * b;
    let mut builder = SpanBuilder::new(fb.cols());
    let mut kept = Vec::new();
    for i in 0..fb.rows() {
        if builder.is_full() {
            break;
        }
        if builder.insert(fb.row(i)).expect("row length matches") {
            kept.push(i);
        }
    }
    (f.select_rows(&kept), kept)
}

fn select_independent(f: &Matrix) -> (Matrix, Vec<usize>) {
    let mut builder = SpanBuilder::new(f.cols());
    let mut kept = Vec::new();
    for i in 0..f.rows() {
        if builder.is_full() {
            break;
        }
        if builder.insert(f.row(i)).expect("row length matches") {
            kept.push(i);
        }
    }
    (f.select_rows(&kept), kept)
}

/// Rows `F̃^{⊗k} · μ(σ)`: one row per tuple of rows of `f_sel`, lexicographic.
fn lifted(f_sel: &Matrix, mu: &Matrix, k: usize) -> Matrix {
    if k == 1 {
        return f_sel * mu;
    }
    let m = f_sel.rows();
    let count = m.pow(k as u32);
    let mut rows = Vec::with_capacity(count);
    let mut tuple = vec![0usize; k];
    for idx in 0..count {
        if idx > 0 {
            super::forward::advance(&mut tuple, m);
        }
        let mut acc = vec![Scalar::one()];
        for &l in &tuple {
            acc = kron_vec(&acc, f_sel.row(l));
        }
        rows.push(vec_mat(&acc, mu));
    }
    Matrix::from_rows(rows, mu.cols()).expect("rows have equal length")
}

// Solves `X · F̃B = R · B` for every block `R` at once. Rows of `R` that
// are rows of `F̃` give unit vectors. The rest are first solved against `F̃`
// alone, which succeeds whenever they lie in `RS(F̃)` and then satisfies the
// equation after multiplying by `B`; otherwise against `F̃B`.
fn solve_blocks(f_sel: &Matrix, b: &Matrix, blocks: &[Matrix]) -> Result<Vec<Matrix>, MinimiseError> {
    let m = f_sel.rows();
    let index: HashMap<&[Scalar], usize> =
        f_sel.row_iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut pending = Vec::new();
    for blk in blocks {
        for r in blk.row_iter() {
            if !index.contains_key(r) {
                pending.push(r.to_vec());
            }
        }
    }
    let pending = Matrix::from_rows(pending, f_sel.cols())?;
    let solved = if pending.rows() == 0 {
        Matrix::zeros(0, m)
    } else if f_sel.is_square() && *f_sel == Matrix::identity(m) {
        pending
    } else {
        match solve_right(f_sel, &pending) {
            Ok(x) => x,
            Err(LinalgError::NoSolution) => solve_right(&(f_sel * b), &(&pending * b))?,
            Err(e) => return Err(e.into()),
        }
    };
    let mut next = 0;
    let mut out = Vec::with_capacity(blocks.len());
    for blk in blocks {
        let mut rows = Vec::with_capacity(blk.rows());
        for r in blk.row_iter() {
            match index.get(r) {
                Some(&i) => rows.push(unit_vector(m, i)),
                None => {
                    rows.push(solved.row(next).to_vec());
                    next += 1;
                }
            }
        }
        out.push(Matrix::from_rows(rows, m)?);
    }
    Ok(out)
}

/// The automaton with `μ̃(σ) · F̃B = F̃^{⊗k} · μ(σ) · B` and `γ̃ = F̃ · γ`.
pub fn solve_minimal_mta(a: &Mta, f_sel: &Matrix, b: &Matrix) -> Result<Mta, MinimiseError> {
    let alphabet = a.alphabet();
    let rhs: Vec<Matrix> =
        (0..alphabet.len()).map(|s| lifted(f_sel, a.mu(s), alphabet.arity(s))).collect();
    let mu = solve_blocks(f_sel, b, &rhs)?;
    let gamma = f_sel * a.gamma();
    Ok(Mta::new(f_sel.rows(), alphabet.clone(), mu, gamma)?)
}

/// The word automaton with `α̃ · F̃B = α · B`, `μ̃(σ) · F̃B = F̃ · μ(σ) · B`
/// and `γ̃ = F̃ · γ`.
pub fn solve_minimal_mwa(a: &Mwa, f_sel: &Matrix, b: &Matrix) -> Result<Mwa, MinimiseError> {
    let mut rhs = vec![a.alpha().clone()];
    for m in a.mu_all() {
        rhs.push(f_sel * m);
    }
    let mut solved = solve_blocks(f_sel, b, &rhs)?.into_iter();
    let alpha = solved.next().expect("initial block");
    let mu: Vec<Matrix> = solved.collect();
    let gamma = f_sel * a.gamma();
    Ok(Mwa::new(f_sel.rows(), a.alphabet().to_vec(), mu, alpha, gamma)?)
}
