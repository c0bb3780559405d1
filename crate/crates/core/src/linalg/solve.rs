use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{LinalgError, Matrix};
use crate::scalar::{common_denominator, scale_to_integers, Scalar};

/// Solves `X · m = n` for `X`.
///
/// `m` must have linearly independent rows (otherwise [`LinalgError::NotUnique`]);
/// every row of `n` must lie in the row space of `m` (otherwise
/// [`LinalgError::NoSolution`]).
///
/// The transposed system `mᵀ · Xᵀ = nᵀ` is brought to diagonal form by
/// fraction-free Gauss–Jordan elimination, choosing in each column the
/// candidate pivot with the fewest bits. Afterwards every pivot row holds the
/// same diagonal entry `D` and the solution is read off as `rhs / D`.
pub fn solve_right(m: &Matrix, n: &Matrix) -> Result<Matrix, LinalgError> {
    if m.cols() != n.cols() {
        return Err(LinalgError::mismatch("solve_right", m, n));
    }
    let r = m.rows();
    let c = m.cols();
    let p = n.rows();
    if r > c {
        return Err(LinalgError::NotUnique);
    }
    let width = r + p;

    let mut rows: Vec<Vec<BigInt>> = (0..c)
        .map(|j| {
            let mut eq: Vec<Scalar> = m.col(j);
            eq.extend(n.col(j));
            let den = common_denominator(&eq);
            scale_to_integers(&eq, &den)
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..r {
        let pivot = (k..c)
            .filter(|&i| !rows[i][k].is_zero())
            .min_by_key(|&i| rows[i][k].bits())
            .ok_or(LinalgError::NotUnique)?;
        rows.swap(k, pivot);
        let (head, tail) = rows.split_at_mut(k);
        let (prow, tail) = tail.split_first_mut().expect("row k exists");
        let pval = prow[k].clone();
        for (i, row) in head.iter_mut().chain(tail.iter_mut()).enumerate() {
            let f = std::mem::take(&mut row[k]);
            for j in k + 1..width {
                let t = if f.is_zero() || prow[j].is_zero() {
                    if row[j].is_zero() {
                        continue;
                    }
                    &row[j] * &pval
                } else {
                    &row[j] * &pval - &f * &prow[j]
                };
                row[j] = if prev.is_one() { t } else { t / &prev };
            }
            if i < k {
                row[i] = pval.clone();
            }
        }
        prev = pval;
    }

    if rows[r..].iter().any(|row| row[r..].iter().any(|x| !x.is_zero())) {
        return Err(LinalgError::NoSolution);
    }

    let mut data = Vec::with_capacity(p * r);
    for q in 0..p {
        for row in rows.iter().take(r) {
            let v = &row[r + q];
            data.push(if v.is_zero() {
                Scalar::zero()
            } else {
                Scalar::new(v.clone(), prev.clone())
            });
        }
    }
    Matrix::new(p, r, data)
}
