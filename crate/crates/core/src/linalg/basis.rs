use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{LinalgError, Matrix};
use crate::scalar::{common_denominator, scale_to_integers, Scalar};

/// Incrementally built row echelon basis.
///
/// Stored rows are integer residuals in Bareiss form: row `k` has been reduced
/// by rows `0..k`, is nonzero at its pivot column and zero at every earlier
/// pivot column. Reducing a new vector replays the Bareiss step against each
/// stored row, so every division is exact.
#[derive(Clone, Debug)]
pub struct BasisBuilder {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl BasisBuilder {
    pub fn new(ambient_dim: usize) -> Self {
        BasisBuilder { dim: ambient_dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// True once the stored rows span the whole ambient space.
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivots
    }

    /// Stored residual rows as rationals.
    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| Scalar::from_integer(x.clone())).collect())
            .collect()
    }

    /// Inserts `v`; returns whether it was independent of the stored rows.
    pub fn insert(&mut self, v: &[Scalar]) -> Result<bool, LinalgError> {
        self.check_len(v)?;
        if self.is_full() {
            return Ok(false);
        }
        match self.reduce(to_primitive(v)) {
            None => Ok(false),
            Some(r) => {
                self.push(r);
                Ok(true)
            }
        }
    }

    /// Integer-row variant of [`insert`](Self::insert).
    pub fn insert_integer(&mut self, v: Vec<BigInt>) -> Result<bool, LinalgError> {
        if v.len() != self.dim {
            return Err(LinalgError::BadLength { expected: self.dim, found: v.len() });
        }
        if self.is_full() {
            return Ok(false);
        }
        match self.reduce(v) {
            None => Ok(false),
            Some(r) => {
                self.push(r);
                Ok(true)
            }
        }
    }

    /// Whether `v` lies in the span of the stored rows.
    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        self.check_len(v)?;
        if self.is_full() {
            return Ok(true);
        }
        Ok(self.reduce(to_primitive(v)).is_none())
    }

    fn check_len(&self, v: &[Scalar]) -> Result<(), LinalgError> {
        if v.len() != self.dim {
            return Err(LinalgError::BadLength { expected: self.dim, found: v.len() });
        }
        Ok(())
    }

    fn push(&mut self, r: Vec<BigInt>) {
        // Pivot on the smallest nonzero entry to limit growth in later steps.
        let pivot = r
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .min_by_key(|(_, x)| x.bits())
            .map(|(j, _)| j)
            .expect("pushed row is nonzero");
        self.rows.push(r);
        self.pivots.push(pivot);
    }

    fn reduce(&self, mut v: Vec<BigInt>) -> Option<Vec<BigInt>> {
        if v.iter().all(Zero::is_zero) {
            return None;
        }
        let one = BigInt::one();
        let mut prev = &one;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let p = &row[c];
            let f = std::mem::take(&mut v[c]);
            let mut nonzero = false;
            for (j, (x, r)) in v.iter_mut().zip(row).enumerate() {
                if j == c {
                    continue;
                }
                let t = if f.is_zero() || r.is_zero() {
                    if x.is_zero() {
                        continue;
                    }
                    &*x * p
                } else if x.is_zero() {
                    -(&f * r)
                } else {
                    &*x * p - &f * r
                };
                *x = if prev.is_one() { t } else { t / prev };
                nonzero |= !x.is_zero();
            }
            if !nonzero {
                return None;
            }
            prev = p;
        }
        Some(v)
    }
}

/// Integer row with the same span as `v`: denominators cleared, content removed.
pub(crate) fn to_primitive(v: &[Scalar]) -> Vec<BigInt> {
    let den = common_denominator(v);
    let mut ints = scale_to_integers(v, &den);
    let mut g = BigInt::zero();
    for x in &ints {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return ints;
            }
        }
    }
    if !g.is_zero() && !g.is_one() {
        let g = g.abs();
        for x in ints.iter_mut() {
            *x = &*x / &g;
        }
    }
    ints
}

/// Rank over the rationals.
pub fn rank(a: &Matrix) -> usize {
    let mut b = super::SpanBuilder::new(a.cols());
    for row in a.row_iter() {
        if b.is_full() {
            break;
        }
        b.insert(row).expect("row length matches");
    }
    b.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn scalar_multiple_is_dependent() {
        let mut b = BasisBuilder::new(2);
        assert!(b.insert(&ints(&[1, 0])).unwrap());
        assert!(!b.insert(&ints(&[2, 0])).unwrap());
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn ambient_dimension_exhausts() {
        let mut b = BasisBuilder::new(2);
        assert!(b.insert(&ints(&[1, 1])).unwrap());
        assert!(b.insert(&ints(&[1, -1])).unwrap());
        assert!(!b.insert(&ints(&[0, 1])).unwrap());
    }

    #[test]
    fn wrong_length_is_rejected() {
        let mut b = BasisBuilder::new(3);
        assert!(b.insert(&ints(&[1, 2])).is_err());
    }

    #[test]
    fn residuals_are_triangular() {
        let mut b = BasisBuilder::new(3);
        for v in [[2, 4, 1], [1, 3, 5], [7, 0, 2]] {
            assert!(b.insert(&ints(&v)).unwrap());
        }
        let rows = b.rows();
        for (k, &c) in b.pivot_cols().iter().enumerate() {
            assert!(!rows[k][c].is_zero());
            for later in &rows[k + 1..] {
                assert!(later[c].is_zero());
            }
        }
    }

    #[test]
    fn fractions_are_handled() {
        let mut b = BasisBuilder::new(2);
        assert!(b.insert(&[ratio(1, 2), ratio(1, 3)]).unwrap());
        assert!(b.contains(&[int(3), int(2)]).unwrap());
        assert!(!b.contains(&[int(3), int(1)]).unwrap());
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&Matrix::identity(3)), 3);
        assert_eq!(rank(&Matrix::zeros(2, 3)), 0);
        assert_eq!(rank(&Matrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&Matrix::zeros(0, 4)), 0);
    }
}
