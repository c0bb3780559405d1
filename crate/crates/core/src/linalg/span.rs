use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::basis::to_primitive;
use super::{BasisBuilder, LinalgError};
use crate::scalar::Scalar;

// 2^61 − 1.
const P: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn reduce_int(x: &BigInt) -> u64 {
    x.mod_floor(&BigInt::from(P)).to_u64().expect("residue fits")
}

/// Independent rows kept as given, with a certified independence test.
///
/// A candidate is first reduced modulo a fixed prime against the kept rows.
/// A nonzero residue proves independence over the rationals, since reduction
/// mod `p` cannot raise the rank of an integer matrix. A zero residue is
/// confirmed or refuted with exact elimination, after which every later test
/// is exact.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    modular: Vec<(usize, Vec<u64>)>,
    exact: Option<BasisBuilder>,
}

impl SpanBuilder {
    pub fn new(ambient_dim: usize) -> Self {
        SpanBuilder { dim: ambient_dim, rows: Vec::new(), modular: Vec::new(), exact: None }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// The independent rows inserted so far, unchanged and in order.
    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Scalar>> {
        self.rows
    }

    /// Inserts `v`; returns whether it was independent of the kept rows.
    pub fn insert(&mut self, v: &[Scalar]) -> Result<bool, LinalgError> {
        if v.len() != self.dim {
            return Err(LinalgError::BadLength { expected: self.dim, found: v.len() });
        }
        if self.is_full() || v.iter().all(Zero::is_zero) {
            return Ok(false);
        }
        let ints = to_primitive(v);
        if let Some(exact) = self.exact.as_mut() {
            if !exact.insert_integer(ints)? {
                return Ok(false);
            }
            self.rows.push(v.to_vec());
            return Ok(true);
        }
        let mut r: Vec<u64> = ints.iter().map(reduce_int).collect();
        for (c, row) in &self.modular {
            let f = r[*c];
            if f == 0 {
                continue;
            }
            for (x, y) in r.iter_mut().zip(row) {
                if *y != 0 {
                    *x = (*x + P - mul_mod(f, *y)) % P;
                }
            }
        }
        if let Some(c) = r.iter().position(|&x| x != 0) {
            let inv = pow_mod(r[c], P - 2);
            for x in r.iter_mut() {
                *x = mul_mod(*x, inv);
            }
            self.modular.push((c, r));
            self.rows.push(v.to_vec());
            return Ok(true);
        }
        let mut exact = BasisBuilder::new(self.dim);
        for row in &self.rows {
            exact.insert(row)?;
        }
        let independent = exact.insert_integer(ints)?;
        self.exact = Some(exact);
        if independent {
            self.rows.push(v.to_vec());
        }
        Ok(independent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn keeps_rows_unchanged() {
        let mut s = SpanBuilder::new(3);
        assert!(s.insert(&[ratio(1, 2), int(0), int(3)]).unwrap());
        assert!(!s.insert(&ints(&[1, 0, 6])).unwrap());
        assert!(s.insert(&ints(&[0, 1, 1])).unwrap());
        assert_eq!(s.rows()[0], vec![ratio(1, 2), int(0), int(3)]);
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn dependent_mod_p_but_independent_over_q() {
        let p = P as i64;
        let mut s = SpanBuilder::new(2);
        assert!(s.insert(&ints(&[1, 0])).unwrap());
        // [0, p] vanishes mod p after reduction but is independent.
        assert!(s.insert(&ints(&[1, p])).unwrap());
        assert!(s.is_full());
        let mut t = SpanBuilder::new(3);
        assert!(t.insert(&ints(&[1, 0, 0])).unwrap());
        assert!(t.insert(&ints(&[0, 1, p])).unwrap());
        assert!(!t.insert(&ints(&[0, 2, 2 * p])).unwrap());
        assert!(t.insert(&ints(&[0, 1, 0])).unwrap());
    }
}
