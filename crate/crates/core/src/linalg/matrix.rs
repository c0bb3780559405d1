use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::LinalgError;
use crate::scalar::{common_denominator, Exact, Scalar};

/// Dense row-major matrix over the rationals.
///
/// Matrices with zero rows or zero columns are ordinary values; products
/// involving them follow the empty-sum convention.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::BadLength { expected: rows * cols, found: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from equally long rows. `cols` is needed for the zero-row case.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self, LinalgError> {
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::BadLength { expected: cols, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n_rows, cols, data })
    }

    /// Convenience constructor from small integers; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<Scalar> = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                r.iter().map(|&v| Scalar::from_integer(BigInt::from(v)))
            })
            .collect();
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn row_vector(v: Vec<Scalar>) -> Self {
        Matrix { rows: 1, cols: v.len(), data: v }
    }

    pub fn col_vector(v: Vec<Scalar>) -> Self {
        Matrix { rows: v.len(), cols: 1, data: v }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Scalar]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    /// Rows with the given indices, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            data.extend_from_slice(self.row(i));
        }
        Matrix { rows: indices.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, indices: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(indices.len() * self.rows);
        for i in 0..self.rows {
            for &j in indices {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.rows, cols: indices.len(), data }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::mismatch("vstack", self, other));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * s).collect() }
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.shape() != other.shape() {
            return Err(LinalgError::mismatch("add", self, other));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.shape() != other.shape() {
            return Err(LinalgError::mismatch("sub", self, other));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::mismatch("mul", self, other));
        }
        Ok(mul_unchecked(self, other))
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Kronecker product: entry `((i1,i2),(j1,j2))` is `a[i1,j1] * b[i2,j2]`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (m1, n1) = self.shape();
        let (m2, n2) = other.shape();
        let cols = n1 * n2;
        let mut out = Matrix::zeros(m1 * m2, cols);
        for i1 in 0..m1 {
            for j1 in 0..n1 {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..m2 {
                    let row = (i1 * m2 + i2) * cols;
                    for j2 in 0..n2 {
                        let b = other.get(i2, j2);
                        if !b.is_zero() {
                            out.data[row + j1 * n2 + j2] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// k-fold Kronecker power; the 0-fold power is `I_1`.
    pub fn kron_power(&self, k: usize) -> Matrix {
        let mut acc = Matrix::identity(1);
        for _ in 0..k {
            acc = acc.kron(self);
        }
        acc
    }
}

/// Row vector times matrix.
pub fn vec_mat(v: &[Scalar], m: &Matrix) -> Vec<Scalar> {
    assert_eq!(v.len(), m.rows, "vector/matrix length mismatch");
    if all_integral(v) && all_integral(&m.data) {
        let mut out = vec![BigInt::zero(); m.cols];
        for (k, vk) in v.iter().enumerate() {
            if vk.is_zero() {
                continue;
            }
            let vk = vk.numer();
            for (o, mkj) in out.iter_mut().zip(m.row(k)) {
                if !mkj.is_zero() {
                    *o += vk * mkj.numer();
                }
            }
        }
        return out.into_iter().map(Scalar::from_integer).collect();
    }
    let mut out = vec![Scalar::zero(); m.cols];
    for (k, vk) in v.iter().enumerate() {
        if vk.is_zero() {
            continue;
        }
        for (o, mkj) in out.iter_mut().zip(m.row(k)) {
            if !mkj.is_zero() {
                *o += vk * mkj;
            }
        }
    }
    out
}

/// Matrix times column vector.
pub fn mat_vec(m: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(v.len(), m.cols, "matrix/vector length mismatch");
    m.row_iter().map(|row| dot(row, v)).collect()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    if all_integral(a) && all_integral(b) {
        let mut acc = BigInt::zero();
        for (x, y) in a.iter().zip(b) {
            if !x.is_zero() && !y.is_zero() {
                acc += x.numer() * y.numer();
            }
        }
        return Scalar::from_integer(acc);
    }
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

fn all_integral(v: &[Scalar]) -> bool {
    v.iter().all(|x| x.denom().is_one())
}

/// Kronecker product of two vectors.
pub fn kron_vec(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for a in u {
        if a.is_zero() {
            out.extend(std::iter::repeat_n(Scalar::zero(), v.len()));
        } else {
            out.extend(v.iter().map(|b| a * b));
        }
    }
    out
}

/// Coordinate vector `e_i` of length `n`.
pub fn unit_vector(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

// Products are formed over the integers: row i of `a` is scaled by the lcm of
// its denominators, column j of `b` likewise, and each entry is divided once.
fn mul_unchecked(a: &Matrix, b: &Matrix) -> Matrix {
    let (m, inner) = a.shape();
    let n = b.cols;
    if m == 0 || n == 0 {
        return Matrix::zeros(m, n);
    }
    let row_den: Vec<BigInt> = (0..m).map(|i| common_denominator(a.row(i))).collect();
    let col_den: Vec<BigInt> = (0..n)
        .map(|j| common_denominator((0..inner).map(|k| b.get(k, j))))
        .collect();
    let a_int: Vec<Vec<(usize, BigInt)>> = (0..m)
        .map(|i| {
            a.row(i)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (k, v.numer() * (&row_den[i] / v.denom())))
                .collect()
        })
        .collect();
    let b_int: Vec<Vec<BigInt>> = (0..inner)
        .map(|k| {
            (0..n)
                .map(|j| {
                    let v = b.get(k, j);
                    if v.is_zero() {
                        BigInt::zero()
                    } else {
                        v.numer() * (&col_den[j] / v.denom())
                    }
                })
                .collect()
        })
        .collect();
    let mut data = Vec::with_capacity(m * n);
    let mut acc = vec![BigInt::zero(); n];
    for i in 0..m {
        for x in acc.iter_mut() {
            x.set_zero();
        }
        for (k, aik) in &a_int[i] {
            for (x, bkj) in acc.iter_mut().zip(&b_int[*k]) {
                if !bkj.is_zero() {
                    *x += aik * bkj;
                }
            }
        }
        for (j, x) in acc.iter().enumerate() {
            let den = &row_den[i] * &col_den[j];
            if den.is_one() {
                data.push(Scalar::from_integer(x.clone()));
            } else {
                data.push(Scalar::new(x.clone(), den));
            }
        }
    }
    Matrix { rows: m, cols: n, data }
}

impl Mul for &Matrix {
    type Output = Matrix;

    /// Panics if the inner dimensions disagree; see [`Matrix::try_mul`].
    fn mul(self, rhs: &Matrix) -> Matrix {
        match self.try_mul(rhs) {
            Ok(m) => m,
            Err(e) => panic!("{e}"),
        }
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        match self.try_add(rhs) {
            Ok(m) => m,
            Err(e) => panic!("{e}"),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        match self.try_sub(rhs) {
            Ok(m) => m,
            Err(e) => panic!("{e}"),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| -v).collect() }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ";")?;
            }
            for (j, v) in self.row(i).iter().enumerate() {
                write!(f, "{}{}", if j == 0 { "" } else { " " }, Exact(v))?;
            }
        }
        write!(f, "]")
    }
}
