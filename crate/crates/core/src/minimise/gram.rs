use num_traits::{One, Zero};

use super::MinimiseError;
use crate::automaton::{Mta, Mwa};
use crate::constructions::{product, product_mwa};
use crate::linalg::{kron_vec, mat_vec, vec_mat, Matrix};
use crate::scalar::Scalar;

/// Largest `n²·(n²)^r` the Gram route accepts by default.
pub const DEFAULT_GRAM_LIMIT: u128 = 10_000_000;

/// Summed forward and backward objects of the product automaton `A × A`
/// and the `n × n` matrices assembled from them.
///
/// `f_n = Σ_{t ∈ T^{<n}} μ′(t)` and `b_n = Σ_{c ∈ C^{<n}} μ′(c)` (contexts
/// over `T^{<n}`); `F[i][j] = f_n[i·n + j]` and `B[i][j] = (b_n · γ⊗γ)[i·n + j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningGram {
    pub f_n: Vec<Scalar>,
    pub b_n: Matrix,
    pub f: Matrix,
    pub b: Matrix,
}

pub(crate) fn check_gram_size(n: usize, r: usize, limit: u128) -> Result<(), MinimiseError> {
    let n2 = (n as u128) * (n as u128);
    let size = n2.checked_pow(r as u32).and_then(|p| p.checked_mul(n2)).unwrap_or(u128::MAX);
    if size > limit {
        return Err(MinimiseError::SizeGuard { size, limit });
    }
    Ok(())
}

/// Sum of `μ′(σ)` over the symbols of each arity `0..=r`.
pub(crate) fn arity_sums(p: &Mta) -> Vec<Matrix> {
    let n2 = p.dim();
    let r = p.alphabet().rank();
    let mut sums: Vec<Matrix> = (0..=r).map(|k| Matrix::zeros(n2.pow(k as u32), n2)).collect();
    for s in 0..p.alphabet().len() {
        let k = p.alphabet().arity(s);
        sums[k] = &sums[k] + p.mu(s);
    }
    sums
}

/// `D = Σ_k Σ_j (f^{⊗(j−1)} ⊗ I ⊗ f^{⊗(k−j)}) · M_k`, the summed one-step
/// context matrix over trees summing to `f`.
pub(crate) fn step_matrix(f: &[Scalar], sums: &[Matrix]) -> Matrix {
    let n2 = f.len();
    let mut d = Matrix::zeros(n2, n2);
    for (k, m) in sums.iter().enumerate().skip(1) {
        let mut tuple = vec![0usize; k];
        for row in 0..m.rows() {
            if row > 0 {
                super::forward::advance(&mut tuple, n2);
            }
            let mrow = m.row(row);
            if mrow.iter().all(Zero::is_zero) {
                continue;
            }
            for j in 0..k {
                let mut coef = Scalar::one();
                for (l, &t) in tuple.iter().enumerate() {
                    if l != j {
                        coef *= &f[t];
                    }
                }
                if coef.is_zero() {
                    continue;
                }
                let p = tuple[j];
                for (c, x) in mrow.iter().enumerate() {
                    if !x.is_zero() {
                        let v = d.get(p, c) + &coef * x;
                        d.set(p, c, v);
                    }
                }
            }
        }
    }
    d
}

fn reshape(v: &[Scalar], n: usize) -> Matrix {
    Matrix::new(n, n, v.to_vec()).expect("length n²")
}

/// Gram spanning sets of a tree automaton.
///
/// `f(1) = Σ_{σ∈Σ0} μ′(σ)`, `f(l+1) = Σ_k f(l)^{⊗k} · M_k`; `b(1) = I`,
/// `b(l+1) = I + Σ_k Σ_j (f(n)^{⊗(j−1)} ⊗ b(l) ⊗ f(n)^{⊗(k−j)}) · M_k`.
/// The `b` recursion is evaluated as `I + b(l) · D`, which is the same sum
/// after factoring `b(l)` out of each Kronecker term.
pub fn spanning_gram(a: &Mta, limit: u128) -> Result<SpanningGram, MinimiseError> {
    let n = a.dim();
    check_gram_size(n, a.alphabet().rank(), limit)?;
    let p = product(a, a)?;
    let n2 = p.dim();
    let sums = arity_sums(&p);

    let mut f = sums[0].row(0).to_vec();
    for _ in 1..n {
        let mut next = sums[0].row(0).to_vec();
        let mut power = vec![Scalar::one()];
        for m in sums.iter().skip(1) {
            power = kron_vec(&power, &f);
            for (x, y) in next.iter_mut().zip(vec_mat(&power, m)) {
                *x += y;
            }
        }
        f = next;
    }

    let d = step_matrix(&f, &sums);
    let identity = Matrix::identity(n2);
    let mut b = identity.clone();
    for _ in 1..n {
        b = &identity + &(&b * &d);
    }
    let gg = p.gamma_vec();
    let bg = mat_vec(&b, &gg);
    Ok(SpanningGram { f: reshape(&f, n), b: reshape(&bg, n), f_n: f, b_n: b })
}

/// Gram spanning sets of a word automaton in closed form:
/// `b(n) = Σ_{k<n} M^k` with `M = Σ_σ μ′(σ)`, `f(n) = α⊗α · b(n)`.
pub fn spanning_gram_mwa(a: &Mwa, limit: u128) -> Result<SpanningGram, MinimiseError> {
    let n = a.dim();
    check_gram_size(n, 1, limit)?;
    let p = product_mwa(a, a)?;
    let n2 = p.dim();
    let mut m = Matrix::zeros(n2, n2);
    for s in p.mu_all() {
        m = &m + s;
    }
    let identity = Matrix::identity(n2);
    let mut b = identity.clone();
    for _ in 1..n {
        b = &identity + &(&b * &m);
    }
    let f = vec_mat(p.alpha().entries(), &b);
    let bg = mat_vec(&b, p.gamma().entries());
    Ok(SpanningGram { f: reshape(&f, n), b: reshape(&bg, n), f_n: f, b_n: b })
}
