use num_traits::{One, Zero};

use super::{LinalgError, Matrix};
use crate::scalar::Scalar;

/// Coefficients `c_0, …, c_n` of `det(λI − a) = Σ c_k λ^k`, lowest order first.
///
/// Faddeev–LeVerrier: `M_0 = 0`, `c_n = 1`, `M_k = a·M_{k−1} + c_{n−k+1}·I`,
/// `c_{n−k} = −tr(a·M_k) / k`.
pub fn char_poly_coeffs(a: &Matrix) -> Result<Vec<Scalar>, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a * &m;
        for i in 0..n {
            let d = next.get(i, i) + &coeffs[n - k + 1];
            next.set(i, i, d);
        }
        m = next;
        let tr = (a * &m).trace();
        coeffs[n - k] = -tr / Scalar::from_integer(k.into());
    }
    Ok(coeffs)
}
