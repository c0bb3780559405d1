use super::sample::Sample;
use super::ConsistencyError;
use crate::automaton::{format_word, Mwa};
use crate::linalg::{solve_right, LinalgError, Matrix};

/// The automaton with state set `X` determined by an invertible fragment.
///
/// `μ(σ)` solves `μ(σ) · H_{X,Y} = H_{Xσ,Y}`, `α` selects the row of `ε` and
/// `γ` is the column of `ε` in `H_{X,Y}`. When the fragments come from a
/// series of Hankel rank `|X|` the result recognises that series.
pub fn learn_from_hankel(
    hxy: &Matrix,
    hxsy: &[(String, Matrix)],
    x: &[Vec<String>],
    y: &[Vec<String>],
) -> Result<Mwa, ConsistencyError> {
    let k = x.len();
    if hxy.shape() != (k, y.len()) {
        return Err(ConsistencyError::FragmentShape(format!(
            "H_XY is {}x{}, expected {}x{}",
            hxy.rows(),
            hxy.cols(),
            k,
            y.len()
        )));
    }
    if k != y.len() {
        return Err(ConsistencyError::SingularFragment);
    }
    let row = x.iter().position(Vec::is_empty).ok_or(ConsistencyError::MissingEmptyWord("row"))?;
    let col = y.iter().position(Vec::is_empty).ok_or(ConsistencyError::MissingEmptyWord("column"))?;
    let mut mu = Vec::with_capacity(hxsy.len());
    for (sigma, h) in hxsy {
        if h.shape() != hxy.shape() {
            return Err(ConsistencyError::FragmentShape(format!("H_X{sigma},Y is {}x{}", h.rows(), h.cols())));
        }
        mu.push(solve_right(hxy, h).map_err(|e| match e {
            LinalgError::NotUnique => ConsistencyError::SingularFragment,
            other => ConsistencyError::FragmentShape(other.to_string()),
        })?);
    }
    let alpha = Matrix::row_vector(crate::linalg::unit_vector(k, row));
    let gamma = Matrix::col_vector(hxy.col(col));
    let letters = hxsy.iter().map(|(s, _)| s.clone()).collect();
    Ok(Mwa::new(k, letters, mu, alpha, gamma)?)
}

/// `H_{X,Y}` and `H_{Xσ,Y}` for every letter of the sample's alphabet, read
/// from the sample.
pub fn hankel_from_sample(
    sample: &Sample,
    x: &[Vec<String>],
    y: &[Vec<String>],
) -> Result<(Matrix, Vec<(String, Matrix)>), ConsistencyError> {
    let block = |rows: &[Vec<String>]| -> Result<Matrix, ConsistencyError> {
        let mut data = Vec::with_capacity(rows.len() * y.len());
        for u in rows {
            for v in y {
                let w: Vec<String> = u.iter().chain(v).cloned().collect();
                let r = sample.weight(&w).ok_or_else(|| ConsistencyError::MissingWord(format_word(&w)))?;
                data.push(r.clone());
            }
        }
        Ok(Matrix::new(rows.len(), y.len(), data).expect("sizes agree"))
    };
    let hxy = block(x)?;
    let mut hxsy = Vec::with_capacity(sample.alphabet().len());
    for sigma in sample.alphabet() {
        let rows: Vec<Vec<String>> = x
            .iter()
            .map(|u| u.iter().cloned().chain(std::iter::once(sigma.clone())).collect())
            .collect();
        hxsy.push((sigma.clone(), block(&rows)?));
    }
    Ok((hxy, hxsy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hankel::words_below;
    use crate::scalar::int;

    fn eps_a() -> Vec<Vec<String>> {
        vec![vec![], vec!["a".into()]]
    }

    #[test]
    fn powers_of_two() {
        let eps = vec![Vec::new()];
        let a = learn_from_hankel(
            &Matrix::from_i64(&[&[1]]),
            &[("a".into(), Matrix::from_i64(&[&[2]]))],
            &eps,
            &eps,
        )
        .unwrap();
        assert_eq!(a.mu(0), &Matrix::from_i64(&[&[2]]));
        assert_eq!(a.alpha(), &Matrix::from_i64(&[&[1]]));
        assert_eq!(a.gamma(), &Matrix::from_i64(&[&[1]]));
    }

    #[test]
    fn count_fragment() {
        let h = Matrix::from_i64(&[&[0, 1], &[1, 2]]);
        let ha = Matrix::from_i64(&[&[1, 2], &[2, 3]]);
        let hb = Matrix::from_i64(&[&[0, 1], &[1, 2]]);
        let a = learn_from_hankel(&h, &[("a".into(), ha), ("b".into(), hb)], &eps_a(), &eps_a()).unwrap();
        for w in words_below(a.alphabet(), 4) {
            let count = w.iter().filter(|l| *l == "a").count() as i64;
            assert_eq!(a.eval_word(&w).unwrap(), int(count));
        }
    }

    #[test]
    fn singular() {
        let h = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(
            learn_from_hankel(&h, &[("a".into(), h.clone())], &eps_a(), &eps_a()),
            Err(ConsistencyError::SingularFragment)
        );
    }

    #[test]
    fn from_sample() {
        let words = words_below(&["a".to_string()], 4);
        let pairs = words.iter().map(|w| (w.clone(), int(w.len() as i64)));
        let s = Sample::new(pairs).unwrap();
        let (h, hs) = hankel_from_sample(&s, &eps_a(), &eps_a()).unwrap();
        let a = learn_from_hankel(&h, &hs, &eps_a(), &eps_a()).unwrap();
        assert_eq!(a.eval_word(&["a", "a", "a", "a", "a"]).unwrap(), int(5));
    }
}
