//! Minimisation: forward and backward spanning sets, minimal dimension and
//! the reduced automaton.
//!
//! Two routes produce the spanning sets. Saturation builds bases directly
//! (the default). The Gram route sums over the product automaton `A × A`
//! without branching on values and is used for cross-checks and for the
//! circuit reduction.

mod backward;
mod forward;
mod gram;
mod reduce;

use thiserror::Error;

use crate::automaton::{AutomatonError, Mta, Mwa};
use crate::linalg::{rank, LinalgError, Matrix};

pub use backward::{backward_basis, context_matrices, BackwardBasis};
pub use forward::{forward_basis, ForwardBasis};
pub use gram::{spanning_gram, spanning_gram_mwa, SpanningGram, DEFAULT_GRAM_LIMIT};
pub(crate) use gram::check_gram_size;
pub use reduce::{select_rows, solve_minimal_mta, solve_minimal_mwa};

pub(crate) use forward::advance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinimiseError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error("gram route needs {size} entries, limit is {limit}")]
    SizeGuard { size: u128, limit: u128 },
}

/// How the spanning sets are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Saturation,
    Gram,
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "saturation" => Ok(Method::Saturation),
            "gram" => Ok(Method::Gram),
            other => Err(format!("unknown method `{other}` (expected saturation or gram)")),
        }
    }
}

/// `F` with rows spanning the forward space and `B` with columns spanning
/// the backward space.
pub fn spanning_sets(a: &Mta, method: Method) -> Result<(Matrix, Matrix), MinimiseError> {
    match method {
        Method::Saturation => {
            let fb = forward_basis(a);
            let bb = backward_basis(a, &fb);
            Ok((fb.matrix, bb.matrix))
        }
        Method::Gram => {
            let g = spanning_gram(a, DEFAULT_GRAM_LIMIT)?;
            Ok((g.f, g.b))
        }
    }
}

pub fn spanning_sets_mwa(a: &Mwa, method: Method) -> Result<(Matrix, Matrix), MinimiseError> {
    match method {
        Method::Saturation => spanning_sets(&a.as_mta(), method),
        Method::Gram => {
            let g = spanning_gram_mwa(a, DEFAULT_GRAM_LIMIT)?;
            Ok((g.f, g.b))
        }
    }
}

// A saturation basis of the whole space is replaced by the identity. Its
// rows are equally valid in the last step and keep the solved system small.
// Gram matrices are square whatever their rank, so they pass through.
fn normalised(n: usize, method: Method, f: Matrix, b: Matrix) -> (Matrix, Matrix) {
    if method == Method::Gram {
        return (f, b);
    }
    let f = if f.rows() == n { Matrix::identity(n) } else { f };
    let b = if b.cols() == n { Matrix::identity(n) } else { b };
    (f, b)
}

fn rank_of_product(n: usize, method: Method, f: &Matrix, b: &Matrix) -> usize {
    if method == Method::Saturation && f.rows() == n && b.cols() == n {
        n
    } else {
        rank(&(f * b))
    }
}

/// `rank(F · B)`, the dimension of a minimal equivalent automaton.
pub fn minimal_dimension(a: &Mta, method: Method) -> Result<usize, MinimiseError> {
    let (f, b) = spanning_sets(a, method)?;
    Ok(rank_of_product(a.dim(), method, &f, &b))
}

pub fn minimal_dimension_mwa(a: &Mwa, method: Method) -> Result<usize, MinimiseError> {
    let (f, b) = spanning_sets_mwa(a, method)?;
    Ok(rank_of_product(a.dim(), method, &f, &b))
}

/// A minimal automaton equivalent to `a`.
pub fn minimise(a: &Mta, method: Method) -> Result<Mta, MinimiseError> {
    if a.dim() == 0 {
        return Ok(a.clone());
    }
    let (f, b) = spanning_sets(a, method)?;
    let (f, b) = normalised(a.dim(), method, f, b);
    let (f_sel, _) = select_rows(&f, &b);
    solve_minimal_mta(a, &f_sel, &b)
}

pub fn minimise_mwa(a: &Mwa, method: Method) -> Result<Mwa, MinimiseError> {
    if a.dim() == 0 {
        return Ok(a.clone());
    }
    let (f, b) = spanning_sets_mwa(a, method)?;
    let (f, b) = normalised(a.dim(), method, f, b);
    let (f_sel, _) = select_rows(&f, &b);
    solve_minimal_mwa(a, &f_sel, &b)
}
