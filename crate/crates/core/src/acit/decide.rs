use num_traits::Zero;

use crate::automaton::{AutomatonError, Mta, Mwa};
use crate::constructions::{difference, difference_mwa};
use crate::linalg::mat_vec;
use crate::minimise::{forward_basis, minimal_dimension, Method, MinimiseError};

/// Whether `‖a‖` is identically zero: `F · γ = 0` for a forward basis `F`.
pub fn zeroness(a: &Mta) -> bool {
    let fb = forward_basis(a);
    mat_vec(&fb.matrix, &a.gamma_vec()).iter().all(Zero::is_zero)
}

/// Zeroness as minimal dimension 0.
pub fn zeroness_by_dimension(a: &Mta, method: Method) -> Result<bool, MinimiseError> {
    Ok(minimal_dimension(a, method)? == 0)
}

pub fn zeroness_mwa(a: &Mwa) -> bool {
    zeroness(&a.as_mta())
}

/// Whether `a1` and `a2` agree on every tree.
pub fn equivalence(a1: &Mta, a2: &Mta) -> Result<bool, AutomatonError> {
    Ok(zeroness(&difference(a1, a2)?))
}

pub fn equivalence_mwa(a1: &Mwa, a2: &Mwa) -> Result<bool, AutomatonError> {
    Ok(zeroness_mwa(&difference_mwa(a1, a2)?))
}
