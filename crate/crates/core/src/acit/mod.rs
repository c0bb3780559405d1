//! Arithmetic circuits, identity testing, and the reduction of the
//! minimisation decision problem to circuit identity testing.

mod circuit;
mod decide;
mod lower;
mod reduction;
mod tester;

use thiserror::Error;

use crate::automaton::AutomatonError;
use crate::minimise::MinimiseError;

pub use circuit::{eval_exact, eval_mod, scalar_mod, Circuit, CircuitBuilder, Gate, GateId};
pub use decide::{equivalence, equivalence_mwa, zeroness, zeroness_by_dimension, zeroness_mwa};
pub use lower::{is_lowered, lower};
pub use reduction::{
    circuit_for_fb, rank_le_circuit, rank_le_to_acit, reduce_minimisation_to_acit,
    reduce_minimisation_to_acit_mwa, FbCircuit,
};
pub use tester::{
    acit_test, exact_test, is_probable_prime, random_prime, Confidence, Outcome, Verdict, DEFAULT_TRIALS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AcitError {
    #[error("variable x{0} is not assigned")]
    UnassignedVariable(usize),
    #[error("division by zero at gate g{gate}")]
    DivisionByZero { gate: GateId },
    #[error("a constant's denominator vanishes modulo {0}")]
    BadPrime(u64),
    #[error("gate g{gate} refers to itself or a later gate")]
    ForwardReference { gate: GateId },
    #[error("no usable prime after {0} attempts")]
    AttemptsExhausted(usize),
    #[error("exact testing needs a variable-free circuit")]
    HasVariables,
    #[error("gate grid is not square")]
    NotSquare,
    #[error("threshold {d} exceeds dimension {n}")]
    ThresholdTooLarge { d: usize, n: usize },
    #[error(transparent)]
    Minimise(#[from] MinimiseError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}
