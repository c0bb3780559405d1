//! Exact minimisation, equivalence and identity testing for multiplicity
//! word and tree automata over the rationals.

pub mod acit;
pub mod alphabet;
pub mod cli;
pub mod consistency;
pub mod automaton;
pub mod constructions;
pub mod hankel;
pub mod io;
pub mod linalg;
pub mod minimise;
pub mod scalar;
pub mod tree;

pub use alphabet::RankedAlphabet;
pub use automaton::{Mta, Mwa};
pub use linalg::Matrix;
pub use scalar::Scalar;
pub use tree::{Context, Tree};
