//! Symbolic and numeric core: coefficient rings, the graded algebra of the
//! two-oscillator group entries, R-matrix families, the dual Hopf algebra and
//! Fock-space realizations with their coherent states.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod classical;
pub mod coherent;
pub mod fock;
pub mod linalg;
pub mod coeff;
pub mod error;
pub mod hopf;
pub mod rmatrix;

pub use algebra::{Algebra, Element, Gen, Monomial, RewriteSystem, Tensor};
pub use coeff::{Assignment, Coeff, Rat, Ring};
pub use error::*;
