//! Exact linear algebra over ℤ: Smith normal form with transforms,
//! integer kernels, Diophantine solving and subquotients `Z / B`.

mod echelon;
mod matrix;
mod smith;
mod subquotient;

pub use echelon::{kernel_basis, lattice_basis, rank};
pub use matrix::{bigvec, IntMatrix};
pub use smith::{smith_normal_form, solve_linear_diophantine, solve_with, DiophantineSolution, SmithDecomposition};
pub use subquotient::{subquotient_structure, AbelianGroupStructure, Subquotient};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("image generator {index} does not lie in the kernel lattice")]
    ImageNotInKernel { index: usize },
    #[error("vector does not lie in the kernel lattice")]
    NotInKernel,
}
