//! Integral group cohomology of finite groups: bar complex, cyclic
//! shortcuts, invariant submodules and connecting homomorphisms.

mod bar;
mod cyclic;
mod group;
mod invariants;
mod module;

pub use bar::{
    bar_differential, coboundary, cohomology, connecting_homomorphism, is_coboundary, unit_vector, Cochain, CohomologyResult,
};
pub use cyclic::{cyclic_cohomology, cyclic_module, cyclic_one_cocycle, cyclic_two_cocycle, CyclicCohomology};
pub use group::{compose_permutations, group_closure, matrix_group_closure, permutation_group_closure, FiniteGroup};
pub use invariants::{invariants_module, restrict_to_subgroup, InvariantsModule};
pub use module::{GIntModule, ModuleSES, RelationLattice};

use crate::exactlin::LinAlgError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("group closure exceeded {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid exact sequence: {0}")]
    InvalidSequence(String),
    #[error("cochain shape does not match group and module")]
    ShapeMismatch,
    #[error("cochain is not normalized")]
    NotNormalized,
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("lift through the exact sequence failed")]
    LiftFailure,
    #[error("degree {0} is not supported here")]
    InvalidDegree(usize),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("action matrix does not have order {0} on the module")]
    OrderMismatch(usize),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}
