//! Arithmetic of `k = ℚ(ζ₃)`: exact elements, places, residue rings, and
//! local invariants of cyclic algebras `(u, θ)_ω`.

mod local;
mod number;
mod place;
mod symbol;
mod wild;

pub use local::{localize, LocalElement, LocalRing, Res};
pub use number::{parse_rational, EisensteinNumber};
pub use place::{
    cube_root, factor_rational_prime, factor_u64, is_prime, place_over_three, prime_divisors, support, Place, PlaceKind,
};
pub use symbol::{
    cyclic_invariant, tame_hilbert_symbol, tame_invariant_sum, theta_is_local_cube, CyclicSymbol, InvariantValue,
    TAME_ORIENTATION,
};
pub use wild::{wild_norm_classifier, WildClassifier, DEFAULT_NORM_PRECISION, UNIT_PRECISION};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EisensteinError {
    #[error("zero has no valuation")]
    ZeroElement,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("residue modulus would overflow machine integers")]
    PrecisionTooLarge,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("unit part known to precision {have}, need {needed}")]
    InsufficientPrecision { needed: u32, have: u32 },
    #[error("{0}")]
    WrongPlaceKind(String),
    #[error("theta is a cube at the place over 3; the classifier is degenerate")]
    ThetaIsLocalCube,
    #[error("norm enumeration at precision {precision} does not cut out an index-3 subgroup")]
    EnumerationBudget { precision: u32 },
    #[error("norm classifier changed when rebuilt at higher precision")]
    UnstableClassifier,
    #[error("tame invariants contradict reciprocity")]
    ReciprocityFailure,
}
