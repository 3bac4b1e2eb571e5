//! Exact arithmetic in radical towers `k(∛m₁, …, ∛m_r)` over `k = ℚ(ζ)` and
//! homogeneous polynomials over them: reduction modulo a diagonal cubic,
//! ideal membership by linear ansatz, cubic norms and calibration identities.

mod example;
mod field;
mod poly;

pub use example::{c_prime_quadrics, c_quadrics, f, f_prime, g, k0, norm_identities, surface, tau, vartheta};
pub use field::{TowerAutomorphism, TowerElement, TowerField, MAX_RADICALS};
pub use poly::{calibration_identity, cubic_norm, divisor_membership, normal_form, MembershipCertificate, TowerPolynomial};

use crate::eisenstein::EisensteinError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CalibrateError {
    #[error("at most {MAX_RADICALS} radicals are supported, got {0}")]
    TooManyRadicals(usize),
    #[error("radicands must be nonzero")]
    ZeroRadicand,
    #[error("radicands are dependent modulo cubes; the algebra is not a field")]
    DependentRadicals,
    #[error("monomial exponents must be in 0..=2, one per radical")]
    BadMonomial,
    #[error("zero is not invertible")]
    NotInvertible,
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("polynomial is not homogeneous")]
    NonHomogeneous,
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("norm is not fixed by the automorphism")]
    NotFixed,
    #[error(transparent)]
    Eisenstein(#[from] EisensteinError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::EisensteinNumber;

    #[test]
    fn norms_over_k0() {
        let k = k0();
        for (w, expected) in norm_identities(&k) {
            assert_eq!(cubic_norm(&w, &tau(), &k).unwrap(), k.from_base(expected));
        }
    }

    #[test]
    fn calibration_constant() {
        let k = k0();
        let (f, fp, g) = (f(&k), f_prime(&k), g(&k));
        assert!(calibration_identity(&f, &fp, &g, &vartheta(), &tau(), &surface(), &k).unwrap());
        let wrong = &EisensteinNumber::from_ints(-1, -1) / &EisensteinNumber::from_ints(4, 0);
        assert!(!calibration_identity(&f, &fp, &g, &wrong, &tau(), &surface(), &k).unwrap());
    }

    #[test]
    fn f_vanishes_on_c_and_f_prime_on_c_prime() {
        let k = k0();
        let fs = poly::TowerPolynomial::diagonal_cubic(&surface(), &k);
        let qs = c_quadrics(&k);
        let cert = divisor_membership(&f(&k), &qs, &fs, &k).unwrap().expect("f ∈ I(C)");
        assert_eq!(cert.reconstruct(&qs, &fs, &k), f(&k));
        let qs = c_prime_quadrics(&k);
        assert!(divisor_membership(&f_prime(&k), &qs, &fs, &k).unwrap().is_some());
    }
}
