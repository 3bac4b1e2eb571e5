//! Explicit data over `K₀ = k(ρ)`, `ρ = ∛(2/3)`, for `5x³ + 9y³ + 10z³ + 12t³ = 0`:
//! the curves `C` and `C′` as intersections of three quadrics, and the
//! function `g` with `π(C − C′) = f/g`.

use super::field::{TowerAutomorphism, TowerElement, TowerField};
use super::poly::TowerPolynomial;
use crate::azumaya::cassels_guy;
use crate::eisenstein::EisensteinNumber;
use crate::lines27::SurfaceCoefficients;

pub fn k0() -> TowerField {
    TowerField::new(vec![EisensteinNumber::fraction(2, 3)]).expect("2/3 is not a cube")
}

/// `τ: ρ ↦ ζρ`.
pub fn tau() -> TowerAutomorphism {
    TowerAutomorphism::new(vec![1])
}

pub fn surface() -> SurfaceCoefficients {
    let (a, b, c, d) = cassels_guy::COEFFICIENTS;
    SurfaceCoefficients::new(a, b, c, d).expect("nonzero")
}

/// `(a + bζ) ρ^e`.
fn c(k: &TowerField, a: i64, b: i64, e: usize) -> TowerElement {
    k.monomial(EisensteinNumber::from_ints(a, b), &[e]).expect("ρ-power below 3")
}

fn poly(k: &TowerField, degree: u32, terms: &[([u32; 4], (i64, i64), usize)]) -> TowerPolynomial {
    TowerPolynomial::from_terms(degree, terms.iter().map(|(m, (a, b), e)| (*m, c(k, *a, *b, *e))).collect(), k)
        .expect("homogeneous")
}

// Exponent vectors of the quadratic monomials.
const XX: [u32; 4] = [2, 0, 0, 0];
const XY: [u32; 4] = [1, 1, 0, 0];
const XZ: [u32; 4] = [1, 0, 1, 0];
const XT: [u32; 4] = [1, 0, 0, 1];
const YY: [u32; 4] = [0, 2, 0, 0];
const YZ: [u32; 4] = [0, 1, 1, 0];
const YT: [u32; 4] = [0, 1, 0, 1];
const ZZ: [u32; 4] = [0, 0, 2, 0];
const ZT: [u32; 4] = [0, 0, 1, 1];
const TT: [u32; 4] = [0, 0, 0, 2];

// ζ² = −1 − ζ
const Z2: (i64, i64) = (-1, -1);

fn neg(c: (i64, i64)) -> (i64, i64) {
    (-c.0, -c.1)
}

fn mul(c: (i64, i64), k: i64) -> (i64, i64) {
    (c.0 * k, c.1 * k)
}

/// Quadrics cutting out the cubic curve C.
pub fn c_quadrics(k: &TowerField) -> [TowerPolynomial; 3] {
    [
        poly(
            k,
            2,
            &[
                (XX, (2, 0), 0),
                (XY, (-6, 0), 0),
                (XZ, (-1, 0), 0),
                (XT, (0, 3), 1),
                (YZ, (3, 0), 0),
                (YT, (0, -9), 1),
                (ZZ, (8, 0), 0),
            ],
        ),
        poly(
            k,
            2,
            &[
                (XX, (4, 0), 0),
                (XZ, (-2, 0), 0),
                (XT, (-6, 0), 1),
                (YZ, mul(Z2, -6), 0),
                (ZZ, (1, 0), 0),
                (ZT, (3, 0), 1),
                (TT, (9, 0), 2),
            ],
        ),
        poly(
            k,
            2,
            &[
                (XY, (-2, 0), 0),
                (XZ, (0, -5), 0),
                (XT, neg(Z2), 1),
                (YY, (6, 0), 0),
                (YZ, (0, -1), 0),
                (YT, mul(Z2, 3), 1),
                (ZT, (-8, 0), 1),
            ],
        ),
    ]
}

/// Quadrics cutting out C′, the curve obtained from the point `(3ζ, 1, 0, −∛12)`.
pub fn c_prime_quadrics(k: &TowerField) -> [TowerPolynomial; 3] {
    [
        poly(
            k,
            2,
            &[
                (XX, (2, 0), 0),
                (XY, (0, -6), 0),
                (XZ, (-1, 0), 0),
                (XT, mul(Z2, 3), 1),
                (YZ, (0, 3), 0),
                (YT, (-9, 0), 1),
                (ZZ, (8, 0), 0),
            ],
        ),
        poly(
            k,
            2,
            &[
                (XX, (4, 0), 0),
                (XZ, (-2, 0), 0),
                (XT, (0, -6), 1),
                (YZ, (-6, 0), 0),
                (ZZ, (1, 0), 0),
                (ZT, (0, 3), 1),
                (TT, mul(Z2, 9), 2),
            ],
        ),
        poly(
            k,
            2,
            &[
                (XY, (-2, 0), 0),
                (XZ, (-5, 0), 0),
                (XT, neg(Z2), 1),
                (YY, (0, 6), 0),
                (YZ, (0, -1), 0),
                (YT, (3, 0), 1),
                (ZT, (-8, 0), 1),
            ],
        ),
    ]
}

/// g with `π(C − C′) = f/g`.
pub fn g(k: &TowerField) -> TowerPolynomial {
    poly(
        k,
        3,
        &[
            ([3, 0, 0, 0], (16, 8), 0),
            ([2, 1, 0, 0], (-8, -4), 0),
            ([2, 0, 1, 0], (-2, 0), 0),
            ([2, 0, 0, 1], (2, -2), 1),
            ([1, 1, 1, 0], (4, 2), 0),
            ([1, 1, 0, 1], (-6, 6), 1),
            ([1, 0, 2, 0], (6, -5), 0),
            ([1, 0, 1, 1], (-1, 1), 1),
            ([1, 0, 0, 2], (-3, -6), 2),
            ([0, 3, 0, 0], (24, 12), 0),
            ([0, 2, 1, 0], (6, -6), 0),
            ([0, 1, 2, 0], (-2, -1), 0),
            ([0, 1, 1, 1], (3, -3), 1),
            ([0, 1, 0, 2], (9, 18), 2),
            ([0, 0, 3, 0], (24, 16), 0),
            ([0, 0, 2, 1], (8, -8), 1),
            ([0, 0, 0, 3], (32, 16), 0),
        ],
    )
}

pub fn f(k: &TowerField) -> TowerPolynomial {
    TowerPolynomial::from_cubic_form(&cassels_guy::f(), k)
}

pub fn f_prime(k: &TowerField) -> TowerPolynomial {
    TowerPolynomial::from_cubic_form(&cassels_guy::f_prime(), k)
}

/// `ϑ = ζ/4` with `f/x³ = ϑ (f′/x³) N_τ(f/g)`.
pub fn vartheta() -> EisensteinNumber {
    &EisensteinNumber::zeta() / &EisensteinNumber::from_ints(4, 0)
}

/// The three norm identities behind the local analysis over `√−3` and 2,
/// as `(w, expected N(w))`.
pub fn norm_identities(k: &TowerField) -> Vec<(TowerElement, EisensteinNumber)> {
    let rho = |a: i64, b: i64| c(k, a, b, 1);
    let cbrt = |n: i64| k.cube_root_of(&EisensteinNumber::from_ints(n, 0)).expect("factorable").expect("monomial root");
    vec![
        (k.add(&k.from_ints(-1, -2), &rho(1, -1)), EisensteinNumber::sqrt_minus_three()),
        (k.add(&k.add(&k.from_ints(2, 0), &cbrt(12)), &cbrt(18)), EisensteinNumber::from_ints(2, 0)),
        (k.add(&k.one(), &rho(-1, -2)), EisensteinNumber::from_ints(3, 4)),
    ]
}
