//! Local norm classes over `√−3`.
//!
//! `k_v*/k_v*³ ≅ ℤ/3 × U₁/U₄ ≅ (ℤ/3)⁴`: the valuation mod 3, and the unit
//! (sign-normalized to ≡ 1 mod ϖ) modulo 9. Norms from `k_v(∛θ)` form an
//! index-3 subgroup, found by enumerating `N(a + bρ + cρ²)` for small a, b, c.
//! The resulting character is oriented by global reciprocity.

use super::local::{LocalElement, Res};
use super::number::EisensteinNumber;
use super::place::place_over_three;
use super::symbol::{tame_invariant_sum, InvariantValue};
use super::{localize, EisensteinError};
use num_traits::ToPrimitive;
use std::sync::OnceLock;

/// Unit precision (in powers of ϖ) needed to read off a cube class.
pub const UNIT_PRECISION: u32 = 4;
/// Digits per coefficient in the norm enumeration.
pub const DEFAULT_NORM_PRECISION: u32 = 2;

type Vec4 = [u8; 4];

/// Discrete logarithms on `U₁/U₄`, indexed by `9a + b` for `a + bζ` mod 9.
fn unit_log_table() -> &'static [Option<[u8; 3]>; 81] {
    static TABLE: OnceLock<[Option<[u8; 3]>; 81]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mul = |x: (i64, i64), y: (i64, i64)| {
            let bd = x.1 * y.1;
            ((x.0 * y.0 - bd).rem_euclid(9), (x.0 * y.1 + x.1 * y.0 - bd).rem_euclid(9))
        };
        let pow = |x: (i64, i64), e: u8| (0..e).fold((1, 0), |acc, _| mul(acc, x));
        let mut candidates: Vec<(i64, i64)> = vec![(0, 1)];
        candidates.extend((0..9).flat_map(|a| (0..9).map(move |b| (a, b))).filter(|&(a, b)| (a + b) % 3 == 1));
        let mut gens: Vec<(i64, i64)> = Vec::new();
        let mut table: [Option<[u8; 3]>; 81] = [None; 81];
        table[9] = Some([0, 0, 0]);
        for c in candidates {
            if gens.len() == 3 {
                break;
            }
            if table[(9 * c.0 + c.1) as usize].is_some() {
                continue;
            }
            gens.push(c);
            table = [None; 81];
            for e0 in 0..3u8 {
                for e1 in 0..3u8 {
                    for e2 in 0..3u8 {
                        let mut x = (1, 0);
                        let es = [e0, e1, e2];
                        for (g, &e) in gens.iter().zip(&es) {
                            x = mul(x, pow(*g, e));
                        }
                        let key = (9 * x.0 + x.1) as usize;
                        if table[key].is_none() {
                            table[key] = Some(es);
                        }
                    }
                }
            }
        }
        assert_eq!(gens.len(), 3, "U1/U4 has rank 3");
        table
    })
}

fn dot(f: &Vec4, x: &Vec4) -> u8 {
    (f.iter().zip(x).map(|(a, b)| (a * b) as u32).sum::<u32>() % 3) as u8
}

/// Row-reduces vectors over 𝔽₃, returning a basis.
fn span_basis(vectors: impl IntoIterator<Item = Vec4>) -> Vec<Vec4> {
    let mut basis: Vec<(usize, Vec4)> = Vec::new();
    for mut v in vectors {
        for (piv, b) in &basis {
            let k = v[*piv];
            if k != 0 {
                for i in 0..4 {
                    v[i] = (v[i] + 3 - (k * b[i]) % 3) % 3;
                }
            }
        }
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            // scale so the pivot is 1 (2 is its own inverse)
            let s = v[piv];
            for x in v.iter_mut() {
                *x = (*x * s) % 3;
            }
            basis.push((piv, v));
            if basis.len() == 4 {
                break;
            }
        }
    }
    basis.into_iter().map(|(_, b)| b).collect()
}

/// Nonzero functional vanishing on a 3-dimensional subspace of 𝔽₃⁴.
fn annihilator(basis: &[Vec4]) -> Option<Vec4> {
    if basis.len() != 3 {
        return None;
    }
    let mut candidates = Vec::new();
    for n in 1..81u32 {
        let f = [(n % 3) as u8, (n / 3 % 3) as u8, (n / 9 % 3) as u8, (n / 27 % 3) as u8];
        if basis.iter().all(|b| dot(&f, b) == 0) {
            candidates.push(f);
        }
    }
    candidates.into_iter().next()
}

/// Cube class of an exact element `a + bζ` of `ℤ[ζ]` (nonzero).
fn class_of_int(mut a: i128, mut b: i128) -> Result<Vec4, EisensteinError> {
    if a == 0 && b == 0 {
        return Err(EisensteinError::ZeroElement);
    }
    let mut v = 0u8;
    while (a + b).rem_euclid(3) == 0 {
        let (na, nb) = (-(a - 2 * b), -(2 * a - b));
        a = na / 3;
        b = nb / 3;
        v = (v + 1) % 3;
    }
    let u = Res { a: a.rem_euclid(9) as i64, b: b.rem_euclid(9) as i64 };
    let l = WildClassifier::unit_log(u)?;
    Ok([v, l[0], l[1], l[2]])
}

/// Residues `Σ dₖ ϖᵏ`, `k < digits`, `dₖ ∈ {0, 1, 2}`, as exact pairs.
fn digit_elements(digits: u32) -> Vec<(i128, i128)> {
    let mut out = vec![(0i128, 0i128)];
    let mut pk = (1i128, 0i128);
    for _ in 0..digits {
        let mut next = Vec::with_capacity(out.len() * 3);
        for d in 0..3i128 {
            for &(a, b) in &out {
                next.push((a + d * pk.0, b + d * pk.1));
            }
        }
        out = next;
        // pk *= 1 + 2ζ
        let (a, b) = pk;
        pk = (a - 4 * b, 2 * a + b - 2 * b);
    }
    out
}

fn mul(x: (i128, i128), y: (i128, i128)) -> (i128, i128) {
    let bd = x.1 * y.1;
    (x.0 * y.0 - bd, x.0 * y.1 + x.1 * y.0 - bd)
}

/// Norm classes of `N(a + bρ + cρ²)`, `ρ³ = θ'`, over all digit triples.
fn norm_span(theta: (i128, i128), digits: u32) -> Result<Vec<Vec4>, EisensteinError> {
    let elems = digit_elements(digits);
    let t2 = mul(theta, theta);
    let mut vectors = Vec::new();
    let mut basis: Vec<Vec4> = Vec::new();
    for &a in &elems {
        for &b in &elems {
            for &c in &elems {
                let a3 = mul(mul(a, a), a);
                let b3 = mul(mul(b, b), b);
                let c3 = mul(mul(c, c), c);
                let abc = mul(mul(a, b), c);
                let n = (
                    a3.0 + mul(theta, b3).0 + mul(t2, c3).0 - 3 * mul(theta, abc).0,
                    a3.1 + mul(theta, b3).1 + mul(t2, c3).1 - 3 * mul(theta, abc).1,
                );
                if n == (0, 0) {
                    continue;
                }
                vectors.push(class_of_int(n.0, n.1)?);
                if vectors.len() >= 64 {
                    basis = span_basis(basis.into_iter().chain(vectors.drain(..)));
                }
            }
        }
    }
    Ok(span_basis(basis.into_iter().chain(vectors)))
}

/// Character on `k_v*/k_v*³` whose kernel is the norm group of `k_v(∛θ)`.
#[derive(Clone, Debug)]
pub struct WildClassifier {
    pub theta: EisensteinNumber,
    pub precision: u32,
    functional: Vec4,
    /// 1 or 2; the invariant is `orientation · χ / 3`
    orientation: u8,
    pub reference: EisensteinNumber,
}

impl WildClassifier {
    /// Exponents of a unit residue (mod ≥ ϖ⁴) on the fixed basis of `U₁/U₄`.
    pub fn unit_log(u: Res) -> Result<[u8; 3], EisensteinError> {
        let (mut a, mut b) = (u.a.rem_euclid(9), u.b.rem_euclid(9));
        match (a + b) % 3 {
            0 => return Err(EisensteinError::NotAUnit),
            2 => {
                a = (9 - a) % 9;
                b = (9 - b) % 9;
            }
            _ => {}
        }
        Ok(unit_log_table()[(9 * a + b) as usize].expect("table covers U1/U4"))
    }

    /// Coordinates of `x` in `k_v*/k_v*³ ≅ 𝔽₃⁴`.
    pub fn class_vector(x: &LocalElement) -> Result<Vec4, EisensteinError> {
        if x.precision < UNIT_PRECISION {
            return Err(EisensteinError::InsufficientPrecision { needed: UNIT_PRECISION, have: x.precision });
        }
        let l = Self::unit_log(x.unit)?;
        Ok([x.valuation.rem_euclid(3) as u8, l[0], l[1], l[2]])
    }

    /// Unoriented character value in 𝔽₃; 0 exactly on local norms.
    pub fn character(&self, x: &LocalElement) -> Result<u8, EisensteinError> {
        Ok(dot(&self.functional, &Self::class_vector(x)?))
    }

    pub fn is_norm(&self, x: &LocalElement) -> Result<bool, EisensteinError> {
        Ok(self.character(x)? == 0)
    }

    pub fn invariant(&self, x: &LocalElement) -> Result<InvariantValue, EisensteinError> {
        Ok(InvariantValue::from_numerator((self.orientation * self.character(x)?) as i64))
    }

    /// Fast path for hot loops: valuation and a unit residue known mod ϖ⁴.
    pub fn invariant_raw(&self, valuation: i64, unit: Res) -> Result<InvariantValue, EisensteinError> {
        let l = Self::unit_log(unit)?;
        let v = [valuation.rem_euclid(3) as u8, l[0], l[1], l[2]];
        Ok(InvariantValue::from_numerator((self.orientation * dot(&self.functional, &v)) as i64))
    }

    pub fn functional(&self) -> [u8; 4] {
        self.functional
    }
}

fn integral_theta(theta: &EisensteinNumber) -> Result<(i128, i128), EisensteinError> {
    // (A + Bζ)/D has the same cube class as (A + Bζ)·D²
    let (a, b, d) = theta.integral_parts();
    let d2 = &d * &d;
    let conv = |x: num_bigint::BigInt| x.to_i128().ok_or(EisensteinError::PrecisionTooLarge);
    Ok((conv(a * &d2)?, conv(b * &d2)?))
}

/// Builds the classifier from norms with `precision` digits per coefficient,
/// checks it against a rebuild at `precision + 2`, and orients it.
pub fn wild_norm_classifier(theta: &EisensteinNumber, precision: u32) -> Result<WildClassifier, EisensteinError> {
    if theta.is_zero() {
        return Err(EisensteinError::ZeroElement);
    }
    let place = place_over_three();
    let t = integral_theta(theta)?;
    if class_of_int(t.0, t.1)? == [0; 4] {
        return Err(EisensteinError::ThetaIsLocalCube);
    }
    let span = norm_span(t, precision)?;
    let functional = annihilator(&span).ok_or(EisensteinError::EnumerationBudget { precision })?;
    let check =
        annihilator(&norm_span(t, precision + 2)?).ok_or(EisensteinError::EnumerationBudget { precision: precision + 2 })?;
    // functionals agree up to scaling iff their kernels agree
    if !(1..3u8).any(|k| check.iter().zip(&functional).all(|(c, f)| *c == (k * f) % 3)) {
        return Err(EisensteinError::UnstableClassifier);
    }
    let candidates = [(0, 1), (1, 2), (2, 0), (1, 3), (2, 3), (4, 0), (5, 0), (7, 0), (2, 5)];
    for (a, b) in candidates {
        let u = EisensteinNumber::from_ints(a, b);
        let chi = dot(&functional, &WildClassifier::class_vector(&localize(&u, &place, UNIT_PRECISION)?)?);
        if chi == 0 {
            continue;
        }
        // inv_3(u) = −Σ_{v ∤ 3} inv_v(u), and inv_3(u) = s·χ(u)/3
        let tame = tame_invariant_sum(&u, theta)?;
        let target = (-tame).numerator();
        if target == 0 {
            return Err(EisensteinError::ReciprocityFailure);
        }
        let orientation = (target * chi) % 3; // χ⁻¹ = χ in 𝔽₃
        return Ok(WildClassifier { theta: theta.clone(), precision, functional, orientation, reference: u });
    }
    Err(EisensteinError::EnumerationBudget { precision })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classifier() -> WildClassifier {
        wild_norm_classifier(&EisensteinNumber::fraction(2, 3), DEFAULT_NORM_PRECISION).unwrap()
    }

    fn local(a: i64, b: i64) -> LocalElement {
        localize(&EisensteinNumber::from_ints(a, b), &place_over_three(), UNIT_PRECISION).unwrap()
    }

    #[test]
    fn unit_group_mod_nine_has_27_classes() {
        let t = unit_log_table();
        assert_eq!(t.iter().filter(|x| x.is_some()).count(), 27);
    }

    #[test]
    fn known_norms_and_non_norms() {
        let c = classifier();
        assert!(!c.is_norm(&local(0, 1)).unwrap());
        assert!(c.is_norm(&local(1, 2)).unwrap());
        assert!(c.is_norm(&local(2, 0)).unwrap());
        assert!(c.is_norm(&local(3, 4)).unwrap());
    }

    #[test]
    fn cube_theta_is_rejected() {
        assert!(matches!(wild_norm_classifier(&EisensteinNumber::from_ints(8, 0), 2), Err(EisensteinError::ThetaIsLocalCube)));
    }
}
