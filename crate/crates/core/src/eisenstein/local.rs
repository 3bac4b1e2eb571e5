//! Residue rings `o_v / ϖ^N` on machine integers, and local elements `ϖ^m u`.
//!
//! The local uniformizer ϖ is `p` at unramified places and `1 + 2ζ` over 3.
//! Residues are pairs `a + bζ` modulo `p^E`; at split places ζ is replaced by
//! its image in `ℤ_p` and `b` is kept at 0.

use super::number::{int, EisensteinNumber};
use super::place::{Place, PlaceKind};
use super::EisensteinError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Res {
    pub a: i64,
    pub b: i64,
}

impl Res {
    pub const ZERO: Res = Res { a: 0, b: 0 };
    pub const ONE: Res = Res { a: 1, b: 0 };
}

/// `o_v / ϖ^precision`, realised as `ℤ[ζ] / p^E` (or `ℤ / p^E` at split places).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalRing {
    place: Place,
    precision: u32,
    modulus: i64,
    p: i64,
    /// image of ζ at split places
    zeta: i64,
}

fn inv_mod(a: i64, m: i64) -> Option<i64> {
    let (mut r0, mut r1) = (a.rem_euclid(m) as i128, m as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m as i128) as i64)
}

impl LocalRing {
    pub fn new(place: &Place, precision: u32) -> Result<Self, EisensteinError> {
        let p = place.p as i64;
        let e = place.ramification();
        let exp = precision.div_ceil(e).max(1);
        let modulus =
            (p as i128).checked_pow(exp).filter(|&m| m < (1i128 << 61)).ok_or(EisensteinError::PrecisionTooLarge)? as i64;
        let zeta = if place.kind == PlaceKind::Split { split_zeta(place, modulus)? } else { 0 };
        Ok(LocalRing { place: place.clone(), precision, modulus, p, zeta })
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn zeta_image(&self) -> Res {
        match self.place.kind {
            PlaceKind::Split => Res { a: self.zeta, b: 0 },
            _ => Res { a: 0, b: 1 },
        }
    }

    fn is_split(&self) -> bool {
        self.place.kind == PlaceKind::Split
    }

    #[inline]
    fn red(&self, x: i128) -> i64 {
        match i64::try_from(x) {
            Ok(x) => x.rem_euclid(self.modulus),
            Err(_) => x.rem_euclid(self.modulus as i128) as i64,
        }
    }

    #[inline]
    pub fn from_pair(&self, a: i64, b: i64) -> Res {
        if self.is_split() {
            Res { a: self.red(a as i128 + b as i128 * self.zeta as i128), b: 0 }
        } else {
            Res { a: self.red(a as i128), b: self.red(b as i128) }
        }
    }

    pub fn from_big_pair(&self, a: &BigInt, b: &BigInt) -> Res {
        let m = BigInt::from(self.modulus);
        let a = a.mod_floor(&m).to_i64().expect("reduced below modulus");
        let b = b.mod_floor(&m).to_i64().expect("reduced below modulus");
        self.from_pair(a, b)
    }

    #[inline]
    pub fn add(&self, x: Res, y: Res) -> Res {
        Res { a: self.red(x.a as i128 + y.a as i128), b: self.red(x.b as i128 + y.b as i128) }
    }

    #[inline]
    pub fn sub(&self, x: Res, y: Res) -> Res {
        Res { a: self.red(x.a as i128 - y.a as i128), b: self.red(x.b as i128 - y.b as i128) }
    }

    #[inline]
    pub fn neg(&self, x: Res) -> Res {
        Res { a: self.red(-(x.a as i128)), b: self.red(-(x.b as i128)) }
    }

    #[inline]
    pub fn mul(&self, x: Res, y: Res) -> Res {
        if self.is_split() {
            return Res { a: self.red(x.a as i128 * y.a as i128), b: 0 };
        }
        let (a, b, c, d) = (x.a as i128, x.b as i128, y.a as i128, y.b as i128);
        let bd = b * d;
        Res { a: self.red(a * c - bd), b: self.red(a * d + b * c - bd) }
    }

    pub fn pow(&self, x: Res, mut e: u64) -> Res {
        let mut base = x;
        let mut acc = Res::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `ϖ^k`
    pub fn uniformizer_power(&self, k: u32) -> Res {
        let w = match self.place.kind {
            PlaceKind::Ramified => Res { a: 1, b: 2 },
            _ => Res { a: self.p, b: 0 },
        };
        self.pow(self.from_pair(w.a, w.b), k as u64)
    }

    /// Valuation of a residue, capped at the ring precision.
    pub fn valuation(&self, x: Res) -> u32 {
        let cap = self.precision;
        if x.a == 0 && x.b == 0 {
            return cap;
        }
        let (mut a, mut b) = (x.a, x.b);
        let mut k = 0u32;
        while a % self.p == 0 && b % self.p == 0 {
            a /= self.p;
            b /= self.p;
            k += 1;
        }
        let v = match self.place.kind {
            PlaceKind::Ramified => 2 * k + u32::from((a + b).rem_euclid(3) == 0),
            _ => k,
        };
        v.min(cap)
    }

    /// `x / ϖ^v` on representatives; the result is meaningful modulo `ϖ^{precision − v}`.
    pub fn unit_part(&self, x: Res, v: u32) -> Res {
        let (mut a, mut b) = (x.a as i128, x.b as i128);
        match self.place.kind {
            PlaceKind::Ramified => {
                for _ in 0..v {
                    // (a + bζ)/(1 + 2ζ) = −((a − 2b) + (2a − b)ζ)/3
                    let (na, nb) = (-(a - 2 * b), -(2 * a - b));
                    debug_assert!(na % 3 == 0 && nb % 3 == 0, "not divisible by the uniformizer");
                    a = na / 3;
                    b = nb / 3;
                }
            }
            _ => {
                let pv = (self.p as i128).pow(v);
                debug_assert!(a % pv == 0 && b % pv == 0);
                a /= pv;
                b /= pv;
            }
        }
        Res { a: self.red(a), b: self.red(b) }
    }

    pub fn is_unit(&self, x: Res) -> bool {
        self.valuation(x) == 0
    }

    pub fn inverse(&self, x: Res) -> Option<Res> {
        if self.is_split() {
            return inv_mod(x.a, self.modulus).map(|a| Res { a, b: 0 });
        }
        // (a + bζ)⁻¹ = ((a − b) − bζ) / (a² − ab + b²)
        let n = self.red(x.a as i128 * x.a as i128 - x.a as i128 * x.b as i128 + x.b as i128 * x.b as i128);
        let ni = inv_mod(n, self.modulus)?;
        let c = Res { a: self.red(x.a as i128 - x.b as i128), b: self.red(-(x.b as i128)) };
        Some(self.mul(c, Res { a: ni, b: 0 }))
    }

    /// Whether `x ≡ y (mod ϖ^k)`.
    pub fn congruent(&self, x: Res, y: Res, k: u32) -> bool {
        self.valuation(self.sub(x, y)) >= k.min(self.precision)
    }

    /// Representatives of the residue field, in a fixed order starting at 0.
    pub fn residue_field_reps(&self) -> Vec<Res> {
        match self.place.kind {
            PlaceKind::Inert => (0..self.p).flat_map(|b| (0..self.p).map(move |a| Res { a, b })).collect(),
            _ => (0..self.p).map(|a| Res { a, b: 0 }).collect(),
        }
    }

    /// Reduces a residue to a canonical representative modulo `ϖ^k` (k ≤ precision).
    pub fn canonical(&self, x: Res, k: u32) -> Res {
        match self.place.kind {
            PlaceKind::Ramified => {
                // digits in base π with digits {0,1,2}
                let mut out = Res::ZERO;
                let mut cur = x;
                let mut pk = Res::ONE;
                let pi = Res { a: 1, b: 2 };
                for _ in 0..k {
                    let d = (cur.a + cur.b).rem_euclid(3);
                    out = self.add(out, self.mul(pk, Res { a: d, b: 0 }));
                    cur = self.sub(cur, Res { a: d, b: 0 });
                    cur = self.unit_part(cur, 1);
                    pk = self.mul(pk, pi);
                }
                out
            }
            _ => {
                let m = self.p.pow(k) as i128;
                Res { a: (x.a as i128).rem_euclid(m) as i64, b: (x.b as i128).rem_euclid(m) as i64 }
            }
        }
    }
}

fn split_zeta(place: &Place, modulus: i64) -> Result<i64, EisensteinError> {
    let p = place.p as i64;
    let (c, d) = place.uniformizer;
    // ζ ≡ −c/d (mod p), then Newton on ζ² + ζ + 1
    let dinv = inv_mod(d.rem_euclid(p), p).ok_or(EisensteinError::NotPrime(place.p))?;
    let mut r = ((-c).rem_euclid(p) as i128 * dinv as i128).rem_euclid(p as i128) as i64;
    let m = modulus as i128;
    loop {
        let f = ((r as i128 * r as i128 + r as i128 + 1).rem_euclid(m)) as i64;
        if f == 0 {
            return Ok(r);
        }
        let fp = (2 * r as i128 + 1).rem_euclid(m) as i64;
        let inv = inv_mod(fp, modulus).ok_or(EisensteinError::NotPrime(place.p))?;
        r = ((r as i128 - f as i128 * inv as i128).rem_euclid(m)) as i64;
    }
}

/// `ϖ^valuation · unit`, the unit known modulo `ϖ^precision`.
#[derive(Clone, Debug)]
pub struct LocalElement {
    pub valuation: i64,
    pub unit: Res,
    pub precision: u32,
    ring: LocalRing,
}

impl LocalElement {
    pub fn new(ring: &LocalRing, valuation: i64, unit: Res, precision: u32) -> Self {
        LocalElement { valuation, unit, precision: precision.min(ring.precision), ring: ring.clone() }
    }

    pub fn ring(&self) -> &LocalRing {
        &self.ring
    }

    pub fn place(&self) -> &Place {
        &self.ring.place
    }

    pub fn mul(&self, other: &LocalElement) -> LocalElement {
        assert_eq!(self.ring.place, other.ring.place, "elements at different places");
        let ring = if self.ring.precision <= other.ring.precision { &self.ring } else { &other.ring };
        let u = ring.mul(ring.from_pair(self.unit.a, self.unit.b), ring.from_pair(other.unit.a, other.unit.b));
        LocalElement::new(ring, self.valuation + other.valuation, u, self.precision.min(other.precision))
    }

    pub fn inv(&self) -> LocalElement {
        let u = self.ring.inverse(self.unit).expect("unit part is a unit");
        LocalElement::new(&self.ring, -self.valuation, u, self.precision)
    }

    pub fn pow(&self, e: i64) -> LocalElement {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let u = self.ring.pow(base.unit, e.unsigned_abs());
        LocalElement::new(&self.ring, self.valuation * e, u, self.precision)
    }
}

/// Strips `v` factors of the place's prime from `x` exactly and reduces the
/// quotient into `ring`, so the ring only needs the target precision.
fn unit_residue(ring: &LocalRing, place: &Place, x: (BigInt, BigInt), v: i64) -> Res {
    let pi = (BigInt::from(place.uniformizer.0), BigInt::from(place.uniformizer.1));
    let mut y = x;
    for _ in 0..v {
        y = match place.kind {
            PlaceKind::Inert => (&y.0 / place.p, &y.1 / place.p),
            _ => int::exact_div(&y, &pi).expect("valuation counted exactly"),
        };
    }
    let u = ring.from_big_pair(&y.0, &y.1);
    if place.kind != PlaceKind::Split || v == 0 {
        return u;
    }
    // the local uniformizer is p = π·π̄, and π̄ is a unit here
    let bar = int::conj(&pi);
    let bar = ring.inverse(ring.from_big_pair(&bar.0, &bar.1)).expect("conjugate prime is a unit");
    ring.mul(u, ring.pow(bar, v as u64))
}

/// Embeds a global element into `k_v` with its unit part known to `precision`.
pub fn localize(x: &EisensteinNumber, place: &Place, precision: u32) -> Result<LocalElement, EisensteinError> {
    if x.is_zero() {
        return Err(EisensteinError::ZeroElement);
    }
    let (a, b, d) = x.integral_parts();
    // v(p) = 1 at split places, so the π-valuation is also the ϖ-valuation
    let vn = place.valuation_int(&(a.clone(), b.clone()));
    let vd = place.valuation_int(&(d.clone(), BigInt::zero()));
    let ring = LocalRing::new(place, precision.max(1))?;
    let un = unit_residue(&ring, place, (a, b), vn);
    let ud = unit_residue(&ring, place, (d, BigInt::zero()), vd);
    let u = ring.mul(un, ring.inverse(ud).expect("denominator unit part is a unit"));
    Ok(LocalElement::new(&ring, vn - vd, u, precision))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::{factor_rational_prime, place_over_three};

    #[test]
    fn localize_at_a_large_split_prime() {
        // 1000003 ≡ 1 (mod 3) splits; the value sits at valuation 2 with unit 5
        let p: i64 = 1_000_003;
        let pl = &factor_rational_prime(p as u64).unwrap()[0];
        let x = EisensteinNumber::from_ints(5 * p * p, 0);
        let l = localize(&x, pl, 2).unwrap();
        assert_eq!(l.valuation, 2);
        assert_eq!(l.unit, l.ring.from_pair(5, 0));
    }

    #[test]
    fn split_zeta_is_a_root() {
        let pl = &factor_rational_prime(7).unwrap()[0];
        let r = LocalRing::new(pl, 5).unwrap();
        let z = r.zeta_image();
        let s = r.add(r.add(r.mul(z, z), z), Res::ONE);
        assert_eq!(s, Res::ZERO);
        // the uniformizer 3 + ζ is not a unit here
        assert_eq!(r.valuation(r.from_pair(3, 1)), 1);
        assert_eq!(r.valuation(r.from_pair(3, 2)), 0);
    }

    #[test]
    fn ramified_valuation_and_division() {
        let r = LocalRing::new(&place_over_three(), 8).unwrap();
        let x = r.from_pair(-3, 0);
        assert_eq!(r.valuation(x), 2);
        let u = r.unit_part(x, 2);
        assert!(r.congruent(u, Res::ONE, 6)); // −3 = π²
        assert_eq!(r.valuation(r.from_pair(1, 2)), 1);
        assert_eq!(r.valuation(Res::ZERO), 8);
    }

    #[test]
    fn localize_two_thirds_over_three() {
        let t = localize(&EisensteinNumber::fraction(2, 3), &place_over_three(), 6).unwrap();
        assert_eq!(t.valuation, -2);
        // 2/3 = π⁻² · (−2)
        let r = t.ring();
        assert!(r.congruent(t.unit, r.from_pair(-2, 0), 6));
    }

    #[test]
    fn inverse_roundtrip() {
        let r = LocalRing::new(&factor_rational_prime(2).unwrap()[0], 6).unwrap();
        let x = r.from_pair(3, 5);
        let y = r.inverse(x).unwrap();
        assert_eq!(r.mul(x, y), Res::ONE);
    }

    #[test]
    fn canonical_ramified_digits() {
        let r = LocalRing::new(&place_over_three(), 6).unwrap();
        let x = r.from_pair(7, 5);
        let c = r.canonical(x, 5);
        assert!(r.congruent(x, c, 5));
        assert_eq!(c, r.canonical(r.add(x, r.uniformizer_power(5)), 5));
    }
}
