use super::local::{localize, LocalElement, LocalRing, Res};
use super::number::EisensteinNumber;
use super::place::{support, Place};
use super::wild::{wild_norm_classifier, WildClassifier, DEFAULT_NORM_PRECISION, UNIT_PRECISION};
use super::EisensteinError;
use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

/// An element of `(1/3)ℤ / ℤ`, stored as its numerator in `{0, 1, 2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct InvariantValue(u8);

impl InvariantValue {
    pub const ZERO: InvariantValue = InvariantValue(0);
    pub const ONE_THIRD: InvariantValue = InvariantValue(1);
    pub const TWO_THIRDS: InvariantValue = InvariantValue(2);

    pub fn from_numerator(k: i64) -> Self {
        InvariantValue(k.rem_euclid(3) as u8)
    }

    pub fn numerator(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl Add for InvariantValue {
    type Output = InvariantValue;
    fn add(self, o: InvariantValue) -> InvariantValue {
        InvariantValue((self.0 + o.0) % 3)
    }
}

impl std::ops::Neg for InvariantValue {
    type Output = InvariantValue;
    fn neg(self) -> InvariantValue {
        InvariantValue((3 - self.0) % 3)
    }
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "0"),
            k => write!(f, "{k}/3"),
        }
    }
}

impl FromStr for InvariantValue {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "0" => Ok(Self::ZERO),
            "1/3" => Ok(Self::ONE_THIRD),
            "2/3" => Ok(Self::TWO_THIRDS),
            other => Err(format!("not an invariant in (1/3)Z/Z: {other}")),
        }
    }
}

impl Serialize for InvariantValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Sign of the tame symbol: `inv = j/3` where `w^{(q−1)/3} ≡ ζ^j`. Fixed so
/// that, with the wild orientation forced by reciprocity, `inv_{√−3}(ζ, 2/3) = 2/3`.
pub const TAME_ORIENTATION: i64 = 1;

fn residue_power_exponent(place: &Place) -> u64 {
    (place.residue_size - 1) / 3
}

/// Exponent j with `x^{(q−1)/3} ≡ ζ^j (mod ϖ)` for a unit residue x.
fn cubic_character(ring1: &LocalRing, x: Res, place: &Place) -> Result<i64, EisensteinError> {
    let w = ring1.pow(x, residue_power_exponent(place));
    let z = ring1.zeta_image();
    let mut zj = Res::ONE;
    for j in 0..3 {
        if ring1.from_pair(zj.a, zj.b) == w {
            return Ok(j);
        }
        zj = ring1.mul(zj, z);
    }
    Err(EisensteinError::NotAUnit)
}

/// Tame cubic Hilbert symbol at a place not above 3.
pub fn tame_hilbert_symbol(u: &LocalElement, theta: &LocalElement) -> Result<InvariantValue, EisensteinError> {
    let place = u.place().clone();
    if place.is_wild() {
        return Err(EisensteinError::WrongPlaceKind("tame symbol at the place over 3".into()));
    }
    if *theta.place() != place {
        return Err(EisensteinError::WrongPlaceKind("elements at different places".into()));
    }
    for x in [u, theta] {
        if x.precision < 1 {
            return Err(EisensteinError::InsufficientPrecision { needed: 1, have: x.precision });
        }
    }
    let ring1 = LocalRing::new(&place, 1)?;
    let uu = ring1.from_pair(u.unit.a, u.unit.b);
    let ut = ring1.from_pair(theta.unit.a, theta.unit.b);
    let (a, b) = (u.valuation, theta.valuation);
    // w = (−1)^{ab} u^b θ^{−a}
    let pow = |x: Res, e: i64| -> Result<Res, EisensteinError> {
        let base = if e < 0 { ring1.inverse(x).ok_or(EisensteinError::NotAUnit)? } else { x };
        Ok(ring1.pow(base, e.unsigned_abs()))
    };
    let mut w = ring1.mul(pow(uu, b)?, pow(ut, -a)?);
    if (a * b).rem_euclid(2) == 1 {
        w = ring1.neg(w);
    }
    let j = cubic_character(&ring1, w, &place)?;
    Ok(InvariantValue::from_numerator(TAME_ORIENTATION * j))
}

/// Whether θ is a cube in `k_v` (the cyclic algebra then splits at v).
pub fn theta_is_local_cube(theta: &EisensteinNumber, place: &Place) -> Result<bool, EisensteinError> {
    let prec = if place.is_wild() { UNIT_PRECISION } else { 1 };
    let t = localize(theta, place, prec)?;
    if t.valuation.rem_euclid(3) != 0 {
        return Ok(false);
    }
    if place.is_wild() {
        return Ok(WildClassifier::unit_log(t.unit)? == [0, 0, 0]);
    }
    let ring1 = LocalRing::new(place, 1)?;
    Ok(cubic_character(&ring1, ring1.from_pair(t.unit.a, t.unit.b), place)? == 0)
}

#[derive(Clone, Debug)]
enum Mode {
    Split,
    Tame(LocalElement),
    Wild(Box<WildClassifier>),
}

/// Local invariant of the cyclic algebra `(u, θ)_ω` at one place, with the
/// θ-dependent data precomputed.
#[derive(Clone, Debug)]
pub struct CyclicSymbol {
    place: Place,
    mode: Mode,
}

impl CyclicSymbol {
    pub fn new(theta: &EisensteinNumber, place: &Place) -> Result<Self, EisensteinError> {
        let mode = if theta_is_local_cube(theta, place)? {
            Mode::Split
        } else if place.is_wild() {
            Mode::Wild(Box::new(wild_norm_classifier(theta, DEFAULT_NORM_PRECISION)?))
        } else {
            Mode::Tame(localize(theta, place, 1)?)
        };
        Ok(CyclicSymbol { place: place.clone(), mode })
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    /// True when θ is a local cube, so every invariant is 0.
    pub fn is_split(&self) -> bool {
        matches!(self.mode, Mode::Split)
    }

    /// Precision to which the unit part of u must be known.
    pub fn unit_precision(&self) -> u32 {
        match self.mode {
            Mode::Split => 0,
            Mode::Tame(_) => 1,
            Mode::Wild(_) => UNIT_PRECISION,
        }
    }

    pub fn wild_classifier(&self) -> Option<&WildClassifier> {
        match &self.mode {
            Mode::Wild(w) => Some(w),
            _ => None,
        }
    }

    pub fn invariant(&self, u: &LocalElement) -> Result<InvariantValue, EisensteinError> {
        if *u.place() != self.place {
            return Err(EisensteinError::WrongPlaceKind("element localized at another place".into()));
        }
        match &self.mode {
            Mode::Split => Ok(InvariantValue::ZERO),
            Mode::Tame(theta) => tame_hilbert_symbol(u, theta),
            Mode::Wild(w) => w.invariant(u),
        }
    }
}

/// `inv_v (u, θ)_ω`.
pub fn cyclic_invariant(u: &LocalElement, theta: &EisensteinNumber, place: &Place) -> Result<InvariantValue, EisensteinError> {
    CyclicSymbol::new(theta, place)?.invariant(u)
}

/// Sum of the tame invariants of the global symbol `(u, θ)` over all places
/// not above 3.
pub fn tame_invariant_sum(u: &EisensteinNumber, theta: &EisensteinNumber) -> Result<InvariantValue, EisensteinError> {
    let mut places = support(u)?;
    for p in support(theta)? {
        if !places.contains(&p) {
            places.push(p);
        }
    }
    let mut sum = InvariantValue::ZERO;
    for p in places.iter().filter(|p| !p.is_wild()) {
        sum = sum + tame_hilbert_symbol(&localize(u, p, 1)?, &localize(theta, p, 1)?)?;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::{factor_rational_prime, place_over_three};

    #[test]
    fn display_and_parse() {
        for k in 0..3 {
            let v = InvariantValue::from_numerator(k);
            assert_eq!(v.to_string().parse::<InvariantValue>().unwrap(), v);
        }
        assert_eq!(InvariantValue::TWO_THIRDS.to_string(), "2/3");
        assert_eq!(InvariantValue::ONE_THIRD + InvariantValue::TWO_THIRDS, InvariantValue::ZERO);
    }

    #[test]
    fn zeta_against_two_thirds_at_two() {
        let two = &factor_rational_prime(2).unwrap()[0];
        let u = localize(&EisensteinNumber::zeta(), two, 1).unwrap();
        let t = localize(&EisensteinNumber::fraction(2, 3), two, 1).unwrap();
        assert_eq!(tame_hilbert_symbol(&u, &t).unwrap(), InvariantValue::ONE_THIRD);
    }

    #[test]
    fn anchor() {
        let u = localize(&EisensteinNumber::zeta(), &place_over_three(), 6).unwrap();
        let v = cyclic_invariant(&u, &EisensteinNumber::fraction(2, 3), &place_over_three()).unwrap();
        assert_eq!(v, InvariantValue::TWO_THIRDS);
    }

    #[test]
    fn two_thirds_is_a_cube_at_five() {
        let five = &factor_rational_prime(5).unwrap()[0];
        assert!(theta_is_local_cube(&EisensteinNumber::fraction(2, 3), five).unwrap());
        assert!(!theta_is_local_cube(&EisensteinNumber::fraction(2, 3), &place_over_three()).unwrap());
    }
}
