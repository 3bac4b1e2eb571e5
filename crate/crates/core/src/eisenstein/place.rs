use super::number::{int, EisensteinNumber};
use super::EisensteinError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaceKind {
    Split,
    Inert,
    Ramified,
}

/// A finite place of `ℚ(ζ)`, given by a generator of its prime ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Place {
    pub p: u64,
    pub kind: PlaceKind,
    /// Generator `a + bζ` of the prime ideal: `p` if inert, `1 + 2ζ` over 3,
    /// and for split p the associate with `0 ≤ arg < π/3`.
    pub uniformizer: (i64, i64),
    /// Size q of the residue field.
    pub residue_size: u64,
}

impl Place {
    pub fn is_wild(&self) -> bool {
        self.p == 3
    }

    pub fn uniformizer_number(&self) -> EisensteinNumber {
        EisensteinNumber::from_ints(self.uniformizer.0, self.uniformizer.1)
    }

    /// Ramification index over ℚ.
    pub fn ramification(&self) -> u32 {
        if self.kind == PlaceKind::Ramified {
            2
        } else {
            1
        }
    }

    /// Short label: `2`, `sqrt(-3)`, `7:(3,1)`.
    pub fn label(&self) -> String {
        match self.kind {
            PlaceKind::Inert => self.p.to_string(),
            PlaceKind::Ramified => "sqrt(-3)".to_string(),
            PlaceKind::Split => format!("{}:({},{})", self.p, self.uniformizer.0, self.uniformizer.1),
        }
    }

    /// π-adic valuation of a nonzero element.
    pub fn valuation(&self, x: &EisensteinNumber) -> Result<i64, EisensteinError> {
        if x.is_zero() {
            return Err(EisensteinError::ZeroElement);
        }
        let (a, b, d) = x.integral_parts();
        Ok(self.valuation_int(&(a, b)) - self.valuation_int(&(d, BigInt::zero())))
    }

    pub(crate) fn valuation_int(&self, x: &(BigInt, BigInt)) -> i64 {
        let pi = (BigInt::from(self.uniformizer.0), BigInt::from(self.uniformizer.1));
        let mut v = 0;
        let mut cur = x.clone();
        if self.kind == PlaceKind::Inert {
            let p = BigInt::from(self.p);
            while (cur.0.is_multiple_of(&p)) && (cur.1.is_multiple_of(&p)) {
                cur = (&cur.0 / &p, &cur.1 / &p);
                v += 1;
            }
            return v;
        }
        while let Some(q) = int::exact_div(&cur, &pi) {
            cur = q;
            v += 1;
        }
        v
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, `(p, e)` in increasing order.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Prime factors of a nonzero integer.
pub fn prime_divisors(n: &BigInt) -> Vec<u64> {
    let n = n.abs().to_u64().expect("integer too large for trial division");
    factor_u64(n).into_iter().map(|(p, _)| p).collect()
}

/// Rotates `a + bζ` by units into the sector `a > b ≥ 0`.
fn normalize_associate(mut a: i64, mut b: i64) -> (i64, i64) {
    for _ in 0..6 {
        if a > b && b >= 0 {
            return (a, b);
        }
        // multiply by −ζ²  = 1 + ζ: (a + bζ)(1 + ζ) = (a − b) + aζ
        (a, b) = (a - b, a);
    }
    unreachable!("one of the six associates lies in the sector")
}

/// The places of `ℚ(ζ)` above the rational prime `p` (two if `p ≡ 1 mod 3`).
pub fn factor_rational_prime(p: u64) -> Result<Vec<Place>, EisensteinError> {
    if !is_prime(p) {
        return Err(EisensteinError::NotPrime(p));
    }
    if p == 3 {
        return Ok(vec![Place { p, kind: PlaceKind::Ramified, uniformizer: (1, 2), residue_size: 3 }]);
    }
    if p % 3 == 2 {
        return Ok(vec![Place { p, kind: PlaceKind::Inert, uniformizer: (p as i64, 0), residue_size: p * p }]);
    }
    let bound = 2 * ((p as f64).sqrt() as i64 + 1);
    let pi = p as i64;
    for a in 0..=bound {
        for b in 0..=bound {
            if a * a - a * b + b * b == pi {
                let first = normalize_associate(a, b);
                let c = (first.0 - first.1, -first.1);
                let second = normalize_associate(c.0, c.1);
                let mut pair = [first, second];
                pair.sort();
                return Ok(pair.iter().map(|&u| Place { p, kind: PlaceKind::Split, uniformizer: u, residue_size: p }).collect());
            }
        }
    }
    unreachable!("a prime p ≡ 1 mod 3 is a norm from ℤ[ζ]")
}

/// The unique place above 3.
pub fn place_over_three() -> Place {
    factor_rational_prime(3).expect("3 is prime").remove(0)
}

/// All places dividing a nonzero element (its numerator or denominator).
pub fn support(x: &EisensteinNumber) -> Result<Vec<Place>, EisensteinError> {
    if x.is_zero() {
        return Err(EisensteinError::ZeroElement);
    }
    let (a, b, d) = x.integral_parts();
    let n = int::norm(&(a, b)) * &d;
    let mut out = Vec::new();
    for p in prime_divisors(&n) {
        for place in factor_rational_prime(p)? {
            if place.valuation(x)? != 0 {
                out.push(place);
            }
        }
    }
    Ok(out)
}

/// A cube root of x in k, if one exists. Rational cubes get their rational root.
pub fn cube_root(x: &EisensteinNumber) -> Result<Option<EisensteinNumber>, EisensteinError> {
    if x.is_zero() {
        return Ok(Some(EisensteinNumber::zero()));
    }
    if x.is_rational() {
        let (n, d) = (x.x.numer(), x.x.denom());
        let (rn, rd) = (n.cbrt(), d.cbrt());
        let ok = &rn * &rn * &rn == *n && &rd * &rd * &rd == *d;
        return Ok(ok.then(|| EisensteinNumber::from_rational(num_rational::BigRational::new(rn, rd))));
    }
    // ℤ[ζ] is a PID with units ±ζ^j, and −1 is a cube while ζ is not.
    let mut y = EisensteinNumber::one();
    for place in support(x)? {
        let v = place.valuation(x)?;
        if v.rem_euclid(3) != 0 {
            return Ok(None);
        }
        y = &y * &place.uniformizer_number().pow(v / 3).expect("uniformizer is nonzero");
    }
    let u = x / &(&(&y * &y) * &y);
    if u.is_one() {
        Ok(Some(y))
    } else if (-&u).is_one() {
        Ok(Some(-y))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_splits_with_three_plus_zeta() {
        let places = factor_rational_prime(7).unwrap();
        assert_eq!(places.len(), 2);
        assert_eq!(places[0].uniformizer, (3, 1));
        assert_eq!(places[1].uniformizer, (3, 2));
        assert!(places.iter().all(|p| p.kind == PlaceKind::Split && p.residue_size == 7));
    }

    #[test]
    fn small_primes() {
        assert_eq!(factor_rational_prime(2).unwrap()[0].kind, PlaceKind::Inert);
        assert_eq!(factor_rational_prime(2).unwrap()[0].residue_size, 4);
        assert_eq!(factor_rational_prime(3).unwrap()[0].uniformizer, (1, 2));
        assert!(matches!(factor_rational_prime(9), Err(EisensteinError::NotPrime(9))));
    }

    #[test]
    fn valuations() {
        let three = place_over_three();
        assert_eq!(three.valuation(&EisensteinNumber::from_ints(3, 0)).unwrap(), 2);
        assert_eq!(three.valuation(&EisensteinNumber::fraction(2, 3)).unwrap(), -2);
        assert_eq!(three.valuation(&EisensteinNumber::from_ints(3, 4)).unwrap(), 0);
        let seven = factor_rational_prime(7).unwrap();
        let x = EisensteinNumber::from_ints(3, 1);
        assert_eq!(seven[0].valuation(&x).unwrap(), 1);
        assert_eq!(seven[1].valuation(&x).unwrap(), 0);
    }

    #[test]
    fn cube_roots() {
        let r = cube_root(&EisensteinNumber::fraction(-27, 8)).unwrap().unwrap();
        assert_eq!(r, EisensteinNumber::fraction(-3, 2));
        assert!(cube_root(&EisensteinNumber::fraction(2, 3)).unwrap().is_none());
        assert!(cube_root(&EisensteinNumber::zeta()).unwrap().is_none());
        let w = EisensteinNumber::from_ints(2, 5);
        let c = &(&w * &w) * &w;
        let r = cube_root(&c).unwrap().unwrap();
        assert_eq!(&(&r * &r) * &r, c);
        // (1 + 2ζ)³ = −3(1 + 2ζ) is a cube although its support is ramified
        assert!(cube_root(&EisensteinNumber::from_ints(-3, -6)).unwrap().is_some());
    }

    #[test]
    fn support_of_a_fraction() {
        let s = support(&EisensteinNumber::fraction(2, 21)).unwrap();
        let labels: Vec<String> = s.iter().map(|p| p.label()).collect();
        assert_eq!(labels, vec!["2", "sqrt(-3)", "7:(3,1)", "7:(3,2)"]);
    }
}
