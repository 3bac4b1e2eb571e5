use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// `x + yζ` with `x, y ∈ ℚ` and `ζ² + ζ + 1 = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct EisensteinNumber {
    pub x: BigRational,
    pub y: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl EisensteinNumber {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        EisensteinNumber { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        EisensteinNumber { x: rat(x), y: rat(y) }
    }

    pub fn from_rational(q: BigRational) -> Self {
        EisensteinNumber { x: q, y: BigRational::zero() }
    }

    /// `n / d` as an element of ℚ.
    pub fn fraction(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn zeta() -> Self {
        Self::from_ints(0, 1)
    }

    /// `√−3 = 1 + 2ζ`
    pub fn sqrt_minus_three() -> Self {
        Self::from_ints(1, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    /// Image under `ζ ↦ ζ²`.
    pub fn conj(&self) -> Self {
        EisensteinNumber { x: &self.x - &self.y, y: -&self.y }
    }

    /// `x² − xy + y²`
    pub fn norm(&self) -> BigRational {
        &self.x * &self.x - &self.x * &self.y + &self.y * &self.y
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(EisensteinNumber { x: c.x / &n, y: c.y / &n })
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Some(out)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        EisensteinNumber { x: &self.x * q, y: &self.y * q }
    }

    /// `(A + Bζ) / D` with `D > 0` the least common denominator.
    pub fn integral_parts(&self) -> (BigInt, BigInt, BigInt) {
        let d = self.x.denom().lcm(self.y.denom());
        let a = self.x.numer() * (&d / self.x.denom());
        let b = self.y.numer() * (&d / self.y.denom());
        (a, b, d)
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// Both coordinates as `i64`, if integral and small.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        if !self.is_integral() {
            return None;
        }
        Some((self.x.to_integer().to_i64()?, self.y.to_integer().to_i64()?))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a EisensteinNumber> for &'a EisensteinNumber {
            type Output = EisensteinNumber;
            fn $m(self, o: &'a EisensteinNumber) -> EisensteinNumber {
                let f: fn(&EisensteinNumber, &EisensteinNumber) -> EisensteinNumber = $body;
                f(self, o)
            }
        }
        impl $tr for EisensteinNumber {
            type Output = EisensteinNumber;
            fn $m(self, o: EisensteinNumber) -> EisensteinNumber {
                (&self).$m(&o)
            }
        }
    };
}

binop!(Add, add, |a, b| EisensteinNumber { x: &a.x + &b.x, y: &a.y + &b.y });
binop!(Sub, sub, |a, b| EisensteinNumber { x: &a.x - &b.x, y: &a.y - &b.y });
binop!(Mul, mul, |a, b| {
    let bd = &a.y * &b.y;
    EisensteinNumber { x: &a.x * &b.x - &bd, y: &a.x * &b.y + &a.y * &b.x - bd }
});
binop!(Div, div, |a, b| a * &b.inv().expect("division by zero"));

impl Neg for &EisensteinNumber {
    type Output = EisensteinNumber;
    fn neg(self) -> EisensteinNumber {
        EisensteinNumber { x: -&self.x, y: -&self.y }
    }
}

impl Neg for EisensteinNumber {
    type Output = EisensteinNumber;
    fn neg(self) -> EisensteinNumber {
        -&self
    }
}

fn fmt_rat(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for EisensteinNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x.is_zero(), self.y.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.x)),
            (true, false) => write!(f, "{}ζ", coeff(&self.y)),
            (false, false) => {
                let sign = if self.y.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}ζ", fmt_rat(&self.x), sign, coeff(&self.y.abs()))
            }
        }
    }
}

fn coeff(q: &BigRational) -> String {
    if q.is_one() {
        String::new()
    } else if *q == -BigRational::one() {
        "-".into()
    } else if q.is_integer() {
        fmt_rat(q)
    } else {
        format!("({})", fmt_rat(q))
    }
}

impl fmt::Debug for EisensteinNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fmt_rat(&self.x), fmt_rat(&self.y))
    }
}

/// Parses a rational written `n` or `n/d`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            let n: BigInt = n.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl FromStr for EisensteinNumber {
    type Err = String;
    /// Accepts `[x,y]` or a bare rational.
    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let (a, b) = inner.split_once(',').ok_or_else(|| format!("expected [x,y], got {s}"))?;
            let x = parse_rational(a).ok_or_else(|| format!("bad coordinate {a}"))?;
            let y = parse_rational(b).ok_or_else(|| format!("bad coordinate {b}"))?;
            return Ok(EisensteinNumber { x, y });
        }
        parse_rational(t).map(Self::from_rational).ok_or_else(|| format!("cannot parse {s}"))
    }
}

fn rat_json(q: &BigRational) -> serde_json::Value {
    match (q.is_integer(), q.numer().to_i64()) {
        (true, Some(n)) => serde_json::Value::from(n),
        _ => serde_json::Value::from(fmt_rat(q)),
    }
}

impl Serialize for EisensteinNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&rat_json(&self.x))?;
        seq.serialize_element(&rat_json(&self.y))?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for EisensteinNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let v = serde_json::Value::deserialize(d)?;
        let part = |v: &serde_json::Value| -> Option<BigRational> {
            match v {
                serde_json::Value::Number(n) => n.as_i64().map(rat),
                serde_json::Value::String(s) => parse_rational(s),
                _ => None,
            }
        };
        match v {
            serde_json::Value::Array(ref a) if a.len() == 2 => Ok(EisensteinNumber {
                x: part(&a[0]).ok_or_else(|| D::Error::custom("bad x"))?,
                y: part(&a[1]).ok_or_else(|| D::Error::custom("bad y"))?,
            }),
            other => part(&other).map(Self::from_rational).ok_or_else(|| D::Error::custom("expected [x,y]")),
        }
    }
}

/// Exact π-adic style helpers on integral pairs `A + Bζ`.
pub(crate) mod int {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::Zero;

    pub fn mul(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        let bd = &a.1 * &b.1;
        (&a.0 * &b.0 - &bd, &a.0 * &b.1 + &a.1 * &b.0 - bd)
    }

    pub fn conj(a: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        (&a.0 - &a.1, -&a.1)
    }

    pub fn norm(a: &(BigInt, BigInt)) -> BigInt {
        &a.0 * &a.0 - &a.0 * &a.1 + &a.1 * &a.1
    }

    /// `a / d` if `d` divides `a` in ℤ[ζ] (d of norm `nd`).
    pub fn exact_div(a: &(BigInt, BigInt), d: &(BigInt, BigInt)) -> Option<(BigInt, BigInt)> {
        let n = norm(d);
        let t = mul(a, &conj(d));
        let (q0, r0) = t.0.div_rem(&n);
        let (q1, r1) = t.1.div_rem(&n);
        (r0.is_zero() && r1.is_zero()).then_some((q0, q1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_is_a_cube_root_of_unity() {
        let z = EisensteinNumber::zeta();
        assert_eq!(&(&z * &z) * &z, EisensteinNumber::one());
        assert_eq!(&z * &z + z.clone() + EisensteinNumber::one(), EisensteinNumber::zero());
    }

    #[test]
    fn sqrt_minus_three_squares_to_minus_three() {
        let p = EisensteinNumber::sqrt_minus_three();
        assert_eq!(&p * &p, EisensteinNumber::from_ints(-3, 0));
        assert_eq!(p.conj(), -&p);
    }

    #[test]
    fn parse_and_print() {
        let e: EisensteinNumber = "[3, -1/2]".parse().unwrap();
        assert_eq!(e.to_string(), "3-(1/2)ζ");
        assert_eq!(serde_json::to_string(&e).unwrap(), r#"[3,"-1/2"]"#);
        let back: EisensteinNumber = serde_json::from_str(r#"[3,"-1/2"]"#).unwrap();
        assert_eq!(back, e);
        assert_eq!("2/3".parse::<EisensteinNumber>().unwrap(), EisensteinNumber::fraction(2, 3));
    }

    #[test]
    fn inverse() {
        let e = EisensteinNumber::from_ints(3, 1);
        assert_eq!(&e * &e.inv().unwrap(), EisensteinNumber::one());
        assert_eq!(e.norm(), rat(7));
    }
}
