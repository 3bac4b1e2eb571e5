use super::CalibrateError;
use crate::eisenstein::{cube_root, EisensteinNumber};
use serde::Serialize;
use std::fmt;

/// Largest number of radicals accepted (dimension `3^r` over k).
pub const MAX_RADICALS: usize = 4;

/// `k(∛m₁, …, ∛m_r)` with the `mᵢ` independent modulo cubes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerField {
    radicands: Vec<EisensteinNumber>,
    dim: usize,
    /// `table[i][j] = (index, factor)` with `bᵢ·bⱼ = factor·b_index`.
    table: Vec<Vec<(usize, EisensteinNumber)>>,
}

/// Coordinates over k on the monomials `∏ ∛mᵢ^{eᵢ}`, index `Σ eᵢ 3^i`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TowerElement {
    coeffs: Vec<EisensteinNumber>,
}

impl TowerElement {
    pub fn coefficients(&self) -> &[EisensteinNumber] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The element as a member of k, if it lies there.
    pub fn as_base(&self) -> Option<&EisensteinNumber> {
        self.coeffs[1..].iter().all(|c| c.is_zero()).then(|| &self.coeffs[0])
    }
}

impl fmt::Debug for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if i == 0 { format!("({c})") } else { format!("({c})·b{i}") })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn digits(mut i: usize, r: usize) -> Vec<usize> {
    (0..r)
        .map(|_| {
            let d = i % 3;
            i /= 3;
            d
        })
        .collect()
}

impl TowerField {
    pub fn new(radicands: Vec<EisensteinNumber>) -> Result<Self, CalibrateError> {
        let r = radicands.len();
        if r > MAX_RADICALS {
            return Err(CalibrateError::TooManyRadicals(r));
        }
        if radicands.iter().any(|m| m.is_zero()) {
            return Err(CalibrateError::ZeroRadicand);
        }
        let dim = 3usize.pow(r as u32);
        for lam in 1..dim {
            let mut prod = EisensteinNumber::one();
            for (i, e) in digits(lam, r).into_iter().enumerate() {
                for _ in 0..e {
                    prod = &prod * &radicands[i];
                }
            }
            if cube_root(&prod)?.is_some() {
                return Err(CalibrateError::DependentRadicals);
            }
        }
        let mut table = Vec::with_capacity(dim);
        for i in 0..dim {
            let di = digits(i, r);
            let mut row = Vec::with_capacity(dim);
            for j in 0..dim {
                let dj = digits(j, r);
                let mut index = 0;
                let mut factor = EisensteinNumber::one();
                for k in (0..r).rev() {
                    let mut e = di[k] + dj[k];
                    if e >= 3 {
                        e -= 3;
                        factor = &factor * &radicands[k];
                    }
                    index = 3 * index + e;
                }
                row.push((index, factor));
            }
            table.push(row);
        }
        Ok(TowerField { radicands, dim, table })
    }

    /// `k` itself.
    pub fn base() -> Self {
        Self::new(vec![]).expect("empty tower is valid")
    }

    pub fn radicands(&self) -> &[EisensteinNumber] {
        &self.radicands
    }

    /// Dimension over k.
    pub fn degree(&self) -> usize {
        self.dim
    }

    /// Dimension over ℚ.
    pub fn rational_degree(&self) -> usize {
        2 * self.dim
    }

    pub fn zero(&self) -> TowerElement {
        TowerElement { coeffs: vec![EisensteinNumber::zero(); self.dim] }
    }

    pub fn one(&self) -> TowerElement {
        self.from_base(EisensteinNumber::one())
    }

    pub fn from_base(&self, c: EisensteinNumber) -> TowerElement {
        let mut x = self.zero();
        x.coeffs[0] = c;
        x
    }

    pub fn from_ints(&self, a: i64, b: i64) -> TowerElement {
        self.from_base(EisensteinNumber::from_ints(a, b))
    }

    /// `c · ∏ ∛mᵢ^{eᵢ}` with `eᵢ ∈ {0, 1, 2}`.
    pub fn monomial(&self, c: EisensteinNumber, exponents: &[usize]) -> Result<TowerElement, CalibrateError> {
        if exponents.len() != self.radicands.len() || exponents.iter().any(|&e| e > 2) {
            return Err(CalibrateError::BadMonomial);
        }
        let index = exponents.iter().rev().fold(0, |acc, &e| 3 * acc + e);
        let mut x = self.zero();
        x.coeffs[index] = c;
        Ok(x)
    }

    /// `∛mᵢ`.
    pub fn radical(&self, i: usize) -> TowerElement {
        let mut e = vec![0; self.radicands.len()];
        e[i] = 1;
        self.monomial(EisensteinNumber::one(), &e).expect("index in range")
    }

    /// A cube root of `m ∈ k` inside the tower, if one is a monomial times an element of k.
    pub fn cube_root_of(&self, m: &EisensteinNumber) -> Result<Option<TowerElement>, CalibrateError> {
        let r = self.radicands.len();
        for idx in 0..self.dim {
            let d = digits(idx, r);
            let mut mono = EisensteinNumber::one();
            for (i, e) in d.iter().enumerate() {
                for _ in 0..*e {
                    mono = &mono * &self.radicands[i];
                }
            }
            if let Some(c) = cube_root(&(m / &mono))? {
                return Ok(Some(self.monomial(c, &d)?));
            }
        }
        Ok(None)
    }

    pub fn add(&self, x: &TowerElement, y: &TowerElement) -> TowerElement {
        TowerElement { coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, x: &TowerElement, y: &TowerElement) -> TowerElement {
        TowerElement { coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self, x: &TowerElement) -> TowerElement {
        TowerElement { coeffs: x.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &EisensteinNumber, x: &TowerElement) -> TowerElement {
        TowerElement { coeffs: x.coeffs.iter().map(|a| c * a).collect() }
    }

    pub fn mul(&self, x: &TowerElement, y: &TowerElement) -> TowerElement {
        let mut out = self.zero();
        for (i, a) in x.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let (k, f) = &self.table[i][j];
                let p = a * b;
                out.coeffs[*k] = &out.coeffs[*k] + &if f.is_one() { p } else { &p * f };
            }
        }
        out
    }

    /// Generator of `Gal(tower/k)` acting by `∛mᵢ ↦ ζ^{eᵢ} ∛mᵢ` (and `ζ ↦ ζ²` if conjugating).
    pub fn apply(&self, sigma: &TowerAutomorphism, x: &TowerElement) -> TowerElement {
        let r = self.radicands.len();
        let zeta_pows = [EisensteinNumber::one(), EisensteinNumber::zeta(), EisensteinNumber::from_ints(-1, -1)];
        let coeffs = x
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.is_zero() {
                    return c.clone();
                }
                let c = if sigma.conjugate { c.conj() } else { c.clone() };
                let e: usize = digits(i, r).iter().zip(&sigma.exponents).map(|(d, g)| d * *g as usize).sum();
                &c * &zeta_pows[e % 3]
            })
            .collect();
        TowerElement { coeffs }
    }

    /// All automorphisms fixing k.
    pub fn galois_group(&self) -> Vec<TowerAutomorphism> {
        let r = self.radicands.len();
        (0..self.dim)
            .map(|i| TowerAutomorphism { exponents: digits(i, r).iter().map(|&d| d as u8).collect(), conjugate: false })
            .collect()
    }

    /// `N_{tower/k}(x)` as an element of k.
    pub fn absolute_norm(&self, x: &TowerElement) -> EisensteinNumber {
        let n = self.galois_group().iter().fold(self.one(), |acc, s| self.mul(&acc, &self.apply(s, x)));
        n.as_base().expect("a full Galois norm lies in k").clone()
    }

    pub fn inv(&self, x: &TowerElement) -> Result<TowerElement, CalibrateError> {
        if x.is_zero() {
            return Err(CalibrateError::NotInvertible);
        }
        // x⁻¹ = (∏_{σ≠1} σx) / N(x)
        let mut others = self.one();
        for s in self.galois_group().iter().skip(1) {
            others = self.mul(&others, &self.apply(s, x));
        }
        let n = self.mul(&others, x);
        let n = n.as_base().expect("norm lies in k");
        Ok(self.scale(&n.inv().expect("nonzero norm"), &others))
    }

    pub fn div(&self, x: &TowerElement, y: &TowerElement) -> Result<TowerElement, CalibrateError> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    /// Checks that σ respects the multiplication table on all basis pairs.
    pub fn check_automorphism(&self, sigma: &TowerAutomorphism) -> Result<(), CalibrateError> {
        if sigma.exponents.len() != self.radicands.len() {
            return Err(CalibrateError::InvalidAutomorphism("wrong number of exponents".into()));
        }
        for (i, m) in self.radicands.iter().enumerate() {
            // ∛m ↦ ζ^e ∛m requires σ(m) = m.
            if sigma.conjugate && m.conj() != *m {
                return Err(CalibrateError::InvalidAutomorphism(format!("radicand {i} is not fixed by conjugation")));
            }
        }
        let basis: Vec<TowerElement> = (0..self.dim)
            .map(|i| {
                let mut x = self.zero();
                x.coeffs[i] = EisensteinNumber::one();
                x
            })
            .collect();
        for a in &basis {
            for b in &basis {
                let lhs = self.apply(sigma, &self.mul(a, b));
                let rhs = self.mul(&self.apply(sigma, a), &self.apply(sigma, b));
                if lhs != rhs {
                    return Err(CalibrateError::InvalidAutomorphism("not multiplicative".into()));
                }
            }
        }
        Ok(())
    }

    /// Rank of a matrix with tower entries (Gaussian elimination).
    pub fn rank(&self, rows: &[Vec<TowerElement>]) -> Result<usize, CalibrateError> {
        let mut m: Vec<Vec<TowerElement>> = rows.to_vec();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(rank, p);
            let pinv = self.inv(&m[rank][c])?;
            for i in rank + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let factor = self.mul(&m[i][c], &pinv);
                for j in c..cols {
                    let t = self.mul(&factor, &m[rank][j]);
                    m[i][j] = self.sub(&m[i][j], &t);
                }
            }
            rank += 1;
        }
        Ok(rank)
    }

    /// Solves `A u = b`; `None` when inconsistent. Free unknowns are set to 0.
    pub fn solve(&self, a: &[Vec<TowerElement>], b: &[TowerElement]) -> Result<Option<Vec<TowerElement>>, CalibrateError> {
        let n = a.first().map_or(0, |r| r.len());
        let mut m: Vec<Vec<TowerElement>> =
            a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for c in 0..n {
            let Some(p) = (row..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(row, p);
            let pinv = self.inv(&m[row][c])?;
            for j in c..=n {
                m[row][j] = self.mul(&m[row][j], &pinv);
            }
            for i in 0..m.len() {
                if i == row || m[i][c].is_zero() {
                    continue;
                }
                let factor = m[i][c].clone();
                for j in c..=n {
                    let t = self.mul(&factor, &m[row][j]);
                    m[i][j] = self.sub(&m[i][j], &t);
                }
            }
            pivots.push(c);
            row += 1;
        }
        if m[row..].iter().any(|r| !r[n].is_zero()) {
            return Ok(None);
        }
        let mut u = vec![self.zero(); n];
        for (i, &c) in pivots.iter().enumerate() {
            u[c] = m[i][n].clone();
        }
        Ok(Some(u))
    }
}

/// `∛mᵢ ↦ ζ^{eᵢ}∛mᵢ`, optionally composed with `ζ ↦ ζ²` on coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TowerAutomorphism {
    pub exponents: Vec<u8>,
    pub conjugate: bool,
}

impl TowerAutomorphism {
    pub fn new(exponents: Vec<u8>) -> Self {
        TowerAutomorphism { exponents: exponents.into_iter().map(|e| e % 3).collect(), conjugate: false }
    }

    /// `σ^k` for σ fixing ζ.
    pub fn power(&self, k: u8) -> Self {
        assert!(!self.conjugate, "powers are only used for k-linear automorphisms");
        TowerAutomorphism::new(self.exponents.iter().map(|e| (e * k) % 3).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k0() -> TowerField {
        TowerField::new(vec![EisensteinNumber::fraction(2, 3)]).unwrap()
    }

    #[test]
    fn rho_cubes_to_theta() {
        let f = k0();
        let r = f.radical(0);
        let r3 = f.mul(&f.mul(&r, &r), &r);
        assert_eq!(r3.as_base(), Some(&EisensteinNumber::fraction(2, 3)));
        assert_eq!(f.rational_degree(), 6);
    }

    #[test]
    fn dependent_radicals_rejected() {
        let e = TowerField::new(vec![EisensteinNumber::fraction(2, 3), EisensteinNumber::fraction(3, 2)]);
        assert_eq!(e.unwrap_err(), CalibrateError::DependentRadicals);
        let e = TowerField::new(vec![EisensteinNumber::fraction(2, 3), EisensteinNumber::from_ints(18, 0)]);
        assert_eq!(e.unwrap_err(), CalibrateError::DependentRadicals);
        assert!(TowerField::new(vec![EisensteinNumber::from_ints(8, 0)]).is_err());
    }

    #[test]
    fn inverse_in_a_three_radical_tower() {
        let f = TowerField::new(vec![2, 3, 5].into_iter().map(|n| EisensteinNumber::from_ints(n, 0)).collect()).unwrap();
        let x = f.add(&f.add(&f.radical(0), &f.radical(2)), &f.from_ints(1, 1));
        let y = f.inv(&x).unwrap();
        assert_eq!(f.mul(&x, &y), f.one());
    }

    #[test]
    fn automorphisms_are_checked() {
        let f = k0();
        for e in 0..3 {
            f.check_automorphism(&TowerAutomorphism::new(vec![e])).unwrap();
        }
        f.check_automorphism(&TowerAutomorphism { exponents: vec![1], conjugate: true }).unwrap();
        let g = TowerField::new(vec![EisensteinNumber::from_ints(2, 1)]).unwrap();
        assert!(g.check_automorphism(&TowerAutomorphism { exponents: vec![0], conjugate: true }).is_err());
    }

    #[test]
    fn cube_root_of_eighteen() {
        let f = k0();
        let r = f.cube_root_of(&EisensteinNumber::from_ints(18, 0)).unwrap().unwrap();
        assert_eq!(r, f.scale(&EisensteinNumber::from_ints(3, 0), &f.radical(0)));
    }
}
