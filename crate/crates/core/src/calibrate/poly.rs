use super::field::{TowerAutomorphism, TowerElement, TowerField};
use super::CalibrateError;
use crate::azumaya::CubicForm;
use crate::eisenstein::EisensteinNumber;
use crate::lines27::SurfaceCoefficients;
use std::collections::BTreeMap;

/// A homogeneous polynomial in `x, y, z, t` with coefficients in a [`TowerField`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerPolynomial {
    degree: u32,
    terms: BTreeMap<[u32; 4], TowerElement>,
}

impl TowerPolynomial {
    pub fn zero(degree: u32) -> Self {
        TowerPolynomial { degree, terms: BTreeMap::new() }
    }

    pub fn from_terms(degree: u32, terms: Vec<([u32; 4], TowerElement)>, field: &TowerField) -> Result<Self, CalibrateError> {
        let mut p = Self::zero(degree);
        for (e, c) in terms {
            p.add_term(e, c, field)?;
        }
        Ok(p)
    }

    /// Lifts a cubic form with `ℤ[ζ]` coefficients.
    pub fn from_cubic_form(form: &CubicForm, field: &TowerField) -> Self {
        let terms = form.terms().iter().map(|(e, c)| (*e, field.from_ints(c.0, c.1))).collect();
        Self::from_terms(3, terms, field).expect("cubic forms are homogeneous")
    }

    /// `a x³ + b y³ + c z³ + d t³`.
    pub fn diagonal_cubic(coeffs: &SurfaceCoefficients, field: &TowerField) -> Self {
        let c = coeffs.as_array();
        let terms = (0..4)
            .map(|i| {
                let mut e = [0; 4];
                e[i] = 3;
                (e, field.from_ints(c[i], 0))
            })
            .collect();
        Self::from_terms(3, terms, field).expect("homogeneous")
    }

    /// A single variable, `x_i`.
    pub fn variable(i: usize, field: &TowerField) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Self::from_terms(1, vec![(e, field.one())], field).expect("homogeneous")
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 4], &TowerElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32; 4], field: &TowerField) -> TowerElement {
        self.terms.get(e).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: [u32; 4], c: TowerElement, field: &TowerField) -> Result<(), CalibrateError> {
        if e.iter().sum::<u32>() != self.degree {
            return Err(CalibrateError::NonHomogeneous);
        }
        let sum = match self.terms.remove(&e) {
            Some(old) => field.add(&old, &c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
        Ok(())
    }

    fn check_degree(&self, other: &Self) -> Result<(), CalibrateError> {
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(CalibrateError::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self, field: &TowerField) -> Result<Self, CalibrateError> {
        self.check_degree(other)?;
        let mut out = if self.is_zero() { Self::zero(other.degree) } else { self.clone() };
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone(), field)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self, field: &TowerField) -> Result<Self, CalibrateError> {
        self.add(&other.scale(&field.from_ints(-1, 0), field), field)
    }

    pub fn scale(&self, c: &TowerElement, field: &TowerField) -> Self {
        let terms = self.terms.iter().map(|(e, x)| (*e, field.mul(c, x))).filter(|(_, x)| !x.is_zero()).collect();
        TowerPolynomial { degree: self.degree, terms }
    }

    pub fn mul(&self, other: &Self, field: &TowerField) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (e, a) in &self.terms {
            for (f, b) in &other.terms {
                let g = [e[0] + f[0], e[1] + f[1], e[2] + f[2], e[3] + f[3]];
                out.add_term(g, field.mul(a, b), field).expect("degrees add");
            }
        }
        out
    }

    /// Applies σ to every coefficient.
    pub fn apply(&self, sigma: &TowerAutomorphism, field: &TowerField) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (*e, field.apply(sigma, c))).collect();
        TowerPolynomial { degree: self.degree, terms }
    }

    /// `p · σp · σ²p`.
    pub fn norm(&self, sigma: &TowerAutomorphism, field: &TowerField) -> Self {
        let p1 = self.apply(sigma, field);
        let p2 = self.apply(&sigma.power(2), field);
        self.mul(&p1, field).mul(&p2, field)
    }

    /// Value at a point with coordinates in the tower.
    pub fn evaluate(&self, pt: &[TowerElement; 4], field: &TowerField) -> TowerElement {
        let mut s = field.zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for i in 0..4 {
                for _ in 0..e[i] {
                    m = field.mul(&m, &pt[i]);
                }
            }
            s = field.add(&s, &m);
        }
        s
    }
}

/// Reduces p modulo `F = a x³ + b y³ + c z³ + d t³` by `t³ ↦ −(a x³ + b y³ + c z³)/d`.
/// The result has t-degree at most 2 and is the unique such representative.
pub fn normal_form(p: &TowerPolynomial, surface: &SurfaceCoefficients, field: &TowerField) -> TowerPolynomial {
    let [a, b, c, d] = surface.as_array();
    let dinv = EisensteinNumber::fraction(-1, d);
    let subst: Vec<([u32; 4], EisensteinNumber)> = vec![
        ([3, 0, 0, 0], &dinv * &EisensteinNumber::from_ints(a, 0)),
        ([0, 3, 0, 0], &dinv * &EisensteinNumber::from_ints(b, 0)),
        ([0, 0, 3, 0], &dinv * &EisensteinNumber::from_ints(c, 0)),
    ];
    let mut out = TowerPolynomial::zero(p.degree);
    let mut pending: Vec<([u32; 4], TowerElement)> = p.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
    while let Some((e, coeff)) = pending.pop() {
        if e[3] < 3 {
            out.add_term(e, coeff, field).expect("degree preserved");
            continue;
        }
        for (m, s) in &subst {
            let g = [e[0] + m[0], e[1] + m[1], e[2] + m[2], e[3] - 3];
            pending.push((g, field.scale(s, &coeff)));
        }
    }
    out
}

/// Linear forms `ℓ₁, ℓ₂, ℓ₃` and constant c with `f = Σ ℓᵢ qᵢ + c F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub linear_forms: [[TowerElement; 4]; 3],
    pub constant: TowerElement,
}

impl MembershipCertificate {
    /// `Σ ℓᵢ qᵢ + c F`.
    pub fn reconstruct(&self, quadrics: &[TowerPolynomial; 3], surface: &TowerPolynomial, field: &TowerField) -> TowerPolynomial {
        let mut out = surface.scale(&self.constant, field);
        for (l, q) in self.linear_forms.iter().zip(quadrics) {
            for (j, c) in l.iter().enumerate() {
                let term = TowerPolynomial::variable(j, field).mul(q, field).scale(c, field);
                out = out.add(&term, field).expect("cubic");
            }
        }
        out
    }
}

/// Decides whether the cubic f lies in `⟨q₁, q₂, q₃, F⟩` in degree 3 (13 unknowns).
pub fn divisor_membership(
    f: &TowerPolynomial,
    quadrics: &[TowerPolynomial; 3],
    surface: &TowerPolynomial,
    field: &TowerField,
) -> Result<Option<MembershipCertificate>, CalibrateError> {
    if f.degree != 3 || surface.degree != 3 {
        return Err(CalibrateError::DegreeMismatch { expected: 3, found: f.degree.max(surface.degree) });
    }
    if let Some(q) = quadrics.iter().find(|q| q.degree != 2) {
        return Err(CalibrateError::DegreeMismatch { expected: 2, found: q.degree });
    }
    let mut columns: Vec<TowerPolynomial> = Vec::with_capacity(13);
    for q in quadrics {
        for j in 0..4 {
            columns.push(TowerPolynomial::variable(j, field).mul(q, field));
        }
    }
    columns.push(surface.clone());
    let monomials = cubic_monomials();
    let a: Vec<Vec<TowerElement>> = monomials.iter().map(|m| columns.iter().map(|c| c.coefficient(m, field)).collect()).collect();
    let b: Vec<TowerElement> = monomials.iter().map(|m| f.coefficient(m, field)).collect();
    let Some(u) = field.solve(&a, &b)? else { return Ok(None) };
    let lf = |i: usize| -> [TowerElement; 4] { std::array::from_fn(|j| u[4 * i + j].clone()) };
    Ok(Some(MembershipCertificate { linear_forms: [lf(0), lf(1), lf(2)], constant: u[12].clone() }))
}

fn cubic_monomials() -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a in 0..=3u32 {
        for b in 0..=3 - a {
            for c in 0..=3 - a - b {
                out.push([a, b, c, 3 - a - b - c]);
            }
        }
    }
    out
}

/// Checks `f · N_τ(g) ≡ ϑ · f′ · N_τ(f) (mod F)`, the cross-multiplied form of
/// `f/x³ = ϑ (f′/x³) N_τ(f/g)`.
pub fn calibration_identity(
    f: &TowerPolynomial,
    f_prime: &TowerPolynomial,
    g: &TowerPolynomial,
    vartheta: &EisensteinNumber,
    tau: &TowerAutomorphism,
    surface: &SurfaceCoefficients,
    field: &TowerField,
) -> Result<bool, CalibrateError> {
    let lhs = f.mul(&g.norm(tau, field), field);
    let rhs = f_prime.mul(&f.norm(tau, field), field).scale(&field.from_base(vartheta.clone()), field);
    for side in [&lhs, &rhs] {
        if side.degree != 12 {
            return Err(CalibrateError::DegreeMismatch { expected: 12, found: side.degree });
        }
    }
    Ok(normal_form(&lhs.sub(&rhs, field)?, surface, field).is_zero())
}

/// `w · τw · τ²w`, checked to be τ-fixed.
pub fn cubic_norm(w: &TowerElement, tau: &TowerAutomorphism, field: &TowerField) -> Result<TowerElement, CalibrateError> {
    let n = field.mul(&field.mul(w, &field.apply(tau, w)), &field.apply(&tau.power(2), w));
    if field.apply(tau, &n) != n {
        return Err(CalibrateError::NotFixed);
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (TowerField, SurfaceCoefficients) {
        (TowerField::new(vec![EisensteinNumber::fraction(2, 3)]).unwrap(), SurfaceCoefficients::new(5, 9, 10, 12).unwrap())
    }

    #[test]
    fn surface_reduces_to_zero() {
        let (k, s) = setup();
        let f = TowerPolynomial::diagonal_cubic(&s, &k);
        assert!(normal_form(&f, &s, &k).is_zero());
    }

    #[test]
    fn t_cubed() {
        let (k, s) = setup();
        let t = TowerPolynomial::variable(3, &k);
        let t3 = t.mul(&t, &k).mul(&t, &k);
        let nf = normal_form(&t3, &s, &k);
        assert_eq!(nf.coefficient(&[3, 0, 0, 0], &k), k.from_base(EisensteinNumber::fraction(-5, 12)));
        assert_eq!(nf.coefficient(&[0, 3, 0, 0], &k), k.from_base(EisensteinNumber::fraction(-9, 12)));
        assert_eq!(nf.coefficient(&[0, 0, 3, 0], &k), k.from_base(EisensteinNumber::fraction(-10, 12)));
        assert_eq!(normal_form(&nf, &s, &k), nf);
    }

    #[test]
    fn rejects_inhomogeneous_terms() {
        let (k, _) = setup();
        let mut p = TowerPolynomial::zero(2);
        assert_eq!(p.add_term([1, 0, 0, 0], k.one(), &k), Err(CalibrateError::NonHomogeneous));
    }

    #[test]
    fn trivial_calibration() {
        let (k, s) = setup();
        let f = TowerPolynomial::from_cubic_form(&crate::azumaya::cassels_guy::f(), &k);
        let tau = TowerAutomorphism::new(vec![1]);
        assert!(calibration_identity(&f, &f, &f, &EisensteinNumber::one(), &tau, &s, &k).unwrap());
    }
}
