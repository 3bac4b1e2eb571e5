use super::AzumayaError;
use crate::eisenstein::{EisensteinNumber, LocalRing, Res};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

/// A homogeneous cubic form in `x, y, z, t` with `ℤ[ζ]` coefficients `(a, b) = a + bζ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubicForm {
    terms: Vec<([u32; 4], (i64, i64))>,
}

impl CubicForm {
    /// Merges repeated monomials and drops zero coefficients.
    pub fn new(terms: &[([u32; 4], (i64, i64))]) -> Result<Self, AzumayaError> {
        let mut merged: BTreeMap<[u32; 4], (i64, i64)> = BTreeMap::new();
        for (e, c) in terms {
            if e.iter().sum::<u32>() != 3 {
                return Err(AzumayaError::InvalidChart(format!("monomial {e:?} is not cubic")));
            }
            let entry = merged.entry(*e).or_default();
            entry.0 += c.0;
            entry.1 += c.1;
        }
        let terms: Vec<_> = merged.into_iter().filter(|(_, c)| *c != (0, 0)).collect();
        if terms.is_empty() {
            return Err(AzumayaError::InvalidChart("numerator is zero".into()));
        }
        Ok(CubicForm { terms })
    }

    pub fn terms(&self) -> &[([u32; 4], (i64, i64))] {
        &self.terms
    }

    pub fn coefficient(&self, e: [u32; 4]) -> (i64, i64) {
        self.terms.iter().find(|(m, _)| *m == e).map(|(_, c)| *c).unwrap_or((0, 0))
    }

    pub fn evaluate(&self, pt: &[EisensteinNumber; 4]) -> EisensteinNumber {
        let mut s = EisensteinNumber::zero();
        for (e, c) in &self.terms {
            let mut m = EisensteinNumber::from_ints(c.0, c.1);
            for i in 0..4 {
                for _ in 0..e[i] {
                    m = &m * &pt[i];
                }
            }
            s = s + m;
        }
        s
    }

    pub fn evaluate_local(&self, ring: &LocalRing, pt: &[Res; 4]) -> Res {
        let mut powers = [[Res::ONE; 4]; 4];
        for i in 0..4 {
            for k in 1..4 {
                powers[i][k] = ring.mul(powers[i][k - 1], pt[i]);
            }
        }
        let mut s = Res::ZERO;
        for (e, c) in &self.terms {
            let mut m = ring.from_pair(c.0, c.1);
            for i in 0..4 {
                if e[i] > 0 {
                    m = ring.mul(m, powers[i][e[i] as usize]);
                }
            }
            s = ring.add(s, m);
        }
        s
    }

    /// Whether every coefficient is divisible by the rational prime p
    /// (so the form reduces to zero modulo every place over p).
    pub fn vanishes_mod(&self, p: u64) -> bool {
        let p = p as i64;
        self.terms.iter().all(|(_, (a, b))| a % p == 0 && b % p == 0)
    }
}

/// `constant · numerator / x_d³`, a representative of a class in `Br(U)`
/// for the cyclic extension `k(∛θ)/k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AzumayaChart {
    pub name: String,
    pub theta: EisensteinNumber,
    pub numerator: CubicForm,
    /// Coordinate index whose cube is the denominator.
    pub denominator: usize,
    pub constant: EisensteinNumber,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AzumayaClass {
    pub name: String,
    pub theta: EisensteinNumber,
    pub order: u32,
    pub charts: Vec<AzumayaChart>,
}

impl AzumayaClass {
    /// Builds a class with one chart per (numerator, denominator) pair.
    pub fn from_numerators(
        name: &str,
        theta: EisensteinNumber,
        numerators: &[(&str, CubicForm, EisensteinNumber)],
    ) -> Result<Self, AzumayaError> {
        if theta.is_zero() {
            return Err(AzumayaError::InvalidChart("theta is zero".into()));
        }
        let mut charts = Vec::new();
        for (label, form, constant) in numerators {
            if constant.is_zero() {
                return Err(AzumayaError::InvalidChart("zero calibration constant".into()));
            }
            for d in 0..4 {
                charts.push(AzumayaChart {
                    name: format!("{label}/{}^3", ["x", "y", "z", "t"][d]),
                    theta: theta.clone(),
                    numerator: form.clone(),
                    denominator: d,
                    constant: constant.clone(),
                });
            }
        }
        Ok(AzumayaClass { name: name.into(), theta, order: 3, charts })
    }

    /// Multiplies every constant by `λ³`; the Brauer class is unchanged.
    pub fn scaled_by_cube(&self, lambda: &EisensteinNumber) -> Self {
        let cube = &(lambda * lambda) * lambda;
        let mut out = self.clone();
        for c in &mut out.charts {
            c.constant = &c.constant * &cube;
        }
        out
    }

    /// Keeps only charts with the given denominator.
    pub fn restricted_to_denominator(&self, d: usize) -> Self {
        let mut out = self.clone();
        out.charts.retain(|c| c.denominator == d);
        out
    }
}

/// The three numerators for `5x³ + 9y³ + 10z³ + 12t³ = 0` with `θ = 2/3`.
pub mod cassels_guy {
    use super::CubicForm;

    const X3: [u32; 4] = [3, 0, 0, 0];
    const X2Y: [u32; 4] = [2, 1, 0, 0];
    const X2Z: [u32; 4] = [2, 0, 1, 0];
    const XY2: [u32; 4] = [1, 2, 0, 0];
    const XYZ: [u32; 4] = [1, 1, 1, 0];
    const XZ2: [u32; 4] = [1, 0, 2, 0];
    const Y3: [u32; 4] = [0, 3, 0, 0];
    const YZ2: [u32; 4] = [0, 1, 2, 0];
    const Z3: [u32; 4] = [0, 0, 3, 0];
    const T3: [u32; 4] = [0, 0, 0, 3];

    pub const COEFFICIENTS: (i64, i64, i64, i64) = (5, 9, 10, 12);

    /// Vanishes on `C + τC + ττC`.
    pub fn f() -> CubicForm {
        CubicForm::new(&[
            (X3, (-2, 2)),
            (X2Y, (0, -3)),
            (X2Z, (0, -8)),
            // −9ζ² = 9 + 9ζ
            (XY2, (9, 9)),
            (XYZ, (0, 24)),
            (XZ2, (0, 4)),
            (Y3, (-21, -6)),
            (YZ2, (0, -12)),
            (Z3, (-14, -18)),
            (T3, (-4, 4)),
        ])
        .expect("valid form")
    }

    /// Vanishes on `C′ + τC′ + ττC′`.
    pub fn f_prime() -> CubicForm {
        CubicForm::new(&[
            (X3, (4, 2)),
            (X2Y, (0, -3)),
            (X2Z, (-8, 0)),
            (XY2, (-9, 0)),
            (XYZ, (0, 24)),
            (XZ2, (4, 0)),
            (Y3, (15, 21)),
            (YZ2, (0, -12)),
            (Z3, (-4, 14)),
            (T3, (8, 4)),
        ])
        .expect("valid form")
    }

    /// Vanishes on `C″ + τC″ + ττC″`.
    pub fn f_double_prime() -> CubicForm {
        CubicForm::new(&[
            (X3, (-2, -4)),
            (X2Y, (0, -3)),
            (X2Z, (-8, 0)),
            (XY2, (0, -9)),
            (XYZ, (-24, -24)),
            (XZ2, (0, 4)),
            (Y3, (6, -15)),
            (YZ2, (-12, 0)),
            (Z3, (18, 4)),
            (T3, (-4, -8)),
        ])
        .expect("valid form")
    }
}

/// Calibration constants for `f, f′, f″`.
pub fn cassels_guy_constants() -> [EisensteinNumber; 3] {
    [
        EisensteinNumber::one(),
        EisensteinNumber::from_ints(0, 2),
        // −60ζ² = 60 + 60ζ
        EisensteinNumber::from_ints(60, 60),
    ]
}

/// The generator of `Br(X)/Br(k)` for the Cassels–Guy surface: 12 charts.
pub fn cassels_guy_class() -> AzumayaClass {
    cassels_guy_class_with_constants(cassels_guy_constants())
}

pub fn cassels_guy_class_with_constants(constants: [EisensteinNumber; 3]) -> AzumayaClass {
    let [c0, c1, c2] = constants;
    AzumayaClass::from_numerators(
        "cassels-guy",
        EisensteinNumber::fraction(2, 3),
        &[("f", cassels_guy::f(), c0), ("f'", cassels_guy::f_prime(), c1), ("f''", cassels_guy::f_double_prime(), c2)],
    )
    .expect("built-in charts are valid")
}

pub const CHART_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
struct ChartFile {
    schema: Option<u32>,
    name: Option<String>,
    theta: [i64; 2],
    charts: Vec<ChartEntry>,
}

#[derive(Debug, Deserialize)]
struct ChartEntry {
    constant: EisensteinNumber,
    denominator: usize,
    numerator: Vec<([u32; 4], [i64; 2])>,
}

/// Parses a TOML chart file (see `docs/chart-format.md`).
pub fn parse_chart_file(text: &str) -> Result<AzumayaClass, AzumayaError> {
    let file: ChartFile = toml::from_str(text).map_err(|e| AzumayaError::InvalidChart(e.to_string()))?;
    if let Some(v) = file.schema {
        if v != CHART_SCHEMA_VERSION {
            return Err(AzumayaError::InvalidChart(format!("unsupported chart schema {v}")));
        }
    }
    if file.theta[0] == 0 || file.theta[1] == 0 {
        return Err(AzumayaError::InvalidChart("theta must be a nonzero fraction".into()));
    }
    let theta = EisensteinNumber::fraction(file.theta[0], file.theta[1]);
    if file.charts.is_empty() {
        return Err(AzumayaError::InvalidChart("no charts".into()));
    }
    let mut charts = Vec::new();
    for (i, c) in file.charts.into_iter().enumerate() {
        if c.denominator > 3 {
            return Err(AzumayaError::InvalidChart(format!("chart {i}: denominator index must be 0..=3")));
        }
        if c.constant.is_zero() {
            return Err(AzumayaError::InvalidChart(format!("chart {i}: zero constant")));
        }
        let terms: Vec<_> = c.numerator.iter().map(|(e, v)| (*e, (v[0], v[1]))).collect();
        charts.push(AzumayaChart {
            name: format!("chart{i}/{}^3", ["x", "y", "z", "t"][c.denominator]),
            theta: theta.clone(),
            numerator: CubicForm::new(&terms)?,
            denominator: c.denominator,
            constant: c.constant,
        });
    }
    Ok(AzumayaClass { name: file.name.unwrap_or_else(|| "user".into()), theta, order: 3, charts })
}

pub fn load_chart_file(path: &Path) -> Result<AzumayaClass, AzumayaError> {
    let text = std::fs::read_to_string(path).map_err(|e| AzumayaError::InvalidChart(format!("{}: {e}", path.display())))?;
    parse_chart_file(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_coefficients() {
        let f = cassels_guy::f();
        assert_eq!(f.coefficient([3, 0, 0, 0]), (-2, 2));
        assert_eq!(f.coefficient([0, 0, 0, 3]), (-4, 4));
        assert_eq!(cassels_guy_class().charts.len(), 12);
    }

    #[test]
    fn bundled_chart_file_matches_builtin() {
        let text = include_str!("../../charts/cassels_guy.toml");
        let parsed = parse_chart_file(text).unwrap();
        let builtin = cassels_guy_class();
        assert_eq!(parsed.theta, builtin.theta);
        assert_eq!(parsed.charts.len(), builtin.charts.len());
        for (a, b) in parsed.charts.iter().zip(&builtin.charts) {
            assert_eq!((&a.numerator, a.denominator, &a.constant), (&b.numerator, b.denominator, &b.constant));
        }
    }

    #[test]
    fn rejects_bad_files() {
        assert!(parse_chart_file("theta = [2, 3]\ncharts = []").is_err());
        assert!(
            parse_chart_file("theta = [0, 3]\n[[charts]]\nconstant=[1,0]\ndenominator=0\nnumerator=[[[3,0,0,0],[1,0]]]").is_err()
        );
        assert!(
            parse_chart_file("theta = [2, 3]\n[[charts]]\nconstant=[1,0]\ndenominator=0\nnumerator=[[[2,0,0,0],[1,0]]]").is_err()
        );
    }
}
