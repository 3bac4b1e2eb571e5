//! The 27 lines on `a x³ + b y³ + c z³ + d t³ = 0`, the Galois action on
//! them, the geometric Picard lattice, and `H¹(G, Pic X̄)`.
//!
//! With `α_b = ∛(b/a)`, `α_c = ∛(c/a)`, `α_d = ∛(d/a)` and `r, s ∈ ℤ/3`:
//!
//! | family | first plane          | second plane                 |
//! |--------|----------------------|------------------------------|
//! | P1     | `x + ζ^r α_b y = 0`  | `z + ζ^s (α_d/α_c) t = 0`    |
//! | P2     | `x + ζ^r α_c z = 0`  | `y + ζ^s (α_d/α_b) t = 0`    |
//! | P3     | `x + ζ^r α_d t = 0`  | `y + ζ^s (α_c/α_b) z = 0`    |
//!
//! `g = (g₁, g₂, g₃) ∈ (ℤ/3)³` multiplies `α_b, α_c, α_d` by `ζ^{g₁}, ζ^{g₂}, ζ^{g₃}`.

use crate::eisenstein::factor_u64;
use crate::exactlin::{bigvec, kernel_basis, rank, smith_normal_form, AbelianGroupStructure, IntMatrix};
use crate::groupcohom::{
    cohomology, invariants_module, restrict_to_subgroup, Cochain, CohomologyError, CohomologyResult, FiniteGroup, GIntModule,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinesError {
    #[error("coefficients must be nonzero")]
    ZeroCoefficient,
    #[error("coefficient {0} is too large to factor by trial division")]
    TooLarge(i64),
    #[error("cannot parse coefficients: {0}")]
    Parse(String),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// Largest coefficient accepted (trial division bound).
pub const MAX_COEFFICIENT: i64 = 1_000_000_000_000;

/// `(a, b, c, d)` of the surface `a x³ + b y³ + c z³ + d t³ = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceCoefficients {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl SurfaceCoefficients {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, LinesError> {
        for x in [a, b, c, d] {
            if x == 0 {
                return Err(LinesError::ZeroCoefficient);
            }
            if x.unsigned_abs() > MAX_COEFFICIENT as u64 {
                return Err(LinesError::TooLarge(x));
            }
        }
        Ok(SurfaceCoefficients { a, b, c, d })
    }

    pub fn as_array(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

impl fmt::Display for SurfaceCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for SurfaceCoefficients {
    type Err = LinesError;
    /// `"5,9,10,12"`, optionally parenthesized.
    fn from_str(s: &str) -> Result<Self, LinesError> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let v: Vec<i64> = t
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| LinesError::Parse(s.to_string())))
            .collect::<Result<_, _>>()?;
        if v.len() != 4 {
            return Err(LinesError::Parse(s.to_string()));
        }
        SurfaceCoefficients::new(v[0], v[1], v[2], v[3])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Pairing {
    P1,
    P2,
    P3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LineLabel {
    pub pairing: Pairing,
    pub r: u8,
    pub s: u8,
}

impl LineLabel {
    pub fn index(&self) -> usize {
        9 * self.pairing as usize + 3 * self.r as usize + self.s as usize
    }

    pub fn from_index(i: usize) -> Self {
        let pairing = [Pairing::P1, Pairing::P2, Pairing::P3][i / 9];
        LineLabel { pairing, r: (i / 3 % 3) as u8, s: (i % 3) as u8 }
    }

    pub fn all() -> Vec<LineLabel> {
        (0..27).map(Self::from_index).collect()
    }

    /// Image under `g = (g₁, g₂, g₃)`.
    pub fn act(&self, g: [u8; 3]) -> LineLabel {
        let (g1, g2, g3) = (g[0] as i32, g[1] as i32, g[2] as i32);
        let (dr, ds) = match self.pairing {
            Pairing::P1 => (g1, g3 - g2),
            Pairing::P2 => (g2, g3 - g1),
            Pairing::P3 => (g3, g2 - g1),
        };
        LineLabel {
            pairing: self.pairing,
            r: (self.r as i32 + dr).rem_euclid(3) as u8,
            s: (self.s as i32 + ds).rem_euclid(3) as u8,
        }
    }
}

impl fmt::Display for LineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({},{})", self.pairing, self.r, self.s)
    }
}

/// Whether two distinct lines meet.
pub fn lines_meet(x: LineLabel, y: LineLabel) -> bool {
    if x == y {
        return false;
    }
    let (x, y) = if x.pairing <= y.pairing { (x, y) } else { (y, x) };
    let (r, s, r2, s2) = (x.r as i32, x.s as i32, y.r as i32, y.s as i32);
    let eq = |u: i32, v: i32| (u - v).rem_euclid(3) == 0;
    match (x.pairing, y.pairing) {
        (p, q) if p == q => r == r2 || s == s2,
        (Pairing::P1, Pairing::P2) => eq(r - s, r2 - s2),
        (Pairing::P1, Pairing::P3) => eq(r2 - s2, r + s),
        (Pairing::P2, Pairing::P3) => eq(r + s, r2 + s2),
        _ => unreachable!("pairs are ordered"),
    }
}

#[derive(Clone, Debug)]
pub struct LineConfiguration {
    pub labels: Vec<LineLabel>,
    /// Intersection numbers: −1 on the diagonal, 1 for meeting lines, else 0.
    pub gram: IntMatrix,
}

impl LineConfiguration {
    pub fn meets(&self, i: usize, j: usize) -> bool {
        i != j && self.gram[(i, j)].is_one()
    }

    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        (0..27).filter(|&j| self.meets(i, j)).collect()
    }
}

pub fn line_configuration() -> LineConfiguration {
    let labels = LineLabel::all();
    let mut gram = IntMatrix::zeros(27, 27);
    for (i, x) in labels.iter().enumerate() {
        for (j, y) in labels.iter().enumerate() {
            gram[(i, j)] = BigInt::from(if i == j { -1 } else { lines_meet(*x, *y) as i64 });
        }
    }
    LineConfiguration { labels, gram }
}

/// Exponents mod 3 of `|n / m|` at each prime.
fn cube_class(num: &[i64], den: &[i64]) -> BTreeMap<u64, u8> {
    let mut e: BTreeMap<u64, i64> = BTreeMap::new();
    for (xs, sign) in [(num, 1), (den, -1)] {
        for &x in xs {
            for (p, k) in factor_u64(x.unsigned_abs()) {
                *e.entry(p).or_default() += sign * k as i64;
            }
        }
    }
    e.into_iter().filter_map(|(p, k)| (k.rem_euclid(3) != 0).then_some((p, k.rem_euclid(3) as u8))).collect()
}

/// Whether `∏ num / ∏ den` is a cube in ℚ.
pub fn is_rational_cube(num: &[i64], den: &[i64]) -> bool {
    cube_class(num, den).is_empty()
}

#[derive(Clone, Debug)]
pub struct GaloisData {
    /// 𝔽₃-basis of relations `λ` with `(b/a)^{λ₁}(c/a)^{λ₂}(d/a)^{λ₃}` a cube.
    pub relations: Vec<[u8; 3]>,
    pub group: FiniteGroup,
    /// `g` vectors, identity first.
    pub elements: Vec<[u8; 3]>,
    /// `line_perms[g][i]` = index of the image of line i.
    pub line_perms: Vec<Vec<usize>>,
}

impl GaloisData {
    /// Elements `g` with `λ·g ≡ 0 (mod 3)`: those fixing `∏ α^λ`.
    pub fn subgroup_fixing(&self, lambda: [i64; 3]) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| {
                let g = self.elements[i];
                (0..3).map(|k| lambda[k] * g[k] as i64).sum::<i64>().rem_euclid(3) == 0
            })
            .collect()
    }
}

fn all_vectors() -> impl Iterator<Item = [u8; 3]> {
    (0..27u8).map(|n| [n / 9, n / 3 % 3, n % 3])
}

fn dot3(x: [u8; 3], y: [u8; 3]) -> u8 {
    ((0..3).map(|i| x[i] as u32 * y[i] as u32).sum::<u32>() % 3) as u8
}

pub fn galois_data(coeffs: &SurfaceCoefficients) -> Result<GaloisData, LinesError> {
    let SurfaceCoefficients { a, b, c, d } = *coeffs;
    let ratios = [cube_class(&[b], &[a]), cube_class(&[c], &[a]), cube_class(&[d], &[a])];
    let combine = |lam: [u8; 3]| -> bool {
        let mut e: BTreeMap<u64, u32> = BTreeMap::new();
        for (k, r) in ratios.iter().enumerate() {
            for (p, x) in r {
                *e.entry(*p).or_default() += lam[k] as u32 * *x as u32;
            }
        }
        e.values().all(|x| x % 3 == 0)
    };
    let rel_all: Vec<[u8; 3]> = all_vectors().filter(|&l| combine(l)).collect();
    let elements: Vec<[u8; 3]> = all_vectors().filter(|&g| rel_all.iter().all(|&l| dot3(l, g) == 0)).collect();
    let relations = f3_basis(&rel_all);
    let gens = f3_basis(&elements);
    let n = elements.len();
    let pos = |g: [u8; 3]| elements.iter().position(|&h| h == g).expect("closed under addition");
    let add = |x: [u8; 3], y: [u8; 3]| [(x[0] + y[0]) % 3, (x[1] + y[1]) % 3, (x[2] + y[2]) % 3];
    let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| pos(add(elements[i], elements[j]))).collect()).collect();
    let group = FiniteGroup::from_table(table, gens.iter().map(|&g| pos(g)).collect())?;
    let labels = LineLabel::all();
    let line_perms = elements.iter().map(|&g| labels.iter().map(|l| l.act(g).index()).collect()).collect();
    Ok(GaloisData { relations, group, elements, line_perms })
}

/// Greedy 𝔽₃-basis of the span of `vs` (zero vector skipped).
fn f3_basis(vs: &[[u8; 3]]) -> Vec<[u8; 3]> {
    let mut basis: Vec<[u8; 3]> = Vec::new();
    let span = |basis: &[[u8; 3]]| -> Vec<[u8; 3]> {
        let mut out = vec![[0u8; 3]];
        for b in basis {
            let mut next = Vec::new();
            for k in 0..3u8 {
                for x in &out {
                    next.push([(x[0] + k * b[0]) % 3, (x[1] + k * b[1]) % 3, (x[2] + k * b[2]) % 3]);
                }
            }
            out = next;
        }
        out
    };
    for &v in vs {
        if !span(&basis).contains(&v) {
            basis.push(v);
        }
    }
    basis
}

/// `Pic X̄ = ℤ²⁷ / ker(gram)` with the Galois action.
#[derive(Clone, Debug)]
pub struct PicardPresentation {
    /// Permutation module on the 27 lines.
    pub ambient: GIntModule,
    /// Integer kernel of the intersection matrix (20 vectors).
    pub relations: Vec<Vec<BigInt>>,
    /// Free rank-7 module isomorphic to `Pic X̄`.
    pub quotient: GIntModule,
    /// `7 × 27`, lines to Picard coordinates.
    pub projection: IntMatrix,
    /// `27 × 7`, a right inverse of `projection`.
    pub section: IntMatrix,
    /// Hyperplane class `P1(0,0) + P1(0,1) + P1(0,2)` in line coordinates.
    pub hyperplane: Vec<BigInt>,
}

impl PicardPresentation {
    pub fn hyperplane_class(&self) -> Vec<BigInt> {
        self.projection.mul_vec(&self.hyperplane)
    }

    /// Lifts a cocycle with values in the rank-7 quotient to line coordinates.
    pub fn lift_cocycle(&self, c: &Cochain) -> Cochain {
        let values = c.values.iter().map(|v| self.section.mul_vec(v)).collect();
        Cochain { degree: c.degree, group_order: c.group_order, rank: 27, values }
    }
}

pub fn picard_presentation(config: &LineConfiguration, galois: &GaloisData) -> Result<PicardPresentation, LinesError> {
    let ambient = GIntModule::permutation(&galois.group, &galois.line_perms)?;
    let relations = kernel_basis(&config.gram);
    debug_assert_eq!(relations.len(), 20);
    let r = IntMatrix::from_columns(&relations, 27);
    let snf = smith_normal_form(&r);
    let k = snf.rank();
    let free = 27 - k;
    let projection = {
        let mut p = IntMatrix::zeros(free, 27);
        for i in 0..free {
            for j in 0..27 {
                p[(i, j)] = snf.u[(k + i, j)].clone();
            }
        }
        p
    };
    let section = {
        let ui = snf.u_inverse();
        let mut s = IntMatrix::zeros(27, free);
        for i in 0..27 {
            for j in 0..free {
                s[(i, j)] = ui[(i, k + j)].clone();
            }
        }
        s
    };
    let action = (0..galois.group.order()).map(|g| projection.mul(ambient.action(g)).mul(&section)).collect();
    let quotient = GIntModule::new(&galois.group, free, vec![], action)?;
    let mut hyperplane = vec![BigInt::zero(); 27];
    for s in 0..3 {
        hyperplane[LineLabel { pairing: Pairing::P1, r: 0, s }.index()] = BigInt::one();
    }
    Ok(PicardPresentation { ambient, relations, quotient, projection, section, hyperplane })
}

/// `H¹(G, Pic X̄)` for the given coefficients.
#[derive(Clone, Debug)]
pub struct PicardH1 {
    pub galois: GaloisData,
    pub picard: PicardPresentation,
    pub result: CohomologyResult,
    /// Generators lifted to 27-dimensional line coordinates.
    pub line_cocycles: Vec<Cochain>,
}

pub fn h1_picard(coeffs: &SurfaceCoefficients) -> Result<PicardH1, LinesError> {
    let config = line_configuration();
    let galois = galois_data(coeffs)?;
    let picard = picard_presentation(&config, &galois)?;
    let result = cohomology(&galois.group, &picard.quotient, 1)?;
    let line_cocycles = result.generators.iter().map(|c| picard.lift_cocycle(c)).collect();
    Ok(PicardH1 { galois, picard, result, line_cocycles })
}

/// H¹ recomputed through a subgroup `H ⊂ G`: over `G/H` acting on `Pic^H`,
/// and over `H` itself. When the latter vanishes, inflation makes the former
/// agree with `H¹(G, Pic)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InflationCheck {
    pub subgroup_order: usize,
    pub quotient: AbelianGroupStructure,
    pub restricted: AbelianGroupStructure,
}

pub fn h1_through_subgroup(h1: &PicardH1, subgroup: &[usize]) -> Result<InflationCheck, LinesError> {
    let (group, module) = (&h1.galois.group, &h1.picard.quotient);
    let inv = invariants_module(group, module, subgroup)?;
    let quotient = cohomology(&inv.quotient, &inv.module, 1)?.structure;
    let (h, res) = restrict_to_subgroup(group, module, subgroup)?;
    let restricted = cohomology(&h, &res, 1)?.structure;
    Ok(InflationCheck { subgroup_order: subgroup.len(), quotient, restricted })
}

/// The classical table: `0` if one of `ab/cd, ac/bd, ad/bc` is a cube,
/// `(ℤ/3)²` if exactly three of the pairwise ratios are cubes, else `ℤ/3`.
pub fn table_classification(coeffs: &SurfaceCoefficients) -> AbelianGroupStructure {
    let SurfaceCoefficients { a, b, c, d } = *coeffs;
    if is_rational_cube(&[a, b], &[c, d]) || is_rational_cube(&[a, c], &[b, d]) || is_rational_cube(&[a, d], &[b, c]) {
        return AbelianGroupStructure::trivial();
    }
    let v = [a, b, c, d];
    let cubes = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| is_rational_cube(&[v[i]], &[v[j]])).count();
    if cubes == 3 {
        AbelianGroupStructure::torsion(&[3, 3])
    } else {
        AbelianGroupStructure::torsion(&[3])
    }
}

/// Rank of the intersection matrix (7 for a valid configuration).
pub fn gram_rank(config: &LineConfiguration) -> usize {
    rank(&config.gram)
}

/// `bigvec` of the line indicator.
pub fn line_vector(label: LineLabel) -> Vec<BigInt> {
    let mut v = vec![0i64; 27];
    v[label.index()] = 1;
    bigvec(&v)
}
