//! Normalized bar complex. Cochains vanish on tuples containing the identity;
//! matrices work in normalized coordinates (tuples of non-identity elements).

use super::module::{GIntModule, Lifter, ModuleSES, RelationLattice};
use super::{CohomologyError, FiniteGroup};
use crate::exactlin::{lattice_basis, subquotient_structure, AbelianGroupStructure, IntMatrix, Subquotient};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A d-cochain: one ambient vector per d-tuple of group elements, stored for
/// every tuple (index `Σ gᵢ n^(d-1-i)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub group_order: usize,
    pub rank: usize,
    pub values: Vec<Vec<BigInt>>,
}

impl Cochain {
    pub fn zero(degree: usize, group_order: usize, rank: usize) -> Self {
        let len = group_order.pow(degree as u32);
        Cochain { degree, group_order, rank, values: vec![vec![BigInt::zero(); rank]; len] }
    }

    pub fn tuple_index(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.degree);
        tuple.iter().fold(0, |acc, &g| acc * self.group_order + g)
    }

    pub fn tuple_of(&self, mut index: usize) -> Vec<usize> {
        let mut t = vec![0; self.degree];
        for slot in t.iter_mut().rev() {
            *slot = index % self.group_order;
            index /= self.group_order;
        }
        t
    }

    pub fn value(&self, tuple: &[usize]) -> &[BigInt] {
        &self.values[self.tuple_index(tuple)]
    }

    pub fn set(&mut self, tuple: &[usize], v: Vec<BigInt>) {
        let i = self.tuple_index(tuple);
        self.values[i] = v;
    }

    pub fn is_normalized(&self) -> bool {
        (0..self.values.len()).all(|i| !self.tuple_of(i).contains(&0) || self.values[i].iter().all(Zero::is_zero))
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!((self.degree, self.group_order, self.rank), (other.degree, other.group_order, other.rank));
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        Cochain { values, ..self.clone() }
    }

    pub fn scale(&self, k: &BigInt) -> Cochain {
        let values = self.values.iter().map(|v| v.iter().map(|x| x * k).collect()).collect();
        Cochain { values, ..self.clone() }
    }

    /// Coordinates on normalized tuples, concatenated.
    pub fn to_normalized_vector(&self) -> Result<Vec<BigInt>, CohomologyError> {
        if !self.is_normalized() {
            return Err(CohomologyError::NotNormalized);
        }
        let m = self.group_order - 1;
        let mut out = Vec::with_capacity(m.pow(self.degree as u32) * self.rank);
        for k in 0..m.pow(self.degree as u32) {
            let t = normalized_tuple(k, self.degree, self.group_order);
            out.extend_from_slice(self.value(&t));
        }
        Ok(out)
    }

    pub fn from_normalized_vector(v: &[BigInt], degree: usize, group_order: usize, rank: usize) -> Cochain {
        let mut c = Cochain::zero(degree, group_order, rank);
        let m = group_order - 1;
        assert_eq!(v.len(), m.pow(degree as u32) * rank);
        for k in 0..m.pow(degree as u32) {
            let t = normalized_tuple(k, degree, group_order);
            c.set(&t, v[k * rank..(k + 1) * rank].to_vec());
        }
        c
    }
}

/// k-th tuple of non-identity elements, in lexicographic order.
fn normalized_tuple(mut k: usize, degree: usize, n: usize) -> Vec<usize> {
    let m = n - 1;
    let mut t = vec![0; degree];
    for slot in t.iter_mut().rev() {
        *slot = k % m + 1;
        k /= m;
    }
    t
}

fn normalized_index(t: &[usize], n: usize) -> Option<usize> {
    let m = n - 1;
    let mut acc = 0;
    for &g in t {
        if g == 0 {
            return None;
        }
        acc = acc * m + (g - 1);
    }
    Some(acc)
}

fn check_shape(group: &FiniteGroup, module: &GIntModule, c: &Cochain) -> Result<(), CohomologyError> {
    if c.group_order != group.order() || c.rank != module.rank() || c.values.len() != group.order().pow(c.degree as u32) {
        return Err(CohomologyError::ShapeMismatch);
    }
    Ok(())
}

/// `(∂c)(g₁,…,g_{d+1}) = g₁·c(g₂,…) + Σ (−1)ⁱ c(…, gᵢg_{i+1}, …) + (−1)^{d+1} c(g₁,…,g_d)`
pub fn coboundary(group: &FiniteGroup, module: &GIntModule, c: &Cochain) -> Result<Cochain, CohomologyError> {
    check_shape(group, module, c)?;
    let d = c.degree;
    let mut out = Cochain::zero(d + 1, group.order(), module.rank());
    for idx in 0..out.values.len() {
        let t = out.tuple_of(idx);
        let mut acc = module.act(t[0], c.value(&t[1..]));
        for i in 1..=d {
            let mut s = Vec::with_capacity(d);
            s.extend_from_slice(&t[..i - 1]);
            s.push(group.mul(t[i - 1], t[i]));
            s.extend_from_slice(&t[i + 1..]);
            let v = c.value(&s);
            for (a, x) in acc.iter_mut().zip(v) {
                if i % 2 == 1 {
                    *a -= x;
                } else {
                    *a += x;
                }
            }
        }
        let v = c.value(&t[..d]);
        for (a, x) in acc.iter_mut().zip(v) {
            if d.is_multiple_of(2) {
                *a -= x;
            } else {
                *a += x;
            }
        }
        out.values[idx] = acc;
    }
    Ok(out)
}

fn add_block(m: &mut IntMatrix, r0: usize, c0: usize, block: &IntMatrix, sign: i64) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let x = &block[(i, j)];
            if !x.is_zero() {
                m[(r0 + i, c0 + j)] += x * sign;
            }
        }
    }
}

fn add_identity(m: &mut IntMatrix, r0: usize, c0: usize, rank: usize, sign: i64) {
    for i in 0..rank {
        m[(r0 + i, c0 + i)] += sign;
    }
}

/// Rows of the differential `C^d → C^{d+1}` for the given (d+1)-tuples.
fn differential_rows(group: &FiniteGroup, module: &GIntModule, d: usize, tuples: &[Vec<usize>]) -> IntMatrix {
    let n = group.order();
    let r = module.rank();
    let cols = (n - 1).pow(d as u32) * r;
    let mut m = IntMatrix::zeros(tuples.len() * r, cols);
    for (row, t) in tuples.iter().enumerate() {
        let r0 = row * r;
        if let Some(j) = normalized_index(&t[1..], n) {
            add_block(&mut m, r0, j * r, module.action(t[0]), 1);
        }
        for i in 1..=d {
            let mut s = Vec::with_capacity(d);
            s.extend_from_slice(&t[..i - 1]);
            s.push(group.mul(t[i - 1], t[i]));
            s.extend_from_slice(&t[i + 1..]);
            if let Some(j) = normalized_index(&s, n) {
                add_identity(&mut m, r0, j * r, r, if i % 2 == 1 { -1 } else { 1 });
            }
        }
        if let Some(j) = normalized_index(&t[..d], n) {
            add_identity(&mut m, r0, j * r, r, if d.is_multiple_of(2) { -1 } else { 1 });
        }
    }
    m
}

/// Matrix of `∂: C^d → C^{d+1}` in normalized coordinates.
pub fn bar_differential(group: &FiniteGroup, module: &GIntModule, d: usize) -> IntMatrix {
    let n = group.order();
    let tuples: Vec<Vec<usize>> = (0..(n - 1).pow(d as u32 + 1)).map(|k| normalized_tuple(k, d + 1, n)).collect();
    differential_rows(group, module, d, &tuples)
}

/// Rows of `∂` whose joint kernel equals the kernel of the full differential.
///
/// In degrees 0 and 1 it is enough to test against a generating set: a
/// 1-cochain with `c(gs) = c(g) + g·c(s)` for every generator `s` is a cocycle
/// by induction on word length (and the relation lattice is stable).
fn cocycle_condition(group: &FiniteGroup, module: &GIntModule, d: usize) -> (IntMatrix, usize) {
    let n = group.order();
    let gens = group.generators();
    let tuples: Vec<Vec<usize>> = match d {
        0 => gens.iter().map(|&s| vec![s]).collect(),
        1 => (1..n).flat_map(|g| gens.iter().map(move |&s| vec![g, s])).collect(),
        _ => (0..(n - 1).pow(d as u32 + 1)).map(|k| normalized_tuple(k, d + 1, n)).collect(),
    };
    (differential_rows(group, module, d, &tuples), tuples.len())
}

/// Block-diagonal relation columns for `blocks` copies of the relation lattice.
fn relation_blocks(module: &GIntModule, blocks: usize) -> Vec<Vec<BigInt>> {
    let r = module.rank();
    let mut out = Vec::new();
    for b in 0..blocks {
        for rel in module.relations() {
            let mut v = vec![BigInt::zero(); blocks * r];
            v[b * r..(b + 1) * r].clone_from_slice(rel);
            out.push(v);
        }
    }
    out
}

/// `Hⁱ(G, M)` with generators as explicit cocycles.
#[derive(Clone, Debug)]
pub struct CohomologyResult {
    pub degree: usize,
    pub structure: AbelianGroupStructure,
    pub generators: Vec<Cochain>,
    subquotient: Subquotient,
    group_order: usize,
    rank: usize,
}

impl CohomologyResult {
    /// Coordinates of the class of a cocycle on [`Self::generators`].
    pub fn classify(&self, c: &Cochain) -> Result<Vec<BigInt>, CohomologyError> {
        if c.degree != self.degree || c.group_order != self.group_order || c.rank != self.rank {
            return Err(CohomologyError::ShapeMismatch);
        }
        let v = c.to_normalized_vector()?;
        self.subquotient.classify(&v).map_err(|_| CohomologyError::NotACocycle)
    }
}

pub fn cohomology(group: &FiniteGroup, module: &GIntModule, degree: usize) -> Result<CohomologyResult, CohomologyError> {
    let n = group.order();
    let r = module.rank();
    let dim = (n - 1).pow(degree as u32) * r;
    let (cond, blocks) = cocycle_condition(group, module, degree);
    let rel_lattice = RelationLattice::new(blocks * r, relation_blocks(module, blocks))?;
    let z = GIntModule::preimage_lattice(&cond, &rel_lattice);
    let mut b: Vec<Vec<BigInt>> = relation_blocks(module, (n - 1).pow(degree as u32));
    if degree > 0 {
        let prev = bar_differential(group, module, degree - 1);
        b.extend(prev.to_columns());
    }
    let b = lattice_basis(&b, dim);
    let sq = subquotient_structure(&z, &b, dim)?;
    let generators = sq.representatives.iter().map(|v| Cochain::from_normalized_vector(v, degree, n, r)).collect();
    Ok(CohomologyResult { degree, structure: sq.structure.clone(), generators, subquotient: sq, group_order: n, rank: r })
}

fn is_cocycle(group: &FiniteGroup, module: &GIntModule, c: &Cochain) -> Result<bool, CohomologyError> {
    let dc = coboundary(group, module, c)?;
    Ok(dc.values.iter().all(|v| module.is_relation(v)))
}

/// Returns `b` with `∂b ≡ c` (mod relations), or `None` if `c` is a cocycle
/// that is not a coboundary. Errors if `c` is not a cocycle.
pub fn is_coboundary(group: &FiniteGroup, module: &GIntModule, c: &Cochain) -> Result<Option<Cochain>, CohomologyError> {
    check_shape(group, module, c)?;
    if c.degree == 0 {
        return Err(CohomologyError::InvalidDegree(0));
    }
    let v = c.to_normalized_vector()?;
    if !is_cocycle(group, module, c)? {
        return Err(CohomologyError::NotACocycle);
    }
    let n = group.order();
    let r = module.rank();
    let blocks = (n - 1).pow(c.degree as u32);
    let lattice = RelationLattice::new(blocks * r, relation_blocks(module, blocks))?;
    let lifter = Lifter::new(&bar_differential(group, module, c.degree - 1), &lattice);
    Ok(lifter.lift(&v).map(|b| Cochain::from_normalized_vector(&b, c.degree - 1, n, r)))
}

/// `δ: Hⁱ(G, C) → H^{i+1}(G, A)` on a cocycle: lift to B, take `∂`, pull back to A.
pub fn connecting_homomorphism(group: &FiniteGroup, ses: &ModuleSES, c: &Cochain) -> Result<Cochain, CohomologyError> {
    check_shape(group, &ses.c, c)?;
    if !c.is_normalized() {
        return Err(CohomologyError::NotNormalized);
    }
    if !is_cocycle(group, &ses.c, c)? {
        return Err(CohomologyError::NotACocycle);
    }
    let up = Lifter::new(&ses.b_to_c, ses.c.relation_lattice());
    let mut lifted = Cochain::zero(c.degree, group.order(), ses.b.rank());
    for (i, v) in c.values.iter().enumerate() {
        lifted.values[i] = up.lift(v).ok_or(CohomologyError::LiftFailure)?;
    }
    let db = coboundary(group, &ses.b, &lifted)?;
    let back = Lifter::new(&ses.a_to_b, ses.b.relation_lattice());
    let mut out = Cochain::zero(c.degree + 1, group.order(), ses.a.rank());
    for (i, v) in db.values.iter().enumerate() {
        out.values[i] = back.lift(v).ok_or(CohomologyError::LiftFailure)?;
    }
    Ok(out)
}

/// `e_j` in a module of the given rank.
pub fn unit_vector(rank: usize, j: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); rank];
    v[j] = BigInt::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::bigvec;

    fn sign_module(g: &FiniteGroup) -> GIntModule {
        // Z/2 acting on Z by -1
        let act = vec![IntMatrix::identity(1), IntMatrix::from_rows_i64(&[vec![-1]])];
        GIntModule::new(g, 1, vec![], act).unwrap()
    }

    #[test]
    fn cyclic_group_trivial_coefficients() {
        let g = FiniteGroup::cyclic(3);
        let m = GIntModule::trivial(&g, 1);
        assert_eq!(cohomology(&g, &m, 0).unwrap().structure.free_rank, 1);
        assert!(cohomology(&g, &m, 1).unwrap().structure.is_trivial());
        assert_eq!(cohomology(&g, &m, 2).unwrap().structure, AbelianGroupStructure::torsion(&[3]));
    }

    #[test]
    fn sign_representation() {
        let g = FiniteGroup::cyclic(2);
        let m = sign_module(&g);
        assert!(cohomology(&g, &m, 0).unwrap().structure.is_trivial());
        assert_eq!(cohomology(&g, &m, 1).unwrap().structure, AbelianGroupStructure::torsion(&[2]));
        assert!(cohomology(&g, &m, 2).unwrap().structure.is_trivial());
    }

    #[test]
    fn square_of_differential_vanishes() {
        let g = FiniteGroup::cyclic(3);
        let m = GIntModule::trivial(&g, 2);
        let d0 = bar_differential(&g, &m, 0);
        let d1 = bar_differential(&g, &m, 1);
        let d2 = bar_differential(&g, &m, 2);
        assert!(d1.mul(&d0).is_zero());
        assert!(d2.mul(&d1).is_zero());
    }

    #[test]
    fn coboundary_check_on_z_mod_3() {
        let g = FiniteGroup::cyclic(3);
        let m = GIntModule::trivial(&g, 1);
        let mut u = Cochain::zero(2, 3, 1);
        for i in 1..3 {
            for j in 1..3 {
                if i + j >= 3 {
                    u.set(&[i, j], bigvec(&[1]));
                }
            }
        }
        assert!(is_coboundary(&g, &m, &u).unwrap().is_none());
        let tripled = u.scale(&BigInt::from(3));
        let b = is_coboundary(&g, &m, &tripled).unwrap().unwrap();
        assert_eq!(coboundary(&g, &m, &b).unwrap(), tripled);
    }
}
