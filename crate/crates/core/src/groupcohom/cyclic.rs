//! Cohomology of a cyclic group `⟨τ⟩` of order n via the periodic resolution
//! with `Δ = 1 − τ` and `N = 1 + τ + … + τ^{n−1}`.

use super::bar::Cochain;
use super::module::{GIntModule, RelationLattice};
use super::{CohomologyError, FiniteGroup};
use crate::exactlin::{lattice_basis, subquotient_structure, AbelianGroupStructure, IntMatrix, Subquotient};
use num_bigint::BigInt;

#[derive(Clone, Debug)]
pub struct CyclicCohomology {
    pub degree: usize,
    pub structure: AbelianGroupStructure,
    /// One module vector per generator.
    pub representatives: Vec<Vec<BigInt>>,
    subquotient: Subquotient,
}

impl CyclicCohomology {
    pub fn classify(&self, v: &[BigInt]) -> Result<Vec<BigInt>, CohomologyError> {
        Ok(self.subquotient.classify(v)?)
    }
}

fn norm_element(tau: &IntMatrix, n: usize) -> IntMatrix {
    let mut acc = IntMatrix::zeros(tau.rows(), tau.cols());
    let mut p = IntMatrix::identity(tau.rows());
    for _ in 0..n {
        acc = acc.add(&p);
        p = p.mul(tau);
    }
    acc
}

pub fn cyclic_cohomology(
    tau: &IntMatrix,
    order: usize,
    relations: &[Vec<BigInt>],
    degree: usize,
) -> Result<CyclicCohomology, CohomologyError> {
    let r = tau.rows();
    if tau.cols() != r || order == 0 {
        return Err(CohomologyError::ShapeMismatch);
    }
    let rel = RelationLattice::new(r, relations.to_vec())?;
    let diff = tau.pow(order).sub(&IntMatrix::identity(r));
    if !(0..r).all(|j| rel.contains(&diff.column(j))) {
        return Err(CohomologyError::OrderMismatch(order));
    }
    let delta = IntMatrix::identity(r).sub(tau);
    let norm = norm_element(tau, order);
    let (kernel_of, image_of) = match degree {
        0 => (&delta, None),
        d if d % 2 == 1 => (&norm, Some(&delta)),
        _ => (&delta, Some(&norm)),
    };
    let z = GIntModule::preimage_lattice(kernel_of, &rel);
    let mut b = relations.to_vec();
    if let Some(im) = image_of {
        b.extend(im.to_columns());
    }
    let b = lattice_basis(&b, r);
    let sq = subquotient_structure(&z, &b, r)?;
    Ok(CyclicCohomology { degree, structure: sq.structure.clone(), representatives: sq.representatives.clone(), subquotient: sq })
}

/// The cyclic group with element `k` standing for `τ^k`, and the module it acts on.
pub fn cyclic_module(
    tau: &IntMatrix,
    order: usize,
    relations: &[Vec<BigInt>],
) -> Result<(FiniteGroup, GIntModule), CohomologyError> {
    let group = FiniteGroup::cyclic(order);
    let action = (0..order).map(|k| tau.pow(k)).collect();
    let module = GIntModule::new(&group, tau.rows(), relations.to_vec(), action)?;
    Ok((group, module))
}

/// Bar 1-cocycle of the cyclic class `m ∈ ker N`: `c(τ^k) = (1 + τ + … + τ^{k−1}) m`.
pub fn cyclic_one_cocycle(group: &FiniteGroup, module: &GIntModule, m: &[BigInt]) -> Cochain {
    let n = group.order();
    let mut c = Cochain::zero(1, n, module.rank());
    let mut acc = vec![BigInt::from(0); module.rank()];
    let mut power = m.to_vec();
    for k in 1..n {
        for (a, p) in acc.iter_mut().zip(&power) {
            *a += p;
        }
        c.set(&[k], acc.clone());
        power = module.act(1, &power);
    }
    c
}

/// Bar 2-cocycle of the cyclic class `r ∈ ker Δ`: `u(τ^i, τ^j) = r` if `i + j ≥ n`, else 0.
pub fn cyclic_two_cocycle(group: &FiniteGroup, rank: usize, r: &[BigInt]) -> Cochain {
    let n = group.order();
    let mut u = Cochain::zero(2, n, rank);
    for i in 1..n {
        for j in 1..n {
            if i + j >= n {
                u.set(&[i, j], r.to_vec());
            }
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::bigvec;
    use crate::groupcohom::cohomology;

    #[test]
    fn trivial_action_degree_two() {
        let t = IntMatrix::identity(1);
        let h = cyclic_cohomology(&t, 3, &[], 2).unwrap();
        assert_eq!(h.structure, AbelianGroupStructure::torsion(&[3]));
    }

    #[test]
    fn order_mismatch_detected() {
        let t = IntMatrix::from_rows_i64(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]);
        assert!(matches!(cyclic_cohomology(&t, 2, &[], 1), Err(CohomologyError::OrderMismatch(2))));
    }

    #[test]
    fn agrees_with_bar_complex_on_augmentation_quotient() {
        // Z[C3] / (1 + τ + τ²): H¹ = Z/3
        let t = IntMatrix::from_rows_i64(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        let rels = vec![bigvec(&[1, 1, 1])];
        let (g, m) = cyclic_module(&t, 3, &rels).unwrap();
        for d in 0..3 {
            let cyc = cyclic_cohomology(&t, 3, &rels, d).unwrap();
            let bar = cohomology(&g, &m, d).unwrap();
            assert_eq!(cyc.structure, bar.structure, "degree {d}");
        }
    }
}
