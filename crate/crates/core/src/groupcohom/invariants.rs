use super::module::{GIntModule, RelationLattice};
use super::{CohomologyError, FiniteGroup};
use crate::exactlin::{lattice_basis, smith_normal_form, solve_with, IntMatrix};
use num_bigint::BigInt;

/// `M^H` as a module over `G/H`.
#[derive(Clone, Debug)]
pub struct InvariantsModule {
    pub quotient: FiniteGroup,
    /// Coset index of each element of G.
    pub coset_of: Vec<usize>,
    /// Smallest element of each coset.
    pub coset_reps: Vec<usize>,
    pub module: GIntModule,
    /// Columns are the chosen basis of `M^H` in ambient coordinates of M.
    pub inclusion: IntMatrix,
}

pub fn invariants_module(
    group: &FiniteGroup,
    module: &GIntModule,
    subgroup: &[usize],
) -> Result<InvariantsModule, CohomologyError> {
    let n = group.order();
    let mut in_h = vec![false; n];
    for &h in subgroup {
        if h >= n {
            return Err(CohomologyError::NotASubgroup("index out of range".into()));
        }
        in_h[h] = true;
    }
    if !in_h[0] {
        return Err(CohomologyError::NotASubgroup("identity missing".into()));
    }
    for &a in subgroup {
        for &b in subgroup {
            if !in_h[group.mul(a, b)] {
                return Err(CohomologyError::NotASubgroup("not closed under products".into()));
            }
        }
    }
    for g in 0..n {
        for &h in subgroup {
            if !in_h[group.mul(group.mul(g, h), group.inv(g))] {
                return Err(CohomologyError::NotNormal);
            }
        }
    }

    // cosets gH, numbered by their smallest element
    let mut coset_of = vec![usize::MAX; n];
    let mut coset_reps = Vec::new();
    for g in 0..n {
        if coset_of[g] == usize::MAX {
            let id = coset_reps.len();
            coset_reps.push(g);
            for &h in subgroup {
                coset_of[group.mul(g, h)] = id;
            }
        }
    }
    let q = coset_reps.len();
    let table: Vec<Vec<usize>> =
        (0..q).map(|a| (0..q).map(|b| coset_of[group.mul(coset_reps[a], coset_reps[b])]).collect()).collect();
    let mut qgens: Vec<usize> = group.generators().iter().map(|&s| coset_of[s]).filter(|&c| c != 0).collect();
    qgens.sort_unstable();
    qgens.dedup();
    let quotient = FiniteGroup::from_table(table, qgens)?;

    // M^H = {m : (h − 1) m ∈ R for all h ∈ H}
    let r = module.rank();
    let hs: Vec<usize> = subgroup.iter().copied().filter(|&h| h != 0).collect();
    let mut stacked = IntMatrix::zeros(hs.len() * r, r);
    for (k, &h) in hs.iter().enumerate() {
        stacked.set_block(k * r, 0, &module.action(h).sub(&IntMatrix::identity(r)));
    }
    let mut blocks = Vec::new();
    for k in 0..hs.len() {
        for rel in module.relations() {
            let mut v = vec![BigInt::from(0); hs.len() * r];
            v[k * r..(k + 1) * r].clone_from_slice(rel);
            blocks.push(v);
        }
    }
    let target = RelationLattice::new(hs.len() * r, blocks)?;
    let basis = lattice_basis(&GIntModule::preimage_lattice(&stacked, &target), r);
    let inclusion = IntMatrix::from_columns(&basis, r);
    let k = basis.len();
    let snf = smith_normal_form(&inclusion);
    let coords = |v: &[BigInt]| -> Result<Vec<BigInt>, CohomologyError> {
        solve_with(&snf, v)
            .map(|s| s.particular)
            .ok_or_else(|| CohomologyError::InvalidModule("vector outside the invariant lattice".into()))
    };
    let relations = module.relations().iter().map(|rel| coords(rel)).collect::<Result<Vec<_>, _>>()?;
    let mut action = Vec::with_capacity(q);
    for &g in &coset_reps {
        let mut a = IntMatrix::zeros(k, k);
        for (j, b) in basis.iter().enumerate() {
            let img = coords(&module.act(g, b))?;
            for i in 0..k {
                a[(i, j)] = img[i].clone();
            }
        }
        action.push(a);
    }
    let module = GIntModule::new(&quotient, k, relations, action)?;
    Ok(InvariantsModule { quotient, coset_of, coset_reps, module, inclusion })
}

/// `M` regarded as a module over the subgroup `H`, with `H` renumbered in the
/// order given (identity first).
pub fn restrict_to_subgroup(
    group: &FiniteGroup,
    module: &GIntModule,
    subgroup: &[usize],
) -> Result<(FiniteGroup, GIntModule), CohomologyError> {
    if subgroup.first() != Some(&0) {
        return Err(CohomologyError::NotASubgroup("identity must come first".into()));
    }
    let pos = |g: usize| subgroup.iter().position(|&h| h == g);
    let mut table = Vec::with_capacity(subgroup.len());
    for &a in subgroup {
        let row = subgroup
            .iter()
            .map(|&b| pos(group.mul(a, b)).ok_or_else(|| CohomologyError::NotASubgroup("not closed under products".into())))
            .collect::<Result<Vec<_>, _>>()?;
        table.push(row);
    }
    let h = FiniteGroup::from_table(table, (1..subgroup.len()).collect())?;
    let action = subgroup.iter().map(|&g| module.action(g).clone()).collect();
    let m = GIntModule::new(&h, module.rank(), module.relations().to_vec(), action)?;
    Ok((h, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupcohom::{cohomology, permutation_group_closure};

    #[test]
    fn regular_representation_of_z3_fixed_by_trivial_subgroup() {
        let (g, perms) = permutation_group_closure(&[vec![1, 2, 0]], 10).unwrap();
        let m = GIntModule::permutation(&g, &perms).unwrap();
        let inv = invariants_module(&g, &m, &[0]).unwrap();
        assert_eq!(inv.quotient.order(), 3);
        assert_eq!(inv.module.rank(), 3);
        // induced module: cohomologically trivial
        assert!(cohomology(&inv.quotient, &inv.module, 1).unwrap().structure.is_trivial());
    }

    #[test]
    fn whole_group_leaves_norm_line() {
        let (g, perms) = permutation_group_closure(&[vec![1, 2, 0]], 10).unwrap();
        let m = GIntModule::permutation(&g, &perms).unwrap();
        let inv = invariants_module(&g, &m, &[0, 1, 2]).unwrap();
        assert_eq!(inv.quotient.order(), 1);
        assert_eq!(inv.inclusion.to_columns(), vec![crate::exactlin::bigvec(&[1, 1, 1])]);
    }

    #[test]
    fn restriction_to_trivial_subgroup() {
        let (g, perms) = permutation_group_closure(&[vec![1, 2, 0]], 10).unwrap();
        let m = GIntModule::permutation(&g, &perms).unwrap();
        let (h, res) = restrict_to_subgroup(&g, &m, &[0]).unwrap();
        assert_eq!(h.order(), 1);
        assert_eq!(res.rank(), 3);
        assert!(restrict_to_subgroup(&g, &m, &[1]).is_err());
    }
}
