use super::{CohomologyError, FiniteGroup};
use crate::exactlin::{kernel_basis, smith_normal_form, solve_with, IntMatrix, SmithDecomposition};
use num_bigint::BigInt;
use num_traits::Zero;

/// A sublattice of `ℤⁿ` given by generators, with a cached decomposition for
/// membership tests.
#[derive(Clone, Debug)]
pub struct RelationLattice {
    dim: usize,
    gens: Vec<Vec<BigInt>>,
    snf: Option<SmithDecomposition>,
}

impl RelationLattice {
    pub fn new(dim: usize, gens: Vec<Vec<BigInt>>) -> Result<Self, CohomologyError> {
        if gens.iter().any(|g| g.len() != dim) {
            return Err(CohomologyError::InvalidModule("relation of wrong length".into()));
        }
        let snf = (!gens.is_empty()).then(|| smith_normal_form(&IntMatrix::from_columns(&gens, dim)));
        Ok(RelationLattice { dim, gens, snf })
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.gens
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        match &self.snf {
            None => v.iter().all(Zero::is_zero),
            Some(s) => solve_with(s, v).is_some(),
        }
    }
}

/// A ℤ[G]-module `ℤⁿ / R`: an ambient lattice with a relation sublattice and
/// one action matrix per group element (acting on column vectors).
#[derive(Clone, Debug)]
pub struct GIntModule {
    rank: usize,
    relations: RelationLattice,
    action: Vec<IntMatrix>,
}

impl GIntModule {
    /// Validates that `action` is a homomorphism `G → Aut(ℤⁿ/R)`.
    pub fn new(
        group: &FiniteGroup,
        rank: usize,
        relations: Vec<Vec<BigInt>>,
        action: Vec<IntMatrix>,
    ) -> Result<Self, CohomologyError> {
        let bad = |m: String| CohomologyError::InvalidModule(m);
        if action.len() != group.order() {
            return Err(bad(format!("{} action matrices for a group of order {}", action.len(), group.order())));
        }
        if action.iter().any(|a| a.rows() != rank || a.cols() != rank) {
            return Err(bad("action matrix has wrong shape".into()));
        }
        let module = GIntModule { rank, relations: RelationLattice::new(rank, relations)?, action };
        if !module.congruent(&module.action[0], &IntMatrix::identity(rank)) {
            return Err(bad("identity does not act trivially".into()));
        }
        for (g, a) in module.action.iter().enumerate() {
            for r in module.relations.generators() {
                if !module.relations.contains(&a.mul_vec(r)) {
                    return Err(bad(format!("element {g} does not preserve the relations")));
                }
            }
        }
        // checking against generators suffices: the relations are stable
        for g in 0..group.order() {
            for &s in group.generators() {
                let lhs = module.action[g].mul(&module.action[s]);
                if !module.congruent(&lhs, &module.action[group.mul(g, s)]) {
                    return Err(bad(format!("action is not multiplicative at ({g}, {s})")));
                }
            }
        }
        Ok(module)
    }

    /// `ℤⁿ` with trivial action.
    pub fn trivial(group: &FiniteGroup, rank: usize) -> Self {
        GIntModule {
            rank,
            relations: RelationLattice::new(rank, vec![]).expect("empty relations"),
            action: vec![IntMatrix::identity(rank); group.order()],
        }
    }

    /// Permutation module `ℤ[S]` where `perms[g]` is the permutation of `g`.
    pub fn permutation(group: &FiniteGroup, perms: &[Vec<usize>]) -> Result<Self, CohomologyError> {
        let n = perms.first().map_or(0, |p| p.len());
        let action = perms
            .iter()
            .map(|p| {
                let mut m = IntMatrix::zeros(n, n);
                for (i, &j) in p.iter().enumerate() {
                    m[(j, i)] = BigInt::from(1);
                }
                m
            })
            .collect();
        GIntModule::new(group, n, vec![], action)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &[Vec<BigInt>] {
        self.relations.generators()
    }

    pub fn relation_lattice(&self) -> &RelationLattice {
        &self.relations
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn act(&self, g: usize, v: &[BigInt]) -> Vec<BigInt> {
        self.action[g].mul_vec(v)
    }

    pub fn is_relation(&self, v: &[BigInt]) -> bool {
        self.relations.contains(v)
    }

    fn congruent(&self, a: &IntMatrix, b: &IntMatrix) -> bool {
        let d = a.sub(b);
        (0..d.cols()).all(|j| self.relations.contains(&d.column(j)))
    }

    /// Lattice of vectors `v` with `X v ∈ R'` for the given lattice `R'`.
    pub(crate) fn preimage_lattice(x: &IntMatrix, target: &RelationLattice) -> Vec<Vec<BigInt>> {
        let rel = target.generators();
        if rel.is_empty() {
            return kernel_basis(x);
        }
        let r = IntMatrix::from_columns(rel, x.rows());
        let k = kernel_basis(&x.hconcat(&r));
        k.into_iter().map(|v| v[..x.cols()].to_vec()).collect()
    }
}

/// A short exact sequence `0 → A → B → C → 0` of G-modules.
#[derive(Clone, Debug)]
pub struct ModuleSES {
    pub a: GIntModule,
    pub b: GIntModule,
    pub c: GIntModule,
    /// `rank(B) × rank(A)`
    pub a_to_b: IntMatrix,
    /// `rank(C) × rank(B)`
    pub b_to_c: IntMatrix,
}

impl ModuleSES {
    pub fn new(
        group: &FiniteGroup,
        a: GIntModule,
        b: GIntModule,
        c: GIntModule,
        a_to_b: IntMatrix,
        b_to_c: IntMatrix,
    ) -> Result<Self, CohomologyError> {
        let bad = |m: &str| CohomologyError::InvalidSequence(m.to_string());
        if (a_to_b.rows(), a_to_b.cols()) != (b.rank(), a.rank()) || (b_to_c.rows(), b_to_c.cols()) != (c.rank(), b.rank()) {
            return Err(bad("map shapes do not match module ranks"));
        }
        for g in 0..group.order() {
            if !b.congruent(&a_to_b.mul(a.action(g)), &b.action(g).mul(&a_to_b)) {
                return Err(bad("A → B is not equivariant"));
            }
            if !c.congruent(&b_to_c.mul(b.action(g)), &c.action(g).mul(&b_to_c)) {
                return Err(bad("B → C is not equivariant"));
            }
        }
        if a.relations().iter().any(|r| !b.is_relation(&a_to_b.mul_vec(r))) {
            return Err(bad("A → B does not respect relations"));
        }
        if b.relations().iter().any(|r| !c.is_relation(&b_to_c.mul_vec(r))) {
            return Err(bad("B → C does not respect relations"));
        }
        let comp = b_to_c.mul(&a_to_b);
        if !(0..comp.cols()).all(|j| c.is_relation(&comp.column(j))) {
            return Err(bad("composite A → C is not zero"));
        }
        // injectivity: φ(x) ∈ R_B ⇒ x ∈ R_A
        for x in GIntModule::preimage_lattice(&a_to_b, b.relation_lattice()) {
            if !a.is_relation(&x) {
                return Err(bad("A → B is not injective"));
            }
        }
        // surjectivity: every basis vector of C lifts modulo R_C
        let lift = Lifter::new(&b_to_c, c.relation_lattice());
        for j in 0..c.rank() {
            let mut e = vec![BigInt::zero(); c.rank()];
            e[j] = BigInt::from(1);
            if lift.lift(&e).is_none() {
                return Err(bad("B → C is not surjective"));
            }
        }
        // exactness in the middle: ψ(y) ∈ R_C ⇒ y ∈ φ(A) + R_B
        let middle = Lifter::new(&a_to_b, b.relation_lattice());
        for y in GIntModule::preimage_lattice(&b_to_c, c.relation_lattice()) {
            if middle.lift(&y).is_none() {
                return Err(bad("sequence is not exact at B"));
            }
        }
        Ok(ModuleSES { a, b, c, a_to_b, b_to_c })
    }
}

/// Solves `map · x ≡ y (mod R)` for `x`.
pub(crate) struct Lifter {
    cols: usize,
    snf: SmithDecomposition,
}

impl Lifter {
    pub(crate) fn new(map: &IntMatrix, rel: &RelationLattice) -> Self {
        let mut m = map.clone();
        if !rel.generators().is_empty() {
            m = m.hconcat(&IntMatrix::from_columns(rel.generators(), map.rows()));
        }
        Lifter { cols: map.cols(), snf: smith_normal_form(&m) }
    }

    pub(crate) fn lift(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        solve_with(&self.snf, y).map(|s| s.particular[..self.cols].to_vec())
    }
}
