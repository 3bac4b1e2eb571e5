use super::{lattice_basis, smith_normal_form, solve_with, IntMatrix, LinAlgError, SmithDecomposition};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

/// `ℤ^free_rank ⊕ ⊕ ℤ/tᵢ`, with each `tᵢ ≥ 2` dividing the next.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroupStructure {
    pub free_rank: usize,
    pub torsion_invariants: Vec<BigInt>,
}

impl AbelianGroupStructure {
    pub fn trivial() -> Self {
        AbelianGroupStructure { free_rank: 0, torsion_invariants: vec![] }
    }

    pub fn torsion(invariants: &[i64]) -> Self {
        AbelianGroupStructure { free_rank: 0, torsion_invariants: invariants.iter().map(|&t| BigInt::from(t)).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion_invariants.is_empty()
    }

    /// Order of a finite group, `None` when the free rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion_invariants.iter().product())
    }

    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion_invariants.len()
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        for t in &self.torsion_invariants {
            parts.push(format!("Z/{t}"));
        }
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        // collapse (Z/3)+(Z/3) into (Z/3)^2 for readability
        let mut out: Vec<String> = Vec::new();
        let mut i = 0;
        while i < parts.len() {
            let mut j = i;
            while j + 1 < parts.len() && parts[j + 1] == parts[i] && parts[i].starts_with("Z/") {
                j += 1;
            }
            if j > i {
                out.push(format!("({})^{}", parts[i], j - i + 1));
            } else {
                out.push(parts[i].clone());
            }
            i = j + 1;
        }
        write!(f, "{}", out.join(" + "))
    }
}

/// The quotient `Z / B` of a lattice `Z ⊂ ℤⁿ` by a sublattice `B ⊂ Z`.
///
/// Keeps the decompositions needed to classify vectors of `Z` and to write
/// elements of `B` in terms of the original image generators.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub structure: AbelianGroupStructure,
    /// Ambient vectors representing the generators, torsion first.
    pub representatives: Vec<Vec<BigInt>>,
    dim: usize,
    kernel_basis: Vec<Vec<BigInt>>,
    image_generators: Vec<Vec<BigInt>>,
    basis_snf: SmithDecomposition,
    coeff_snf: SmithDecomposition,
    /// diagonal index of each reported generator
    gen_index: Vec<usize>,
}

impl Subquotient {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kernel_basis(&self) -> &[Vec<BigInt>] {
        &self.kernel_basis
    }

    fn kernel_coords(&self, z: &[BigInt]) -> Result<Vec<BigInt>, LinAlgError> {
        if z.len() != self.dim {
            return Err(LinAlgError::DimensionMismatch { expected: self.dim, found: z.len() });
        }
        let sol = solve_with(&self.basis_snf, z).ok_or(LinAlgError::NotInKernel)?;
        Ok(sol.particular)
    }

    /// Coordinates of the class of `z` on the generators: torsion coordinates
    /// are reduced into `[0, tᵢ)`, free coordinates are exact.
    pub fn classify(&self, z: &[BigInt]) -> Result<Vec<BigInt>, LinAlgError> {
        let a = self.kernel_coords(z)?;
        let y = self.coeff_snf.u.mul_vec(&a);
        let d = &self.coeff_snf.d;
        Ok(self
            .gen_index
            .iter()
            .map(|&i| {
                let di = if i < d.cols() { d[(i, i)].clone() } else { BigInt::zero() };
                if di.is_zero() {
                    y[i].clone()
                } else {
                    y[i].mod_floor(&di)
                }
            })
            .collect())
    }

    pub fn is_zero_class(&self, z: &[BigInt]) -> Result<bool, LinAlgError> {
        Ok(self.classify(z)?.iter().all(Zero::is_zero))
    }

    /// Writes `z ∈ B` as an integer combination of the image generators.
    pub fn express_in_image(&self, z: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinAlgError> {
        let a = match self.kernel_coords(z) {
            Ok(a) => a,
            Err(LinAlgError::NotInKernel) => return Ok(None),
            Err(e) => return Err(e),
        };
        Ok(solve_with(&self.coeff_snf, &a).map(|s| s.particular))
    }

    pub fn image_generators(&self) -> &[Vec<BigInt>] {
        &self.image_generators
    }
}

/// Structure of `Z / B` where `kernel_gens` span `Z` and `image_gens` span `B ⊆ Z`.
pub fn subquotient_structure(
    kernel_gens: &[Vec<BigInt>],
    image_gens: &[Vec<BigInt>],
    dim: usize,
) -> Result<Subquotient, LinAlgError> {
    for v in kernel_gens.iter().chain(image_gens) {
        if v.len() != dim {
            return Err(LinAlgError::DimensionMismatch { expected: dim, found: v.len() });
        }
    }
    let basis = lattice_basis(kernel_gens, dim);
    let k = basis.len();
    let zmat = IntMatrix::from_columns(&basis, dim);
    let basis_snf = smith_normal_form(&zmat);
    let mut coeffs = IntMatrix::zeros(k, image_gens.len());
    for (j, b) in image_gens.iter().enumerate() {
        let sol = solve_with(&basis_snf, b).ok_or(LinAlgError::ImageNotInKernel { index: j })?;
        for i in 0..k {
            coeffs[(i, j)] = sol.particular[i].clone();
        }
    }
    let coeff_snf = smith_normal_form(&coeffs);
    let mut torsion = Vec::new();
    let mut free = Vec::new();
    for i in 0..k {
        let di = if i < coeffs.cols() { coeff_snf.d[(i, i)].clone() } else { BigInt::zero() };
        if di.is_zero() {
            free.push(i);
        } else if !di.is_one() {
            torsion.push((i, di));
        }
    }
    let structure =
        AbelianGroupStructure { free_rank: free.len(), torsion_invariants: torsion.iter().map(|(_, d)| d.clone()).collect() };
    let gen_index: Vec<usize> = torsion.iter().map(|(i, _)| *i).chain(free.iter().copied()).collect();
    // generator i of Z/B is zmat · U⁻¹ eᵢ
    let representatives = gen_index.iter().map(|&i| zmat.mul_vec(&coeff_snf.u_inv.column(i))).collect();
    Ok(Subquotient {
        structure,
        representatives,
        dim,
        kernel_basis: basis,
        image_generators: image_gens.to_vec(),
        basis_snf,
        coeff_snf,
        gen_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::bigvec;

    #[test]
    fn z_mod_3() {
        let sq = subquotient_structure(&[bigvec(&[1])], &[bigvec(&[3])], 1).unwrap();
        assert_eq!(sq.structure, AbelianGroupStructure::torsion(&[3]));
        assert_eq!(sq.classify(&bigvec(&[7])).unwrap(), bigvec(&[1]));
        assert_eq!(sq.express_in_image(&bigvec(&[6])).unwrap(), Some(bigvec(&[2])));
        assert_eq!(sq.express_in_image(&bigvec(&[5])).unwrap(), None);
    }

    #[test]
    fn image_outside_kernel_is_rejected() {
        let r = subquotient_structure(&[bigvec(&[2, 0])], &[bigvec(&[1, 0])], 2);
        assert!(matches!(r, Err(LinAlgError::ImageNotInKernel { index: 0 })));
    }

    #[test]
    fn display() {
        assert_eq!(AbelianGroupStructure::torsion(&[3, 3]).to_string(), "(Z/3)^2");
        assert_eq!(AbelianGroupStructure::trivial().to_string(), "0");
    }
}
