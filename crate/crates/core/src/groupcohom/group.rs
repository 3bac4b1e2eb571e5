use super::CohomologyError;
use crate::exactlin::IntMatrix;
use std::collections::HashMap;
use std::hash::Hash;

/// A finite group given by its multiplication table. Element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table (identity 0, associativity, inverses).
    pub fn from_table(table: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<Self, CohomologyError> {
        let n = table.len();
        let bad = |msg: &str| CohomologyError::InvalidGroup(msg.to_string());
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(bad("table is not square or has out-of-range entries"));
        }
        for g in 0..n {
            if table[0][g] != g || table[g][0] != g {
                return Err(bad("element 0 is not the identity"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(bad("table is not associative"));
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for g in 0..n {
            inverse[g] = (0..n).find(|&h| table[g][h] == 0).ok_or_else(|| bad("element without inverse"))?;
        }
        if generators.iter().any(|&s| s >= n) {
            return Err(bad("generator index out of range"));
        }
        Ok(FiniteGroup { table, inverse, generators })
    }

    /// The cyclic group of order `n`; element `k` is the k-th power of the generator.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let inverse = (0..n).map(|i| (n - i) % n).collect();
        let generators = if n > 1 { vec![1] } else { vec![] };
        FiniteGroup { table, inverse, generators }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Indices of a generating set (identity excluded).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

/// Closes `gens` under `mul`, numbering elements in breadth-first order from
/// the identity. Fails if more than `cap` elements appear.
pub fn group_closure<T, F>(gens: &[T], identity: T, mul: F, cap: usize) -> Result<(FiniteGroup, Vec<T>), CohomologyError>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
    let mut head = 0;
    while head < elems.len() {
        let e = elems[head].clone();
        head += 1;
        for s in gens {
            let x = mul(&e, s);
            if !index.contains_key(&x) {
                if elems.len() >= cap {
                    return Err(CohomologyError::GroupTooLarge { cap });
                }
                index.insert(x.clone(), elems.len());
                elems.push(x);
            }
        }
    }
    let n = elems.len();
    let mut table = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let p = mul(&elems[i], &elems[j]);
            table[i][j] = *index.get(&p).ok_or_else(|| CohomologyError::InvalidGroup("not closed".into()))?;
        }
    }
    let mut generators: Vec<usize> = gens.iter().map(|s| index[s]).filter(|&i| i != 0).collect();
    generators.dedup();
    let group = FiniteGroup::from_table(table, generators)?;
    Ok((group, elems))
}

/// `(g·h)(i) = g(h(i))`
pub fn compose_permutations(g: &[usize], h: &[usize]) -> Vec<usize> {
    h.iter().map(|&i| g[i]).collect()
}

pub fn permutation_group_closure(perms: &[Vec<usize>], cap: usize) -> Result<(FiniteGroup, Vec<Vec<usize>>), CohomologyError> {
    let n = perms.first().map_or(0, |p| p.len());
    for p in perms {
        let mut seen = vec![false; n];
        if p.len() != n || p.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
            return Err(CohomologyError::InvalidGroup("generator is not a permutation".into()));
        }
    }
    group_closure(perms, (0..n).collect(), |a, b| compose_permutations(a, b), cap)
}

pub fn matrix_group_closure(mats: &[IntMatrix], cap: usize) -> Result<(FiniteGroup, Vec<IntMatrix>), CohomologyError> {
    let n = mats.first().map_or(0, |m| m.rows());
    if mats.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(CohomologyError::InvalidGroup("generators must be square of equal size".into()));
    }
    group_closure(mats, IntMatrix::identity(n), |a, b| a.mul(b), cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_on_three_letters() {
        let (g, elems) = permutation_group_closure(&[vec![1, 0, 2], vec![1, 2, 0]], 100).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(elems[0], vec![0, 1, 2]);
        for a in 0..6 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let r = permutation_group_closure(&[vec![1, 2, 3, 4, 0]], 3);
        assert!(matches!(r, Err(CohomologyError::GroupTooLarge { cap: 3 })));
    }

    #[test]
    fn cyclic_matches_closure() {
        let (g, _) = permutation_group_closure(&[vec![1, 2, 0]], 10).unwrap();
        assert_eq!(g, FiniteGroup::cyclic(3));
    }
}
