//! Unimodular row reduction, used for kernels and lattice bases.
//!
//! The reduction runs on `i64` with checked arithmetic first and restarts on
//! `BigInt` if any intermediate value overflows, so results never depend on
//! which backend finished the job.

use super::IntMatrix;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

#[derive(Debug)]
struct Overflow;

trait Entry: Clone {
    fn is_zero(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    fn quo(&self, d: &Self) -> Self;
    /// `self - q * b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Result<Self, Overflow>;
    fn negate(&self) -> Result<Self, Overflow>;
    fn is_negative(&self) -> bool;
    fn from_big(b: &BigInt) -> Result<Self, Overflow>;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn quo(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Result<Self, Overflow> {
        q.checked_mul(*b).and_then(|p| self.checked_sub(p)).ok_or(Overflow)
    }
    fn negate(&self) -> Result<Self, Overflow> {
        self.checked_neg().ok_or(Overflow)
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn from_big(b: &BigInt) -> Result<Self, Overflow> {
        b.to_i64().ok_or(Overflow)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn quo(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Result<Self, Overflow> {
        Ok(self - q * b)
    }
    fn negate(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn from_big(b: &BigInt) -> Result<Self, Overflow> {
        Ok(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Reduces `rows` in place so that, restricted to the first `width` columns,
/// they are in row echelon form. Returns the number of nonzero rows within
/// that window (they come first).
fn echelon<T: Entry>(rows: &mut [Vec<T>], width: usize) -> Result<usize, Overflow> {
    let n = rows.len();
    let mut p = 0;
    for c in 0..width {
        if p == n {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in p..n {
                if !rows[i][c].is_zero() && best.is_none_or(|b| rows[i][c].cmp_abs(&rows[b][c]) == Ordering::Less) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(p, b);
            let mut clean = true;
            for i in p + 1..n {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].quo(&rows[p][c]);
                if !q.is_zero() {
                    let (head, tail) = rows.split_at_mut(i);
                    let prow = &head[p];
                    let row = &mut tail[0];
                    for k in c..row.len() {
                        if !prow[k].is_zero() {
                            row[k] = row[k].sub_mul(&q, &prow[k])?;
                        }
                    }
                }
                if !rows[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                if rows[p][c].is_negative() {
                    for k in 0..rows[p].len() {
                        rows[p][k] = rows[p][k].negate()?;
                    }
                }
                p += 1;
                break;
            }
        }
    }
    Ok(p)
}

fn to_entries<T: Entry>(rows: &[Vec<BigInt>]) -> Result<Vec<Vec<T>>, Overflow> {
    rows.iter().map(|r| r.iter().map(T::from_big).collect()).collect()
}

fn kernel_with<T: Entry>(m: &IntMatrix) -> Result<Vec<Vec<BigInt>>, Overflow> {
    let (r, c) = (m.rows(), m.cols());
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(c);
    for j in 0..c {
        let mut row = Vec::with_capacity(r + c);
        for i in 0..r {
            row.push(T::from_big(&m[(i, j)])?);
        }
        for k in 0..c {
            row.push(T::from_big(&BigInt::from((k == j) as i64))?);
        }
        rows.push(row);
    }
    let rank = echelon(&mut rows, r)?;
    Ok(rows[rank..].iter().map(|row| row[r..].iter().map(Entry::to_big).collect()).collect())
}

/// A basis of the integer kernel `{x : M x = 0}`. The basis spans a
/// saturated lattice.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    kernel_with::<i64>(m).or_else(|_| kernel_with::<BigInt>(m)).expect("bigint reduction cannot overflow")
}

fn basis_with<T: Entry>(gens: &[Vec<BigInt>], dim: usize) -> Result<Vec<Vec<BigInt>>, Overflow> {
    let mut rows: Vec<Vec<T>> = to_entries(gens)?;
    let rank = echelon(&mut rows, dim)?;
    Ok(rows[..rank].iter().map(|row| row.iter().map(Entry::to_big).collect()).collect())
}

/// A basis (in echelon form) of the lattice spanned by `gens`, all of length `dim`.
pub fn lattice_basis(gens: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    for g in gens {
        assert_eq!(g.len(), dim, "generator of wrong length");
    }
    basis_with::<i64>(gens, dim).or_else(|_| basis_with::<BigInt>(gens, dim)).expect("bigint reduction cannot overflow")
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    lattice_basis(&m.to_rows(), m.cols()).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::bigvec;

    #[test]
    fn kernel_of_small_matrix() {
        let m = IntMatrix::from_rows_i64(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let m = IntMatrix::from_rows_i64(&[vec![big, big - 1, 7], vec![big - 5, 3, big]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn lattice_basis_drops_dependencies() {
        let gens = vec![bigvec(&[2, 0]), bigvec(&[0, 2]), bigvec(&[2, 2]), bigvec(&[4, 6])];
        assert_eq!(lattice_basis(&gens, 2).len(), 2);
    }
}
