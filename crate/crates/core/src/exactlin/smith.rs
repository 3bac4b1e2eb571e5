use super::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal, each diagonal
/// entry dividing the next, zeros last.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub(crate) u_inv: IntMatrix,
    pub(crate) v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries, in order.
    pub fn invariants(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().len()
    }

    pub fn u_inverse(&self) -> &IntMatrix {
        &self.u_inv
    }

    pub fn v_inverse(&self) -> &IntMatrix {
        &self.v_inv
    }
}

struct Work {
    d: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for m in [&mut self.d, &mut self.u] {
            for j in 0..m.cols() {
                let t = m[(a, j)].clone();
                m[(a, j)] = m[(b, j)].clone();
                m[(b, j)] = t;
            }
        }
        let ui = &mut self.u_inv;
        for i in 0..ui.rows() {
            let t = ui[(i, a)].clone();
            ui[(i, a)] = ui[(i, b)].clone();
            ui[(i, b)] = t;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for m in [&mut self.d, &mut self.v] {
            for i in 0..m.rows() {
                let t = m[(i, a)].clone();
                m[(i, a)] = m[(i, b)].clone();
                m[(i, b)] = t;
            }
        }
        let vi = &mut self.v_inv;
        for j in 0..vi.cols() {
            let t = vi[(a, j)].clone();
            vi[(a, j)] = vi[(b, j)].clone();
            vi[(b, j)] = t;
        }
    }

    /// row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        for m in [&mut self.d, &mut self.u] {
            for j in 0..m.cols() {
                let x = &m[(t, j)] * q;
                if !x.is_zero() {
                    m[(i, j)] -= x;
                }
            }
        }
        let ui = &mut self.u_inv;
        for r in 0..ui.rows() {
            let x = &ui[(r, i)] * q;
            if !x.is_zero() {
                ui[(r, t)] += x;
            }
        }
    }

    /// col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        for m in [&mut self.d, &mut self.v] {
            for i in 0..m.rows() {
                let x = &m[(i, t)] * q;
                if !x.is_zero() {
                    m[(i, j)] -= x;
                }
            }
        }
        let vi = &mut self.v_inv;
        for c in 0..vi.cols() {
            let x = &vi[(j, c)] * q;
            if !x.is_zero() {
                vi[(t, c)] += x;
            }
        }
    }

    fn negate_row(&mut self, t: usize) {
        for m in [&mut self.d, &mut self.u] {
            for j in 0..m.cols() {
                m[(t, j)] = -&m[(t, j)];
            }
        }
        let ui = &mut self.u_inv;
        for r in 0..ui.rows() {
            ui[(r, t)] = -&ui[(r, t)];
        }
    }
}

/// Smith normal form with transforms.
///
/// Pivot rule: the nonzero entry of smallest absolute value in the remaining
/// block, ties broken by lowest (row, col). The output is fully determined by
/// the input.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        d: m.clone(),
        u: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        u_inv: IntMatrix::identity(rows),
        v_inv: IntMatrix::identity(cols),
    };
    for t in 0..rows.min(cols) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &w.d[(i, j)];
                    if !x.is_zero() && pivot.is_none_or(|(pi, pj)| x.magnitude() < w.d[(pi, pj)].magnitude()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(w);
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if !w.d[(i, t)].is_zero() {
                    let q = &w.d[(i, t)] / &p;
                    if !q.is_zero() {
                        w.row_sub(i, t, &q);
                    }
                    clean &= w.d[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.d[(t, j)].is_zero() {
                    let q = &w.d[(t, j)] / &p;
                    if !q.is_zero() {
                        w.col_sub(j, t, &q);
                    }
                    clean &= w.d[(t, j)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.d[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    // row_t += row_i brings a non-multiple into row t
                    w.row_sub(t, i, &BigInt::from(-1));
                }
                None => break,
            }
        }
        if w.d[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }
    finish(w)
}

fn finish(w: Work) -> SmithDecomposition {
    SmithDecomposition { u: w.u, d: w.d, v: w.v, u_inv: w.u_inv, v_inv: w.v_inv }
}

/// Solution set of `m x = b` over the integers.
#[derive(Clone, Debug, PartialEq)]
pub struct DiophantineSolution {
    pub particular: Vec<BigInt>,
    pub kernel: Vec<Vec<BigInt>>,
}

/// Solves `m x = b` over the integers, or returns `None` if no integer solution exists.
pub fn solve_linear_diophantine(m: &IntMatrix, b: &[BigInt]) -> Option<DiophantineSolution> {
    let snf = smith_normal_form(m);
    solve_with(&snf, b)
}

/// Same as [`solve_linear_diophantine`] with a precomputed decomposition of `m`.
pub fn solve_with(snf: &SmithDecomposition, b: &[BigInt]) -> Option<DiophantineSolution> {
    assert_eq!(b.len(), snf.u.cols(), "right-hand side has wrong length");
    let ub = snf.u.mul_vec(b);
    let (rows, cols) = (snf.d.rows(), snf.d.cols());
    let mut y = vec![BigInt::zero(); cols];
    let mut r = 0;
    for i in 0..rows {
        let di = if i < cols { snf.d[(i, i)].clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            let (q, rem) = ub[i].div_rem(&di);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
            r = i + 1;
        }
    }
    let particular = snf.v.mul_vec(&y);
    let kernel = (r..cols).map(|j| snf.v.column(j)).collect();
    Some(DiophantineSolution { particular, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::bigvec;

    #[test]
    fn textbook_example() {
        let m = IntMatrix::from_rows_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariants(), bigvec(&[2, 6, 12]));
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(3));
        assert_eq!(s.v_inv.mul(&s.v), IntMatrix::identity(3));
    }

    #[test]
    fn zero_matrix() {
        let s = smith_normal_form(&IntMatrix::zeros(2, 3));
        assert!(s.invariants().is_empty());
    }

    #[test]
    fn diophantine_consistency() {
        let m = IntMatrix::from_rows_i64(&[vec![2, 0], vec![0, 3]]);
        assert!(solve_linear_diophantine(&m, &bigvec(&[1, 0])).is_none());
        let s = solve_linear_diophantine(&m, &bigvec(&[4, 9])).unwrap();
        assert_eq!(s.particular, bigvec(&[2, 3]));
        assert!(s.kernel.is_empty());
    }
}
