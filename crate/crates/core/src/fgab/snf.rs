//! Smith normal form over the integers.
//!
//! Elimination is fraction-free: every step is an elementary unimodular row or
//! column operation, and the pivot is always the entry of least absolute value
//! in the active block. Entries are `BigInt`, so intermediate growth never
//! overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal,
/// nonnegative, with each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub(crate) u_inv: IntegerMatrix,
    pub(crate) v_inv: IntegerMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.d.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }

    /// Inverse of `u`, tracked during the reduction.
    pub fn u_inverse(&self) -> &IntegerMatrix {
        &self.u_inv
    }

    /// Inverse of `v`, tracked during the reduction.
    pub fn v_inverse(&self) -> &IntegerMatrix {
        &self.v_inv
    }

    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d
            .diagonal()
            .into_iter()
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

/// Returns `(u, d, v)` with `u * m * v = d`.
pub fn smith_normal_form(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix, IntegerMatrix) {
    let s = smith_form(m);
    (s.u, s.d, s.v)
}

struct Reducer {
    a: IntegerMatrix,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    // row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_row_multiple(dst, src, f);
        self.u.add_row_multiple(dst, src, f);
        self.u_inv.add_col_multiple(src, dst, &-f);
    }

    // col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_col_multiple(dst, src, f);
        self.v.add_col_multiple(dst, src, f);
        self.v_inv.add_row_multiple(src, dst, &-f);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        // the inverse of a row negation is itself, applied as a column op
        for r in 0..self.u_inv.rows() {
            let x = -std::mem::take(&mut self.u_inv[(r, i)]);
            self.u_inv[(r, i)] = x;
        }
    }

    fn min_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn min_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        for i in t + 1..self.a.rows() {
            let x = &self.a[(i, t)];
            if !x.is_zero() && (self.a[best].is_zero() || x.abs() < self.a[best].abs()) {
                best = (i, t);
            }
        }
        for j in t + 1..self.a.cols() {
            let x = &self.a[(t, j)];
            if !x.is_zero() && (self.a[best].is_zero() || x.abs() < self.a[best].abs()) {
                best = (t, j);
            }
        }
        best
    }

    fn reduce(&mut self) {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        for t in 0..rows.min(cols) {
            let Some((pi, pj)) = self.min_in_block(t) else {
                return;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let pivot = self.a[(t, t)].clone();
                let mut dirty = false;
                for i in t + 1..rows {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.a[(i, t)].div_floor(&pivot);
                    self.add_row(i, t, &-q);
                    dirty |= !self.a[(i, t)].is_zero();
                }
                for j in t + 1..cols {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.a[(t, j)].div_floor(&pivot);
                    self.add_col(j, t, &-q);
                    dirty |= !self.a[(t, j)].is_zero();
                }
                if dirty {
                    let (i, j) = self.min_in_cross(t);
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                // pivot must divide the rest of the block
                let bad = (t + 1..rows).find(|&i| {
                    (t + 1..cols).any(|j| !self.a[(i, j)].is_multiple_of(&pivot))
                });
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::from(1)),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Full Smith decomposition, including the inverses of both transforms.
pub fn smith_form(m: &IntegerMatrix) -> SmithForm {
    let mut r = Reducer {
        a: m.clone(),
        u: IntegerMatrix::identity(m.rows()),
        u_inv: IntegerMatrix::identity(m.rows()),
        v: IntegerMatrix::identity(m.cols()),
        v_inv: IntegerMatrix::identity(m.cols()),
    };
    r.reduce();
    SmithForm {
        u: r.u,
        d: r.a,
        v: r.v,
        u_inv: r.u_inv,
        v_inv: r.v_inv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(m: &IntegerMatrix) -> SmithForm {
        let s = smith_form(m);
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntegerMatrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntegerMatrix::identity(m.cols()));
        let diag = s.d.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        s
    }

    #[test]
    fn identity_is_fixed() {
        let i = IntegerMatrix::identity(2);
        let (u, d, v) = smith_normal_form(&i);
        assert_eq!(u, i);
        assert_eq!(d, i);
        assert_eq!(v, i);
    }

    #[test]
    fn two_by_two() {
        // determinantal divisors: gcd of entries = 2, |det| = 8, so diag(2, 4)
        let m = IntegerMatrix::from_rows(2, &[[2, 4], [6, 8]]).unwrap();
        let s = check(&m);
        assert_eq!(s.d, IntegerMatrix::from_rows(2, &[[2, 0], [0, 4]]).unwrap());
    }

    #[test]
    fn zero_and_empty() {
        let z = IntegerMatrix::from_rows(1, &[[0]]).unwrap();
        assert_eq!(check(&z).d, z);
        let e = IntegerMatrix::zeros(0, 3);
        let s = check(&e);
        assert_eq!((s.d.rows(), s.d.cols()), (0, 3));
        assert_eq!(s.v, IntegerMatrix::identity(3));
        let e = IntegerMatrix::zeros(4, 0);
        assert_eq!(check(&e).u, IntegerMatrix::identity(4));
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2, 3) is diagonal but not in Smith form
        let m = IntegerMatrix::from_rows(2, &[[2, 0], [0, 3]]).unwrap();
        let s = check(&m);
        assert_eq!(s.invariant_factors(), vec![BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn rectangular() {
        let m = IntegerMatrix::from_rows(3, &[[2, 4, 0], [0, 6, 0]]).unwrap();
        let s = check(&m);
        assert_eq!(s.rank(), 2);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(6)]);
    }
}
