//! Exact dense linear algebra over rationals and Gaussian rationals.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::scalar::{Rational, Scalar};

/// Exact field element usable by the elimination routines.
pub trait Entry: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Entry for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
}

impl Entry for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
}

pub type Matrix<T> = Vec<Vec<T>>;

pub fn zeros<T: Entry>(rows: usize, cols: usize) -> Matrix<T> {
    vec![vec![T::zero(); cols]; rows]
}

pub fn identity<T: Entry>(n: usize) -> Matrix<T> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

pub fn transpose<T: Entry>(a: &[Vec<T>], cols: usize) -> Matrix<T> {
    let mut t = zeros(cols, a.len());
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            t[j][i] = v.clone();
        }
    }
    t
}

pub fn dot<T: Entry>(a: &[T], b: &[T]) -> T {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc.add(&x.mul(y));
        }
    }
    acc
}

pub fn mat_vec<T: Entry>(a: &[Vec<T>], v: &[T]) -> Vec<T> {
    a.iter().map(|row| dot(row, v)).collect()
}

/// `vᵀA`, i.e. the combination of rows of `a` with weights `v`.
pub fn vec_mat<T: Entry>(v: &[T], a: &[Vec<T>], cols: usize) -> Vec<T> {
    let mut out = vec![T::zero(); cols];
    for (w, row) in v.iter().zip(a) {
        if w.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            if !x.is_zero() {
                *o = o.add(&w.mul(x));
            }
        }
    }
    out
}

pub fn mat_mul<T: Entry>(a: &[Vec<T>], b: &[Vec<T>], cols: usize) -> Matrix<T> {
    a.iter().map(|row| vec_mat(row, b, cols)).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<T: Entry>(a: &mut [Vec<T>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = T::one().div(&a[r][c]);
        for v in a[r].iter_mut() {
            if !v.is_zero() {
                *v = v.mul(&inv);
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = v.sub(&factor.mul(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Entry>(a: &[Vec<T>], cols: usize) -> usize {
    let mut m = a.to_vec();
    rref(&mut m, cols).len()
}

/// Basis of `{x : Ax = 0}`.
pub fn kernel<T: Entry>(a: &[Vec<T>], cols: usize) -> Matrix<T> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m, cols);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![T::zero(); cols];
        v[free] = T::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = m[r][free].neg();
        }
        basis.push(v);
    }
    basis
}

/// One solution of `Ax = b`, if any.
pub fn solve<T: Entry>(a: &[Vec<T>], b: &[T], cols: usize) -> Option<Vec<T>> {
    let mut aug: Matrix<T> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![T::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, if nonsingular.
pub fn inverse<T: Entry>(a: &[Vec<T>]) -> Option<Matrix<T>> {
    let n = a.len();
    let mut aug: Matrix<T> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Indices of a maximal linearly independent subset of `rows`, chosen greedily in order.
pub fn independent_rows<T: Entry>(rows: &[Vec<T>], cols: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut echelon: Matrix<T> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut candidate = echelon.clone();
        candidate.push(row.clone());
        if rank(&candidate, cols) > echelon.len() {
            let mut reduced = candidate;
            let piv = rref(&mut reduced, cols);
            reduced.truncate(piv.len());
            echelon = reduced;
            chosen.push(i);
            if chosen.len() == cols {
                break;
            }
        }
    }
    chosen
}

/// Whether `v` lies in the row span of `rows`.
pub fn in_row_span<T: Entry>(rows: &[Vec<T>], v: &[T], cols: usize) -> bool {
    let t = transpose(rows, cols);
    solve(&t, v, rows.len()).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn q(n: i64) -> Rational {
        rat_int(n)
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let a = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&a, v).iter().all(|x| Zero::is_zero(x)));
        }
        assert_eq!(rank(&a, 3), 1);
    }

    #[test]
    fn solve_and_inverse() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve(&a, &[q(3), q(5)], 2).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv, 2), identity(2));
        assert!(solve(&[vec![q(1), q(1)], vec![q(2), q(2)]], &[q(1), q(3)], 2).is_none());
    }

    #[test]
    fn greedy_independent_rows() {
        let rows = vec![vec![q(1), q(0)], vec![q(2), q(0)], vec![q(1), q(1)]];
        assert_eq!(independent_rows(&rows, 2), vec![0, 2]);
    }

    #[test]
    fn complex_kernel() {
        let i = Scalar::i();
        let a = vec![vec![Scalar::one(), i.clone()]];
        let k = kernel(&a, 2);
        assert_eq!(k.len(), 1);
        assert!(dot(&a[0], &k[0]).is_zero());
    }
}
