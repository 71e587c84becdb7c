//! Small dense matrices over exact scalars.
//!
//! Everything here is field-exact: multiplication, determinants, rank and
//! signatures are computed with rational (or complex-rational) arithmetic and
//! no rounding. Sizes stay tiny (4x4 blocks, at most 4d x 4d assembled), so
//! plain Gaussian elimination is fine.

use std::ops::Neg;

use num_traits::{Num, Signed, Zero};

use crate::rational::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Block-diagonal assembly of square blocks.
    pub fn block_diag(blocks: &[Mat<T>]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = Mat::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, b.cols, "block_diag wants square blocks");
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.rows;
        }
        out
    }

    pub fn leading_submatrix(&self, k: usize) -> Self {
        let mut out = Mat::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T: Clone + Num> Mat<T> {
    pub fn identity(n: usize) -> Self {
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            out.set(i, i, T::one());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out: Mat<T> = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.clone() + b.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.clone() - b.clone();
        }
        out
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.clone() * s.clone();
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    acc = acc + self.get(i, j).clone() * v[j].clone();
                }
                acc
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> T {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }
}

impl<T: Clone + Num + Neg<Output = T>> Mat<T> {
    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = -a.clone();
        }
        out
    }

    /// Determinant by Gaussian elimination with exact division.
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.get(r, col).is_zero());
            let Some(p) = pivot else { return T::zero() };
            if p != col {
                for j in 0..n {
                    let a = m.get(col, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(col, j, b);
                    m.set(p, j, a);
                }
                det = -det;
            }
            let pv = m.get(col, col).clone();
            det = det * pv.clone();
            for r in col + 1..n {
                let f = m.get(r, col).clone() / pv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = m.get(r, j).clone() - f.clone() * m.get(col, j).clone();
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    /// Row rank by forward elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut rank = 0;
        for col in 0..cols {
            let pivot = (rank..rows).find(|&r| !m.get(r, col).is_zero());
            let Some(p) = pivot else { continue };
            if p != rank {
                for j in 0..cols {
                    let a = m.get(rank, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(rank, j, b);
                    m.set(p, j, a);
                }
            }
            let pv = m.get(rank, col).clone();
            for r in rank + 1..rows {
                let f = m.get(r, col).clone() / pv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..cols {
                    let v = m.get(r, j).clone() - f.clone() * m.get(rank, j).clone();
                    m.set(r, j, v);
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// Determinants of the k x k upper-left submatrices, k = 1..=n.
    pub fn leading_principal_minors(&self) -> Vec<T> {
        assert_eq!(self.rows, self.cols);
        (1..=self.rows)
            .map(|k| self.leading_submatrix(k).det())
            .collect()
    }
}

/// Signature `(positive, negative, zero)` of a symmetric rational matrix,
/// computed by exact congruence reduction.
pub fn signature(m: &Mat<Rat>) -> (usize, usize, usize) {
    assert!(m.is_symmetric(), "signature wants a symmetric matrix");
    let n = m.rows();
    let mut a = m.clone();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    for i in 0..n {
        if a.get(i, i).is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !a.get(j, j).is_zero()) {
                swap_rows_cols(&mut a, i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !a.get(i, j).is_zero()) {
                // All remaining diagonal entries vanish; a(i,j) != 0 lets the
                // congruence (row_i += row_j, col_i += col_j) create 2*a(i,j).
                add_row_col(&mut a, i, j);
            } else {
                zero += 1;
                continue;
            }
        }
        let pv = a.get(i, i).clone();
        if pv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for r in i + 1..n {
            let f = a.get(r, i).clone() / pv.clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                let v = a.get(r, j).clone() - f.clone() * a.get(i, j).clone();
                a.set(r, j, v);
            }
            for j in 0..n {
                let v = a.get(j, r).clone() - f.clone() * a.get(j, i).clone();
                a.set(j, r, v);
            }
        }
    }
    (pos, neg, zero)
}

fn swap_rows_cols(a: &mut Mat<Rat>, i: usize, j: usize) {
    let n = a.rows();
    for k in 0..n {
        let x = a.get(i, k).clone();
        let y = a.get(j, k).clone();
        a.set(i, k, y);
        a.set(j, k, x);
    }
    for k in 0..n {
        let x = a.get(k, i).clone();
        let y = a.get(k, j).clone();
        a.set(k, i, y);
        a.set(k, j, x);
    }
}

fn add_row_col(a: &mut Mat<Rat>, i: usize, j: usize) {
    let n = a.rows();
    for k in 0..n {
        let v = a.get(i, k).clone() + a.get(j, k).clone();
        a.set(i, k, v);
    }
    for k in 0..n {
        let v = a.get(k, i).clone() + a.get(k, j).clone();
        a.set(k, i, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: Vec<Vec<i64>>) -> Mat<Rat> {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(int).collect())
                .collect(),
        )
    }

    #[test]
    fn det_and_rank() {
        let a = m(vec![vec![2, 1], vec![1, 1]]);
        assert_eq!(a.det(), int(1));
        assert_eq!(a.rank(), 2);
        let b = m(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(b.det(), int(0));
        assert_eq!(b.rank(), 1);
        assert_eq!(b.kernel_dim(), 1);
    }

    #[test]
    fn minors() {
        let a = m(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(a.leading_principal_minors(), vec![int(2), int(3), int(4)]);
    }

    #[test]
    fn signature_diagonal_and_offdiagonal() {
        assert_eq!(signature(&m(vec![vec![1, 0], vec![0, -1]])), (1, 1, 0));
        assert_eq!(signature(&m(vec![vec![0, 1], vec![1, 0]])), (1, 1, 0));
        assert_eq!(
            signature(&m(vec![vec![0, 0, 1], vec![0, 0, 0], vec![1, 0, 0]])),
            (1, 1, 1)
        );
        let half = rat(1, 2);
        let mut p = Mat::zeros(4, 4);
        for (i, j) in [(0, 2), (2, 0), (1, 3), (3, 1)] {
            p.set(i, j, half.clone());
        }
        assert_eq!(signature(&p), (2, 2, 0));
    }

    #[test]
    fn block_diag_multiplies_blockwise() {
        let a = m(vec![vec![0, 1], vec![-1, 0]]);
        let d = Mat::block_diag(&[a.clone(), a.clone()]);
        let sq = d.mul(&d);
        assert_eq!(sq, Mat::<Rat>::identity(4).neg());
    }
}
