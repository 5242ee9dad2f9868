//! Dense exact matrices and the Gaussian-elimination core shared by the
//! reduction, pencil, rank-one, and structural modules.
//!
//! Elimination is deterministic everywhere: leftmost pivot column, first
//! nonzero row from the top. Fixtures and the z-coordinate conventions of
//! the pencil depend on this.

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};

/// Row-major dense matrix with entries from a single field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<Scalar>,
}

/// One elementary row operation, with exact coefficients so downstream
/// certificates can be replayed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowOp {
    Swap(usize, usize),
    Scale(usize, Scalar),
    /// `row[dst] += coeff * row[src]`
    AddMul {
        dst: usize,
        src: usize,
        coeff: Scalar,
    },
}

/// Output of [`Matrix::rref_augmented`].
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    /// Pivot column per pivot row, ascending.
    pub pivots: Vec<usize>,
    pub ops: Vec<RowOp>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            field,
            data,
        }
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch(field, s.field()));
                }
                data.push(s.clone());
            }
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            field,
            data,
        })
    }

    /// Integer literals, the workhorse for fixtures and tests.
    pub fn from_int_rows(field: FieldSpec, rows: &[&[i64]]) -> Matrix {
        Matrix::from_fn(
            field,
            rows.len(),
            rows.first().map_or(0, |r| r.len()),
            |i, j| Scalar::from_integer(field, rows[i][j]),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        assert_eq!(v.field(), self.field, "field mismatch");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.get(i, j).add(other.get(i, j))
        })
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.get(i, j).sub(other.get(i, j))
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.get(i, j).mul(c)
        })
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        Matrix::from_fn(self.field, self.rows, other.cols, |i, j| {
            let mut acc = self.field.zero();
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    /// Stacks columns into a single vector, first column first. The pencil
    /// and minor code depend on this ordering; it is fixed here once.
    pub fn vec_cols(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.push(self.get(i, j).clone());
            }
        }
        out
    }

    /// Inverse of [`Matrix::vec_cols`].
    pub fn unvec(field: FieldSpec, v: &[Scalar], p: usize, q: usize) -> Result<Matrix> {
        if v.len() != p * q {
            return Err(Error::DimensionMismatch(format!(
                "unvec: vector length {} but p*q = {}",
                v.len(),
                p * q
            )));
        }
        Ok(Matrix::from_fn(field, p, q, |i, j| v[j * p + i].clone()))
    }

    /// Reduced row echelon form on the first `main_cols` columns; columns
    /// beyond that are carried along as an augmented block. Returns the
    /// reduced matrix, pivot columns, and the exact op log.
    pub fn rref_augmented(&self, main_cols: usize) -> Rref {
        assert!(main_cols <= self.cols);
        let mut m = self.clone();
        let mut ops = Vec::new();
        let mut pivots = Vec::new();
        let mut next_row = 0usize;
        for col in 0..main_cols {
            // first nonzero entry at or below next_row
            let Some(pr) = (next_row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            if pr != next_row {
                m.swap_rows(pr, next_row);
                ops.push(RowOp::Swap(pr, next_row));
            }
            let pivot = m.get(next_row, col).clone();
            if !pivot.is_one() {
                let inv = pivot.inv().expect("pivot nonzero");
                m.scale_row(next_row, &inv);
                ops.push(RowOp::Scale(next_row, inv));
            }
            for i in 0..m.rows {
                if i != next_row && !m.get(i, col).is_zero() {
                    let coeff = m.get(i, col).neg();
                    m.add_mul_row(i, next_row, &coeff);
                    ops.push(RowOp::AddMul {
                        dst: i,
                        src: next_row,
                        coeff,
                    });
                }
            }
            pivots.push(col);
            next_row += 1;
            if next_row == m.rows {
                break;
            }
        }
        Rref {
            matrix: m,
            pivots,
            ops,
        }
    }

    pub fn rref(&self) -> Rref {
        self.rref_augmented(self.cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Particular solution of `self * x = rhs`, or None when inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let r = aug.rref_augmented(self.cols);
        // a zero row with nonzero augmented entry means no solution
        for i in r.rank()..self.rows {
            if !r.matrix.get(i, self.cols).is_zero() {
                return None;
            }
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &col) in r.pivots.iter().enumerate() {
            x[col] = r.matrix.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Basis of the right nullspace. Free variables are taken in increasing
    /// column order, one basis vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let r = self.rref();
        let pivot_set: std::collections::HashSet<usize> = r.pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &col) in r.pivots.iter().enumerate() {
                v[col] = r.matrix.get(row, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let r = aug.rref_augmented(n);
        if r.rank() != n {
            return None;
        }
        Some(Matrix::from_fn(self.field, n, n, |i, j| {
            r.matrix.get(i, n + j).clone()
        }))
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        Matrix::from_fn(self.field, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        })
    }

    /// Replays a recorded op log; certificates use this to re-check
    /// reductions against the original data.
    pub fn apply_row_ops(&mut self, ops: &[RowOp]) {
        for op in ops {
            match op {
                RowOp::Swap(a, b) => self.swap_rows(*a, *b),
                RowOp::Scale(i, c) => self.scale_row(*i, c),
                RowOp::AddMul { dst, src, coeff } => self.add_mul_row(*dst, *src, coeff),
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(i, j).mul(c);
            self.set(i, j, v);
        }
    }

    fn add_mul_row(&mut self, dst: usize, src: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(dst, j).add(&self.get(src, j).mul(c));
            self.set(dst, j, v);
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn vec_cols_is_column_stacking() {
        let a = Matrix::from_int_rows(Q, &[&[1, 2], &[3, 4]]);
        let v: Vec<String> = a.vec_cols().iter().map(|s| s.to_string()).collect();
        assert_eq!(v, vec!["1", "3", "2", "4"]);
    }

    #[test]
    fn unvec_inverts_vec() {
        let a = Matrix::from_int_rows(Q, &[&[1, 2, 5], &[3, 4, 6]]);
        let back = Matrix::unvec(Q, &a.vec_cols(), 2, 3).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn unvec_length_check() {
        let v = vec![Q.zero(); 5];
        assert!(Matrix::unvec(Q, &v, 2, 2).is_err());
    }

    #[test]
    fn row_matrix_vec_is_identity() {
        let a = Matrix::from_int_rows(Q, &[&[7, 8, 9]]);
        let v: Vec<String> = a.vec_cols().iter().map(|s| s.to_string()).collect();
        assert_eq!(v, vec!["7", "8", "9"]);
    }

    #[test]
    fn rank_and_rref() {
        let a = Matrix::from_int_rows(Q, &[&[1, 0], &[0, 0]]);
        assert_eq!(a.rank(), 1);
        let b = Matrix::from_int_rows(Q, &[&[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(b.rank(), 2);
        assert_eq!(Matrix::zeros(Q, 3, 2).rank(), 0);
        let c = Matrix::from_int_rows(Q, &[&[2, 4], &[1, 2]]);
        assert_eq!(c.rank(), 1);
    }

    #[test]
    fn solve_and_nullspace() {
        let a = Matrix::from_int_rows(Q, &[&[1, 2, 3], &[2, 4, 6]]);
        let rhs = vec![Scalar::from_integer(Q, 6), Scalar::from_integer(Q, 12)];
        let x = a.solve(&rhs).unwrap();
        assert_eq!(a.mul_vec(&x), rhs);
        assert_eq!(a.nullspace().len(), 2);
        let bad = vec![Scalar::from_integer(Q, 6), Scalar::from_integer(Q, 5)];
        assert!(a.solve(&bad).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let a = Matrix::from_int_rows(Q, &[&[1, 2], &[3, 5]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv), Matrix::identity(Q, 2));
        let singular = Matrix::from_int_rows(Q, &[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn gf_elimination() {
        let f = FieldSpec::prime_field(5).unwrap();
        let a = Matrix::from_int_rows(f, &[&[2, 1], &[3, 3]]);
        assert_eq!(a.rank(), 2);
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv), Matrix::identity(f, 2));
        // det = 8 - 3 = 5 vanishes mod 5
        let singular = Matrix::from_int_rows(f, &[&[2, 1], &[3, 4]]);
        assert_eq!(singular.rank(), 1);
        assert!(singular.inverse().is_none());
    }

    proptest! {
        #[test]
        fn unvec_vec_round_trip(p in 1usize..5, q in 1usize..5, seed in any::<u64>()) {
            // pseudo-random small-integer matrix, deterministic from seed
            let mut s = seed;
            let a = Matrix::from_fn(Q, p, q, |_, _| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                Scalar::from_integer(Q, ((s >> 33) % 19) as i64 - 9)
            });
            prop_assert_eq!(Matrix::unvec(Q, &a.vec_cols(), p, q).unwrap(), a);
        }

        #[test]
        fn nullspace_vectors_annihilate(p in 1usize..4, q in 1usize..5, seed in any::<u64>()) {
            let mut s = seed;
            let a = Matrix::from_fn(Q, p, q, |_, _| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                Scalar::from_integer(Q, ((s >> 33) % 7) as i64 - 3)
            });
            for v in a.nullspace() {
                prop_assert!(a.mul_vec(&v).iter().all(Scalar::is_zero));
            }
        }
    }
}
