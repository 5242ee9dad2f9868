//! The bilinear-system data model: systems `y^T A_i x = g_i`, solution
//! pairs, the two slicings of the coefficient array, and residual
//! evaluation.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};
use crate::matrix::Matrix;

/// A system of m bilinear equations with p-by-q coefficient matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearSystem {
    pub p: usize,
    pub q: usize,
    pub matrices: Vec<Matrix>,
    pub rhs: Vec<Scalar>,
    pub field: FieldSpec,
}

/// A candidate or verified solution (x, y).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionPair {
    pub x: Vec<Scalar>,
    pub y: Vec<Scalar>,
}

/// Which solutions count when a system is homogeneous: anything (the
/// trivial x = 0 or y = 0 pairs qualify), pairs with both vectors nonzero,
/// or pairs in which every single entry is nonzero (what pattern
/// commutativity needs).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolutionMode {
    #[default]
    Any,
    Nontrivial,
    TotallyNonzero,
}

/// The two slicings of the p-by-q-by-m coefficient array: `row_slices[i]`
/// is the m-by-q matrix of the i-th rows of the A_k, `col_slices[j]` the
/// p-by-m matrix of their j-th columns.
#[derive(Debug, Clone)]
pub struct SliceSet {
    pub row_slices: Vec<Matrix>,
    pub col_slices: Vec<Matrix>,
}

impl BilinearSystem {
    pub fn new(
        field: FieldSpec,
        p: usize,
        q: usize,
        matrices: Vec<Matrix>,
        rhs: Vec<Scalar>,
    ) -> Result<BilinearSystem> {
        if p == 0 || q == 0 {
            return Err(Error::DimensionMismatch("p and q must be positive".into()));
        }
        if matrices.len() != rhs.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices but {} right-hand sides",
                matrices.len(),
                rhs.len()
            )));
        }
        for a in &matrices {
            if a.rows() != p || a.cols() != q {
                return Err(Error::DimensionMismatch(format!(
                    "matrix is {}x{}, expected {p}x{q}",
                    a.rows(),
                    a.cols()
                )));
            }
            if a.field() != field {
                return Err(Error::FieldMismatch(field, a.field()));
            }
        }
        for g in &rhs {
            if g.field() != field {
                return Err(Error::FieldMismatch(field, g.field()));
            }
        }
        Ok(BilinearSystem {
            p,
            q,
            matrices,
            rhs,
            field,
        })
    }

    pub fn m(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rhs.iter().all(Scalar::is_zero)
    }

    /// Residual vector (y^T A_i x - g_i); zero everywhere iff s solves self.
    pub fn evaluate(&self, s: &SolutionPair) -> Result<Vec<Scalar>> {
        if s.x.len() != self.q || s.y.len() != self.p {
            return Err(Error::DimensionMismatch(format!(
                "solution is ({}, {}), system needs ({}, {})",
                s.x.len(),
                s.y.len(),
                self.q,
                self.p
            )));
        }
        for v in s.x.iter().chain(s.y.iter()) {
            if v.field() != self.field {
                return Err(Error::FieldMismatch(self.field, v.field()));
            }
        }
        let mut out = Vec::with_capacity(self.m());
        for (a, g) in self.matrices.iter().zip(self.rhs.iter()) {
            let ax = a.mul_vec(&s.x);
            let mut acc = self.field.zero();
            for (yi, axi) in s.y.iter().zip(ax.iter()) {
                acc = acc.add(&yi.mul(axi));
            }
            out.push(acc.sub(g));
        }
        Ok(out)
    }

    pub fn is_solution(&self, s: &SolutionPair) -> bool {
        self.evaluate(s)
            .is_ok_and(|r| r.iter().all(Scalar::is_zero))
    }

    pub fn slices(&self) -> SliceSet {
        let row_slices = (0..self.p)
            .map(|i| {
                Matrix::from_fn(self.field, self.m(), self.q, |k, j| {
                    self.matrices[k].get(i, j).clone()
                })
            })
            .collect();
        let col_slices = (0..self.q)
            .map(|j| {
                Matrix::from_fn(self.field, self.p, self.m(), |i, k| {
                    self.matrices[k].get(i, j).clone()
                })
            })
            .collect();
        SliceSet {
            row_slices,
            col_slices,
        }
    }

    /// Y(y) = sum y_i R_i; its row k is y^T A_k, so Y(y) x = g is the
    /// linear system in x obtained by fixing y.
    pub fn assemble_y(&self, y: &[Scalar]) -> Result<Matrix> {
        if y.len() != self.p {
            return Err(Error::DimensionMismatch("y has wrong length".into()));
        }
        Ok(Matrix::from_fn(self.field, self.m(), self.q, |k, j| {
            let mut acc = self.field.zero();
            for i in 0..self.p {
                acc = acc.add(&y[i].mul(self.matrices[k].get(i, j)));
            }
            acc
        }))
    }

    /// X(x) = sum x_j S_j; its column k is A_k x.
    pub fn assemble_x(&self, x: &[Scalar]) -> Result<Matrix> {
        if x.len() != self.q {
            return Err(Error::DimensionMismatch("x has wrong length".into()));
        }
        Ok(Matrix::from_fn(self.field, self.p, self.m(), |i, k| {
            let mut acc = self.field.zero();
            for j in 0..self.q {
                acc = acc.add(&x[j].mul(self.matrices[k].get(i, j)));
            }
            acc
        }))
    }

    /// The pq-by-m matrix whose i-th column is vec(A_i).
    pub fn stack(&self) -> Matrix {
        Matrix::from_fn(self.field, self.p * self.q, self.m(), |row, k| {
            let (j, i) = (row / self.p, row % self.p);
            self.matrices[k].get(i, j).clone()
        })
    }
}

impl SolutionPair {
    pub fn zero(field: FieldSpec, p: usize, q: usize) -> SolutionPair {
        SolutionPair {
            x: vec![field.zero(); q],
            y: vec![field.zero(); p],
        }
    }

    pub fn ones(field: FieldSpec, p: usize, q: usize) -> SolutionPair {
        SolutionPair {
            x: vec![field.one(); q],
            y: vec![field.one(); p],
        }
    }

    pub fn x_is_zero(&self) -> bool {
        self.x.iter().all(Scalar::is_zero)
    }

    pub fn y_is_zero(&self) -> bool {
        self.y.iter().all(Scalar::is_zero)
    }

    pub fn is_trivial(&self) -> bool {
        self.x_is_zero() || self.y_is_zero()
    }

    pub fn passes_mode(&self, mode: SolutionMode) -> bool {
        match mode {
            SolutionMode::Any => true,
            SolutionMode::Nontrivial => !self.is_trivial(),
            SolutionMode::TotallyNonzero => {
                self.x.iter().all(|v| !v.is_zero()) && self.y.iter().all(|v| !v.is_zero())
            }
        }
    }

    /// Canonical representative under the scaling relation
    /// (x, y) ~ (t x, y / t): the first nonzero entry of y becomes 1.
    /// Pairs with y = 0 normalize x instead; the zero pair is fixed.
    pub fn canonicalize(&self) -> SolutionPair {
        if let Some(t) = self.y.iter().find(|v| !v.is_zero()) {
            let t = t.clone();
            let ti = t.inv().expect("nonzero");
            SolutionPair {
                x: self.x.iter().map(|v| v.mul(&t)).collect(),
                y: self.y.iter().map(|v| v.mul(&ti)).collect(),
            }
        } else if let Some(t) = self.x.iter().find(|v| !v.is_zero()) {
            let ti = t.inv().expect("nonzero");
            SolutionPair {
                x: self.x.iter().map(|v| v.mul(&ti)).collect(),
                y: self.y.clone(),
            }
        } else {
            self.clone()
        }
    }

    /// Deterministic ordering for output and set comparison.
    pub fn canonical_cmp(&self, other: &SolutionPair) -> Ordering {
        cmp_vec(&self.y, &other.y).then_with(|| cmp_vec(&self.x, &other.x))
    }
}

fn cmp_vec(a: &[Scalar], b: &[Scalar]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for (u, v) in a.iter().zip(b.iter()) {
            let c = u.canonical_cmp(v);
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    })
}

/// Canonicalizes, deduplicates, and sorts a batch of solutions.
pub fn canonical_solution_set(pairs: impl IntoIterator<Item = SolutionPair>) -> Vec<SolutionPair> {
    let mut out: Vec<SolutionPair> = pairs.into_iter().map(|s| s.canonicalize()).collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    out.dedup();
    out
}
