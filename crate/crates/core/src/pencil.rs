//! The affine pencil K(z) = K_0 + z_1 K_1 + ... + z_r K_r of all matrices
//! whose vectorization solves the linearized system, built either from one
//! elimination pass or by completing the stacked coefficient matrix to an
//! invertible one. A nonzero solution of the bilinear system is exactly a
//! rank-one point of this pencil.

use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::poly::MPoly;
use crate::system::BilinearSystem;

/// K(z) with K_0 a particular solution and K_1..K_r spanning the kernel of
/// the transposed stack. r = pq - m for the generating system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePencil {
    pub p: usize,
    pub q: usize,
    pub field: FieldSpec,
    pub k0: Matrix,
    pub basis: Vec<Matrix>,
}

impl AffinePencil {
    pub fn r(&self) -> usize {
        self.basis.len()
    }

    /// K_0 + sum z_i K_i.
    pub fn eval(&self, z: &[Scalar]) -> Result<Matrix> {
        if z.len() != self.r() {
            return Err(Error::DimensionMismatch(format!(
                "pencil has {} parameters, got {}",
                self.r(),
                z.len()
            )));
        }
        let mut k = self.k0.clone();
        for (zi, ki) in z.iter().zip(self.basis.iter()) {
            if !zi.is_zero() {
                k = k.add(&ki.scale(zi));
            }
        }
        Ok(k)
    }
}

/// Builds the pencil from one reduced-row-echelon pass of the transposed
/// stack augmented with g. Pivoting is leftmost-column/first-nonzero-row
/// and free variables are ordered by vec index, which fixes the
/// z-coordinate convention.
pub fn build_pencil(sys: &BilinearSystem) -> Result<AffinePencil> {
    let (p, q, m) = (sys.p, sys.q, sys.m());
    let pq = p * q;
    let at = sys.stack().transpose(); // m x pq
    let mut aug = at;
    let rhs_col = pq;
    aug = aug.hstack(&Matrix::from_fn(sys.field, m, 1, |i, _| sys.rhs[i].clone()));
    let rref = aug.rref_augmented(pq);
    if rref.rank() != m {
        return Err(Error::NotReduced);
    }
    let pivot_set: std::collections::HashSet<usize> = rref.pivots.iter().copied().collect();

    let mut v0 = vec![sys.field.zero(); pq];
    for (row, &col) in rref.pivots.iter().enumerate() {
        v0[col] = rref.matrix.get(row, rhs_col).clone();
    }
    let k0 = Matrix::unvec(sys.field, &v0, p, q)?;

    let mut basis = Vec::with_capacity(pq - m);
    for free in 0..pq {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![sys.field.zero(); pq];
        v[free] = sys.field.one();
        for (row, &col) in rref.pivots.iter().enumerate() {
            v[col] = rref.matrix.get(row, free).neg();
        }
        basis.push(Matrix::unvec(sys.field, &v, p, q)?);
    }
    Ok(AffinePencil {
        p,
        q,
        field: sys.field,
        k0,
        basis,
    })
}

/// The default completion columns: standard basis vectors at the non-pivot
/// vec positions of the stack, in increasing position. These always extend
/// the stack to an invertible square matrix.
pub fn default_completion(sys: &BilinearSystem) -> Result<Vec<Vec<Scalar>>> {
    let pq = sys.p * sys.q;
    let at = sys.stack().transpose();
    let rref = at.rref();
    if rref.rank() != sys.m() {
        return Err(Error::NotReduced);
    }
    let pivot_set: std::collections::HashSet<usize> = rref.pivots.iter().copied().collect();
    Ok((0..pq)
        .filter(|j| !pivot_set.contains(j))
        .map(|j| {
            let mut e = vec![sys.field.zero(); pq];
            e[j] = sys.field.one();
            e
        })
        .collect())
}

/// Builds the pencil by augmenting the stack with `extra` columns to an
/// invertible pq-by-pq matrix B and reading K off vec K = (B^T)^{-1} (g|z).
pub fn build_pencil_completion(
    sys: &BilinearSystem,
    extra: &[Vec<Scalar>],
) -> Result<AffinePencil> {
    let (p, q, m) = (sys.p, sys.q, sys.m());
    let pq = p * q;
    if m + extra.len() != pq {
        return Err(Error::DimensionMismatch(format!(
            "need {} completion columns, got {}",
            pq - m,
            extra.len()
        )));
    }
    let mut b = sys.stack();
    for col in extra {
        if col.len() != pq {
            return Err(Error::DimensionMismatch(
                "completion column has wrong length".into(),
            ));
        }
        let col_m = Matrix::from_fn(sys.field, pq, 1, |i, _| col[i].clone());
        b = b.hstack(&col_m);
    }
    let bt_inv = b.transpose().inverse().ok_or(Error::SingularCompletion)?;
    // vec K = (B^T)^{-1} (g | z): the g-block gives K_0, column m+i gives K_i
    let mut g_ext = sys.rhs.clone();
    g_ext.resize(pq, sys.field.zero());
    let v0 = bt_inv.mul_vec(&g_ext);
    let k0 = Matrix::unvec(sys.field, &v0, p, q)?;
    let mut basis = Vec::with_capacity(pq - m);
    for i in m..pq {
        basis.push(Matrix::unvec(sys.field, &bt_inv.col(i), p, q)?);
    }
    Ok(AffinePencil {
        p,
        q,
        field: sys.field,
        k0,
        basis,
    })
}

/// Affine-set equality: equal basis spans and K_0 difference inside the
/// span.
pub fn pencil_spaces_equal(a: &AffinePencil, b: &AffinePencil) -> bool {
    if a.p != b.p || a.q != b.q || a.field != b.field {
        return false;
    }
    let span_a = span_matrix(a);
    let span_b = span_matrix(b);
    let ra = span_a.rank();
    let rb = span_b.rank();
    if ra != rb || ra != span_a.vstack(&span_b).rank() {
        return false;
    }
    let (va, vb) = (a.k0.vec_cols(), b.k0.vec_cols());
    let diff = Matrix::from_fn(a.field, 1, a.p * a.q, |_, j| va[j].sub(&vb[j]));
    span_a.vstack(&diff).rank() == ra
}

fn span_matrix(p: &AffinePencil) -> Matrix {
    Matrix::from_fn(p.field, p.basis.len().max(1), p.p * p.q, |i, j| {
        if i < p.basis.len() {
            p.basis[i].vec_cols()[j].clone()
        } else {
            p.field.zero()
        }
    })
}

/// Pencil whose particular part keeps the right-hand side symbolic: K_0
/// entries are polynomials in g_1..g_m (affine, by construction), the
/// basis is concrete. Used by structural certificates and fixtures; plain
/// solving always has concrete g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicPencil {
    pub p: usize,
    pub q: usize,
    pub m: usize,
    pub field: FieldSpec,
    /// Row-major p*q entries, each an MPoly in m variables g_1..g_m.
    pub k0: Vec<MPoly>,
    pub basis: Vec<Matrix>,
}

impl SymbolicPencil {
    pub fn r(&self) -> usize {
        self.basis.len()
    }

    pub fn k0_entry(&self, i: usize, j: usize) -> &MPoly {
        &self.k0[i * self.q + j]
    }

    /// Substitutes a concrete right-hand side into K_0.
    pub fn k0_at(&self, g: &[Scalar]) -> Matrix {
        assert_eq!(g.len(), self.m);
        Matrix::from_fn(self.field, self.p, self.q, |i, j| {
            self.k0_entry(i, j).eval(g)
        })
    }

    /// Instantiates the whole pencil at a concrete right-hand side.
    pub fn at(&self, g: &[Scalar]) -> AffinePencil {
        AffinePencil {
            p: self.p,
            q: self.q,
            field: self.field,
            k0: self.k0_at(g),
            basis: self.basis.clone(),
        }
    }

    /// Entry (i, j) of K(z) as a polynomial in (z_1..z_r, g_1..g_m); z
    /// variables come first.
    pub fn entry_in_z_and_g(&self, i: usize, j: usize) -> MPoly {
        let nv = self.r() + self.m;
        let mut e = self.k0_entry(i, j).embed(nv, self.r());
        for (k, bk) in self.basis.iter().enumerate() {
            let c = bk.get(i, j);
            if !c.is_zero() {
                e = e.add(&MPoly::var(self.field, nv, k).scale(c));
            }
        }
        e
    }
}

/// Same elimination as [`build_pencil`] but with the right-hand side kept
/// as the symbolic vector (g_1, ..., g_m); the row operations applied to
/// it are determined entirely by the concrete stack.
pub fn build_pencil_symbolic(
    field: FieldSpec,
    p: usize,
    q: usize,
    matrices: &[Matrix],
) -> Result<SymbolicPencil> {
    let m = matrices.len();
    let pq = p * q;
    let sys = BilinearSystem::new(field, p, q, matrices.to_vec(), vec![field.zero(); m])?;
    let mut left = sys.stack().transpose(); // m x pq
    let mut rhs: Vec<MPoly> = (0..m).map(|i| MPoly::var(field, m, i)).collect();

    let mut pivots = Vec::new();
    let mut next_row = 0usize;
    for col in 0..pq {
        let Some(pr) = (next_row..m).find(|&i| !left.get(i, col).is_zero()) else {
            continue;
        };
        if pr != next_row {
            for j in 0..pq {
                let (a, b) = (left.get(pr, j).clone(), left.get(next_row, j).clone());
                left.set(pr, j, b);
                left.set(next_row, j, a);
            }
            rhs.swap(pr, next_row);
        }
        let pivot = left.get(next_row, col).clone();
        if !pivot.is_one() {
            let inv = pivot.inv().expect("pivot nonzero");
            for j in 0..pq {
                let v = left.get(next_row, j).mul(&inv);
                left.set(next_row, j, v);
            }
            rhs[next_row] = rhs[next_row].scale(&inv);
        }
        for i in 0..m {
            if i != next_row && !left.get(i, col).is_zero() {
                let c = left.get(i, col).neg();
                for j in 0..pq {
                    let v = left.get(i, j).add(&left.get(next_row, j).mul(&c));
                    left.set(i, j, v);
                }
                rhs[i] = rhs[i].add(&rhs[next_row].scale(&c));
            }
        }
        pivots.push(col);
        next_row += 1;
        if next_row == m {
            break;
        }
    }
    if pivots.len() != m {
        return Err(Error::NotReduced);
    }
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();

    let mut k0 = vec![MPoly::zero(field, m); pq];
    for (row, &col) in pivots.iter().enumerate() {
        // vec index col corresponds to matrix entry (col % p, col / p)
        let (i, j) = (col % p, col / p);
        k0[i * q + j] = rhs[row].clone();
    }
    let mut basis = Vec::with_capacity(pq - m);
    for free in 0..pq {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); pq];
        v[free] = field.one();
        for (row, &col) in pivots.iter().enumerate() {
            v[col] = left.get(row, free).neg();
        }
        basis.push(Matrix::unvec(field, &v, p, q)?);
    }
    Ok(SymbolicPencil {
        p,
        q,
        m,
        field,
        k0,
        basis,
    })
}

/// All 2-by-2 minors of K(z) with both z and g symbolic, ordered
/// lexicographically in (row pair, column pair). Variables are
/// (z_1..z_r, g_1..g_m).
pub fn symbolic_minors(sym: &SymbolicPencil) -> Vec<MPoly> {
    let mut out = Vec::new();
    for a in 0..sym.p {
        for b in a + 1..sym.p {
            for c in 0..sym.q {
                for d in c + 1..sym.q {
                    let m11 = sym.entry_in_z_and_g(a, c);
                    let m12 = sym.entry_in_z_and_g(a, d);
                    let m21 = sym.entry_in_z_and_g(b, c);
                    let m22 = sym.entry_in_z_and_g(b, d);
                    out.push(m11.mul(&m22).sub(&m12.mul(&m21)));
                }
            }
        }
    }
    out
}

/// Affine-set equality with the right-hand side symbolic: spans must agree
/// and the K_0 difference (entrywise polynomial in g) must be expressible
/// over the span with g-polynomial coefficients.
pub fn symbolic_pencils_equal(a: &SymbolicPencil, b: &SymbolicPencil) -> bool {
    if a.p != b.p || a.q != b.q || a.field != b.field || a.m != b.m {
        return false;
    }
    let pa = a.at(&vec![a.field.zero(); a.m]);
    let pb = b.at(&vec![b.field.zero(); b.m]);
    let span_a = span_matrix(&pa);
    let span_b = span_matrix(&pb);
    let ra = span_a.rank();
    if ra != span_b.rank() || ra != span_a.vstack(&span_b).rank() {
        return false;
    }
    // difference in vec order, entries are polynomials in g
    let pq = a.p * a.q;
    let diff: Vec<MPoly> = (0..pq)
        .map(|idx| {
            let (i, j) = (idx % a.p, idx / a.p);
            a.k0_entry(i, j).sub(b.k0_entry(i, j))
        })
        .collect();
    // solve span_a^T c = diff with polynomial right-hand side; consistency
    // is all that matters
    let cols = span_a.rows(); // number of basis elements
    let lhs = span_a.transpose(); // pq x cols
    let mut rows: Vec<(Vec<Scalar>, MPoly)> =
        (0..pq).map(|i| (lhs.row(i), diff[i].clone())).collect();
    let mut next_row = 0usize;
    for col in 0..cols {
        let Some(pr) = (next_row..rows.len()).find(|&i| !rows[i].0[col].is_zero()) else {
            continue;
        };
        rows.swap(pr, next_row);
        let inv = rows[next_row].0[col].inv().expect("nonzero");
        for v in rows[next_row].0.iter_mut() {
            *v = v.mul(&inv);
        }
        rows[next_row].1 = rows[next_row].1.scale(&inv);
        for i in 0..rows.len() {
            if i != next_row && !rows[i].0[col].is_zero() {
                let c = rows[i].0[col].neg();
                let src_row = rows[next_row].0.clone();
                let src_rhs = rows[next_row].1.clone();
                for (dst, s) in rows[i].0.iter_mut().zip(src_row.iter()) {
                    *dst = dst.add(&s.mul(&c));
                }
                rows[i].1 = rows[i].1.add(&src_rhs.scale(&c));
            }
        }
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }
    // rows whose left part is now zero must carry a zero polynomial
    rows.iter().skip(next_row).all(|(_, rhs)| rhs.is_zero())
}
