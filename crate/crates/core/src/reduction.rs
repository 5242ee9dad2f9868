//! Solution-preserving transformations: elementary operations on the
//! (A_i, g_i) pairs, right-hand-side normalization, and simultaneous
//! equivalence.
//!
//! Elementary pair operations (permute, scale, add a multiple of another
//! pair) leave the solution set unchanged, so reduction to a linearly
//! independent set is just row reduction of the m-by-(pq+1) array whose
//! row i is (vec(A_i)^T | g_i).

use crate::error::{Error, Result};
use crate::fields::Scalar;
use crate::matrix::{Matrix, RowOp};
use crate::system::{BilinearSystem, SolutionPair};

/// Result of [`reduce_system`]: the reduced system, an inconsistency flag,
/// and the exact elementary-operation log that maps the original pairs to
/// the reduced ones (replayable by certificates).
#[derive(Debug, Clone)]
pub struct ReductionReport {
    pub reduced: BilinearSystem,
    pub inconsistent: bool,
    /// Row index (in the reduced array) of a zero matrix with nonzero
    /// right-hand side, when inconsistent.
    pub witness_row: Option<usize>,
    pub ops_applied: Vec<RowOp>,
    pub original_m: usize,
}

impl ReductionReport {
    /// pq - m for the reduced system; the pencil dimension.
    pub fn r(&self) -> usize {
        self.reduced.p * self.reduced.q - self.reduced.m()
    }
}

/// Row-reduces the pair array. Zero matrices with zero right-hand side are
/// dropped; a zero matrix with nonzero right-hand side marks the system
/// inconsistent (reported, not thrown). Otherwise the reduced matrices are
/// linearly independent, span the same pair space, and have the identical
/// solution set.
pub fn reduce_system(sys: &BilinearSystem) -> ReductionReport {
    let (p, q, m) = (sys.p, sys.q, sys.m());
    let pq = p * q;
    let mut array = Matrix::zeros(sys.field, m, pq + 1);
    for (i, a) in sys.matrices.iter().enumerate() {
        for (col, v) in a.vec_cols().into_iter().enumerate() {
            array.set(i, col, v);
        }
        array.set(i, pq, sys.rhs[i].clone());
    }
    let rref = array.rref_augmented(pq);
    let rank = rref.rank();

    let mut inconsistent = false;
    let mut witness_row = None;
    for i in rank..m {
        if !rref.matrix.get(i, pq).is_zero() {
            inconsistent = true;
            witness_row = Some(i);
            break;
        }
    }

    let mut matrices = Vec::with_capacity(rank);
    let mut rhs = Vec::with_capacity(rank);
    for i in 0..rank {
        let row: Vec<Scalar> = (0..pq).map(|c| rref.matrix.get(i, c).clone()).collect();
        matrices.push(Matrix::unvec(sys.field, &row, p, q).expect("row has length pq"));
        rhs.push(rref.matrix.get(i, pq).clone());
    }
    let reduced = BilinearSystem {
        p,
        q,
        matrices,
        rhs,
        field: sys.field,
    };

    ReductionReport {
        reduced,
        inconsistent,
        witness_row,
        ops_applied: rref.ops,
        original_m: m,
    }
}

/// Transforms the right-hand side to (1, 0, ..., 0) by an invertible
/// combination of pairs. The solution set is unchanged.
pub fn normalize_rhs(sys: &BilinearSystem) -> Result<BilinearSystem> {
    let m = sys.m();
    let Some(first) = sys.rhs.iter().position(|g| !g.is_zero()) else {
        return Err(Error::ZeroRhs);
    };
    let mut matrices = sys.matrices.clone();
    let mut rhs = sys.rhs.clone();
    matrices.swap(0, first);
    rhs.swap(0, first);
    let scale = rhs[0].inv().expect("nonzero");
    matrices[0] = matrices[0].scale(&scale);
    rhs[0] = sys.field.one();
    for k in 1..m {
        if !rhs[k].is_zero() {
            let c = rhs[k].clone();
            matrices[k] = matrices[k].sub(&matrices[0].scale(&c));
            rhs[k] = sys.field.zero();
        }
    }
    Ok(BilinearSystem {
        p: sys.p,
        q: sys.q,
        matrices,
        rhs,
        field: sys.field,
    })
}

/// Simultaneous equivalence A_i -> P A_i Q with invertible P, Q; the
/// right-hand side is unchanged and solvability is preserved.
pub fn equiv_transform(sys: &BilinearSystem, pm: &Matrix, qm: &Matrix) -> Result<BilinearSystem> {
    if pm.rows() != sys.p || pm.cols() != sys.p || qm.rows() != sys.q || qm.cols() != sys.q {
        return Err(Error::DimensionMismatch(
            "transform sizes must be p x p and q x q".into(),
        ));
    }
    if pm.rank() != sys.p || qm.rank() != sys.q {
        return Err(Error::SingularTransform);
    }
    let matrices = sys
        .matrices
        .iter()
        .map(|a| pm.matmul(a).matmul(qm))
        .collect();
    Ok(BilinearSystem {
        p: sys.p,
        q: sys.q,
        matrices,
        rhs: sys.rhs.clone(),
        field: sys.field,
    })
}

/// Maps a solution of the original system to the corresponding solution of
/// `equiv_transform(sys, P, Q)`: x -> Q^{-1} x and y -> (P^T)^{-1} y, since
/// y'^T (P A Q) x' = (P^T y')^T A (Q x').
pub fn pull_back(s: &SolutionPair, pm: &Matrix, qm: &Matrix) -> Result<SolutionPair> {
    let q_inv = qm.inverse().ok_or(Error::SingularTransform)?;
    let pt_inv = pm.transpose().inverse().ok_or(Error::SingularTransform)?;
    Ok(SolutionPair {
        x: q_inv.mul_vec(&s.x),
        y: pt_inv.mul_vec(&s.y),
    })
}
