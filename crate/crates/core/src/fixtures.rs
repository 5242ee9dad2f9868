//! Small systems and pencils that recur across tests, the CLI fixtures,
//! and the acceptance suite, named by their structure.

use crate::fields::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::pencil::AffinePencil;
use crate::system::BilinearSystem;

fn rhs_of(field: FieldSpec, g: &[i64]) -> Vec<Scalar> {
    g.iter().map(|&v| Scalar::from_integer(field, v)).collect()
}

/// 2x2 homogeneous-friendly pair: A1 = I, A2 the quarter-turn rotation.
/// Over a field where -1 is a square the system with g = 0 has nontrivial
/// solutions; over Q it does not.
pub fn identity_rotation_system(field: FieldSpec, g: &[i64]) -> BilinearSystem {
    let a1 = Matrix::from_int_rows(field, &[&[1, 0], &[0, 1]]);
    let a2 = Matrix::from_int_rows(field, &[&[0, 1], &[-1, 0]]);
    BilinearSystem::new(field, 2, 2, vec![a1, a2], rhs_of(field, g)).unwrap()
}

/// 2x2 triple: the identity plus the two off-diagonal unit matrices. Its
/// pencil has r = 1 and solvability is governed by whether g1^2 - 4 g2 g3
/// is a square in the field.
pub fn identity_corner_system(field: FieldSpec, g: &[i64]) -> BilinearSystem {
    identity_corner_system_rhs(field, rhs_of(field, g))
}

pub fn identity_corner_system_rhs(field: FieldSpec, rhs: Vec<Scalar>) -> BilinearSystem {
    let a1 = Matrix::from_int_rows(field, &[&[1, 0], &[0, 1]]);
    let a2 = Matrix::from_int_rows(field, &[&[0, 0], &[1, 0]]);
    let a3 = Matrix::from_int_rows(field, &[&[0, 1], &[0, 0]]);
    BilinearSystem::new(field, 2, 2, vec![a1, a2, a3], rhs).unwrap()
}

/// The 2x3 triple whose pencil needs three parameters; solvable for every
/// right-hand side even though no structural certificate applies.
pub fn wide_triple_system(field: FieldSpec, g: &[i64]) -> BilinearSystem {
    wide_triple_system_rhs(field, rhs_of(field, g))
}

pub fn wide_triple_system_rhs(field: FieldSpec, rhs: Vec<Scalar>) -> BilinearSystem {
    let a1 = Matrix::from_int_rows(field, &[&[0, 1, 0], &[0, 0, 1]]);
    let a2 = Matrix::from_int_rows(field, &[&[-1, 0, -1], &[0, 0, 0]]);
    let a3 = Matrix::from_int_rows(field, &[&[0, 1, 0], &[-1, 0, 0]]);
    BilinearSystem::new(field, 2, 3, vec![a1, a2, a3], rhs).unwrap()
}

/// Hand-built 2x3 pencil [[1, z, -z], [z, z, 1]] whose two contiguous
/// minors vanish at z = 0 while the skipped minor does not: checking only
/// contiguous minors is wrong.
pub fn skip_minor_pencil(field: FieldSpec) -> AffinePencil {
    AffinePencil {
        p: 2,
        q: 3,
        field,
        k0: Matrix::from_int_rows(field, &[&[1, 0, 0], &[0, 0, 1]]),
        basis: vec![Matrix::from_int_rows(field, &[&[0, 1, -1], &[1, 1, 0]])],
    }
}

/// Unit matrix E_ij (1-based indices) of shape p x q.
pub fn unit_matrix(field: FieldSpec, p: usize, q: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(field, p, q);
    m.set(i - 1, j - 1, field.one());
    m
}

/// Deleted-echelon family on p x q: units along the first row (columns
/// 1..q-1) and down the last column (rows 2..p); m = p + q - 2 and the
/// collective support has the three-corner property.
pub fn staircase_system(field: FieldSpec, p: usize, q: usize, g: &[i64]) -> BilinearSystem {
    let mut matrices = Vec::new();
    for j in 1..q {
        matrices.push(unit_matrix(field, p, q, 1, j));
    }
    for i in 2..=p {
        matrices.push(unit_matrix(field, p, q, i, q));
    }
    assert_eq!(matrices.len(), g.len(), "staircase needs m = p + q - 2");
    BilinearSystem::new(field, p, q, matrices, rhs_of(field, g)).unwrap()
}

/// Border family on p x q: the whole first row plus the rest of the last
/// column; m = p + q - 1. Solvable iff g_q != 0, or all of g_1..g_{q-1}
/// vanish, or all of g_{q+1}..g_m vanish.
pub fn border_hook_system(field: FieldSpec, p: usize, q: usize, g: &[i64]) -> BilinearSystem {
    let mut matrices = Vec::new();
    for j in 1..=q {
        matrices.push(unit_matrix(field, p, q, 1, j));
    }
    for i in 2..=p {
        matrices.push(unit_matrix(field, p, q, i, q));
    }
    assert_eq!(matrices.len(), g.len(), "border hook needs m = p + q - 1");
    BilinearSystem::new(field, p, q, matrices, rhs_of(field, g)).unwrap()
}

/// 3x2 system {x1 y3 + x2 y2, x2 y1 + x2 y3, x2 y2} whose size-2
/// specialization x2 = y3 = 1 linearizes it with an invertible,
/// right-hand-side-independent coefficient matrix.
pub fn mixed_specialization_system(field: FieldSpec, g: &[i64]) -> BilinearSystem {
    // dyad y_i x_j sits at entry (i, j)
    let a1 = Matrix::from_int_rows(field, &[&[0, 0], &[0, 1], &[1, 0]]);
    let a2 = Matrix::from_int_rows(field, &[&[0, 1], &[0, 0], &[0, 1]]);
    let a3 = Matrix::from_int_rows(field, &[&[0, 0], &[0, 1], &[0, 0]]);
    BilinearSystem::new(field, 3, 2, vec![a1, a2, a3], rhs_of(field, g)).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::SolutionPair;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn mixed_specialization_solution_from_hand_derivation() {
        // x2 = 1, y3 = 1 turns the system into x1 + y2 = g1, y1 = g2 - 1,
        // y2 = g3; for g = (2, 3, 5) that gives x = (-3, 1), y = (2, 5, 1)
        let sys = mixed_specialization_system(Q, &[2, 3, 5]);
        let qs = |n: i64| Scalar::from_integer(Q, n);
        let s = SolutionPair {
            x: vec![qs(-3), qs(1)],
            y: vec![qs(2), qs(5), qs(1)],
        };
        assert!(sys.is_solution(&s));
    }

    #[test]
    fn staircase_shapes() {
        let sys = staircase_system(Q, 3, 3, &[1, 2, 3, 4]);
        assert_eq!(sys.m(), 4);
        assert_eq!(sys.stack().rank(), 4);
    }

    #[test]
    fn border_hook_shapes() {
        let sys = border_hook_system(Q, 3, 3, &[1, 2, 3, 4, 5]);
        assert_eq!(sys.m(), 5);
        assert_eq!(sys.stack().rank(), 5);
    }
}
