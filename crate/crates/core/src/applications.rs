//! Generators for the two motivating problem families: deciding whether
//! two zero-nonzero patterns commute (a homogeneous system in the nonzero
//! entries, needing a totally nonzero solution) and recovering a vector
//! pair from its dot and cross products (a 3-by-3 system with four
//! equations).

use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::reduction::reduce_system;
use crate::system::{BilinearSystem, SolutionPair};

/// A square zero-nonzero pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignPattern {
    pub n: usize,
    mask: Vec<bool>,
}

impl SignPattern {
    pub fn new(n: usize, mask: Vec<bool>) -> Result<SignPattern> {
        if mask.len() != n * n {
            return Err(Error::DimensionMismatch("pattern mask must be n*n".into()));
        }
        if !mask.iter().any(|&b| b) {
            return Err(Error::DimensionMismatch(
                "pattern needs a nonzero entry".into(),
            ));
        }
        Ok(SignPattern { n, mask })
    }

    /// Parses rows of 0/1 or ./* characters, e.g. "10,01".
    pub fn parse(text: &str) -> Result<SignPattern> {
        let rows: Vec<&str> = text.split([',', ';']).collect();
        let n = rows.len();
        let mut mask = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "pattern row '{row}' must have {n} entries"
                )));
            }
            for ch in row.chars() {
                match ch {
                    '0' | '.' => mask.push(false),
                    '1' | '*' => mask.push(true),
                    _ => {
                        return Err(Error::DimensionMismatch(format!(
                            "pattern entry '{ch}' is not 0/1/./*"
                        )))
                    }
                }
            }
        }
        SignPattern::new(n, mask)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.mask[i * self.n + j]
    }

    /// Nonzero positions in row-major order; these index the unknowns.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// The commutativity instance for two patterns: the reduced homogeneous
/// system together with the maps from unknown indices back to pattern
/// positions sharp (y enumerates P's nonzero entries, x enumerates Q's).
#[derive(Debug, Clone)]
pub struct CommuteInstance {
    pub system: BilinearSystem,
    pub y_positions: Vec<(usize, usize)>,
    pub x_positions: Vec<(usize, usize)>,
}

impl CommuteInstance {
    /// Substitutes a solution back into concrete matrices with the given
    /// patterns.
    pub fn realize(&self, s: &SolutionPair, field: FieldSpec, n: usize) -> (Matrix, Matrix) {
        let mut pm = Matrix::zeros(field, n, n);
        for (v, &(i, j)) in s.y.iter().zip(&self.y_positions) {
            pm.set(i, j, v.clone());
        }
        let mut qm = Matrix::zeros(field, n, n);
        for (v, &(i, j)) in s.x.iter().zip(&self.x_positions) {
            qm.set(i, j, v.clone());
        }
        (pm, qm)
    }
}

/// Builds the homogeneous bilinear system expressing PQ - QP = 0 where the
/// unknowns are the nonzero entries of the two patterns. One equation is
/// emitted per matrix position and the batch is immediately reduced;
/// positions where both products are structurally zero drop out. A
/// commuting realization corresponds to a totally nonzero solution.
pub fn commuting_bls(p_pat: &SignPattern, q_pat: &SignPattern) -> Result<CommuteInstance> {
    if p_pat.n != q_pat.n {
        return Err(Error::DimensionMismatch(
            "patterns must have the same side".into(),
        ));
    }
    let n = p_pat.n;
    let field = FieldSpec::Rationals;
    let y_positions = p_pat.positions();
    let x_positions = q_pat.positions();
    let py = y_positions.len();
    let qx = x_positions.len();
    let y_index = |i: usize, j: usize| y_positions.iter().position(|&p| p == (i, j));
    let x_index = |i: usize, j: usize| x_positions.iter().position(|&p| p == (i, j));

    let mut matrices = Vec::new();
    for i in 0..n {
        for j in 0..n {
            // (PQ - QP)[i][j] = sum_k P[i][k] Q[k][j] - Q[i][k] P[k][j]
            let mut a = Matrix::zeros(field, py, qx);
            for k in 0..n {
                if p_pat.get(i, k) && q_pat.get(k, j) {
                    let (yi, xj) = (y_index(i, k).unwrap(), x_index(k, j).unwrap());
                    let v = a.get(yi, xj).add(&field.one());
                    a.set(yi, xj, v);
                }
                if q_pat.get(i, k) && p_pat.get(k, j) {
                    let (xi, yj) = (x_index(i, k).unwrap(), y_index(k, j).unwrap());
                    let v = a.get(yj, xi).sub(&field.one());
                    a.set(yj, xi, v);
                }
            }
            matrices.push(a);
        }
    }
    let rhs = vec![field.zero(); matrices.len()];
    let raw = BilinearSystem::new(field, py, qx, matrices, rhs)?;
    let reduced = reduce_system(&raw);
    debug_assert!(
        !reduced.inconsistent,
        "homogeneous systems cannot be inconsistent"
    );
    Ok(CommuteInstance {
        system: reduced.reduced,
        y_positions,
        x_positions,
    })
}

/// The system T(v, w) = (v . w, v x w) = d0 on 3-vectors: the identity
/// gives the dot product and the three antisymmetric coordinate matrices
/// the right-handed cross product, so p = q = 3 and m = 4 = p + q - 2.
/// v plays the role of y and w the role of x.
pub fn quaternion_bls(d0: &[Scalar; 4]) -> BilinearSystem {
    let field = d0[0].field();
    let a1 = Matrix::identity(field, 3);
    // (v x w)_1 = v2 w3 - v3 w2, and cyclic
    let a2 = Matrix::from_int_rows(field, &[&[0, 0, 0], &[0, 0, 1], &[0, -1, 0]]);
    let a3 = Matrix::from_int_rows(field, &[&[0, 0, -1], &[0, 0, 0], &[1, 0, 0]]);
    let a4 = Matrix::from_int_rows(field, &[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]);
    BilinearSystem::new(field, 3, 3, vec![a1, a2, a3, a4], d0.to_vec()).expect("shape is fixed")
}

/// T(v, w) for the round-trip tests and the generator CLI.
pub fn quaternion_image(v: &[Scalar], w: &[Scalar]) -> [Scalar; 4] {
    assert_eq!(v.len(), 3);
    assert_eq!(w.len(), 3);
    let dot = v[0].mul(&w[0]).add(&v[1].mul(&w[1])).add(&v[2].mul(&w[2]));
    let c1 = v[1].mul(&w[2]).sub(&v[2].mul(&w[1]));
    let c2 = v[2].mul(&w[0]).sub(&v[0].mul(&w[2]));
    let c3 = v[0].mul(&w[1]).sub(&v[1].mul(&w[0]));
    [dot, c1, c2, c3]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank_one::{solve, SolveOptions};
    use crate::system::SolutionMode;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn qs(n: i64) -> Scalar {
        Scalar::from_integer(Q, n)
    }

    #[test]
    fn diagonal_antidiagonal_commute() {
        // P diagonal {(1,1),(2,2)}, Q antidiagonal {(1,2),(2,1)}: the
        // equations are ab = bd and dc = ca; a = b = c = d = 1 works
        let p = SignPattern::parse("10,01").unwrap();
        let q = SignPattern::parse("01,10").unwrap();
        let inst = commuting_bls(&p, &q).unwrap();
        assert_eq!(inst.system.m(), 2);
        assert!(inst.system.is_homogeneous());
        let opts = SolveOptions {
            mode: SolutionMode::TotallyNonzero,
            ..SolveOptions::default()
        };
        let out = solve(&inst.system, &opts);
        let sols = out.solutions().expect("patterns commute");
        let ones = SolutionPair::ones(Q, inst.system.p, inst.system.q).canonicalize();
        assert!(sols.contains(&ones), "{sols:?}");
        // substituting back gives commuting matrices
        let (pm, qm) = inst.realize(&sols[0], Q, 2);
        assert_eq!(pm.matmul(&qm), qm.matmul(&pm));
    }

    #[test]
    fn full_one_by_one_always_commutes() {
        let p = SignPattern::parse("1").unwrap();
        let inst = commuting_bls(&p, &p).unwrap();
        // zero equations remain after reduction
        assert_eq!(inst.system.m(), 0);
    }

    #[test]
    fn quaternion_fixed_images() {
        // d0 = (0,0,0,1): v = e1, w = e2
        let d0 = [qs(0), qs(0), qs(0), qs(1)];
        let sys = quaternion_bls(&d0);
        let s = SolutionPair {
            x: vec![qs(0), qs(1), qs(0)],
            y: vec![qs(1), qs(0), qs(0)],
        };
        assert!(sys.is_solution(&s));
        // d0 = (1,0,0,0): parallel unit vectors
        let d0 = [qs(1), qs(0), qs(0), qs(0)];
        let sys = quaternion_bls(&d0);
        let s = SolutionPair {
            x: vec![qs(1), qs(0), qs(0)],
            y: vec![qs(1), qs(0), qs(0)],
        };
        assert!(sys.is_solution(&s));
    }

    #[test]
    fn quaternion_image_consistency() {
        let v = vec![qs(1), qs(2), qs(3)];
        let w = vec![qs(-2), qs(0), qs(5)];
        let d0 = quaternion_image(&v, &w);
        let sys = quaternion_bls(&d0);
        assert!(sys.is_solution(&SolutionPair { x: w, y: v }));
    }

    #[test]
    fn commuting_equation_count_bound() {
        let p = SignPattern::parse("110,011,001").unwrap();
        let q = SignPattern::parse("101,010,100").unwrap();
        let inst = commuting_bls(&p, &q).unwrap();
        assert!(inst.system.m() <= 9);
    }

    #[test]
    fn diagonal_pattern_commutes_with_anything() {
        // a scaled-identity realization of the diagonal pattern commutes
        // with every realization of the other pattern, so the equal-value
        // solution generalizes from the 2x2 fixture; oracle over GF(5)
        use crate::oracle::brute_force_solve;
        let f5 = FieldSpec::prime_field(5).unwrap();
        let diag = SignPattern::parse("100,010,001").unwrap();
        for q_text in ["110,000,001", "010,101,000"] {
            let q = SignPattern::parse(q_text).unwrap();
            let inst = commuting_bls(&diag, &q).unwrap();
            // reinterpret the (rational, 0/1/-1) system over GF(5)
            let matrices = inst
                .system
                .matrices
                .iter()
                .map(|a| {
                    Matrix::from_fn(f5, a.rows(), a.cols(), |i, j| match a.get(i, j) {
                        Scalar::Rat(r) => {
                            let n: i64 = r.numer().try_into().unwrap();
                            let d: i64 = r.denom().try_into().unwrap();
                            Scalar::from_ratio(f5, n, d)
                        }
                        _ => unreachable!(),
                    })
                })
                .collect();
            let sys5 = BilinearSystem::new(
                f5,
                inst.system.p,
                inst.system.q,
                matrices,
                vec![f5.zero(); inst.system.m()],
            )
            .unwrap();
            let sols =
                brute_force_solve(&sys5, crate::system::SolutionMode::TotallyNonzero, 1 << 22)
                    .unwrap();
            assert!(
                !sols.is_empty(),
                "pattern {q_text} must commute with the diagonal"
            );
            // the all-equal diagonal with all-ones other pattern is there
            let ones = SolutionPair::ones(f5, sys5.p, sys5.q);
            assert!(sys5.is_solution(&ones));
        }
    }

    #[test]
    fn quaternion_zero_image_needs_a_zero() {
        // v . w = 0 and v x w = 0 with both vectors totally nonzero is
        // impossible: over GF(5) by exhaustion, over Q because a vanishing
        // cross product forces w = t v and then v . w = t |v|^2 != 0
        use crate::oracle::brute_force_solve;
        let f5 = FieldSpec::prime_field(5).unwrap();
        let zero = [f5.zero(), f5.zero(), f5.zero(), f5.zero()];
        let sys5 = quaternion_bls(&zero);
        let sols =
            brute_force_solve(&sys5, crate::system::SolutionMode::TotallyNonzero, 1 << 22).unwrap();
        assert!(sols.is_empty());

        // algebraic side over Q: parallel totally nonzero vectors have a
        // nonzero dot product
        for (v_raw, t) in [([1i64, 2, 3], 2i64), ([-1, 4, 5], -3), ([2, -7, 1], 1)] {
            let v: Vec<Scalar> = v_raw.iter().map(|&n| qs(n)).collect();
            let w: Vec<Scalar> = v.iter().map(|c| c.mul(&qs(t))).collect();
            let d0 = quaternion_image(&v, &w);
            assert!(d0[1].is_zero() && d0[2].is_zero() && d0[3].is_zero());
            assert!(!d0[0].is_zero());
        }
    }
}
