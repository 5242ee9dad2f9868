//! One-parameter slicing sweeps: fixing y turns the bilinear system into
//! the linear system Y(y) x = g, so we fix all but one coordinate of y on
//! a small grid, keep the last one symbolic, and decide consistency of
//! Y(y(s)) x = g over the univariate function field exactly. Special
//! parameter values come out of the pivot and residual polynomials of a
//! fraction-free elimination, with roots found exactly. The same sweep
//! runs on the transposed system to cover the x side.
//!
//! For min(p, q) <= 2 the swept directions cover the whole projective
//! space of the fixed side, which is what makes the wide examples with
//! many pencil parameters solvable for arbitrary right-hand sides. The
//! sweep only ever produces verified solutions; deciding unsolvability is
//! left to the complete routes.

use crate::fields::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::poly::UPoly;
use crate::structural::SearchBudget;
use crate::system::{BilinearSystem, SolutionMode, SolutionPair};

/// Outcome of the forward elimination of [M(s) | g] over the function
/// field.
struct LineAnalysis {
    pivot_polys: Vec<UPoly>,
    residual_polys: Vec<UPoly>,
    generic_rank: usize,
}

fn analyze_line(rows: &mut [(Vec<UPoly>, UPoly)], cols: usize) -> LineAnalysis {
    let mut pivot_polys = Vec::new();
    let mut next = 0usize;
    for col in 0..cols {
        let pick = (next..rows.len())
            .filter(|&i| !rows[i].0[col].is_zero())
            .min_by_key(|&i| (rows[i].0[col].degree().unwrap_or(0), i));
        let Some(pr) = pick else { continue };
        rows.swap(pr, next);
        let pivot = rows[next].0[col].clone();
        for i in next + 1..rows.len() {
            let factor = rows[i].0[col].clone();
            if factor.is_zero() {
                continue;
            }
            let (src_left, src_rhs) = (rows[next].0.clone(), rows[next].1.clone());
            for j in 0..cols {
                rows[i].0[j] = pivot.mul(&rows[i].0[j]).sub(&factor.mul(&src_left[j]));
            }
            rows[i].1 = pivot.mul(&rows[i].1).sub(&factor.mul(&src_rhs));
        }
        pivot_polys.push(pivot);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    let residual_polys = rows[next..]
        .iter()
        .filter(|(_, rhs)| !rhs.is_zero())
        .map(|(_, rhs)| rhs.clone())
        .collect();
    LineAnalysis {
        pivot_polys,
        residual_polys,
        generic_rank: next,
    }
}

/// A handful of x vectors in the affine solution set of M x = g, to give
/// the mode filter something to choose from.
fn solution_set_samples(m: &Matrix, g: &[Scalar]) -> Vec<Vec<Scalar>> {
    let Some(particular) = m.solve(g) else {
        return Vec::new();
    };
    let field = m.field();
    let basis = m.nullspace();
    let mut out = vec![particular.clone()];
    let coeffs: Vec<Scalar> = [1i64, -1, 2, 3]
        .iter()
        .map(|&c| Scalar::from_integer(field, c))
        .collect();
    for b in &basis {
        for c in &coeffs {
            let shifted: Vec<Scalar> = particular
                .iter()
                .zip(b.iter())
                .map(|(p, n)| p.add(&n.mul(c)))
                .collect();
            out.push(shifted);
        }
    }
    if basis.len() >= 2 {
        // one combined perturbation helps dodge several zero coordinates
        let combined: Vec<Scalar> = particular
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let mut v = p.clone();
                for (idx, b) in basis.iter().enumerate() {
                    let c = Scalar::from_integer(field, (idx + 1) as i64);
                    v = v.add(&b[k].mul(&c));
                }
                v
            })
            .collect();
        out.push(combined);
    }
    out
}

fn concrete_solutions_for_y(
    sys: &BilinearSystem,
    y: &[Scalar],
    mode: SolutionMode,
    found: &mut Vec<SolutionPair>,
) {
    if y.iter().all(Scalar::is_zero) {
        return;
    }
    let m = sys.assemble_y(y).expect("length checked");
    for x in solution_set_samples(&m, &sys.rhs) {
        let pair = SolutionPair { x, y: y.to_vec() };
        if pair.passes_mode(mode) && sys.is_solution(&pair) {
            found.push(pair);
            return;
        }
    }
}

/// Small integer values for the symbolic coordinate once the line is known
/// to be generically usable.
fn probe_values(field: FieldSpec, count: usize) -> Vec<Scalar> {
    let mut out = vec![
        Scalar::from_integer(field, 1),
        Scalar::from_integer(field, 0),
    ];
    let mut k = 2i64;
    while out.len() < count {
        out.push(Scalar::from_integer(field, k));
        out.push(Scalar::from_integer(field, -(k - 1)));
        k += 1;
    }
    out.truncate(count);
    out
}

fn sweep_one_side(
    sys: &BilinearSystem,
    mode: SolutionMode,
    budget: &SearchBudget,
    found: &mut Vec<SolutionPair>,
) {
    let field = sys.field;
    let p = sys.p;
    let grid: Vec<i64> = vec![0, 1, -1, 2, -2];
    let slices = sys.slices();
    let mut examined: u64 = 0;

    for sym_pos in 0..p {
        let others: Vec<usize> = (0..p).filter(|&i| i != sym_pos).collect();
        let mut idx = vec![0usize; others.len()];
        'grid: loop {
            examined += 1;
            if examined > budget.max_candidates {
                return;
            }
            // y(s): the symbolic coordinate plus grid constants
            let mut y_const = vec![field.zero(); p];
            for (k, &pos) in others.iter().enumerate() {
                y_const[pos] = Scalar::from_integer(field, grid[idx[k]]);
            }

            // M(s)[k][j] = (sum_i y_i A_k[i][j]) + s * A_k[sym_pos][j]
            let const_part = sys.assemble_y(&y_const).expect("length p");
            let mut rows: Vec<(Vec<UPoly>, UPoly)> = Vec::with_capacity(sys.m());
            for k in 0..sys.m() {
                let left: Vec<UPoly> = (0..sys.q)
                    .map(|j| {
                        UPoly::affine(
                            const_part.get(k, j).clone(),
                            slices.row_slices[sym_pos].get(k, j).clone(),
                        )
                    })
                    .collect();
                rows.push((left, UPoly::constant(sys.rhs[k].clone())));
            }
            let analysis = analyze_line(&mut rows, sys.q);

            let mut candidates: Vec<Scalar> = Vec::new();
            let homogeneous = sys.is_homogeneous();
            let generically_usable = if homogeneous {
                analysis.generic_rank < sys.q
            } else {
                analysis.residual_polys.is_empty()
            };
            if generically_usable {
                // pick s with every pivot polynomial nonzero
                'probe: for s in probe_values(field, 12) {
                    if analysis.pivot_polys.iter().any(|pp| pp.eval(&s).is_zero()) {
                        continue 'probe;
                    }
                    let mut y = y_const.clone();
                    y[sym_pos] = s;
                    let before = found.len();
                    concrete_solutions_for_y(sys, &y, mode, found);
                    if found.len() > before {
                        return;
                    }
                }
            } else {
                for rp in &analysis.residual_polys {
                    let (roots, _) = rp.roots_in_field();
                    candidates.extend(roots);
                }
            }
            for pp in &analysis.pivot_polys {
                if pp.degree().unwrap_or(0) >= 1 {
                    let (roots, _) = pp.roots_in_field();
                    candidates.extend(roots);
                }
            }
            candidates.sort_by(|a, b| a.canonical_cmp(b));
            candidates.dedup();
            for s in candidates {
                let mut y = y_const.clone();
                y[sym_pos] = s;
                let before = found.len();
                concrete_solutions_for_y(sys, &y, mode, found);
                if found.len() > before {
                    return;
                }
            }

            // odometer over the grid
            let mut carry = 0usize;
            loop {
                if carry == idx.len() {
                    break 'grid;
                }
                idx[carry] += 1;
                if idx[carry] < grid.len() {
                    break;
                }
                idx[carry] = 0;
                carry += 1;
            }
            if idx.iter().all(|&e| e == 0) {
                break;
            }
        }
    }
}

fn transposed(sys: &BilinearSystem) -> BilinearSystem {
    BilinearSystem {
        p: sys.q,
        q: sys.p,
        matrices: sys.matrices.iter().map(Matrix::transpose).collect(),
        rhs: sys.rhs.clone(),
        field: sys.field,
    }
}

/// Runs the sweep on both sides and returns verified, mode-passing
/// solutions (possibly none). Results are deterministic.
pub fn sweep_solutions(
    sys: &BilinearSystem,
    mode: SolutionMode,
    budget: &SearchBudget,
) -> Vec<SolutionPair> {
    let mut found = Vec::new();
    sweep_one_side(sys, mode, budget, &mut found);
    if found.is_empty() {
        let t = transposed(sys);
        let mut t_found = Vec::new();
        sweep_one_side(&t, mode, budget, &mut t_found);
        found.extend(t_found.into_iter().map(|pair| SolutionPair {
            x: pair.y,
            y: pair.x,
        }));
    }
    found.retain(|pair| sys.is_solution(pair));
    found
}
