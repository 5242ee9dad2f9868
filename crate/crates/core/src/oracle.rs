//! Independent brute-force ground truth over finite fields: exhaustive
//! solution enumeration, image counting for the m >= p + q bound, and
//! exhaustive always-solvability. Budgets are hard limits; an oracle that
//! silently samples is not an oracle.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fields::Scalar;
use crate::system::{canonical_solution_set, BilinearSystem, SolutionMode, SolutionPair};

fn field_elements(sys: &BilinearSystem) -> Result<Vec<Scalar>> {
    sys.field
        .enumerate()
        .map(|it| it.collect())
        .map_err(|_| Error::InfiniteField)
}

fn vectors_of(elems: &[Scalar], len: usize) -> impl Iterator<Item = Vec<Scalar>> + '_ {
    let n = elems.len();
    let total = (n as u128).pow(len as u32);
    (0..total).map(move |mut code| {
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push(elems[(code % n as u128) as usize].clone());
            code /= n as u128;
        }
        v
    })
}

/// Enumerates all pairs (x, y), filters by residual and mode, and returns
/// canonical representatives under the scaling relation (t x, y / t).
pub fn brute_force_solve(
    sys: &BilinearSystem,
    mode: SolutionMode,
    budget: u64,
) -> Result<Vec<SolutionPair>> {
    let elems = field_elements(sys)?;
    let n = elems.len() as u128;
    if n.checked_pow(sys.p as u32 + sys.q as u32)
        .is_none_or(|pairs| pairs > budget as u128)
    {
        return Err(Error::BudgetExceeded(format!(
            "candidate pairs exceed budget {budget}"
        )));
    }
    let mut found = Vec::new();
    for x in vectors_of(&elems, sys.q) {
        for y in vectors_of(&elems, sys.p) {
            let pair = SolutionPair { x: x.clone(), y };
            if pair.passes_mode(mode) && sys.is_solution(&pair) {
                found.push(pair);
            }
        }
    }
    Ok(canonical_solution_set(found))
}

/// Exact image census of F(x, y) = (y^T A_1 x, ..., y^T A_m x).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageReport {
    pub field_size: u64,
    pub p: usize,
    pub q: usize,
    pub m: usize,
    /// Number of distinct right-hand sides attained by some pair.
    pub attained: u128,
    /// (N^q - 1)(N^p - 1)/(N - 1) + 1, the scaling-quotient counting bound.
    pub bound: u128,
    /// N^m, the number of all right-hand sides.
    pub total: u128,
}

impl ImageReport {
    /// The counting chain that forces unattained right-hand sides as soon
    /// as m >= p + q.
    pub fn bound_applies(&self) -> bool {
        self.m >= self.p + self.q
    }
}

/// Counts the attained right-hand sides by enumerating all pairs.
pub fn image_cardinality(sys: &BilinearSystem, budget: u64) -> Result<ImageReport> {
    let elems = field_elements(sys)?;
    let n = elems.len() as u128;
    if n.checked_pow(sys.p as u32 + sys.q as u32)
        .is_none_or(|pairs| pairs > budget as u128)
    {
        return Err(Error::BudgetExceeded(format!(
            "candidate pairs exceed budget {budget}"
        )));
    }
    let mut image: BTreeSet<Vec<u64>> = BTreeSet::new();
    for x in vectors_of(&elems, sys.q) {
        let xm = sys.assemble_x(&x)?;
        for y in vectors_of(&elems, sys.p) {
            // g_k = y^T (A_k x) = (X^T y)_k
            let g = xm.transpose().mul_vec(&y);
            let key: Vec<u64> = g
                .iter()
                .map(|s| match s {
                    Scalar::Mod { value, .. } => *value,
                    _ => unreachable!("finite field"),
                })
                .collect();
            image.insert(key);
        }
    }
    let nq = n.pow(sys.q as u32);
    let np = n.pow(sys.p as u32);
    let bound = (nq - 1) * (np - 1) / (n - 1) + 1;
    Ok(ImageReport {
        field_size: elems.len() as u64,
        p: sys.p,
        q: sys.q,
        m: sys.m(),
        attained: image.len() as u128,
        bound,
        total: n.pow(sys.m() as u32),
    })
}

/// Outcome of the exhaustive always-solvability check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlwaysReport {
    pub always: bool,
    /// Lexicographically first unattained right-hand side, when not
    /// always solvable.
    pub witness: Option<Vec<Scalar>>,
}

/// True iff every right-hand side in GF(p)^m is attained. One pass over
/// all pairs computes the image, which is equivalent to running the brute
/// force per right-hand side but visits each pair once.
pub fn always_solvable_exhaustive(sys: &BilinearSystem, budget: u64) -> Result<AlwaysReport> {
    let report = image_cardinality(sys, budget)?;
    if report.attained == report.total {
        return Ok(AlwaysReport {
            always: true,
            witness: None,
        });
    }
    // recover the lexicographically first missing g
    let elems = field_elements(sys)?;
    let mut image: BTreeSet<Vec<u64>> = BTreeSet::new();
    for x in vectors_of(&elems, sys.q) {
        let xm = sys.assemble_x(&x)?;
        for y in vectors_of(&elems, sys.p) {
            let g = xm.transpose().mul_vec(&y);
            image.insert(
                g.iter()
                    .map(|s| match s {
                        Scalar::Mod { value, .. } => *value,
                        _ => unreachable!(),
                    })
                    .collect(),
            );
        }
    }
    // lexicographic enumeration of g to find the first missing one
    let m = sys.m();
    let mut witness = None;
    let n = elems.len();
    let mut idx = vec![0usize; m];
    loop {
        let key: Vec<u64> = idx
            .iter()
            .map(|&e| match &elems[e] {
                Scalar::Mod { value, .. } => *value,
                _ => unreachable!(),
            })
            .collect();
        if !image.contains(&key) {
            witness = Some(idx.iter().map(|&e| elems[e].clone()).collect());
            break;
        }
        // increment from the last coordinate for lexicographic order
        let mut k = m;
        loop {
            if k == 0 {
                return Ok(AlwaysReport {
                    always: false,
                    witness,
                });
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
        }
    }
    Ok(AlwaysReport {
        always: false,
        witness,
    })
}
