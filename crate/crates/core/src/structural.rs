//! Structural always-solvable certificates and constructive solvers: the
//! m <= 2 construction, the three-corner support property, variable
//! specialization, and the m <= p + q - 1 bound.

use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::reduction::normalize_rhs;
use crate::system::{BilinearSystem, SolutionPair};

/// The p-by-q boolean union of the supports of the coefficient matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportPattern {
    pub p: usize,
    pub q: usize,
    mask: Vec<bool>,
}

impl SupportPattern {
    pub fn new(p: usize, q: usize, mask: Vec<bool>) -> SupportPattern {
        assert_eq!(mask.len(), p * q);
        SupportPattern { p, q, mask }
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.mask[i * self.q + j]
    }

    pub fn count(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn row_count(&self, i: usize) -> usize {
        (0..self.q).filter(|&j| self.get(i, j)).count()
    }

    pub fn col_count(&self, j: usize) -> usize {
        (0..self.p).filter(|&i| self.get(i, j)).count()
    }

    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> SupportPattern {
        let mut mask = vec![false; self.p * self.q];
        for i in 0..self.p {
            for j in 0..self.q {
                mask[i * self.q + j] = self.get(row_perm[i], col_perm[j]);
            }
        }
        SupportPattern {
            p: self.p,
            q: self.q,
            mask,
        }
    }
}

/// Union of the supports of the A_i.
pub fn collective_support(sys: &BilinearSystem) -> SupportPattern {
    let mut mask = vec![false; sys.p * sys.q];
    for a in &sys.matrices {
        for i in 0..sys.p {
            for j in 0..sys.q {
                if !a.get(i, j).is_zero() {
                    mask[i * sys.q + j] = true;
                }
            }
        }
    }
    SupportPattern {
        p: sys.p,
        q: sys.q,
        mask,
    }
}

/// True iff no 2-by-2 submask has three or more true entries. Checked by
/// direct enumeration of all row and column pairs.
pub fn has_three_corner_property(pat: &SupportPattern) -> bool {
    for i1 in 0..pat.p {
        for i2 in i1 + 1..pat.p {
            for j1 in 0..pat.q {
                for j2 in j1 + 1..pat.q {
                    let c = pat.get(i1, j1) as u8
                        + pat.get(i1, j2) as u8
                        + pat.get(i2, j1) as u8
                        + pat.get(i2, j2) as u8;
                    if c >= 3 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// One unknown of a bilinear system. The ordering (all x before all y,
/// each by index) fixes the column order of specialized linear systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    X(usize),
    Y(usize),
}

impl std::fmt::Display for Var {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Var::X(j) => write!(f, "x{}", j + 1),
            Var::Y(i) => write!(f, "y{}", i + 1),
        }
    }
}

/// A linear system obtained by giving some variables fixed values. The
/// remaining system is `coeff * u = g - constants` in the unknowns listed
/// in `unknowns` (x's first, then y's, each ascending). When `coeff` has
/// full row rank the witness is independent of g: the bilinear system is
/// always solvable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializedLinear {
    pub p: usize,
    pub q: usize,
    pub field: FieldSpec,
    pub assignment: Vec<(Var, Scalar)>,
    pub unknowns: Vec<Var>,
    pub coeff: Matrix,
    pub constants: Vec<Scalar>,
}

impl SpecializedLinear {
    /// Full row rank: the specialized system is solvable for every g.
    pub fn is_always(&self) -> bool {
        self.coeff.rank() == self.coeff.rows()
    }

    /// Solves the specialized system for a concrete right-hand side and
    /// assembles the full solution pair. None when inconsistent for this g.
    pub fn solve_for(&self, rhs: &[Scalar]) -> Option<SolutionPair> {
        assert_eq!(rhs.len(), self.coeff.rows());
        let adjusted: Vec<Scalar> = rhs
            .iter()
            .zip(&self.constants)
            .map(|(g, c)| g.sub(c))
            .collect();
        let u = self.coeff.solve(&adjusted)?;
        let mut x = vec![self.field.zero(); self.q];
        let mut y = vec![self.field.zero(); self.p];
        for (v, val) in &self.assignment {
            match v {
                Var::X(j) => x[*j] = val.clone(),
                Var::Y(i) => y[*i] = val.clone(),
            }
        }
        for (v, val) in self.unknowns.iter().zip(u) {
            match v {
                Var::X(j) => x[*j] = val,
                Var::Y(i) => y[*i] = val,
            }
        }
        Some(SolutionPair { x, y })
    }
}

/// Substitutes fixed values for the assigned variables. Returns None when
/// some dyad still has both of its variables unassigned, i.e. the result
/// is not linear.
pub fn apply_specialization(
    sys: &BilinearSystem,
    assignment: &[(Var, Scalar)],
) -> Option<SpecializedLinear> {
    let mut x_val: Vec<Option<Scalar>> = vec![None; sys.q];
    let mut y_val: Vec<Option<Scalar>> = vec![None; sys.p];
    for (v, val) in assignment {
        match v {
            Var::X(j) => x_val[*j] = Some(val.clone()),
            Var::Y(i) => y_val[*i] = Some(val.clone()),
        }
    }
    let support = collective_support(sys);
    for i in 0..sys.p {
        for j in 0..sys.q {
            if support.get(i, j) && y_val[i].is_none() && x_val[j].is_none() {
                return None;
            }
        }
    }
    let mut unknowns: Vec<Var> = (0..sys.q)
        .filter(|&j| x_val[j].is_none())
        .map(Var::X)
        .chain((0..sys.p).filter(|&i| y_val[i].is_none()).map(Var::Y))
        .collect();
    unknowns.sort();
    let col_of = |v: &Var| unknowns.binary_search(v).expect("unknown present");

    let m = sys.m();
    let mut coeff = Matrix::zeros(sys.field, m, unknowns.len());
    let mut constants = vec![sys.field.zero(); m];
    for (k, a) in sys.matrices.iter().enumerate() {
        for i in 0..sys.p {
            for j in 0..sys.q {
                let c = a.get(i, j);
                if c.is_zero() {
                    continue;
                }
                match (&y_val[i], &x_val[j]) {
                    (Some(yv), Some(xv)) => {
                        constants[k] = constants[k].add(&c.mul(yv).mul(xv));
                    }
                    (Some(yv), None) => {
                        let col = col_of(&Var::X(j));
                        let v = coeff.get(k, col).add(&c.mul(yv));
                        coeff.set(k, col, v);
                    }
                    (None, Some(xv)) => {
                        let col = col_of(&Var::Y(i));
                        let v = coeff.get(k, col).add(&c.mul(xv));
                        coeff.set(k, col, v);
                    }
                    (None, None) => unreachable!("support was screened"),
                }
            }
        }
    }
    Some(SpecializedLinear {
        p: sys.p,
        q: sys.q,
        field: sys.field,
        assignment: assignment.to_vec(),
        unknowns,
        coeff,
        constants,
    })
}

/// The three-corner specialization: y_i = 1 for rows carrying several
/// support entries (and for isolated entries), x_j = 1 for columns
/// carrying several. Under the three-corner property every support
/// position keeps exactly one free variable and distinct positions keep
/// distinct variables, so linear independence of the matrices makes the
/// coefficient matrix full row rank.
pub fn three_corner_specialization(sys: &BilinearSystem) -> Result<SpecializedLinear> {
    let support = collective_support(sys);
    if !has_three_corner_property(&support) {
        return Err(Error::NotThreeCorner);
    }
    if sys.stack().rank() != sys.m() {
        return Err(Error::DependentMatrices);
    }
    let mut spec_y = vec![false; sys.p];
    let mut spec_x = vec![false; sys.q];
    for i in 0..sys.p {
        for j in 0..sys.q {
            if !support.get(i, j) {
                continue;
            }
            if support.row_count(i) >= 2 {
                spec_y[i] = true;
            } else if support.col_count(j) >= 2 {
                spec_x[j] = true;
            } else {
                spec_y[i] = true;
            }
        }
    }
    let one = sys.field.one();
    let assignment: Vec<(Var, Scalar)> = (0..sys.q)
        .filter(|&j| spec_x[j])
        .map(|j| (Var::X(j), one.clone()))
        .chain(
            (0..sys.p)
                .filter(|&i| spec_y[i])
                .map(|i| (Var::Y(i), one.clone())),
        )
        .collect();
    let spec = apply_specialization(sys, &assignment).ok_or_else(|| {
        Error::Internal("three-corner specialization left a bilinear dyad".into())
    })?;
    if !spec.is_always() {
        // impossible for independent matrices on a three-corner support
        return Err(Error::Internal(
            "three-corner specialization produced a rank-deficient system".into(),
        ));
    }
    Ok(spec)
}

/// Constructive solver for systems with the three-corner property.
pub fn solve_three_corner(sys: &BilinearSystem) -> Result<SolutionPair> {
    let spec = three_corner_specialization(sys)?;
    let pair = spec
        .solve_for(&sys.rhs)
        .ok_or_else(|| Error::Internal("full-row-rank system must be solvable".into()))?;
    if !sys.is_solution(&pair) {
        return Err(Error::Internal(
            "three-corner solution has nonzero residual".into(),
        ));
    }
    Ok(pair)
}

/// Constructive solver for m <= 2 (always solvable under linear
/// independence): m = 1 places a single dyad; m = 2 normalizes the
/// right-hand side to (1, 0) and walks a fixed candidate list — a
/// nullspace basis of A_2, its completion to a full basis, and pairwise
/// sums of completion vectors. If no candidate separated A_1 x from
/// span(A_2 x), every completion vector would satisfy A_1 b = alpha A_2 b
/// with one shared alpha, forcing A_1 = alpha A_2 against independence,
/// so the walk always terminates.
pub fn solve_m2(sys: &BilinearSystem) -> Result<SolutionPair> {
    let m = sys.m();
    if m == 0 || m > 2 {
        return Err(Error::DimensionMismatch(format!("m = {m}, need 1 or 2")));
    }
    if sys.stack().rank() != m {
        return Err(Error::DependentMatrices);
    }
    let field = sys.field;
    if m == 1 {
        let a = &sys.matrices[0];
        for i in 0..sys.p {
            for j in 0..sys.q {
                if !a.get(i, j).is_zero() {
                    let mut x = vec![field.zero(); sys.q];
                    let mut y = vec![field.zero(); sys.p];
                    x[j] = sys.rhs[0].div(a.get(i, j)).expect("entry nonzero");
                    y[i] = field.one();
                    return Ok(SolutionPair { x, y });
                }
            }
        }
        unreachable!("independent single matrix is nonzero");
    }
    if sys.is_homogeneous() {
        return Ok(SolutionPair::zero(field, sys.p, sys.q));
    }
    let norm = normalize_rhs(sys)?;
    let b1 = &norm.matrices[0];
    let b2 = &norm.matrices[1];

    // candidate x* list from the proof
    let mut candidates: Vec<Vec<Scalar>> = Vec::new();
    let null_basis = b2.nullspace();
    candidates.extend(null_basis.iter().cloned());
    let mut completion: Vec<Vec<Scalar>> = Vec::new();
    {
        // extend the nullspace basis to a basis of F^q by standard vectors
        let mut span_rows = null_basis.clone();
        let mut current_rank = span_rows.len();
        for j in 0..sys.q {
            let mut e = vec![field.zero(); sys.q];
            e[j] = field.one();
            let mut trial = span_rows.clone();
            trial.push(e.clone());
            let mat = Matrix::from_rows(field, trial).expect("uniform");
            if mat.rank() > current_rank {
                current_rank += 1;
                span_rows.push(e.clone());
                completion.push(e);
            }
        }
    }
    candidates.extend(completion.iter().cloned());
    for k in 0..completion.len() {
        for l in k + 1..completion.len() {
            let sum: Vec<Scalar> = completion[k]
                .iter()
                .zip(&completion[l])
                .map(|(a, b)| a.add(b))
                .collect();
            candidates.push(sum);
        }
    }

    for xstar in candidates {
        let u1 = b1.mul_vec(&xstar);
        let u2 = b2.mul_vec(&xstar);
        let u2_zero = u2.iter().all(Scalar::is_zero);
        let usable = if u2_zero {
            u1.iter().any(|v| !v.is_zero())
        } else {
            let rows = Matrix::from_rows(field, vec![u2.clone(), u1.clone()]).expect("uniform");
            rows.rank() == 2
        };
        if !usable {
            continue;
        }
        // solve y^T (B1 x*) = 1, y^T (B2 x*) = 0
        let sys_rows = Matrix::from_rows(field, vec![u1, u2]).expect("uniform");
        let target = vec![field.one(), field.zero()];
        let y = sys_rows
            .solve(&target)
            .ok_or_else(|| Error::Internal("separated vectors must admit y".into()))?;
        let pair = SolutionPair { x: xstar, y };
        // elementary pair operations preserve solutions exactly
        if !sys.is_solution(&pair) {
            return Err(Error::Internal(
                "m <= 2 candidate has nonzero residual".into(),
            ));
        }
        return Ok(pair);
    }
    Err(Error::Internal(
        "m <= 2 construction exhausted its candidates".into(),
    ))
}

/// Bounds for the structural searches.
#[derive(Debug, Clone)]
pub struct SearchBudget {
    /// Largest mixed set-to-one subset tried by specialization search.
    pub max_subset_size: usize,
    /// Cap on candidate assignments examined per phase.
    pub max_candidates: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_subset_size: 3,
            max_candidates: 20_000,
        }
    }
}

/// A hit from [`specialization_search`].
#[derive(Debug, Clone)]
pub struct SpecializationHit {
    pub spec: SpecializedLinear,
    /// Full row rank independent of g: an always-solvable witness.
    pub always: bool,
}

impl SpecializationHit {
    pub fn solution_for(&self, rhs: &[Scalar]) -> Option<SolutionPair> {
        self.spec.solve_for(rhs)
    }
}

/// Searches for linearizing variable assignments: mixed set-to-one subsets
/// in ascending size, then full-y vectors, then full-x vectors (small
/// integer pools over infinite fields, capped enumeration over finite
/// ones). A full-row-rank hit is returned immediately as an always
/// witness; otherwise the first assignment consistent for this right-hand
/// side is returned as a concrete hit.
pub fn specialization_search(
    sys: &BilinearSystem,
    budget: &SearchBudget,
) -> Option<SpecializationHit> {
    let mut fallback: Option<SpecializationHit> = None;
    let mut examined: u64 = 0;

    // phase 1: subsets of {x_j, y_i} set to one
    let vars: Vec<Var> = (0..sys.q)
        .map(Var::X)
        .chain((0..sys.p).map(Var::Y))
        .collect();
    let one = sys.field.one();
    let max_size = budget.max_subset_size.min(vars.len());
    for size in 1..=max_size {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            examined += 1;
            if examined > budget.max_candidates {
                return fallback;
            }
            let assignment: Vec<(Var, Scalar)> =
                combo.iter().map(|&i| (vars[i], one.clone())).collect();
            if let Some(spec) = apply_specialization(sys, &assignment) {
                if spec.is_always() {
                    return Some(SpecializationHit { spec, always: true });
                }
                if fallback.is_none() && spec.solve_for(&sys.rhs).is_some() {
                    fallback = Some(SpecializationHit {
                        spec,
                        always: false,
                    });
                }
            }
            if !next_combination(&mut combo, vars.len()) {
                break;
            }
        }
    }

    // phases 2 and 3: full-y and full-x vectors
    for full_y in [true, false] {
        let dim = if full_y { sys.p } else { sys.q };
        for values in vector_pool(sys.field, dim, budget.max_candidates) {
            if values.iter().all(Scalar::is_zero) {
                continue;
            }
            examined += 1;
            if examined > budget.max_candidates {
                return fallback;
            }
            let assignment: Vec<(Var, Scalar)> = values
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, v)| (if full_y { Var::Y(i) } else { Var::X(i) }, v))
                .collect();
            let Some(spec) = apply_specialization(sys, &assignment) else {
                continue;
            };
            if spec.is_always() {
                return Some(SpecializationHit { spec, always: true });
            }
            if fallback.is_none() && spec.solve_for(&sys.rhs).is_some() {
                fallback = Some(SpecializationHit {
                    spec,
                    always: false,
                });
            }
        }
    }
    fallback
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - (k - i) {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn vector_pool(field: FieldSpec, dim: usize, cap: u64) -> Vec<Vec<Scalar>> {
    let values: Vec<Scalar> = match field.order() {
        Some(_) => field.enumerate().expect("finite").collect(),
        None => [0i64, 1, -1, 2, -2]
            .iter()
            .map(|&v| Scalar::from_integer(field, v))
            .collect(),
    };
    let mut out = Vec::new();
    let mut idx = vec![0usize; dim];
    loop {
        out.push(idx.iter().map(|&e| values[e].clone()).collect());
        if out.len() as u64 >= cap {
            break;
        }
        let mut carry = 0usize;
        loop {
            if carry == dim {
                return out;
            }
            idx[carry] += 1;
            if idx[carry] < values.len() {
                break;
            }
            idx[carry] = 0;
            carry += 1;
        }
    }
    out
}

/// Always-solvable verdict with a replayable witness.
#[derive(Debug, Clone)]
pub enum AlwaysVerdict {
    Yes(AlwaysWitness),
    /// m >= p + q: some right-hand side is unattainable.
    ViolatesBound,
    Unknown,
}

#[derive(Debug, Clone)]
pub enum AlwaysWitness {
    /// m <= 2 under linear independence.
    TwoEquations,
    ThreeCorner(SpecializedLinear),
    Specialization(SpecializedLinear),
}

impl AlwaysVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, AlwaysVerdict::Yes(_))
    }
}

/// Decides always-solvability where a structural criterion applies:
/// the bound m <= p + q - 1 is necessary; m <= 2, the three-corner
/// property, and a g-independent specialization witness are each
/// sufficient. `Unknown` is a genuine outcome: systems exist that are
/// always solvable with none of these witnesses.
pub fn certify_always_solvable(sys: &BilinearSystem) -> Result<AlwaysVerdict> {
    if sys.stack().rank() != sys.m() {
        return Err(Error::DependentMatrices);
    }
    if sys.m() >= sys.p + sys.q {
        return Ok(AlwaysVerdict::ViolatesBound);
    }
    if sys.m() <= 2 {
        return Ok(AlwaysVerdict::Yes(AlwaysWitness::TwoEquations));
    }
    if has_three_corner_property(&collective_support(sys)) {
        let spec = three_corner_specialization(sys)?;
        return Ok(AlwaysVerdict::Yes(AlwaysWitness::ThreeCorner(spec)));
    }
    if let Some(hit) = specialization_search(sys, &SearchBudget::default()) {
        if hit.always {
            return Ok(AlwaysVerdict::Yes(AlwaysWitness::Specialization(hit.spec)));
        }
    }
    Ok(AlwaysVerdict::Unknown)
}
