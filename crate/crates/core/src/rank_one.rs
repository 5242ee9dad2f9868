//! Rank-one completion: decide whether the pencil contains a rank-one
//! matrix and factor it into a solution pair.
//!
//! A nonzero matrix has rank one iff all its 2-by-2 minors vanish, so the
//! search space is a system of quadratics in the pencil parameters. The
//! cases that admit complete exact decisions are handled head-on: complete
//! systems (r = 0), one-parameter pencils (r = 1, roots via the quadratic
//! formula with exact square roots), two-parameter homogeneous pencils
//! (split along the projective line into two r = 1 problems), and finite
//! fields (exhaustive enumeration). Everything else goes through the
//! structural heuristics, with an honest `Undecided` when they fail.

use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};
use crate::matrix::{Matrix, RowOp};
use crate::pencil::{build_pencil, AffinePencil};
use crate::poly::{discriminant, UPoly};
use crate::reduction::reduce_system;
use crate::slicing;
use crate::structural;
use crate::system::{canonical_solution_set, BilinearSystem, SolutionMode, SolutionPair};

/// Polynomial of total degree at most two in the pencil parameters
/// z_1..z_r, with exact coefficients. The quadratic part is stored as the
/// upper triangle in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadPoly {
    pub r: usize,
    pub constant: Scalar,
    pub linear: Vec<Scalar>,
    pub quadratic: Vec<Scalar>,
}

impl QuadPoly {
    fn tri_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i <= j && j < self.r);
        i * self.r - i * (i + 1) / 2 + j
    }

    pub fn quad_coeff(&self, i: usize, j: usize) -> &Scalar {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        &self.quadratic[self.tri_index(i, j)]
    }

    pub fn eval(&self, z: &[Scalar]) -> Scalar {
        assert_eq!(z.len(), self.r);
        let mut acc = self.constant.clone();
        for (k, c) in self.linear.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul(&z[k]));
            }
        }
        for i in 0..self.r {
            for j in i..self.r {
                let c = self.quad_coeff(i, j);
                if !c.is_zero() {
                    acc = acc.add(&c.mul(&z[i]).mul(&z[j]));
                }
            }
        }
        acc
    }

    pub fn degree(&self) -> usize {
        if self.quadratic.iter().any(|c| !c.is_zero()) {
            2
        } else if self.linear.iter().any(|c| !c.is_zero()) {
            1
        } else {
            0
        }
    }

    pub fn is_zero(&self) -> bool {
        self.degree() == 0 && self.constant.is_zero()
    }

    /// View as a univariate polynomial; only valid for r = 1.
    pub fn as_univariate(&self) -> UPoly {
        assert_eq!(self.r, 1);
        UPoly::from_coeffs(
            self.constant.field(),
            vec![
                self.constant.clone(),
                self.linear[0].clone(),
                self.quadratic[0].clone(),
            ],
        )
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for i in 0..self.r {
            for j in i..self.r {
                let c = self.quad_coeff(i, j);
                if !c.is_zero() {
                    let v = if i == j {
                        format!("z{}^2", i + 1)
                    } else {
                        format!("z{}*z{}", i + 1, j + 1)
                    };
                    parts.push(format!("({c})*{v}"));
                }
            }
        }
        for (k, c) in self.linear.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("({c})*z{}", k + 1));
            }
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push(format!("({})", self.constant));
        }
        parts.join(" + ")
    }
}

/// Affine form c + sum l_k z_k; products of two of these are the minors.
#[derive(Debug, Clone)]
struct AffForm {
    c: Scalar,
    l: Vec<Scalar>,
}

impl AffForm {
    fn of_entry(pencil: &AffinePencil, i: usize, j: usize) -> AffForm {
        AffForm {
            c: pencil.k0.get(i, j).clone(),
            l: pencil.basis.iter().map(|b| b.get(i, j).clone()).collect(),
        }
    }

    fn mul(&self, other: &AffForm) -> QuadPoly {
        let r = self.l.len();
        let constant = self.c.mul(&other.c);
        let linear: Vec<Scalar> = (0..r)
            .map(|k| self.c.mul(&other.l[k]).add(&other.c.mul(&self.l[k])))
            .collect();
        let mut quadratic = Vec::with_capacity(r * (r + 1) / 2);
        for i in 0..r {
            for j in i..r {
                let v = if i == j {
                    self.l[i].mul(&other.l[i])
                } else {
                    self.l[i].mul(&other.l[j]).add(&self.l[j].mul(&other.l[i]))
                };
                quadratic.push(v);
            }
        }
        QuadPoly {
            r,
            constant,
            linear,
            quadratic,
        }
    }
}

fn quad_sub(a: &QuadPoly, b: &QuadPoly) -> QuadPoly {
    QuadPoly {
        r: a.r,
        constant: a.constant.sub(&b.constant),
        linear: a
            .linear
            .iter()
            .zip(&b.linear)
            .map(|(x, y)| x.sub(y))
            .collect(),
        quadratic: a
            .quadratic
            .iter()
            .zip(&b.quadratic)
            .map(|(x, y)| x.sub(y))
            .collect(),
    }
}

/// All 2-by-2 minors of K(z) as quadratics in z, ordered lexicographically
/// in (row pair, column pair). Empty when p or q is 1.
pub fn minor_system(pencil: &AffinePencil) -> Vec<QuadPoly> {
    let mut out = Vec::new();
    for a in 0..pencil.p {
        for b in a + 1..pencil.p {
            for c in 0..pencil.q {
                for d in c + 1..pencil.q {
                    let m11 = AffForm::of_entry(pencil, a, c);
                    let m12 = AffForm::of_entry(pencil, a, d);
                    let m21 = AffForm::of_entry(pencil, b, c);
                    let m22 = AffForm::of_entry(pencil, b, d);
                    out.push(quad_sub(&m11.mul(&m22), &m12.mul(&m21)));
                }
            }
        }
    }
    out
}

/// Exact rank over the field, by Gaussian elimination.
pub fn exact_rank(m: &Matrix) -> usize {
    m.rank()
}

/// Factors a rank-one matrix as y x^T. Deterministic: y is the first
/// nonzero column scaled so its first nonzero entry is 1, x follows by
/// division. Errors unless the factorization reproduces the matrix
/// exactly.
pub fn factor_rank_one(k: &Matrix) -> Result<SolutionPair> {
    let j0 = (0..k.cols())
        .find(|&j| (0..k.rows()).any(|i| !k.get(i, j).is_zero()))
        .ok_or(Error::NotRankOne)?;
    let y_raw = k.col(j0);
    let i0 = y_raw
        .iter()
        .position(|v| !v.is_zero())
        .expect("column nonzero");
    let t = y_raw[i0].inv().expect("nonzero");
    let y: Vec<Scalar> = y_raw.iter().map(|v| v.mul(&t)).collect();
    let x = k.row(i0);
    for i in 0..k.rows() {
        for j in 0..k.cols() {
            if k.get(i, j) != &y[i].mul(&x[j]) {
                return Err(Error::NotRankOne);
            }
        }
    }
    Ok(SolutionPair { x, y })
}

/// Why a system has no solution; carries enough exact data to re-check the
/// claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Elementary operations produced a zero matrix with nonzero
    /// right-hand side; the op log replays the contradiction.
    InconsistentReduction { witness_row: usize, ops: Vec<RowOp> },
    /// A z-free 2-by-2 minor of the pencil is nonzero.
    ConstantMinorNonzero { minor_index: usize, value: Scalar },
    /// The minors of a one-parameter pencil have no common root giving a
    /// rank-one matrix (with the mode respected); for a quadratic
    /// generator the discriminant is recorded.
    R1NoCommonRoot {
        discriminant: Option<Scalar>,
        detail: String,
    },
    /// Exhaustive enumeration of the parameter space found nothing.
    ExhaustedFiniteField { points_tried: u64 },
    /// Homogeneous system whose pencil analysis admits only the trivial
    /// solutions.
    OnlyTrivial,
    /// Entry (row, col) of the pencil is identically zero, so y_row or
    /// x_col vanishes in every solution; fatal for totally-nonzero
    /// requests.
    ForcedZeroEntry { row: usize, col: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UndecidedReason {
    GeneralRTooLarge,
    HeuristicsFailed,
    BudgetExceeded(String),
}

/// Three-valued outcome. Every listed solution has zero residual against
/// the system it was produced for (re-verified before return).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverOutcome {
    Solutions(Vec<SolutionPair>),
    NoSolution(Certificate),
    Undecided(UndecidedReason),
}

impl SolverOutcome {
    pub fn solutions(&self) -> Option<&[SolutionPair]> {
        match self {
            SolverOutcome::Solutions(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_solutions(&self) -> bool {
        matches!(self, SolverOutcome::Solutions(_))
    }

    pub fn is_no_solution(&self) -> bool {
        matches!(self, SolverOutcome::NoSolution(_))
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub mode: SolutionMode,
    /// Cap on finite-field enumeration points.
    pub budget: u64,
    pub search: structural::SearchBudget,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            mode: SolutionMode::Any,
            budget: 10_000_000,
            search: structural::SearchBudget::default(),
        }
    }
}

fn enumerate_vectors(elems: &[Scalar], len: usize) -> Vec<Vec<Scalar>> {
    let n = elems.len();
    let total = n.pow(len as u32);
    (0..total)
        .map(|mut code| {
            let mut v = Vec::with_capacity(len);
            for _ in 0..len {
                v.push(elems[code % n].clone());
                code /= n;
            }
            v
        })
        .collect()
}

/// Representatives of the trivial solution classes of a homogeneous
/// system: over a finite field all of them (matching what brute-force
/// enumeration reports), over an infinite field the zero pair.
fn trivial_class_solutions(field: FieldSpec, p: usize, q: usize) -> Vec<SolutionPair> {
    let mut out = vec![SolutionPair::zero(field, p, q)];
    if let Some(n) = field.order() {
        let elems: Vec<Scalar> = field.enumerate().expect("finite").collect();
        // normalized nonzero vectors: first nonzero entry is 1
        let normalized = |len: usize| -> Vec<Vec<Scalar>> {
            let mut vecs = Vec::new();
            for lead in 0..len {
                let tail = len - lead - 1;
                let mut idx = vec![0usize; tail];
                loop {
                    let mut v = vec![field.zero(); len];
                    v[lead] = field.one();
                    for (k, &e) in idx.iter().enumerate() {
                        v[lead + 1 + k] = elems[e].clone();
                    }
                    vecs.push(v);
                    // odometer
                    let mut k = 0;
                    loop {
                        if k == tail {
                            break;
                        }
                        idx[k] += 1;
                        if idx[k] < n as usize {
                            break;
                        }
                        idx[k] = 0;
                        k += 1;
                    }
                    if tail == 0 || idx.iter().all(|&e| e == 0) {
                        break;
                    }
                }
            }
            vecs
        };
        for y in normalized(p) {
            out.push(SolutionPair {
                x: vec![field.zero(); q],
                y,
            });
        }
        for x in normalized(q) {
            out.push(SolutionPair {
                x,
                y: vec![field.zero(); p],
            });
        }
    }
    out
}

/// Solves a complete system (r = 0): the pencil is a single matrix.
pub fn solve_complete(
    pencil: &AffinePencil,
    homogeneous: bool,
    mode: SolutionMode,
) -> SolverOutcome {
    assert_eq!(pencil.r(), 0);
    let k0 = &pencil.k0;
    let rank = k0.rank();
    let mut found = Vec::new();
    if rank == 1 {
        let pair = factor_rank_one(k0).expect("rank one");
        if pair.passes_mode(mode) {
            found.push(pair);
        }
    }
    if homogeneous && mode == SolutionMode::Any {
        found.extend(trivial_class_solutions(pencil.field, pencil.p, pencil.q));
    }
    if !found.is_empty() {
        return SolverOutcome::Solutions(canonical_solution_set(found));
    }
    match rank {
        0 => SolverOutcome::NoSolution(Certificate::OnlyTrivial),
        1 => {
            // the unique candidate failed the mode filter; some entry of
            // K0 is zero, forcing a coordinate of every solution to zero
            let (mut row, mut col) = (0, 0);
            'outer: for i in 0..k0.rows() {
                for j in 0..k0.cols() {
                    if k0.get(i, j).is_zero() {
                        (row, col) = (i, j);
                        break 'outer;
                    }
                }
            }
            SolverOutcome::NoSolution(Certificate::ForcedZeroEntry { row, col })
        }
        _ => {
            let minors = minor_system(pencil);
            let idx = minors
                .iter()
                .position(|m| !m.constant.is_zero())
                .expect("rank >= 2 forces a nonzero minor");
            SolverOutcome::NoSolution(Certificate::ConstantMinorNonzero {
                minor_index: idx,
                value: minors[idx].constant.clone(),
            })
        }
    }
}

/// Points to try along a one-parameter family when every minor vanishes
/// identically: each pencil entry is affine in z, so at most pq + 1 values
/// are degenerate and pq + 2 distinct candidates always include a good
/// one. Over a finite field the whole field is scanned.
fn line_candidates(field: FieldSpec, count: usize) -> Vec<Scalar> {
    match field.order() {
        Some(_) => field.enumerate().expect("finite").collect(),
        None => {
            let mut out = vec![Scalar::from_integer(field, 0)];
            let mut k = 1i64;
            while out.len() < count {
                out.push(Scalar::from_integer(field, k));
                out.push(Scalar::from_integer(field, -k));
                k += 1;
            }
            out
        }
    }
}

/// Solves a one-parameter pencil K(z) = G + z H exactly.
///
/// The rank screen |rank G - rank H| <= 1 is necessary only for roots
/// z != 0 (G = K(z) - zH bounds the rank gap); when it fails, z = 0 is the
/// only possible completion and is checked directly. Otherwise minors with
/// no z must already vanish, and the remaining univariate polynomials must
/// share a common root, computed exactly via the quadratic formula and
/// verified against every minor — skipping non-contiguous minors is
/// unsound.
pub fn solve_r1(pencil: &AffinePencil, homogeneous: bool, mode: SolutionMode) -> SolverOutcome {
    assert_eq!(pencil.r(), 1);
    let field = pencil.field;
    let g = &pencil.k0;
    let h = &pencil.basis[0];

    let mut found: Vec<SolutionPair> = Vec::new();
    let mut no_solution: Option<Certificate> = None;

    let rank_gap = (g.rank() as i64 - h.rank() as i64).abs();
    if rank_gap > 1 {
        // only z = 0 can work
        if g.rank() == 1 {
            let pair = factor_rank_one(g).expect("rank one");
            if pair.passes_mode(mode) {
                found.push(pair);
            }
        }
        if found.is_empty() {
            no_solution = Some(Certificate::R1NoCommonRoot {
                discriminant: None,
                detail: format!(
                    "rank gap |{} - {}| > 1 rules out z != 0; K(0) is not a usable rank-one point",
                    g.rank(),
                    h.rank()
                ),
            });
        }
        return finish_r1(pencil, found, no_solution, homogeneous, mode);
    }

    let minors = minor_system(pencil);
    for (idx, m) in minors.iter().enumerate() {
        if m.degree() == 0 && !m.constant.is_zero() {
            return finish_r1(
                pencil,
                Vec::new(),
                Some(Certificate::ConstantMinorNonzero {
                    minor_index: idx,
                    value: m.constant.clone(),
                }),
                homogeneous,
                mode,
            );
        }
    }
    let nonconst: Vec<(usize, &QuadPoly)> = minors
        .iter()
        .enumerate()
        .filter(|(_, m)| m.degree() >= 1)
        .collect();

    if nonconst.is_empty() {
        // rank <= 1 along the whole line (p = 1, q = 1, or all minors
        // identically zero): pick usable points directly
        if let Some(cert) = identically_zero_entry_block(pencil, mode) {
            return finish_r1(pencil, Vec::new(), Some(cert), homogeneous, mode);
        }
        let candidates = line_candidates(field, pencil.p * pencil.q + 2);
        let mut saw_rank_one = false;
        for z in &candidates {
            let k = pencil.eval(std::slice::from_ref(z)).expect("r = 1");
            if k.rank() == 1 {
                saw_rank_one = true;
                let pair = factor_rank_one(&k).expect("rank one");
                if pair.passes_mode(mode) {
                    found.push(pair);
                    if found.len() >= 4 && !field.is_finite() {
                        break;
                    }
                }
            }
        }
        if found.is_empty() {
            no_solution = Some(if saw_rank_one || !field.is_finite() {
                Certificate::R1NoCommonRoot {
                    discriminant: None,
                    detail: "rank-one points exist along the line but none passes the \
                             requested mode"
                        .into(),
                }
            } else {
                Certificate::ExhaustedFiniteField {
                    points_tried: candidates.len() as u64,
                }
            });
        }
        return finish_r1(pencil, found, no_solution, homogeneous, mode);
    }

    // generator: lowest degree first, then minor order, to minimize square
    // roots
    let &(gen_idx, generator) = nonconst
        .iter()
        .min_by_key(|(idx, m)| (m.degree(), *idx))
        .expect("nonempty");
    let gen_poly = generator.as_univariate();
    let (roots, complete) = gen_poly.roots_in_field();
    debug_assert!(complete, "degree <= 2 roots are always complete");
    let disc = if generator.degree() == 2 {
        Some(discriminant(
            &generator.quadratic[0],
            &generator.linear[0],
            &generator.constant,
        ))
    } else {
        None
    };

    let mut rejected = Vec::new();
    for z in &roots {
        let all_vanish = minors
            .iter()
            .all(|m| m.eval(std::slice::from_ref(z)).is_zero());
        if !all_vanish {
            rejected.push(format!("z = {z} fails a minor"));
            continue;
        }
        let k = pencil.eval(std::slice::from_ref(z)).expect("r = 1");
        if k.rank() != 1 {
            rejected.push(format!("z = {z} gives the zero matrix"));
            continue;
        }
        let pair = factor_rank_one(&k).expect("rank one");
        if pair.passes_mode(mode) {
            found.push(pair);
        } else {
            rejected.push(format!("z = {z} fails the solution mode"));
        }
    }
    if found.is_empty() {
        let detail = if roots.is_empty() {
            format!(
                "generator minor {} = {} has no root in {field}",
                gen_idx + 1,
                generator.render()
            )
        } else {
            format!(
                "all candidate roots of minor {} rejected: {}",
                gen_idx + 1,
                rejected.join("; ")
            )
        };
        no_solution = Some(Certificate::R1NoCommonRoot {
            discriminant: disc,
            detail,
        });
    }
    finish_r1(pencil, found, no_solution, homogeneous, mode)
}

/// Detects an identically-zero pencil entry, which forbids totally-nonzero
/// solutions outright.
fn identically_zero_entry_block(pencil: &AffinePencil, mode: SolutionMode) -> Option<Certificate> {
    if mode != SolutionMode::TotallyNonzero {
        return None;
    }
    for i in 0..pencil.p {
        for j in 0..pencil.q {
            let zero_everywhere =
                pencil.k0.get(i, j).is_zero() && pencil.basis.iter().all(|b| b.get(i, j).is_zero());
            if zero_everywhere {
                return Some(Certificate::ForcedZeroEntry { row: i, col: j });
            }
        }
    }
    None
}

fn finish_r1(
    pencil: &AffinePencil,
    mut found: Vec<SolutionPair>,
    no_solution: Option<Certificate>,
    homogeneous: bool,
    mode: SolutionMode,
) -> SolverOutcome {
    if homogeneous && mode == SolutionMode::Any {
        found.extend(trivial_class_solutions(pencil.field, pencil.p, pencil.q));
    }
    if !found.is_empty() {
        SolverOutcome::Solutions(canonical_solution_set(found))
    } else if let Some(cert) = no_solution {
        SolverOutcome::NoSolution(cert)
    } else {
        SolverOutcome::NoSolution(if homogeneous {
            Certificate::OnlyTrivial
        } else {
            Certificate::R1NoCommonRoot {
                discriminant: None,
                detail: "no candidates".into(),
            }
        })
    }
}

/// Homogeneous pencil with two parameters: rank-one points are invariant
/// under scaling z, so the projective split z = (t, 1) and z = (1, 0)
/// covers everything; each branch is an r = 1 problem.
pub fn solve_r2_homogeneous(pencil: &AffinePencil, mode: SolutionMode) -> SolverOutcome {
    assert_eq!(pencil.r(), 2);
    assert!(pencil.k0.is_zero(), "pencil must be homogeneous");
    let line = AffinePencil {
        p: pencil.p,
        q: pencil.q,
        field: pencil.field,
        k0: pencil.basis[1].clone(),
        basis: vec![pencil.basis[0].clone()],
    };
    let branch_a = solve_r1(&line, false, mode);
    let mut found = Vec::new();
    let mut cert_a = None;
    match branch_a {
        SolverOutcome::Solutions(s) => found.extend(s),
        SolverOutcome::NoSolution(c) => cert_a = Some(c),
        SolverOutcome::Undecided(r) => return SolverOutcome::Undecided(r),
    }
    let dir = &pencil.basis[0];
    if dir.rank() == 1 {
        let pair = factor_rank_one(dir).expect("rank one");
        if pair.passes_mode(mode) {
            found.push(pair);
        }
    }
    if mode == SolutionMode::Any {
        found.extend(trivial_class_solutions(pencil.field, pencil.p, pencil.q));
    }
    if !found.is_empty() {
        return SolverOutcome::Solutions(canonical_solution_set(found));
    }
    let detail_b = format!("direction z = (1, 0) has rank {}", dir.rank());
    SolverOutcome::NoSolution(match cert_a {
        Some(Certificate::R1NoCommonRoot {
            discriminant,
            detail,
        }) => Certificate::R1NoCommonRoot {
            discriminant,
            detail: format!("line z = (t, 1): {detail}; {detail_b}"),
        },
        Some(c) => c,
        None => Certificate::OnlyTrivial,
    })
}

/// Exhaustive scan of z in GF(p)^r, collecting every rank-one point.
pub fn solve_finite_field(
    pencil: &AffinePencil,
    homogeneous: bool,
    mode: SolutionMode,
    budget: u64,
) -> Result<SolverOutcome> {
    let Some(n) = pencil.field.order() else {
        return Err(Error::InfiniteField);
    };
    let r = pencil.r() as u32;
    let points = (n as u128)
        .checked_pow(r)
        .ok_or_else(|| Error::BudgetExceeded(format!("{n}^{r} parameter points overflow")))?;
    if points > budget as u128 {
        return Err(Error::BudgetExceeded(format!(
            "{points} parameter points exceed budget {budget}"
        )));
    }
    let elems: Vec<Scalar> = pencil.field.enumerate().expect("finite").collect();
    let mut idx = vec![0usize; pencil.r()];
    let mut found = Vec::new();
    let mut tried: u64 = 0;
    loop {
        let z: Vec<Scalar> = idx.iter().map(|&e| elems[e].clone()).collect();
        tried += 1;
        let k = pencil.eval(&z).expect("length r");
        if k.rank() == 1 {
            let pair = factor_rank_one(&k).expect("rank one");
            if pair.passes_mode(mode) {
                found.push(pair);
            }
        }
        // odometer
        let mut carry = 0usize;
        loop {
            if carry == idx.len() {
                break;
            }
            idx[carry] += 1;
            if idx[carry] < elems.len() {
                break;
            }
            idx[carry] = 0;
            carry += 1;
        }
        if idx.is_empty() || idx.iter().all(|&e| e == 0) {
            break;
        }
    }
    if homogeneous && mode == SolutionMode::Any {
        found.extend(trivial_class_solutions(pencil.field, pencil.p, pencil.q));
    }
    if !found.is_empty() {
        Ok(SolverOutcome::Solutions(canonical_solution_set(found)))
    } else if homogeneous && mode != SolutionMode::Any {
        Ok(SolverOutcome::NoSolution(Certificate::OnlyTrivial))
    } else {
        Ok(SolverOutcome::NoSolution(
            Certificate::ExhaustedFiniteField {
                points_tried: tried,
            },
        ))
    }
}

/// Top-level dispatcher: reduce, build the pencil, then pick the solver
/// that can decide the instance; structural searches are the fallback and
/// an honest `Undecided` the last resort. Every returned solution is
/// re-verified against the original system.
pub fn solve(sys: &BilinearSystem, opts: &SolveOptions) -> SolverOutcome {
    let report = reduce_system(sys);
    if report.inconsistent {
        return SolverOutcome::NoSolution(Certificate::InconsistentReduction {
            witness_row: report.witness_row.expect("inconsistent"),
            ops: report.ops_applied.clone(),
        });
    }
    let rsys = &report.reduced;
    let homogeneous = rsys.is_homogeneous();
    let mode = opts.mode;

    if rsys.m() == 0 {
        // every pair solves the empty system; over a finite field report
        // the whole class space so oracle comparisons line up
        if let Some(n) = sys.field.order() {
            let pairs = (n as u128).saturating_pow((sys.p + sys.q) as u32);
            if pairs <= opts.budget as u128 {
                let elems: Vec<Scalar> = sys.field.enumerate().expect("finite").collect();
                let mut all = Vec::new();
                for x in enumerate_vectors(&elems, sys.q) {
                    for y in enumerate_vectors(&elems, sys.p) {
                        let pair = SolutionPair { x: x.clone(), y };
                        if pair.passes_mode(mode) {
                            all.push(pair);
                        }
                    }
                }
                return verified(sys, SolverOutcome::Solutions(canonical_solution_set(all)));
            }
        }
        let pair = match mode {
            SolutionMode::Any => SolutionPair::zero(sys.field, sys.p, sys.q),
            _ => SolutionPair::ones(sys.field, sys.p, sys.q),
        };
        return verified(sys, SolverOutcome::Solutions(vec![pair]));
    }

    let pencil = match build_pencil(rsys) {
        Ok(p) => p,
        Err(e) => {
            return SolverOutcome::Undecided(UndecidedReason::BudgetExceeded(format!(
                "internal: pencil construction failed after reduction: {e}"
            )))
        }
    };
    let r = pencil.r();

    // Over a finite field the homogeneous mode=Any outcome enumerates all
    // trivial classes, which only the exhaustive path reports uniformly.
    let outcome = if r == 0 {
        solve_complete(&pencil, homogeneous, mode)
    } else if r == 1 {
        solve_r1(&pencil, homogeneous, mode)
    } else if pencil.field.is_finite() {
        match solve_finite_field(&pencil, homogeneous, mode, opts.budget) {
            Ok(o) => o,
            Err(e) => SolverOutcome::Undecided(UndecidedReason::BudgetExceeded(e.to_string())),
        }
    } else if homogeneous && r == 2 {
        solve_r2_homogeneous(&pencil, mode)
    } else {
        solve_infinite_general(rsys, mode, opts, r)
    };
    verified(sys, outcome)
}

/// Heuristic chain for infinite fields with r >= 2: one-parameter slicing
/// sweeps, the constructive m <= 2 route, the three-corner solver, and
/// bounded specialization search. Finds solutions or gives up; it never
/// claims NoSolution.
fn solve_infinite_general(
    rsys: &BilinearSystem,
    mode: SolutionMode,
    opts: &SolveOptions,
    r: usize,
) -> SolverOutcome {
    let mut found: Vec<SolutionPair> = Vec::new();

    found.extend(slicing::sweep_solutions(rsys, mode, &opts.search));

    if found.is_empty() && rsys.m() <= 2 {
        if let Ok(pair) = structural::solve_m2(rsys) {
            if pair.passes_mode(mode) {
                found.push(pair);
            }
        }
    }
    if found.is_empty() {
        if let Ok(pair) = structural::solve_three_corner(rsys) {
            if pair.passes_mode(mode) {
                found.push(pair);
            }
        }
    }
    if found.is_empty() {
        if let Some(hit) = structural::specialization_search(rsys, &opts.search) {
            if let Some(pair) = hit.solution_for(&rsys.rhs) {
                if pair.passes_mode(mode) {
                    found.push(pair);
                }
            }
        }
    }
    if rsys.is_homogeneous() && mode == SolutionMode::Any {
        found.push(SolutionPair::zero(rsys.field, rsys.p, rsys.q));
    }
    if !found.is_empty() {
        SolverOutcome::Solutions(canonical_solution_set(found))
    } else if r > 2 {
        SolverOutcome::Undecided(UndecidedReason::GeneralRTooLarge)
    } else {
        SolverOutcome::Undecided(UndecidedReason::HeuristicsFailed)
    }
}

/// Soundness gate: no solution leaves the solver without a zero residual
/// against the original system.
fn verified(sys: &BilinearSystem, outcome: SolverOutcome) -> SolverOutcome {
    if let SolverOutcome::Solutions(sols) = &outcome {
        for s in sols {
            assert!(
                sys.is_solution(s),
                "solver produced a pair with nonzero residual: {s:?}"
            );
        }
    }
    outcome
}
