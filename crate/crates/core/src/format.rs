//! Plain-text encoding of systems and solver outcomes: human-writable,
//! exact-scalar strings, no floats. A file looks like
//!
//! ```text
//! # optional comments
//! field Q          # or Q(i), or GF(7)
//! p 2
//! q 2
//! mode nontrivial  # optional: any | nontrivial | totally-nonzero
//!
//! matrix
//! 1 0
//! 0 1
//!
//! matrix
//! 0 1
//! -1 0
//!
//! rhs 0 0
//! ```
//!
//! Matrices are p rows of q whitespace-separated scalars; `rhs` takes one
//! scalar per matrix. Parsing rejects anything inexact.

use std::fmt;

use crate::error::Error;
use crate::fields::{FieldSpec, Scalar};
use crate::matrix::{Matrix, RowOp};
use crate::rank_one::{Certificate, SolverOutcome, UndecidedReason};
use crate::system::{BilinearSystem, SolutionMode};

/// A parsed system file: the system plus its requested solution mode.
#[derive(Debug, Clone)]
pub struct SystemFile {
    pub system: BilinearSystem,
    pub mode: SolutionMode,
}

/// Parse failure with 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn perr(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        msg: msg.into(),
    }
}

/// Parses the field name used in files and on the command line.
pub fn parse_field(text: &str) -> Result<FieldSpec, String> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rationals);
    }
    if t.eq_ignore_ascii_case("q(i)") || t.eq_ignore_ascii_case("qi") {
        return Ok(FieldSpec::GaussianRationals);
    }
    let inner = t
        .strip_prefix("GF(")
        .or_else(|| t.strip_prefix("gf("))
        .and_then(|s| s.strip_suffix(')'))
        .or_else(|| t.strip_prefix("GF ").or_else(|| t.strip_prefix("gf ")));
    if let Some(ps) = inner {
        let p: u64 = ps
            .trim()
            .parse()
            .map_err(|_| format!("bad modulus '{ps}'"))?;
        return FieldSpec::prime_field(p).map_err(|e| e.to_string());
    }
    Err(format!("unknown field '{t}' (expected Q, Q(i), or GF(p))"))
}

pub fn field_name(field: FieldSpec) -> String {
    match field {
        FieldSpec::Rationals => "Q".to_string(),
        FieldSpec::GaussianRationals => "Q(i)".to_string(),
        FieldSpec::PrimeField(p) => format!("GF({p})"),
    }
}

pub fn mode_name(mode: SolutionMode) -> &'static str {
    match mode {
        SolutionMode::Any => "any",
        SolutionMode::Nontrivial => "nontrivial",
        SolutionMode::TotallyNonzero => "totally-nonzero",
    }
}

pub fn parse_mode(text: &str) -> Result<SolutionMode, String> {
    match text.trim() {
        "any" => Ok(SolutionMode::Any),
        "nontrivial" => Ok(SolutionMode::Nontrivial),
        "totally-nonzero" | "totally_nonzero" => Ok(SolutionMode::TotallyNonzero),
        other => Err(format!("unknown mode '{other}'")),
    }
}

/// Parses a system file, optionally reinterpreting the scalars over
/// `field_override` (useful for reading integer-entried files over GF(p)).
pub fn parse_system(
    text: &str,
    field_override: Option<FieldSpec>,
) -> Result<SystemFile, ParseError> {
    let mut field: Option<FieldSpec> = None;
    let mut p: Option<usize> = None;
    let mut q: Option<usize> = None;
    let mut mode = SolutionMode::Any;
    let mut matrices: Vec<Matrix> = Vec::new();
    let mut rhs: Option<Vec<Scalar>> = None;

    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| {
            let body = match l.find('#') {
                Some(pos) => &l[..pos],
                None => l,
            };
            (i + 1, body.trim().to_string())
        })
        .filter(|(_, l)| !l.is_empty())
        .collect::<Vec<_>>()
        .into_iter()
        .peekable();

    while let Some((lno, line)) = lines.next() {
        let (key, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim().to_string()),
            None => (line.as_str(), String::new()),
        };
        match key {
            "field" => {
                let f = parse_field(&rest).map_err(|e| perr(lno, e))?;
                field = Some(field_override.unwrap_or(f));
            }
            "p" => {
                p = Some(
                    rest.parse()
                        .map_err(|_| perr(lno, "p must be a positive integer"))?,
                )
            }
            "q" => {
                q = Some(
                    rest.parse()
                        .map_err(|_| perr(lno, "q must be a positive integer"))?,
                )
            }
            "mode" => mode = parse_mode(&rest).map_err(|e| perr(lno, e))?,
            "matrix" => {
                let f = field.ok_or_else(|| perr(lno, "field must come before matrix"))?;
                let (pp, qq) = (
                    p.ok_or_else(|| perr(lno, "p must come before matrix"))?,
                    q.ok_or_else(|| perr(lno, "q must come before matrix"))?,
                );
                let mut rows = Vec::with_capacity(pp);
                for _ in 0..pp {
                    let Some((rlno, row_line)) = lines.next() else {
                        return Err(perr(lno, format!("matrix needs {pp} rows")));
                    };
                    let entries: Vec<Scalar> = row_line
                        .split_whitespace()
                        .map(|tok| Scalar::parse(f, tok).map_err(|e| perr(rlno, format!("{e}"))))
                        .collect::<Result<_, _>>()?;
                    if entries.len() != qq {
                        return Err(perr(rlno, format!("row needs {qq} entries")));
                    }
                    rows.push(entries);
                }
                matrices.push(Matrix::from_rows(f, rows).map_err(|e| perr(lno, format!("{e}")))?);
            }
            "rhs" => {
                let f = field.ok_or_else(|| perr(lno, "field must come before rhs"))?;
                let entries: Vec<Scalar> = rest
                    .split_whitespace()
                    .map(|tok| Scalar::parse(f, tok).map_err(|e| perr(lno, format!("{e}"))))
                    .collect::<Result<_, _>>()?;
                rhs = Some(entries);
            }
            other => return Err(perr(lno, format!("unknown directive '{other}'"))),
        }
    }

    let field = field.ok_or_else(|| perr(0, "missing 'field' line"))?;
    let p = p.ok_or_else(|| perr(0, "missing 'p' line"))?;
    let q = q.ok_or_else(|| perr(0, "missing 'q' line"))?;
    if matrices.is_empty() {
        return Err(perr(0, "no matrices"));
    }
    let rhs = rhs.ok_or_else(|| perr(0, "missing 'rhs' line"))?;
    let system =
        BilinearSystem::new(field, p, q, matrices, rhs).map_err(|e| perr(0, format!("{e}")))?;
    Ok(SystemFile { system, mode })
}

/// Canonical emission; `parse(emit(f))` reproduces the file contents.
pub fn emit_system(file: &SystemFile) -> String {
    let sys = &file.system;
    let mut out = String::new();
    out.push_str(&format!("field {}\n", field_name(sys.field)));
    out.push_str(&format!("p {}\nq {}\n", sys.p, sys.q));
    out.push_str(&format!("mode {}\n", mode_name(file.mode)));
    for a in &sys.matrices {
        out.push_str("\nmatrix\n");
        for i in 0..sys.p {
            let row: Vec<String> = (0..sys.q).map(|j| a.get(i, j).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    let g: Vec<String> = sys.rhs.iter().map(|v| v.to_string()).collect();
    out.push_str(&format!("\nrhs {}\n", g.join(" ")));
    out
}

fn scalar_list(v: &[Scalar]) -> String {
    v.iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for RowOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowOp::Swap(a, b) => write!(f, "swap {} {}", a + 1, b + 1),
            RowOp::Scale(i, c) => write!(f, "scale {} by {}", i + 1, c),
            RowOp::AddMul { dst, src, coeff } => {
                write!(
                    f,
                    "add {} times pair {} to pair {}",
                    coeff,
                    src + 1,
                    dst + 1
                )
            }
        }
    }
}

fn render_certificate(cert: &Certificate, out: &mut String) {
    match cert {
        Certificate::InconsistentReduction { witness_row, ops } => {
            out.push_str("certificate: inconsistent-reduction\n");
            out.push_str(&format!(
                "detail: elementary operations produce the zero matrix with nonzero rhs at pair {}\n",
                witness_row + 1
            ));
            for op in ops {
                out.push_str(&format!("op: {op}\n"));
            }
        }
        Certificate::ConstantMinorNonzero { minor_index, value } => {
            out.push_str("certificate: constant-minor-nonzero\n");
            out.push_str(&format!("minor: {} value: {}\n", minor_index + 1, value));
        }
        Certificate::R1NoCommonRoot {
            discriminant,
            detail,
        } => {
            out.push_str("certificate: r1-no-common-root\n");
            if let Some(d) = discriminant {
                out.push_str(&format!("discriminant: {d}\n"));
            }
            out.push_str(&format!("detail: {detail}\n"));
        }
        Certificate::ExhaustedFiniteField { points_tried } => {
            out.push_str("certificate: exhausted-finite-field\n");
            out.push_str(&format!("points-tried: {points_tried}\n"));
        }
        Certificate::OnlyTrivial => {
            out.push_str("certificate: only-trivial\n");
        }
        Certificate::ForcedZeroEntry { row, col } => {
            out.push_str("certificate: forced-zero-entry\n");
            out.push_str(&format!("entry: ({}, {})\n", row + 1, col + 1));
        }
    }
}

/// Stable text rendering of an outcome, used by the CLI and its golden
/// tests.
pub fn render_outcome(outcome: &SolverOutcome) -> String {
    let mut out = String::new();
    match outcome {
        SolverOutcome::Solutions(sols) => {
            out.push_str("status: solutions\n");
            out.push_str(&format!("count: {}\n", sols.len()));
            for (i, s) in sols.iter().enumerate() {
                out.push_str(&format!("solution {}:\n", i + 1));
                out.push_str(&format!("  x: {}\n", scalar_list(&s.x)));
                out.push_str(&format!("  y: {}\n", scalar_list(&s.y)));
            }
        }
        SolverOutcome::NoSolution(cert) => {
            out.push_str("status: no-solution\n");
            render_certificate(cert, &mut out);
        }
        SolverOutcome::Undecided(reason) => {
            out.push_str("status: undecided\n");
            let r = match reason {
                UndecidedReason::GeneralRTooLarge => "general-r-too-large".to_string(),
                UndecidedReason::HeuristicsFailed => "heuristics-failed".to_string(),
                UndecidedReason::BudgetExceeded(msg) => format!("budget-exceeded ({msg})"),
            };
            out.push_str(&format!("reason: {r}\n"));
        }
    }
    out
}

/// Exit code contract: 0 solutions, 1 no solution, 2 undecided.
pub fn outcome_exit_code(outcome: &SolverOutcome) -> i32 {
    match outcome {
        SolverOutcome::Solutions(_) => 0,
        SolverOutcome::NoSolution(_) => 1,
        SolverOutcome::Undecided(_) => 2,
    }
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Error {
        Error::DimensionMismatch(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip() {
        let file = SystemFile {
            system: fixtures::identity_corner_system(FieldSpec::Rationals, &[3, 1, 2]),
            mode: SolutionMode::Nontrivial,
        };
        let text = emit_system(&file);
        let back = parse_system(&text, None).unwrap();
        assert_eq!(back.system, file.system);
        assert_eq!(back.mode, file.mode);
        // canonical emission is a fixed point
        assert_eq!(emit_system(&back), text);
    }

    #[test]
    fn gaussian_round_trip() {
        let f = FieldSpec::GaussianRationals;
        let one = f.one();
        let i = Scalar::parse(f, "i").unwrap();
        let half_i = Scalar::parse(f, "1/2-3/4i").unwrap();
        let a = Matrix::from_rows(f, vec![vec![one.clone(), i], vec![half_i, one]]).unwrap();
        let sys =
            BilinearSystem::new(f, 2, 2, vec![a], vec![Scalar::parse(f, "2i").unwrap()]).unwrap();
        let file = SystemFile {
            system: sys,
            mode: SolutionMode::Any,
        };
        let text = emit_system(&file);
        let back = parse_system(&text, None).unwrap();
        assert_eq!(back.system, file.system);
    }

    #[test]
    fn rejects_floats_with_line_numbers() {
        let text = "field Q\np 1\nq 1\nmatrix\n1.5\nrhs 1\n";
        let err = parse_system(text, None).unwrap_err();
        assert_eq!(err.line, 5);
    }

    #[test]
    fn rejects_unknown_directive() {
        let text = "field Q\np 1\nq 1\nmatrux\n1\nrhs 1\n";
        let err = parse_system(text, None).unwrap_err();
        assert_eq!(err.line, 4);
    }

    #[test]
    fn field_override_reinterprets_integers() {
        let text = "field Q\np 1\nq 1\nmatrix\n-1\nrhs 2\n";
        let gf3 = FieldSpec::prime_field(3).unwrap();
        let file = parse_system(text, Some(gf3)).unwrap();
        assert_eq!(file.system.field, gf3);
        assert_eq!(
            file.system.matrices[0].get(0, 0),
            &Scalar::from_integer(gf3, 2)
        );
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "# header\nfield Q\n\np 1\nq 2 # trailing\nmatrix\n1 2\nrhs 7\n";
        let file = parse_system(text, None).unwrap();
        assert_eq!(file.system.q, 2);
    }

    #[test]
    fn parse_field_names() {
        assert_eq!(parse_field("Q").unwrap(), FieldSpec::Rationals);
        assert_eq!(parse_field("Q(i)").unwrap(), FieldSpec::GaussianRationals);
        assert_eq!(parse_field("GF(7)").unwrap(), FieldSpec::PrimeField(7));
        assert!(parse_field("GF(6)").is_err());
        assert!(parse_field("R").is_err());
    }
}
