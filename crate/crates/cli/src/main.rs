//! `bls` — exact bilinear-system solving from the command line.
//!
//! Exit codes for `solve`: 0 solutions found, 1 provably no solution,
//! 2 undecided, 3 usage or input errors, 4 internal errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bls_core::applications::{commuting_bls, quaternion_bls, SignPattern};
use bls_core::fields::{FieldSpec, Scalar};
use bls_core::format::{
    self, emit_system, field_name, mode_name, outcome_exit_code, parse_system, render_outcome,
    SystemFile,
};
use bls_core::oracle;
use bls_core::pencil::{build_pencil, AffinePencil};
use bls_core::rank_one::{solve, SolveOptions};
use bls_core::reduction::reduce_system;
use bls_core::structural::{
    certify_always_solvable, collective_support, has_three_corner_property, AlwaysVerdict,
    AlwaysWitness,
};
use bls_core::system::{BilinearSystem, SolutionMode};

const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "bls",
    about = "Exact solver for bilinear systems y^T A_i x = g_i over Q, Q(i), and GF(p)",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FileArgs {
    /// System file to read.
    file: PathBuf,
    /// Reinterpret the file's scalars over this field (e.g. GF(7)).
    #[arg(long)]
    field: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a system and print status, solutions, and certificate.
    Solve {
        #[command(flatten)]
        file: FileArgs,
        /// Override the solution mode from the file.
        #[arg(long)]
        mode: Option<String>,
        /// Enumeration budget (also BLS_BUDGET environment variable).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Print the reduction report, pencil dimension, support pattern, and
    /// always-solvable certificate.
    Analyze {
        #[command(flatten)]
        file: FileArgs,
    },
    /// Print the affine pencil K(z): K0 and the basis matrices.
    Pencil {
        #[command(flatten)]
        file: FileArgs,
    },
    /// Run the exhaustive finite-field oracles.
    Oracle {
        #[command(flatten)]
        file: FileArgs,
        /// Which report: solutions | image | always.
        #[arg(long, default_value = "solutions")]
        task: String,
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Emit the pattern-commutativity system for two patterns.
    GenCommuting {
        /// First pattern, rows of 0/1 separated by commas, e.g. 10,01.
        #[arg(long)]
        pattern_p: String,
        /// Second pattern, same format (the totally-nonzero mode is set).
        #[arg(long)]
        pattern_q: String,
    },
    /// Emit the dot-and-cross-product system T(v, w) = d0.
    GenQuaternion {
        /// Four scalars "d1 d2 d3 d4" (dot part first, right-handed cross).
        #[arg(long)]
        d0: String,
        /// Field to use (default Q).
        #[arg(long)]
        field: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap's own exit code collides with the undecided contract
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn default_budget() -> u64 {
    std::env::var("BLS_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(10_000_000)
}

fn load(file: &FileArgs) -> Result<SystemFile, String> {
    let text =
        std::fs::read_to_string(&file.file).map_err(|e| format!("{}: {e}", file.file.display()))?;
    let field_override = match &file.field {
        Some(name) => Some(format::parse_field(name)?),
        None => None,
    };
    parse_system(&text, field_override).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Solve { file, mode, budget } => {
            let parsed = load(&file)?;
            let mode = match mode {
                Some(m) => format::parse_mode(&m)?,
                None => parsed.mode,
            };
            let opts = SolveOptions {
                mode,
                budget: budget.unwrap_or_else(default_budget),
                ..SolveOptions::default()
            };
            let outcome = solve(&parsed.system, &opts);
            print!("{}", render_outcome(&outcome));
            Ok(ExitCode::from(outcome_exit_code(&outcome) as u8))
        }
        Command::Analyze { file } => {
            let parsed = load(&file)?;
            analyze(&parsed.system).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Pencil { file } => {
            let parsed = load(&file)?;
            let report = reduce_system(&parsed.system);
            if report.inconsistent {
                println!("inconsistent system: no pencil");
                return Ok(ExitCode::from(1));
            }
            let pencil = build_pencil(&report.reduced).map_err(|e| e.to_string())?;
            print_pencil(&pencil);
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle {
            file,
            task,
            mode,
            budget,
        } => {
            let parsed = load(&file)?;
            let budget = budget.unwrap_or_else(default_budget);
            let mode = match mode {
                Some(m) => format::parse_mode(&m)?,
                None => parsed.mode,
            };
            oracle_task(&parsed.system, &task, mode, budget)
        }
        Command::GenCommuting {
            pattern_p,
            pattern_q,
        } => {
            let p = SignPattern::parse(&pattern_p).map_err(|e| e.to_string())?;
            let q = SignPattern::parse(&pattern_q).map_err(|e| e.to_string())?;
            let inst = commuting_bls(&p, &q).map_err(|e| e.to_string())?;
            if inst.system.m() == 0 {
                return Err("patterns commute trivially: no equations remain".into());
            }
            let file = SystemFile {
                system: inst.system,
                mode: SolutionMode::TotallyNonzero,
            };
            print!("{}", emit_system(&file));
            Ok(ExitCode::SUCCESS)
        }
        Command::GenQuaternion { d0, field } => {
            let f = match field {
                Some(name) => format::parse_field(&name)?,
                None => FieldSpec::Rationals,
            };
            let parts: Vec<&str> = d0.split_whitespace().collect();
            if parts.len() != 4 {
                return Err("d0 needs exactly four scalars".into());
            }
            let vals: Vec<Scalar> = parts
                .iter()
                .map(|t| Scalar::parse(f, t).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            let sys = quaternion_bls(&[
                vals[0].clone(),
                vals[1].clone(),
                vals[2].clone(),
                vals[3].clone(),
            ]);
            let file = SystemFile {
                system: sys,
                mode: SolutionMode::Any,
            };
            print!("{}", emit_system(&file));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_pencil(pencil: &AffinePencil) {
    println!("r: {}", pencil.r());
    println!("K0:");
    print!("{}", pencil.k0);
    for (i, b) in pencil.basis.iter().enumerate() {
        println!("K{}:", i + 1);
        print!("{b}");
    }
}

fn analyze(sys: &BilinearSystem) -> Result<(), bls_core::Error> {
    println!("field: {}", field_name(sys.field));
    println!("p: {}  q: {}  m: {}", sys.p, sys.q, sys.m());
    let report = reduce_system(sys);
    if report.inconsistent {
        println!("reduction: inconsistent (zero matrix with nonzero rhs)");
        println!("always solvable: NO (the given right-hand side already fails)");
        return Ok(());
    }
    let rsys = &report.reduced;
    println!("reduced m: {}", rsys.m());
    println!("r: {}", report.r());
    let support = collective_support(rsys);
    println!("support:");
    for i in 0..support.p {
        let row: String = (0..support.q)
            .map(|j| if support.get(i, j) { '*' } else { '0' })
            .collect();
        println!("  {row}");
    }
    let three_corner = has_three_corner_property(&support);
    println!(
        "three-corner property: {}",
        if three_corner { "yes" } else { "no" }
    );
    let bound_ok = rsys.m() < rsys.p + rsys.q;
    println!(
        "m vs p+q-1 bound: m = {} {} p+q-1 = {}",
        rsys.m(),
        if bound_ok { "<=" } else { ">" },
        rsys.p + rsys.q - 1
    );
    match certify_always_solvable(rsys)? {
        AlwaysVerdict::Yes(witness) => match witness {
            AlwaysWitness::TwoEquations => {
                println!("always solvable: YES (m <= 2)");
            }
            AlwaysWitness::ThreeCorner(spec) => {
                println!("always solvable: YES (three-corner specialization)");
                print_witness(&spec);
            }
            AlwaysWitness::Specialization(spec) => {
                println!("always solvable: YES (linearizing specialization)");
                print_witness(&spec);
            }
        },
        AlwaysVerdict::ViolatesBound => {
            println!("always solvable: NO (m >= p+q)");
        }
        AlwaysVerdict::Unknown => {
            println!("always solvable: UNKNOWN (no structural witness)");
        }
    }
    Ok(())
}

fn print_witness(spec: &bls_core::structural::SpecializedLinear) {
    let assigned: Vec<String> = spec
        .assignment
        .iter()
        .map(|(v, val)| format!("{v}={val}"))
        .collect();
    println!("  assignment: {}", assigned.join(" "));
    let unknowns: Vec<String> = spec.unknowns.iter().map(|v| v.to_string()).collect();
    println!("  unknowns: {}", unknowns.join(" "));
    println!("  coefficient matrix:");
    for i in 0..spec.coeff.rows() {
        let row: Vec<String> = (0..spec.coeff.cols())
            .map(|j| spec.coeff.get(i, j).to_string())
            .collect();
        println!("    {}", row.join(" "));
    }
}

fn oracle_task(
    sys: &BilinearSystem,
    task: &str,
    mode: SolutionMode,
    budget: u64,
) -> Result<ExitCode, String> {
    match task {
        "solutions" => {
            let sols = oracle::brute_force_solve(sys, mode, budget).map_err(|e| e.to_string())?;
            println!("mode: {}", mode_name(mode));
            println!("classes: {}", sols.len());
            for (i, s) in sols.iter().enumerate() {
                let xs: Vec<String> = s.x.iter().map(|v| v.to_string()).collect();
                let ys: Vec<String> = s.y.iter().map(|v| v.to_string()).collect();
                println!(
                    "solution {}: x: {}  y: {}",
                    i + 1,
                    xs.join(" "),
                    ys.join(" ")
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        "image" => {
            let report = oracle::image_cardinality(sys, budget).map_err(|e| e.to_string())?;
            println!("field size: {}", report.field_size);
            println!("attained: {}", report.attained);
            println!("total: {}", report.total);
            println!("scaling bound: {}", report.bound);
            println!("bound applies (m >= p+q): {}", report.bound_applies());
            Ok(ExitCode::SUCCESS)
        }
        "always" => {
            let report =
                oracle::always_solvable_exhaustive(sys, budget).map_err(|e| e.to_string())?;
            if report.always {
                println!("always solvable: yes");
            } else {
                let w: Vec<String> = report
                    .witness
                    .unwrap()
                    .iter()
                    .map(|v| v.to_string())
                    .collect();
                println!("always solvable: no");
                println!("first unattained rhs: {}", w.join(" "));
            }
            Ok(ExitCode::SUCCESS)
        }
        other => Err(format!(
            "unknown oracle task '{other}' (solutions | image | always)"
        )),
    }
}
