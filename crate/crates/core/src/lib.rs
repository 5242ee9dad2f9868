//! Exact solver for bilinear systems of equations.
//!
//! A bilinear system (BLS) consists of equations `y^T A_i x = g_i` for
//! `i = 1..m`, where the `A_i` are p-by-q matrices over an exact field
//! (the rationals, the Gaussian rationals, or a prime field GF(p)) and
//! `x`, `y` are unknown vectors. Every solution corresponds to a rank-one
//! matrix `K = y x^T` inside the affine pencil
//! `K(z) = K_0 + z_1 K_1 + ... + z_r K_r` of matrices whose vectorization
//! solves the linearized system, so solving reduces to a rank-one
//! completion search over that pencil.
//!
//! The crate provides:
//!
//! * exact scalar arithmetic over the three supported fields ([`fields`]),
//! * the system model with slicings and residual evaluation ([`system`]),
//! * solution-preserving reductions ([`reduction`]),
//! * pencil construction by elimination and by completion ([`pencil`]),
//! * the rank-one completion solvers and the top-level dispatcher
//!   ([`rank_one`]),
//! * structural always-solvable certificates ([`structural`]),
//! * generators for pattern-commutativity and quaternion instances
//!   ([`applications`]),
//! * exhaustive finite-field oracles for verification ([`oracle`]),
//! * a plain-text file format for systems and outcomes (the `format` module).

pub mod applications;
pub mod error;
pub mod fields;
pub mod fixtures;
pub mod format;
pub mod matrix;
pub mod oracle;
pub mod pencil;
pub mod poly;
pub mod rank_one;
pub mod reduction;
pub mod slicing;
pub mod structural;
pub mod system;

pub use error::Error;
pub use fields::{FieldSpec, Scalar};
pub use matrix::Matrix;
pub use rank_one::{solve, Certificate, SolveOptions, SolverOutcome, UndecidedReason};
pub use system::{BilinearSystem, SolutionMode, SolutionPair};
