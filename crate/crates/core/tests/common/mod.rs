//! Shared helpers for the integration and acceptance suites: seeded
//! random instances over each supported field.
#![allow(dead_code)] // each test target compiles its own copy

use bls_core::fields::{FieldSpec, Scalar};
use bls_core::matrix::Matrix;
use bls_core::system::BilinearSystem;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar(rng: &mut ChaCha8Rng, field: FieldSpec) -> Scalar {
    match field {
        FieldSpec::PrimeField(p) => Scalar::from_integer(field, rng.gen_range(0..p) as i64),
        FieldSpec::Rationals | FieldSpec::GaussianRationals => {
            Scalar::from_integer(field, rng.gen_range(-3i64..=3))
        }
    }
}

/// Small rational with denominator up to 3; used where fractions matter.
pub fn random_fraction(rng: &mut ChaCha8Rng, field: FieldSpec) -> Scalar {
    let n = rng.gen_range(-6i64..=6);
    let d = rng.gen_range(1i64..=3);
    Scalar::from_ratio(field, n, d)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, field: FieldSpec, p: usize, q: usize) -> Matrix {
    Matrix::from_fn(field, p, q, |_, _| random_scalar(rng, field))
}

pub fn random_system(
    rng: &mut ChaCha8Rng,
    field: FieldSpec,
    p: usize,
    q: usize,
    m: usize,
) -> BilinearSystem {
    let matrices = (0..m).map(|_| random_matrix(rng, field, p, q)).collect();
    let rhs = (0..m).map(|_| random_scalar(rng, field)).collect();
    BilinearSystem::new(field, p, q, matrices, rhs).expect("shapes consistent")
}

/// Random system with linearly independent matrices (resampled until the
/// stacked rank is m).
pub fn random_independent_system(
    rng: &mut ChaCha8Rng,
    field: FieldSpec,
    p: usize,
    q: usize,
    m: usize,
) -> BilinearSystem {
    assert!(m <= p * q);
    loop {
        let sys = random_system(rng, field, p, q, m);
        if sys.stack().rank() == m {
            return sys;
        }
    }
}
