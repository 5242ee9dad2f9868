//! Cross-checks between the structured solvers and the brute-force
//! oracles on randomized finite-field instances.

mod common;

use bls_core::fields::{FieldSpec, Scalar};
use bls_core::matrix::Matrix;
use bls_core::oracle::brute_force_solve;
use bls_core::pencil::build_pencil;
use bls_core::rank_one::{
    factor_rank_one, minor_system, solve, solve_finite_field, solve_r1, SolveOptions,
};
use bls_core::reduction::{equiv_transform, normalize_rhs, pull_back, reduce_system};
use bls_core::system::{canonical_solution_set, BilinearSystem, SolutionMode, SolutionPair};

use common::{random_independent_system, random_matrix, random_system, rng};
use rand::Rng;

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime_field(p).unwrap()
}

/// All (x, y) pairs over the field, unfiltered.
fn all_pairs(sys: &BilinearSystem) -> Vec<SolutionPair> {
    let elems: Vec<Scalar> = sys.field.enumerate().unwrap().collect();
    let n = elems.len();
    let mut out = Vec::new();
    let total = n.pow((sys.p + sys.q) as u32);
    for mut code in 0..total {
        let mut x = Vec::with_capacity(sys.q);
        for _ in 0..sys.q {
            x.push(elems[code % n].clone());
            code /= n;
        }
        let mut y = Vec::with_capacity(sys.p);
        for _ in 0..sys.p {
            y.push(elems[code % n].clone());
            code /= n;
        }
        out.push(SolutionPair { x, y });
    }
    out
}

#[test]
fn reduction_preserves_solution_sets() {
    let mut r = rng(0x5eed_0001);
    for trial in 0..60 {
        let field = if trial % 2 == 0 { gf(2) } else { gf(3) };
        let p = 1 + trial % 3;
        let q = 1 + (trial / 3) % 3;
        let m = 1 + trial % (p * q + 1).min(4);
        let sys = random_system(&mut r, field, p, q, m);
        let report = reduce_system(&sys);
        for pair in all_pairs(&sys) {
            let orig = sys.is_solution(&pair);
            let red = if report.inconsistent {
                false
            } else {
                report.reduced.m() == 0 || report.reduced.is_solution(&pair)
            };
            assert_eq!(
                orig, red,
                "trial {trial}: reduction changed the solution set"
            );
        }
        if !report.inconsistent {
            assert_eq!(report.reduced.stack().rank(), report.reduced.m());
        }
    }
}

#[test]
fn normalize_rhs_preserves_solution_sets() {
    let mut r = rng(0x5eed_0002);
    for trial in 0..40 {
        let field = gf(5);
        let sys = random_independent_system(&mut r, field, 2, 2, 2);
        if sys.is_homogeneous() {
            continue;
        }
        let norm = normalize_rhs(&sys).unwrap();
        assert_eq!(norm.rhs[0], field.one());
        assert!(norm.rhs[1..].iter().all(Scalar::is_zero));
        for pair in all_pairs(&sys) {
            assert_eq!(
                sys.is_solution(&pair),
                norm.is_solution(&pair),
                "trial {trial}"
            );
        }
    }
}

#[test]
fn equivalence_preserves_solvability_with_bijection() {
    let mut r = rng(0x5eed_0003);
    let field = gf(3);
    for trial in 0..40 {
        let sys = random_system(&mut r, field, 2, 2, 2);
        // random invertible P and Q
        let pm = loop {
            let c = random_matrix(&mut r, field, 2, 2);
            if c.rank() == 2 {
                break c;
            }
        };
        let qm = loop {
            let c = random_matrix(&mut r, field, 2, 2);
            if c.rank() == 2 {
                break c;
            }
        };
        let t = equiv_transform(&sys, &pm, &qm).unwrap();
        let sols_orig: Vec<SolutionPair> = all_pairs(&sys)
            .into_iter()
            .filter(|s| sys.is_solution(s))
            .collect();
        let sols_t: Vec<SolutionPair> = all_pairs(&t)
            .into_iter()
            .filter(|s| t.is_solution(s))
            .collect();
        assert_eq!(
            sols_orig.len(),
            sols_t.len(),
            "trial {trial}: bijection broken"
        );
        for s in &sols_orig {
            let mapped = pull_back(s, &pm, &qm).unwrap();
            assert!(
                t.is_solution(&mapped),
                "trial {trial}: pull_back image not a solution"
            );
        }
    }
}

#[test]
fn minor_vanishing_characterizes_rank_le_one() {
    let mut r = rng(0x5eed_0004);
    for trial in 0..40 {
        let field = if trial % 2 == 0 { gf(2) } else { gf(3) };
        let p = 2 + trial % 2;
        let q = 2 + (trial / 2) % 2;
        let m = 1 + trial % (p * q - 1);
        let sys = random_independent_system(&mut r, field, p, q, m);
        let pencil = build_pencil(&sys).unwrap();
        let minors = minor_system(&pencil);
        assert_eq!(minors.len(), binom2(p) * binom2(q));
        let elems: Vec<Scalar> = field.enumerate().unwrap().collect();
        let n = elems.len();
        let total = n.pow(pencil.r() as u32);
        for mut code in 0..total {
            let mut z = Vec::with_capacity(pencil.r());
            for _ in 0..pencil.r() {
                z.push(elems[code % n].clone());
                code /= n;
            }
            let k = pencil.eval(&z).unwrap();
            let all_vanish = minors.iter().all(|mq| mq.eval(&z).is_zero());
            assert_eq!(
                k.rank() <= 1,
                all_vanish,
                "trial {trial}: minors desynchronized from rank at {z:?}"
            );
        }
    }
}

fn binom2(n: usize) -> usize {
    n * (n - 1) / 2
}

#[test]
fn pencil_rank_one_points_match_brute_force() {
    // the rank-one points of the pencil, factored and canonicalized, are
    // exactly the nontrivial brute-force solutions
    let mut r = rng(0x5eed_0005);
    for trial in 0..40 {
        let field = gf(3);
        let p = 2 + trial % 2;
        let q = 2;
        let m = 1 + trial % (p * q - 1);
        let sys = random_independent_system(&mut r, field, p, q, m);
        let pencil = build_pencil(&sys).unwrap();
        let elems: Vec<Scalar> = field.enumerate().unwrap().collect();
        let n = elems.len();
        let mut from_pencil = Vec::new();
        let total = n.pow(pencil.r() as u32);
        for mut code in 0..total {
            let mut z = Vec::with_capacity(pencil.r());
            for _ in 0..pencil.r() {
                z.push(elems[code % n].clone());
                code /= n;
            }
            let k = pencil.eval(&z).unwrap();
            if k.rank() == 1 {
                from_pencil.push(factor_rank_one(&k).unwrap());
            }
        }
        let from_pencil = canonical_solution_set(from_pencil);
        let from_brute = brute_force_solve(&sys, SolutionMode::Nontrivial, 1 << 20).unwrap();
        assert_eq!(from_pencil, from_brute, "trial {trial}");
    }
}

#[test]
fn r1_solver_agrees_with_enumeration() {
    let mut r = rng(0x5eed_0006);
    for trial in 0..60 {
        let field = if trial % 2 == 0 { gf(3) } else { gf(5) };
        let (p, q) = if trial % 3 == 0 { (2, 2) } else { (2, 3) };
        let m = p * q - 1; // r = 1
        let sys = random_independent_system(&mut r, field, p, q, m);
        let pencil = build_pencil(&sys).unwrap();
        let homog = sys.is_homogeneous();
        for mode in [
            SolutionMode::Any,
            SolutionMode::Nontrivial,
            SolutionMode::TotallyNonzero,
        ] {
            let a = solve_r1(&pencil, homog, mode);
            let b = solve_finite_field(&pencil, homog, mode, 1 << 20).unwrap();
            match (&a, &b) {
                (
                    bls_core::SolverOutcome::Solutions(sa),
                    bls_core::SolverOutcome::Solutions(sb),
                ) => {
                    assert_eq!(sa, sb, "trial {trial} mode {mode:?}");
                }
                (
                    bls_core::SolverOutcome::NoSolution(_),
                    bls_core::SolverOutcome::NoSolution(_),
                ) => {}
                other => panic!("trial {trial} mode {mode:?}: divergent outcomes {other:?}"),
            }
        }
    }
}

#[test]
fn solve_matches_brute_force_including_trivial_classes() {
    // mode Any on homogeneous systems must reproduce the trivial classes
    // exactly as the oracle canonicalizes them
    let mut r = rng(0x5eed_0007);
    for trial in 0..30 {
        let field = if trial % 2 == 0 { gf(2) } else { gf(3) };
        let p = 1 + trial % 3;
        let q = 1 + (trial / 2) % 3;
        let m = 1 + trial % (p * q);
        let mut sys = random_system(&mut r, field, p, q, m);
        if trial % 2 == 0 {
            sys.rhs = vec![field.zero(); m];
        }
        let out = solve(
            &sys,
            &SolveOptions {
                mode: SolutionMode::Any,
                ..Default::default()
            },
        );
        let brute = brute_force_solve(&sys, SolutionMode::Any, 1 << 20).unwrap();
        match out {
            bls_core::SolverOutcome::Solutions(sols) => {
                assert_eq!(sols, brute, "trial {trial}: canonical sets differ");
            }
            bls_core::SolverOutcome::NoSolution(_) => {
                assert!(brute.is_empty(), "trial {trial}: solver missed solutions");
            }
            bls_core::SolverOutcome::Undecided(reason) => {
                panic!("trial {trial}: finite-field solve must decide, got {reason:?}")
            }
        }
    }
}

#[test]
fn certified_yes_confirmed_by_exhaustion() {
    // every Yes verdict over GF(3) with p, q <= 3 and m <= 4 must be
    // confirmed by the exhaustive oracle, whatever the witness kind
    use bls_core::structural::{certify_always_solvable, AlwaysVerdict};
    let mut r = rng(0x5eed_0009);
    let field = gf(3);
    let mut yes_seen = 0;
    for trial in 0..250 {
        let p = 1 + trial % 3;
        let q = 1 + (trial / 3) % 3;
        let m = 1 + trial % (p * q).min(4);
        let sys = random_independent_system(&mut r, field, p, q, m);
        let verdict = certify_always_solvable(&sys).unwrap();
        if verdict.is_yes() {
            yes_seen += 1;
            let report = bls_core::oracle::always_solvable_exhaustive(&sys, 1 << 22).unwrap();
            assert!(
                report.always,
                "trial {trial}: certified Yes but a rhs is unattained"
            );
        }
        if let AlwaysVerdict::ViolatesBound = verdict {
            let report = bls_core::oracle::always_solvable_exhaustive(&sys, 1 << 22).unwrap();
            assert!(!report.always, "trial {trial}: bound verdict must be sound");
        }
    }
    assert!(
        yes_seen > 50,
        "the sample should contain plenty of certified systems"
    );
}

#[test]
fn always_witnesses_replay_on_sampled_rhs() {
    // a Yes witness must produce residual-zero solutions for arbitrary g
    use bls_core::structural::{certify_always_solvable, AlwaysVerdict, AlwaysWitness};
    let field = FieldSpec::Rationals;
    let mut r = rng(0x5eed_000a);
    for sys0 in [
        bls_core::fixtures::staircase_system(field, 3, 3, &[0, 0, 0, 0]),
        bls_core::fixtures::mixed_specialization_system(field, &[0, 0, 0]),
    ] {
        let verdict = certify_always_solvable(&sys0).unwrap();
        let spec = match verdict {
            AlwaysVerdict::Yes(AlwaysWitness::ThreeCorner(s)) => s,
            AlwaysVerdict::Yes(AlwaysWitness::Specialization(s)) => s,
            other => panic!("expected a specialization-backed witness, got {other:?}"),
        };
        for _ in 0..20 {
            let g: Vec<Scalar> = (0..sys0.m())
                .map(|_| Scalar::from_ratio(field, r.gen_range(-9i64..=9), r.gen_range(1..=4)))
                .collect();
            let pair = spec.solve_for(&g).expect("full row rank");
            let mut sys = sys0.clone();
            sys.rhs = g;
            assert!(sys.is_solution(&pair), "witness replay produced a bad pair");
        }
    }
}

#[test]
fn planted_solutions_found_on_two_row_systems() {
    // p = 2 over Q: the sweep parameterizes every y direction as (s, c)
    // or (c, s) with c on the grid, so a system built around a planted
    // rational pair must come back Solutions, never Undecided
    let field = FieldSpec::Rationals;
    let mut r = rng(0x5eed_000b);
    for trial in 0..30 {
        let q = 3 + trial % 2;
        let m = 2 + trial % 4;
        let frac = |r: &mut rand_chacha::ChaCha8Rng| {
            Scalar::from_ratio(field, r.gen_range(-7i64..=7), r.gen_range(1i64..=4))
        };
        let x0: Vec<Scalar> = (0..q).map(|_| frac(&mut r)).collect();
        let mut y0: Vec<Scalar> = (0..2).map(|_| frac(&mut r)).collect();
        if y0.iter().all(Scalar::is_zero) {
            y0[0] = field.one();
        }
        let matrices: Vec<Matrix> = (0..m).map(|_| random_matrix(&mut r, field, 2, q)).collect();
        let planted = SolutionPair { x: x0, y: y0 };
        let rhs: Vec<Scalar> = matrices
            .iter()
            .map(|a| {
                let ax = a.mul_vec(&planted.x);
                let mut acc = field.zero();
                for (yi, axi) in planted.y.iter().zip(ax.iter()) {
                    acc = acc.add(&yi.mul(axi));
                }
                acc
            })
            .collect();
        let sys = BilinearSystem::new(field, 2, q, matrices, rhs).unwrap();
        assert!(sys.is_solution(&planted));
        let out = solve(&sys, &SolveOptions::default());
        assert!(
            out.is_solutions(),
            "trial {trial}: planted instance must be solved, got {out:?}"
        );
    }
}

#[test]
fn solve_matches_brute_force_over_larger_fields() {
    let mut r = rng(0x5eed_000c);
    for field in [gf(5), gf(7)] {
        for trial in 0..60 {
            let p = 1 + trial % 2;
            let q = 1 + (trial / 2) % 3;
            let m = 1 + trial % (p * q);
            let sys = random_system(&mut r, field, p, q, m);
            let out = solve(
                &sys,
                &SolveOptions {
                    mode: SolutionMode::Nontrivial,
                    ..Default::default()
                },
            );
            let brute = brute_force_solve(&sys, SolutionMode::Nontrivial, 1 << 24).unwrap();
            match out {
                bls_core::SolverOutcome::Solutions(sols) => {
                    assert_eq!(sols, brute, "{field} trial {trial}")
                }
                bls_core::SolverOutcome::NoSolution(_) => {
                    assert!(brute.is_empty(), "{field} trial {trial}")
                }
                bls_core::SolverOutcome::Undecided(reason) => {
                    panic!("{field} trial {trial}: must decide, got {reason:?}")
                }
            }
        }
    }
}

#[test]
fn dispatcher_is_sound_on_random_infinite_field_systems() {
    // random systems over Q and Q(i): no panics, no false claims; every
    // reported solution is verified and respects the requested mode
    let mut r = rng(0x5eed_000d);
    for trial in 0..150 {
        let field = if trial % 2 == 0 {
            FieldSpec::Rationals
        } else {
            FieldSpec::GaussianRationals
        };
        let p = 1 + trial % 3;
        let q = 1 + (trial / 3) % 3;
        let m = 1 + trial % (p * q);
        let sys = random_system(&mut r, field, p, q, m);
        for mode in [SolutionMode::Any, SolutionMode::Nontrivial] {
            let out = solve(
                &sys,
                &SolveOptions {
                    mode,
                    ..Default::default()
                },
            );
            if let bls_core::SolverOutcome::Solutions(sols) = &out {
                for s in sols {
                    assert!(sys.is_solution(s), "trial {trial} {mode:?}");
                    assert!(s.passes_mode(mode), "trial {trial} {mode:?}");
                }
            }
        }
    }
}

#[test]
fn m2_construction_over_gauss() {
    use bls_core::structural::solve_m2;
    let field = FieldSpec::GaussianRationals;
    let i = Scalar::parse(field, "i").unwrap();
    let sys = bls_core::fixtures::identity_rotation_system(field, &[0, 0]);
    for g in [
        vec![i.clone(), field.one()],
        vec![field.one(), i.clone()],
        vec![field.zero(), Scalar::parse(field, "2-i").unwrap()],
    ] {
        let mut sys = sys.clone();
        sys.rhs = g;
        let pair = solve_m2(&sys).unwrap();
        assert!(sys.is_solution(&pair));
    }
}

#[test]
fn border_hook_solvability_profile() {
    // first-row plus last-column units (m = p + q - 1): solvable exactly
    // when g_q != 0, or the whole first-row block g_1..g_{q-1} vanishes,
    // or the whole column block g_{q+1}..g_m vanishes; checked against
    // exhaustive enumeration of every rhs over GF(3)
    let field = gf(3);
    let (p, q) = (3usize, 3usize);
    let m = p + q - 1;
    let sys0 = bls_core::fixtures::border_hook_system(field, p, q, &[0; 5]);
    let elems: Vec<Scalar> = field.enumerate().unwrap().collect();
    let total = elems.len().pow(m as u32);
    for mut code in 0..total {
        let mut g = Vec::with_capacity(m);
        for _ in 0..m {
            g.push(elems[code % elems.len()].clone());
            code /= elems.len();
        }
        let mut sys = sys0.clone();
        sys.rhs = g.clone();
        let solvable = !brute_force_solve(&sys, SolutionMode::Any, 1 << 22)
            .unwrap()
            .is_empty();
        let gq_nonzero = !g[q - 1].is_zero();
        let row_block_zero = g[..q - 1].iter().all(Scalar::is_zero);
        let col_block_zero = g[q..].iter().all(Scalar::is_zero);
        let expected = gq_nonzero || row_block_zero || col_block_zero;
        assert_eq!(solvable, expected, "g = {g:?}");
    }
    // and in particular the system is not always solvable at m = p + q - 1
    let report = bls_core::oracle::always_solvable_exhaustive(&sys0, 1 << 22).unwrap();
    assert!(!report.always);
}

#[test]
fn staircase_always_solvable_over_gf3() {
    // the m = p + q - 2 deleted-echelon construction is always solvable
    for (p, q) in [(2usize, 2usize), (2, 3), (3, 3)] {
        let m = p + q - 2;
        let sys = bls_core::fixtures::staircase_system(gf(3), p, q, &vec![0i64; m]);
        let report = bls_core::oracle::always_solvable_exhaustive(&sys, 1 << 22).unwrap();
        assert!(report.always, "staircase {p}x{q} must be always solvable");
    }
}

#[test]
fn equiv_transform_scalar_special_case() {
    // global scalar multiplication of all matrices is equiv_transform(cI, I)
    let field = FieldSpec::Rationals;
    let mut r = rng(0x5eed_0008);
    let sys = random_independent_system(&mut r, field, 2, 2, 3);
    let c = Scalar::from_integer(field, 5);
    let ci = Matrix::identity(field, 2).scale(&c);
    let t = equiv_transform(&sys, &ci, &Matrix::identity(field, 2)).unwrap();
    for (a, b) in sys.matrices.iter().zip(&t.matrices) {
        assert_eq!(&a.scale(&c), b);
    }
    assert_eq!(sys.rhs, t.rhs);
}
