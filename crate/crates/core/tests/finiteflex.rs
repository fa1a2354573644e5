//! Finite-flex certification and the linear push.

mod common;

use exflex::finiteflex::{push_iteration_bound, MeasurementMap};
use exflex::fixtures;
use exflex::linalg;
use exflex::{
    finite_flex_test, linear_push, measurement_jacobian, minimal_pinning, FlexDetermination, PinningSpec,
    PushDetermination,
};
use nalgebra::DVector;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;
const SAMPLES: usize = 10;

#[test]
fn complete_rank_counts_the_subspace_minus_trivial_motions() {
    for (name, f, pin) in common::symmetric_cases() {
        for irrep in 0..f.group().size() {
            let Ok(r) = finite_flex_test(&f, &pin, irrep, SAMPLES, 0, TOL) else {
                continue;
            };
            assert_eq!(
                r.complete_rank,
                r.subspace.dim() - r.trivial_in_subspace,
                "{name} ρ{irrep}"
            );
            assert!(r.regularity.base_rank <= r.complete_rank, "{name} ρ{irrep}");
            for &s in &r.regularity.sample_ranks {
                assert!(s <= r.complete_rank, "{name} ρ{irrep}");
            }
        }
    }
}

#[test]
fn symmetric_block_route_agrees_with_the_jacobian() {
    for (f, pin) in [fixtures::prism_pinned(), (fixtures::prism(), PinningSpec::none())] {
        let r = finite_flex_test(&f, &pin, 0, SAMPLES, 0, TOL).unwrap();
        let ranks = r.block_ranks.expect("second route runs for ρ0 of a nontrivial group");
        let mut jacobian_ranks = vec![r.regularity.base_rank];
        jacobian_ranks.extend(&r.regularity.sample_ranks);
        assert_eq!(ranks, jacobian_ranks);
    }
}

#[test]
fn certification_verdicts() {
    let cases = [
        ("prism", fixtures::prism(), PinningSpec::none(), FlexDetermination::FiniteFlexCertified),
        (
            "two_fold_prism",
            fixtures::two_fold_prism(),
            PinningSpec::none(),
            FlexDetermination::FiniteFlexCertified,
        ),
        (
            "cycle_of_triangles",
            fixtures::cycle_of_triangles(),
            PinningSpec::none(),
            FlexDetermination::FiniteFlexCertified,
        ),
        ("triangle", fixtures::triangle(), PinningSpec::none(), FlexDetermination::NoSymmetricFlex),
    ];
    for (name, f, pin, expected) in cases {
        let r = finite_flex_test(&f, &pin, 0, SAMPLES, 0, TOL).unwrap();
        assert_eq!(r.determination, expected, "{name}");
    }
}

#[test]
fn k33_pushes_depend_on_the_pinned_pair() {
    let f = fixtures::k33();
    let adjacent = linear_push(&f, &fixtures::k33_pin(&f, "b1", 0), 0, 1000, TOL).unwrap();
    assert_eq!(adjacent.determination, PushDetermination::NotLinearlyDetectable);
    let nonadjacent = linear_push(&f, &fixtures::k33_pin(&f, "a2", 1), 0, 1000, TOL).unwrap();
    assert_eq!(nonadjacent.determination, PushDetermination::LinearlyDetectable);
    let degenerate = linear_push(&f, &fixtures::k33_pin(&f, "a2", 0), 0, 1000, TOL).unwrap();
    assert_eq!(degenerate.determination, PushDetermination::PreconditionFailed);
}

#[test]
fn push_is_deterministic() {
    let f = fixtures::k33();
    let pin = fixtures::k33_pin(&f, "a2", 1);
    let a = linear_push(&f, &pin, 42, 1000, TOL).unwrap();
    let b = linear_push(&f, &pin, 42, 1000, TOL).unwrap();
    assert_eq!(a.determination, b.determination);
    assert_eq!(a.iterations, b.iterations);
    assert_eq!(a.trace, b.trace);
    assert_eq!(a.subspace.base, b.subspace.base);
    assert_eq!(a.subspace.basis, b.subspace.basis);
}

#[test]
fn certified_subspaces_have_stable_rank() {
    let prism = fixtures::prism();
    let k33 = fixtures::k33();
    let cases = [
        (prism.clone(), minimal_pinning(&prism).unwrap()),
        (k33.clone(), fixtures::k33_pin(&k33, "a2", 1)),
    ];
    for (f, pin) in cases {
        let result = linear_push(&f, &pin, 0, 1000, TOL).unwrap();
        assert_eq!(result.determination, PushDetermination::LinearlyDetectable);
        let map = MeasurementMap::for_graph(&f).unwrap();
        let base = f.coordinates();
        let scale = base.norm().max(1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..20 {
            let coeffs = DVector::from_fn(result.subspace.dim(), |_, _| rng.gen_range(-1.0..1.0) * scale);
            let x = result.subspace.point(&coeffs);
            let j = measurement_jacobian(&map, &pin, &x).unwrap();
            assert_eq!(linalg::rank(&j, TOL), result.base_rank);
        }
    }
}

#[test]
fn rigid_frameworks_fail_the_push_precondition() {
    let f = fixtures::triangle();
    let pin = minimal_pinning(&f).unwrap();
    let r = linear_push(&f, &pin, 0, 1000, TOL).unwrap();
    assert_eq!(r.determination, PushDetermination::PreconditionFailed);
    assert!(r.note.is_some());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn push_never_exceeds_its_bound(seed in any::<u64>(), which in 0usize..3) {
        let f = fixtures::k33();
        let pin = match which {
            0 => fixtures::k33_pin(&f, "b1", 0),
            1 => fixtures::k33_pin(&f, "a2", 1),
            _ => fixtures::k33_pin(&f, "b2", 1),
        };
        let r = linear_push(&f, &pin, seed, 1000, TOL).unwrap();
        prop_assert!(r.iterations <= push_iteration_bound(&f));
        prop_assert!(r.trace.len() <= push_iteration_bound(&f));
        prop_assert_ne!(r.determination, PushDetermination::PreconditionFailed);
    }
}
