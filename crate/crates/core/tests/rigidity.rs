//! Rigidity matrices, trivial motions and Jacobian oracles.

mod common;

use exflex::finiteflex::MeasurementMap;
use exflex::fixtures;
use exflex::rigidity::full_rigidity;
use exflex::{
    affine_span_check, apply_infinitesimal_rotation, infinitesimal_analysis, rigidity_matrix,
    trivial_motion_basis, Framework, PinningSpec, Placement,
};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

fn rank(f: &Framework, pin: &PinningSpec) -> usize {
    infinitesimal_analysis(f, pin, TOL).unwrap().rank
}

#[test]
fn maxwell_identity_on_every_fixture() {
    let mut cases = common::symmetric_cases();
    cases.extend(fixtures::catalogue().into_iter().map(|(n, f, _)| (n.to_string(), f, PinningSpec::none())));
    cases.push(("triangle".into(), fixtures::triangle(), PinningSpec::none()));
    for (name, f, pin) in cases {
        let a = infinitesimal_analysis(&f, &pin, TOL).unwrap();
        let lhs = a.flex_dim as i64 - a.stress_dim as i64;
        let trivial = trivial_motion_basis(&f, &pin).ncols() as i64;
        assert_eq!(lhs, a.cols as i64 - a.rows as i64 - trivial, "{name}");
        if f.graph().is_bar_joint() && pin.is_empty() && affine_span_check(&f, TOL) {
            let d = f.dim() as i64;
            let v = f.graph().vertices().len() as i64;
            let e = f.graph().edges().len() as i64;
            assert_eq!(lhs, d * v - e - d * (d + 1) / 2, "{name}");
        }
    }
}

#[test]
fn trivial_motions_lie_in_the_kernel() {
    for (name, f, pin) in common::symmetric_cases() {
        let r = rigidity_matrix(&f, &pin).unwrap().matrix;
        let t = trivial_motion_basis(&f, &pin);
        let residual = (&r * &t).amax();
        assert!(residual <= 1e-9 * r.amax().max(1.0), "{name}: {residual}");
    }
}

fn skew(rng: &mut ChaCha8Rng, d: usize) -> DMatrix<f64> {
    let m = DMatrix::<f64>::from_fn(d, d, |_, _| rng.gen_range(-1.0..1.0));
    &m - m.transpose()
}

#[test]
fn rank_is_invariant_under_infinitesimal_rotations() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, f, pin) in common::symmetric_cases() {
        let base = rank(&f, &pin);
        for _ in 0..50 {
            let s = skew(&mut rng, f.dim());
            let lambda = rng.gen_range(-0.1..0.1);
            let g = apply_infinitesimal_rotation(&f, lambda, &s).unwrap();
            assert_eq!(rank(&g, &pin), base, "{name} λ = {lambda}");
        }
    }
}

fn rescale_hyperplane(f: &Framework, v: usize, alpha: f64) -> Framework {
    let layout = f.layout();
    let d = f.dim();
    let mut x = f.coordinates();
    for c in 0..=d {
        x[layout.offset(v) + c] *= alpha;
    }
    f.with_coordinates(&x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rank_is_invariant_under_hyperplane_rescaling(
        which in 0usize..64,
        alpha in prop_oneof![-3.0f64..-0.2, 0.2f64..3.0],
    ) {
        for (name, f, pin) in common::symmetric_cases() {
            let planes = f.graph().hyperplane_indices();
            if planes.is_empty() {
                continue;
            }
            let v = planes[which % planes.len()];
            let g = rescale_hyperplane(&f, v, alpha);
            prop_assert_eq!(rank(&g, &pin), rank(&f, &pin), "{}", name);
        }
    }
}

/// Central differences of `map` at `x`, one column per coordinate.
fn central_difference(map: impl Fn(&DVector<f64>) -> DVector<f64>, x: &DVector<f64>, rows: usize) -> DMatrix<f64> {
    const STEP: f64 = 1e-6;
    let mut j = DMatrix::zeros(rows, x.len());
    for c in 0..x.len() {
        let mut plus = x.clone();
        let mut minus = x.clone();
        plus[c] += STEP;
        minus[c] -= STEP;
        j.set_column(c, &((map(&plus) - map(&minus)) / (2.0 * STEP)));
    }
    j
}

fn assert_close(name: &str, analytic: &DMatrix<f64>, numeric: &DMatrix<f64>) {
    let scale = analytic.amax().max(1.0);
    let err = (analytic - numeric).amax();
    assert!(err <= 1e-6 * scale, "{name}: finite-difference error {err} at scale {scale}");
}

#[test]
fn bar_rigidity_matrix_is_half_the_squared_length_jacobian() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, f, _) in fixtures::catalogue() {
        if !f.graph().is_bar_joint() {
            continue;
        }
        for _ in 0..5 {
            let x = common::perturbed_in_wg(&f, &mut rng, 0.5);
            let g = f.with_coordinates(&x);
            let (r, _) = full_rigidity(&g).unwrap();
            let d = f.dim();
            let edges = f.graph().edges().to_vec();
            let lengths = |y: &DVector<f64>| {
                DVector::from_iterator(
                    edges.len(),
                    edges.iter().map(|e| (y.rows(e.ends.0 * d, d) - y.rows(e.ends.1 * d, d)).norm_squared() / 2.0),
                )
            };
            assert_close(name, &r, &central_difference(lengths, &x, edges.len()));
        }
    }
}

#[test]
fn measurement_jacobian_matches_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut cases: Vec<(String, Framework)> =
        fixtures::catalogue().into_iter().map(|(n, f, _)| (n.to_string(), f)).collect();
    cases.push(("parallel_pair_2d".into(), fixtures::parallel_pair(2)));
    cases.push(("parallel_pair_3d".into(), fixtures::parallel_pair(3)));
    for (name, f) in cases {
        for map in [MeasurementMap::for_graph(&f).unwrap(), MeasurementMap::complete(&f).unwrap()] {
            for _ in 0..10 {
                let x = common::perturbed_in_wg(&f, &mut rng, 0.3);
                assert!(map.parallel_residual(&x) <= 1e-9, "{name}: sample left the parallel set");
                let fd = central_difference(|y| map.evaluate(y), &x, map.len());
                assert_close(&name, &map.jacobian(&x), &fd);
            }
        }
    }
}

#[test]
fn pinned_columns_are_deleted() {
    let (f, pin) = fixtures::prism_pinned();
    let r = rigidity_matrix(&f, &pin).unwrap();
    assert_eq!(r.ncols(), f.layout().columns() - pin.pinned_coords.len());
    assert!(f.config().placements.iter().all(|p| matches!(p, Placement::Point(_))));
}
