//! Graph products, group actions and configuration transforms.

mod common;

use std::collections::BTreeSet;

use exflex::fixtures;
use exflex::{
    apply_affine, extrude_framework, extrusion_action, extrusion_product, EdgeKind, ExtrusionSpec,
    Framework, GroupElement, PhGraph, Vertex, VertexKind, VertexLabel,
};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A base graph with `points` points, `planes` hyperplanes and the edges
/// chosen by `mask` among all admissible pairs.
fn base_graph(points: usize, planes: usize, mask: &[bool]) -> (PhGraph, usize) {
    let mut vertices = Vec::new();
    for i in 0..points {
        vertices.push(Vertex {
            label: VertexLabel::plain(format!("p{i}")),
            kind: VertexKind::Point,
        });
    }
    for i in 0..planes {
        vertices.push(Vertex {
            label: VertexLabel::plain(format!("h{i}")),
            kind: VertexKind::Hyperplane,
        });
    }
    let n = points + planes;
    let mut edges = Vec::new();
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            let kind = match (a < points, b < points) {
                (true, true) => EdgeKind::PointPoint,
                (true, false) => EdgeKind::PointHyperplane,
                _ => EdgeKind::Angle,
            };
            if mask[k % mask.len()] {
                edges.push((a, b, kind));
            }
            k += 1;
        }
    }
    let m = edges.len();
    (PhGraph::new(vertices, edges, 0, vec![]).unwrap(), m)
}

proptest! {
    #[test]
    fn product_sizes_without_fixed_sets(
        points in 1usize..5,
        planes in 0usize..3,
        t in 0usize..4,
        mask in proptest::collection::vec(any::<bool>(), 1..12),
    ) {
        let (base, m) = base_graph(points, planes, &mask);
        let k = points + planes;
        let g = extrusion_product(&base, t, &vec![BTreeSet::new(); t]).unwrap();
        let copies = 1usize << t;
        prop_assert_eq!(g.vertices().len(), k * copies);
        prop_assert_eq!(g.edges().len(), m * copies + k * t * copies / 2);
    }

    #[test]
    fn action_is_a_homomorphism(
        points in 1usize..4,
        planes in 0usize..3,
        t in 1usize..4,
        fixed in proptest::collection::vec(any::<bool>(), 6),
        mask in proptest::collection::vec(any::<bool>(), 1..12),
    ) {
        let (base, _) = base_graph(points, planes, &mask);
        let fixed_sets: Vec<BTreeSet<String>> = (0..t)
            .map(|h| {
                (0..planes)
                    .filter(|i| fixed[(h * planes + i) % fixed.len()])
                    .map(|i| format!("h{i}"))
                    .collect()
            })
            .collect();
        let g = extrusion_product(&base, t, &fixed_sets).unwrap();
        let elements = GroupElement::all(t);
        for a in &elements {
            for b in &elements {
                let ab = a.compose(b);
                for v in 0..g.vertices().len() {
                    let lhs = extrusion_action(&g, a, extrusion_action(&g, b, v).unwrap()).unwrap();
                    prop_assert_eq!(lhs, extrusion_action(&g, &ab, v).unwrap());
                }
            }
        }
        // Edge sets map to themselves.
        for gamma in &elements {
            for e in g.edges() {
                let a = extrusion_action(&g, gamma, e.ends.0).unwrap();
                let b = extrusion_action(&g, gamma, e.ends.1).unwrap();
                let image = g.find_edge(a, b).map(|i| g.edges()[i].kind);
                prop_assert_eq!(image, Some(e.kind));
            }
        }
        for e in g.edges().iter().filter(|e| e.kind == EdgeKind::Parallel) {
            prop_assert_eq!(g.parallel_class(e.ends.0), g.parallel_class(e.ends.1));
        }
    }

    #[test]
    fn extrusion_output_is_exactly_symmetric(
        coords in proptest::collection::vec(-3.0f64..3.0, 6),
        tau in proptest::collection::vec(-2.0f64..2.0, 2),
    ) {
        prop_assume!(tau[0].hypot(tau[1]) > 0.1);
        let base = fixtures::base_framework(
            2,
            &[("a", &coords[0..2]), ("b", &coords[2..4]), ("c", &coords[4..6])],
            &[],
            &[("a", "b", EdgeKind::PointPoint), ("b", "c", EdgeKind::PointPoint)],
        );
        let spec = ExtrusionSpec::new(vec![DVector::from_vec(tau)], vec![BTreeSet::new()]);
        let f = extrude_framework(&base, &spec).unwrap();
        prop_assert!(exflex::verify_extrusion_symmetry(&f, 1e-12).passed());
    }
}

fn random_invertible(rng: &mut ChaCha8Rng, d: usize) -> DMatrix<f64> {
    loop {
        let a = DMatrix::<f64>::from_fn(d, d, |_, _| rng.gen_range(-2.0..2.0));
        if a.determinant().abs() > 0.2 {
            return a;
        }
    }
}

#[test]
fn affine_maps_preserve_extrusion_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, f, _) in common::extrusion_cases() {
        assert!(exflex::verify_extrusion_symmetry(&f, 1e-12).passed(), "{name}");
        let d = f.dim();
        for _ in 0..100 {
            let a = random_invertible(&mut rng, d);
            let v = DVector::from_fn(d, |_, _| rng.gen_range(-5.0..5.0));
            let g = apply_affine(&f, &a, &v).unwrap();
            let report = exflex::verify_extrusion_symmetry(&g, 1e-8);
            assert!(report.passed(), "{name}: {:?}", report.violations);
        }
    }
}

fn edge_lengths(f: &Framework) -> Vec<f64> {
    f.graph()
        .edges()
        .iter()
        .map(|e| (f.point(e.ends.0) - f.point(e.ends.1)).norm())
        .collect()
}

#[test]
fn orthogonal_maps_preserve_bar_lengths() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, f, _) in fixtures::catalogue() {
        if !f.graph().is_bar_joint() {
            continue;
        }
        let d = f.dim();
        let before = edge_lengths(&f);
        for _ in 0..20 {
            let q = random_invertible(&mut rng, d).qr().q();
            let v = DVector::from_fn(d, |_, _| rng.gen_range(-5.0..5.0));
            let after = edge_lengths(&apply_affine(&f, &q, &v).unwrap());
            for (x, y) in before.iter().zip(&after) {
                assert!((x - y).abs() <= 1e-12 * x.max(1.0), "{name}: {x} vs {y}");
            }
        }
    }
}

#[test]
fn singular_maps_are_rejected() {
    let f = fixtures::prism();
    let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
    assert!(apply_affine(&f, &a, &DVector::zeros(2)).is_err());
}
