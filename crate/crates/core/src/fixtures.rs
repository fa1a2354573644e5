//! Reference frameworks used throughout the tests, benches and the bundled
//! example documents.

use std::collections::BTreeSet;

use nalgebra::DVector;

use crate::framework::{extrude_framework, Configuration, ExtrusionSpec, Framework, Placement};
use crate::graph::{EdgeKind, PhGraph, Vertex, VertexKind, VertexLabel};
use crate::rigidity::PinningSpec;

/// Builds an order-0 framework from named points, named hyperplanes
/// `(id, normal, offset)` and edges between ids.
pub fn base_framework(
    dim: usize,
    points: &[(&str, &[f64])],
    hyperplanes: &[(&str, &[f64], f64)],
    edges: &[(&str, &str, EdgeKind)],
) -> Framework {
    let mut vertices = Vec::new();
    let mut placements = Vec::new();
    for (id, x) in points {
        vertices.push(Vertex {
            label: VertexLabel::plain(*id),
            kind: VertexKind::Point,
        });
        placements.push(Placement::point(x));
    }
    for (id, a, r) in hyperplanes {
        vertices.push(Vertex {
            label: VertexLabel::plain(*id),
            kind: VertexKind::Hyperplane,
        });
        placements.push(Placement::hyperplane(a, *r));
    }
    let position = |id: &str| {
        vertices
            .iter()
            .position(|v| v.label.base == id)
            .unwrap_or_else(|| panic!("unknown fixture vertex {id}"))
    };
    let edges = edges
        .iter()
        .map(|(a, b, k)| (position(a), position(b), *k))
        .collect();
    let graph = PhGraph::new(vertices, edges, 0, vec![]).expect("fixture graph");
    Framework::new(graph, Configuration { dim, placements }, None).expect("fixture framework")
}

fn dir(v: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(v)
}

fn set(ids: &[&str]) -> BTreeSet<String> {
    ids.iter().map(|s| s.to_string()).collect()
}

const PP: EdgeKind = EdgeKind::PointPoint;
const PH: EdgeKind = EdgeKind::PointHyperplane;

/// Triangle with vertices `(0,0), (3,0), (1.5,1)`.
pub fn triangle() -> Framework {
    base_framework(
        2,
        &[("v1", &[0.0, 0.0]), ("v2", &[3.0, 0.0]), ("v3", &[1.5, 1.0])],
        &[],
        &[("v1", "v2", PP), ("v2", "v3", PP), ("v1", "v3", PP)],
    )
}

/// A degenerate triangle on a line, used for span failures.
pub fn collinear_triangle() -> Framework {
    base_framework(
        2,
        &[("v1", &[0.0, 0.0]), ("v2", &[1.0, 0.0]), ("v3", &[2.5, 0.0])],
        &[],
        &[("v1", "v2", PP), ("v2", "v3", PP), ("v1", "v3", PP)],
    )
}

/// The triangular prism: the triangle extruded along `τ = (0, 2)`.
pub fn prism() -> Framework {
    let spec = ExtrusionSpec::new(vec![dir(&[0.0, 2.0])], vec![]);
    extrude_framework(&triangle(), &spec).expect("prism")
}

/// The prism with its two leftmost vertices fully pinned.
pub fn prism_pinned() -> (Framework, PinningSpec) {
    let f = prism();
    let vs = [
        f.graph().find_id("v1:0").unwrap(),
        f.graph().find_id("v1:1").unwrap(),
    ];
    let pin = PinningSpec::points(&f, &vs);
    (f, pin)
}

/// Triangle `(0,0), (2,0), (1,1)` extruded along `(0,3)` and `(4,−0.8)`.
pub fn two_fold_prism() -> Framework {
    let base = base_framework(
        2,
        &[("v1", &[0.0, 0.0]), ("v2", &[2.0, 0.0]), ("v3", &[1.0, 1.0])],
        &[],
        &[("v1", "v2", PP), ("v2", "v3", PP), ("v1", "v3", PP)],
    );
    let spec = ExtrusionSpec::new(vec![dir(&[0.0, 3.0]), dir(&[4.0, -0.8])], vec![]);
    extrude_framework(&base, &spec).expect("two-fold prism")
}

/// Two-fold prism with `v1:00` and `v1:10` pinned, restricted to the
/// reflection along the first direction.
pub fn two_fold_prism_pinned() -> (Framework, PinningSpec) {
    let f = two_fold_prism().with_active(vec![0]).expect("active direction");
    let vs = [
        f.graph().find_id("v1:00").unwrap(),
        f.graph().find_id("v1:10").unwrap(),
    ];
    let pin = PinningSpec::points(&f, &vs);
    (f, pin)
}

/// A point at the origin on the lines `y = x + 1` and `y = −1/2`.
pub fn point_two_lines_base() -> Framework {
    base_framework(
        2,
        &[("v1", &[0.0, 0.0])],
        &[("w1", &[-1.0, 1.0], 1.0), ("w2", &[0.0, 1.0], -0.5)],
        &[("v1", "w1", PH), ("v1", "w2", PH)],
    )
}

/// The point-line framework extruded once along the slanted line.
pub fn point_line_single() -> Framework {
    let spec = ExtrusionSpec::new(vec![dir(&[2.0, 2.0])], vec![set(&["w1"])]);
    extrude_framework(&point_two_lines_base(), &spec).expect("point-line single")
}

/// The point-line framework extruded along both lines: `τ_1 = (2,2)` inside
/// `w1` and `τ_2 = (4,0)` inside `w2`.
pub fn point_line() -> Framework {
    let spec = ExtrusionSpec::new(
        vec![dir(&[2.0, 2.0]), dir(&[4.0, 0.0])],
        vec![set(&["w1"]), set(&["w2"])],
    );
    extrude_framework(&point_two_lines_base(), &spec).expect("point-line")
}

/// A point on two lines meeting at a fixed angle, extruded along the first
/// line. Infinitesimally rigid.
pub fn ph_triangle() -> Framework {
    let base = base_framework(
        2,
        &[("v1", &[0.0, 0.0])],
        &[("w1", &[-1.0, 1.0], 1.0), ("w2", &[0.0, 1.0], -0.5)],
        &[("v1", "w1", PH), ("v1", "w2", PH), ("w1", "w2", EdgeKind::Angle)],
    );
    let spec = ExtrusionSpec::new(vec![dir(&[2.0, 2.0])], vec![set(&["w1"])]);
    extrude_framework(&base, &spec).expect("point-hyperplane triangle")
}

/// The unit cube as a point with a bottom plane `z = 0` and a left plane
/// `x = 0`, extruded along the three axes.
pub fn cube() -> Framework {
    let base = base_framework(
        3,
        &[("v1", &[0.0, 0.0, 0.0])],
        &[("w1", &[0.0, 0.0, 1.0], 0.0), ("w2", &[1.0, 0.0, 0.0], 0.0)],
        &[("v1", "w1", PH), ("v1", "w2", PH)],
    );
    let spec = ExtrusionSpec::new(
        vec![dir(&[1.0, 0.0, 0.0]), dir(&[0.0, 1.0, 0.0]), dir(&[0.0, 0.0, 1.0])],
        vec![set(&["w1"]), set(&["w1", "w2"]), set(&["w2"])],
    );
    extrude_framework(&base, &spec).expect("cube")
}

/// Three translated copies of a triangle with corresponding vertices of
/// every pair of copies joined. Carries the three translational orbits.
pub fn cycle_of_triangles() -> Framework {
    let shifts = [[0.0, -0.3], [0.0, 2.3], [5.0, 1.0]];
    let shape = [[0.0, 0.0], [3.0, 0.0], [1.5, 1.0]];
    let names = ["a", "b", "c"];
    let mut points: Vec<(String, Vec<f64>)> = Vec::new();
    for (k, s) in shifts.iter().enumerate() {
        for (n, p) in names.iter().zip(&shape) {
            points.push((format!("{n}{}", k + 1), vec![p[0] + s[0], p[1] + s[1]]));
        }
    }
    let mut edges: Vec<(String, String)> = Vec::new();
    for k in 1..=3 {
        edges.push((format!("a{k}"), format!("b{k}")));
        edges.push((format!("b{k}"), format!("c{k}")));
        edges.push((format!("a{k}"), format!("c{k}")));
    }
    for (k, l) in [(1, 2), (1, 3), (2, 3)] {
        for n in names {
            edges.push((format!("{n}{k}"), format!("{n}{l}")));
        }
    }
    let pts: Vec<(&str, &[f64])> = points.iter().map(|(n, x)| (n.as_str(), x.as_slice())).collect();
    let es: Vec<(&str, &str, EdgeKind)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str(), PP)).collect();
    let f = base_framework(2, &pts, &[], &es);
    let orbits = names
        .iter()
        .map(|n| (1..=3).map(|k| f.graph().find_id(&format!("{n}{k}")).unwrap()).collect())
        .collect();
    f.with_orbits(orbits).expect("orbits")
}

/// `K_{3,3}` with one part on the x-axis and the other on the y-axis.
pub fn k33() -> Framework {
    let a: [(&str, &[f64]); 3] = [("a1", &[1.0, 0.0]), ("a2", &[2.5, 0.0]), ("a3", &[-2.0, 0.0])];
    let b: [(&str, &[f64]); 3] = [("b1", &[0.0, 1.0]), ("b2", &[0.0, -1.5]), ("b3", &[0.0, 3.0])];
    let points: Vec<(&str, &[f64])> = a.iter().chain(b.iter()).cloned().collect();
    let mut edges = Vec::new();
    for (x, _) in &a {
        for (y, _) in &b {
            edges.push((*x, *y, PP));
        }
    }
    base_framework(2, &points, &[], &edges)
}

/// Minimal pin of `K_{3,3}` fixing `a1` and one coordinate of `other`.
pub fn k33_pin(f: &Framework, other: &str, coord: usize) -> PinningSpec {
    let u = f.graph().find_id("a1").unwrap();
    let w = f.graph().find_id(other).unwrap();
    let mut pin = PinningSpec::points(f, &[u]);
    pin.pinned_coords.insert((w, coord));
    pin
}

/// Two parallel hyperplanes and a point on each in dimension `d`.
pub fn parallel_pair(d: usize) -> Framework {
    let mut normal = vec![0.0; d];
    normal[0] = 1.0;
    let mut p = vec![0.0; d];
    let mut q = vec![0.0; d];
    q[0] = 1.0;
    p[d - 1] = 0.5;
    base_framework(
        d,
        &[("p", &p), ("q", &q)],
        &[("h1", &normal, 0.0), ("h2", &normal, 1.0)],
        &[("p", "h1", PH), ("q", "h2", PH), ("h1", "h2", EdgeKind::Parallel)],
    )
}

/// Every named fixture with its bundled file stem.
pub fn catalogue() -> Vec<(&'static str, Framework, PinningSpec)> {
    let (pp, pin) = prism_pinned();
    let (tp, tpin) = two_fold_prism_pinned();
    vec![
        ("prism", prism(), PinningSpec::none()),
        ("prism_pinned", pp, pin),
        ("two_fold_prism", two_fold_prism(), PinningSpec::none()),
        ("two_fold_prism_pinned", tp, tpin),
        ("point_line_single", point_line_single(), PinningSpec::none()),
        ("point_line", point_line(), PinningSpec::none()),
        ("ph_triangle", ph_triangle(), PinningSpec::none()),
        ("cube", cube(), PinningSpec::none()),
        ("cycle_of_triangles", cycle_of_triangles(), PinningSpec::none()),
        ("k33", k33(), PinningSpec::none()),
    ]
}
