//! Point-hyperplane frameworks, extrusion and the affine maps acting on them.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::{edge_image, extrusion_action, extrusion_product, Letter, PhGraph, VertexKind};
use crate::group::{ExtrusionGroup, GroupElement};
use crate::linalg;

/// Where a vertex sits: a point, or a hyperplane `{x : ⟨a, x⟩ = r}`.
#[derive(Debug, Clone, PartialEq)]
pub enum Placement {
    Point(DVector<f64>),
    Hyperplane { normal: DVector<f64>, offset: f64 },
}

impl Placement {
    pub fn point(coords: &[f64]) -> Self {
        Placement::Point(DVector::from_column_slice(coords))
    }

    pub fn hyperplane(normal: &[f64], offset: f64) -> Self {
        Placement::Hyperplane {
            normal: DVector::from_column_slice(normal),
            offset,
        }
    }
}

/// A configuration `(p, ℓ)`, aligned with the vertex order of its graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    pub dim: usize,
    pub placements: Vec<Placement>,
}

/// Extrusion data: directions `τ_1..τ_t`, fixed sets (as base ids) and the
/// directions whose reflections are used as symmetries.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtrusionSpec {
    pub directions: Vec<DVector<f64>>,
    pub fixed_sets: Vec<BTreeSet<String>>,
    pub active: Vec<usize>,
}

impl ExtrusionSpec {
    /// All directions active.
    pub fn new(directions: Vec<DVector<f64>>, fixed_sets: Vec<BTreeSet<String>>) -> Self {
        let active = (0..directions.len()).collect();
        ExtrusionSpec {
            directions,
            fixed_sets,
            active,
        }
    }

    pub fn order(&self) -> usize {
        self.directions.len()
    }
}

/// Column layout of the coordinate vector: `d` columns per point vertex, in
/// vertex order, followed by `d + 1` columns `(a, r)` per hyperplane vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub dim: usize,
    offsets: Vec<usize>,
    widths: Vec<usize>,
    total: usize,
}

impl Layout {
    fn new(graph: &PhGraph, dim: usize) -> Self {
        let n = graph.vertices().len();
        let mut offsets = vec![0; n];
        let mut widths = vec![0; n];
        let mut next = 0;
        for kind in [VertexKind::Point, VertexKind::Hyperplane] {
            for (i, v) in graph.vertices().iter().enumerate() {
                if v.kind == kind {
                    let w = if kind == VertexKind::Point { dim } else { dim + 1 };
                    offsets[i] = next;
                    widths[i] = w;
                    next += w;
                }
            }
        }
        Layout {
            dim,
            offsets,
            widths,
            total: next,
        }
    }

    pub fn offset(&self, v: usize) -> usize {
        self.offsets[v]
    }

    pub fn width(&self, v: usize) -> usize {
        self.widths[v]
    }

    pub fn columns(&self) -> usize {
        self.total
    }

    /// Vertex and coordinate index of a column.
    pub fn locate(&self, col: usize) -> (usize, usize) {
        let v = (0..self.offsets.len())
            .find(|&v| col >= self.offsets[v] && col < self.offsets[v] + self.widths[v])
            .expect("column in range");
        (v, col - self.offsets[v])
    }
}

/// A framework `(G, p, ℓ)`, optionally with extrusion structure.
#[derive(Debug, Clone)]
pub struct Framework {
    graph: PhGraph,
    config: Configuration,
    extrusion: Option<ExtrusionSpec>,
    orbits: Vec<Vec<usize>>,
    layout: Layout,
}

impl Framework {
    pub fn new(
        graph: PhGraph,
        config: Configuration,
        extrusion: Option<ExtrusionSpec>,
    ) -> Result<Self> {
        let d = config.dim;
        if d == 0 {
            return Err(Error::Dimension("dimension must be positive".into()));
        }
        if config.placements.len() != graph.vertices().len() {
            return Err(Error::Dimension(format!(
                "{} placements for {} vertices",
                config.placements.len(),
                graph.vertices().len()
            )));
        }
        for (v, p) in graph.vertices().iter().zip(&config.placements) {
            match (v.kind, p) {
                (VertexKind::Point, Placement::Point(x)) if x.len() == d => {}
                (VertexKind::Hyperplane, Placement::Hyperplane { normal, .. }) if normal.len() == d => {
                    if normal.norm() == 0.0 {
                        return Err(Error::ZeroNormal(v.label.to_string()));
                    }
                }
                _ => {
                    return Err(Error::Dimension(format!(
                        "placement of `{}` does not match its kind or dimension {d}",
                        v.label
                    )))
                }
            }
        }
        match &extrusion {
            Some(spec) => {
                if spec.order() != graph.order() {
                    return Err(Error::FixedSetCount {
                        order: graph.order(),
                        given: spec.order(),
                    });
                }
                if spec.directions.iter().any(|t| t.len() != d) {
                    return Err(Error::Dimension("extrusion direction length".into()));
                }
                let sets = if spec.fixed_sets.is_empty() {
                    vec![BTreeSet::new(); spec.order()]
                } else {
                    spec.fixed_sets.clone()
                };
                if sets != graph.fixed_sets() {
                    return Err(Error::InvalidGraph(
                        "extrusion fixed sets differ from the graph's".into(),
                    ));
                }
                if spec.active.iter().any(|&h| h >= spec.order()) {
                    return Err(Error::Dimension("active direction out of range".into()));
                }
            }
            None if graph.order() > 0 => {
                return Err(Error::InvalidGraph(
                    "graph has vertex words but no extrusion directions".into(),
                ))
            }
            None => {}
        }
        let layout = Layout::new(&graph, d);
        Ok(Framework {
            graph,
            config,
            extrusion,
            orbits: Vec::new(),
            layout,
        })
    }

    /// Attaches translational orbits: groups of point vertices that are
    /// translates of one another.
    pub fn with_orbits(mut self, orbits: Vec<Vec<usize>>) -> Result<Self> {
        for orbit in &orbits {
            for &v in orbit {
                if v >= self.graph.vertices().len() {
                    return Err(Error::UnknownVertex(v.to_string()));
                }
                if self.graph.vertex(v).kind != VertexKind::Point {
                    return Err(Error::InvalidGraph(format!(
                        "orbit member `{}` is not a point",
                        self.graph.vertex(v).label
                    )));
                }
            }
        }
        self.orbits = orbits;
        Ok(self)
    }

    pub fn graph(&self) -> &PhGraph {
        &self.graph
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn extrusion(&self) -> Option<&ExtrusionSpec> {
        self.extrusion.as_ref()
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn dim(&self) -> usize {
        self.config.dim
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn placement(&self, v: usize) -> &Placement {
        &self.config.placements[v]
    }

    pub fn point(&self, v: usize) -> &DVector<f64> {
        match &self.config.placements[v] {
            Placement::Point(p) => p,
            Placement::Hyperplane { .. } => panic!("vertex {v} is a hyperplane"),
        }
    }

    pub fn normal(&self, v: usize) -> &DVector<f64> {
        match &self.config.placements[v] {
            Placement::Hyperplane { normal, .. } => normal,
            Placement::Point(_) => panic!("vertex {v} is a point"),
        }
    }

    pub fn offset(&self, v: usize) -> f64 {
        match &self.config.placements[v] {
            Placement::Hyperplane { offset, .. } => *offset,
            Placement::Point(_) => panic!("vertex {v} is a point"),
        }
    }

    /// The symmetry group used by the representation machinery.
    pub fn group(&self) -> ExtrusionGroup {
        match &self.extrusion {
            Some(spec) => ExtrusionGroup::with_generators(spec.order(), spec.active.clone()),
            None => ExtrusionGroup::trivial(0),
        }
    }

    /// Replaces the active extrusion directions.
    pub fn with_active(&self, active: Vec<usize>) -> Result<Framework> {
        let mut f = self.clone();
        match f.extrusion.as_mut() {
            Some(spec) => {
                if active.iter().any(|&h| h >= spec.order()) {
                    return Err(Error::Dimension("active direction out of range".into()));
                }
                spec.active = active;
            }
            None if active.is_empty() => {}
            None => return Err(Error::Precondition("framework has no extrusion".into())),
        }
        Ok(f)
    }

    /// Flattened coordinate vector in layout order.
    pub fn coordinates(&self) -> DVector<f64> {
        let mut x = DVector::zeros(self.layout.columns());
        for (v, p) in self.config.placements.iter().enumerate() {
            let o = self.layout.offset(v);
            match p {
                Placement::Point(q) => x.rows_mut(o, q.len()).copy_from(q),
                Placement::Hyperplane { normal, offset } => {
                    x.rows_mut(o, normal.len()).copy_from(normal);
                    x[o + normal.len()] = *offset;
                }
            }
        }
        x
    }

    /// Same graph and extrusion data with a new coordinate vector.
    pub fn with_coordinates(&self, x: &DVector<f64>) -> Framework {
        assert_eq!(x.len(), self.layout.columns());
        let d = self.dim();
        let placements = self
            .graph
            .vertices()
            .iter()
            .enumerate()
            .map(|(v, vert)| {
                let o = self.layout.offset(v);
                match vert.kind {
                    VertexKind::Point => Placement::Point(x.rows(o, d).into_owned()),
                    VertexKind::Hyperplane => Placement::Hyperplane {
                        normal: x.rows(o, d).into_owned(),
                        offset: x[o + d],
                    },
                }
            })
            .collect();
        let mut f = self.clone();
        f.config.placements = placements;
        f
    }

    /// The translation `τ_γ(v)` that `γ` induces on vertex `v`:
    /// `Σ_{e_h = 0, γ_h = 1} τ_h − Σ_{e_h = 1, γ_h = 1} τ_h`.
    pub fn induced_translation(&self, v: usize, gamma: &GroupElement) -> DVector<f64> {
        let mut t = DVector::zeros(self.dim());
        if let Some(spec) = &self.extrusion {
            for (h, letter) in self.graph.vertex(v).label.word.iter().enumerate() {
                if gamma.bit(h) {
                    match letter {
                        Letter::Zero => t += &spec.directions[h],
                        Letter::One => t -= &spec.directions[h],
                        Letter::Star => {}
                    }
                }
            }
        }
        t
    }

    /// Largest absolute coordinate, at least 1. Used to scale tolerances.
    pub fn scale(&self) -> f64 {
        self.coordinates().iter().fold(1.0f64, |m, x| m.max(x.abs()))
    }
}

/// Whether `τ` lies in the hyperplane with normal `a`, relative to `|τ||a|`.
pub fn contains_direction(tau: &DVector<f64>, normal: &DVector<f64>, tol: f64) -> bool {
    tau.dot(normal).abs() <= tol * tau.norm() * normal.norm()
}

/// Tolerance used when checking containment of extrusion directions.
pub const CONTAINMENT_TOL: f64 = 1e-9;

/// Extrudes a framework of order 0 along `spec`.
///
/// Points are copied to `p(v, e) = p(v, 0) + Σ e_h τ_h`; hyperplanes keep
/// their normal and shift their offset by `⟨a, τ_h⟩` for each non-`⋆` one.
pub fn extrude_framework(base: &Framework, spec: &ExtrusionSpec) -> Result<Framework> {
    if base.graph().order() != 0 {
        return Err(Error::InvalidGraph("only order-0 frameworks can be extruded".into()));
    }
    let d = base.dim();
    for (h, tau) in spec.directions.iter().enumerate() {
        if tau.len() != d {
            return Err(Error::Dimension(format!("direction {h} has length {}", tau.len())));
        }
        if tau.norm() == 0.0 {
            return Err(Error::ZeroDirection(h));
        }
    }
    let t = spec.order();
    let sets = if spec.fixed_sets.is_empty() {
        vec![BTreeSet::new(); t]
    } else {
        spec.fixed_sets.clone()
    };
    let graph = extrusion_product(base.graph(), t, &sets)?;
    for w in base.graph().hyperplane_indices() {
        let id = &base.graph().vertex(w).label.base;
        for (h, tau) in spec.directions.iter().enumerate() {
            if contains_direction(tau, base.normal(w), CONTAINMENT_TOL) != sets[h].contains(id) {
                return Err(Error::ContainmentMismatch {
                    direction: h,
                    hyperplane: id.clone(),
                });
            }
        }
    }
    let placements = graph
        .vertices()
        .iter()
        .map(|v| {
            let b = base
                .graph()
                .find(&crate::graph::VertexLabel::plain(v.label.base.clone()))
                .expect("base vertex exists");
            let mut shift = DVector::zeros(d);
            for (h, l) in v.label.word.iter().enumerate() {
                if *l == Letter::One {
                    shift += &spec.directions[h];
                }
            }
            match base.placement(b) {
                Placement::Point(p) => Placement::Point(p + shift),
                Placement::Hyperplane { normal, offset } => Placement::Hyperplane {
                    normal: normal.clone(),
                    offset: offset + normal.dot(&shift),
                },
            }
        })
        .collect();
    let spec = ExtrusionSpec {
        directions: spec.directions.clone(),
        fixed_sets: sets,
        active: spec.active.clone(),
    };
    Framework::new(graph, Configuration { dim: d, placements }, Some(spec))
}

/// One failed check of the extrusion-symmetry conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    /// `0` for the graph invariance, `1`-`4` for conditions (i)-(iv).
    pub condition: u8,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport {
    pub violations: Vec<Violation>,
    pub dependent_directions: bool,
    pub coincident_points: Vec<(String, String)>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks conditions (i)-(iv) of extrusion symmetry for every group element,
/// plus invariance of the graph. Distances are compared against
/// `tol · max(1, max |coordinate|)`.
pub fn verify_extrusion_symmetry(f: &Framework, tol: f64) -> SymmetryReport {
    let mut violations = Vec::new();
    let graph = f.graph();
    let scale = f.scale();
    let abs_tol = tol * scale;
    let mut coincident = Vec::new();
    let points = graph.point_indices();
    for (k, &i) in points.iter().enumerate() {
        for &j in &points[k + 1..] {
            if (f.point(i) - f.point(j)).norm() <= abs_tol {
                coincident.push((
                    graph.vertex(i).label.to_string(),
                    graph.vertex(j).label.to_string(),
                ));
            }
        }
    }
    let Some(spec) = f.extrusion() else {
        return SymmetryReport {
            violations,
            dependent_directions: false,
            coincident_points: coincident,
        };
    };
    let t = spec.order();
    let dependent = if t == 0 {
        false
    } else {
        let m = DMatrix::from_columns(&spec.directions);
        linalg::rank(&m, tol) < t
    };

    for h in 0..t {
        let g = GroupElement::generator(h, t);
        for e in 0..graph.edges().len() {
            if let Err(err) = edge_image(graph, &g, e) {
                violations.push(Violation {
                    condition: 0,
                    detail: err.to_string(),
                });
            }
        }
    }
    for w in graph.hyperplane_indices() {
        let a = f.normal(w);
        for (h, tau) in spec.directions.iter().enumerate() {
            if contains_direction(tau, a, tol) != graph.in_fixed_set(w, h) {
                violations.push(Violation {
                    condition: 3,
                    detail: format!(
                        "direction {} and hyperplane `{}` disagree with F_{}",
                        h + 1,
                        graph.vertex(w).label,
                        h + 1
                    ),
                });
            }
        }
    }
    for gamma in GroupElement::all(t).into_iter().skip(1) {
        for v in 0..graph.vertices().len() {
            let Ok(gv) = extrusion_action(graph, &gamma, v) else {
                violations.push(Violation {
                    condition: 0,
                    detail: format!("`{}` has no image under {gamma}", graph.vertex(v).label),
                });
                continue;
            };
            let tau = f.induced_translation(v, &gamma);
            let label = &graph.vertex(v).label;
            match (f.placement(v), f.placement(gv)) {
                (Placement::Point(p), Placement::Point(q)) => {
                    let r = (q - p - &tau).norm();
                    if r > abs_tol {
                        violations.push(Violation {
                            condition: 1,
                            detail: format!("point `{label}` under {gamma} is off by {r:.3e}"),
                        });
                    }
                }
                (
                    Placement::Hyperplane { normal: a, offset: r },
                    Placement::Hyperplane { normal: b, offset: s },
                ) => {
                    let dn = (a - b).norm();
                    if dn > tol * a.norm().max(1.0) {
                        violations.push(Violation {
                            condition: 2,
                            detail: format!("normal of `{label}` under {gamma} differs by {dn:.3e}"),
                        });
                    }
                    let dr = (s - r - a.dot(&tau)).abs();
                    if dr > abs_tol * a.norm().max(1.0) {
                        violations.push(Violation {
                            condition: 4,
                            detail: format!("offset of `{label}` under {gamma} differs by {dr:.3e}"),
                        });
                    }
                }
                _ => violations.push(Violation {
                    condition: 0,
                    detail: format!("`{label}` changes kind under {gamma}"),
                }),
            }
        }
    }
    SymmetryReport {
        violations,
        dependent_directions: dependent,
        coincident_points: coincident,
    }
}

/// Applies `x ↦ Ax + v` to points, `(a, r) ↦ (A⁻ᵀa, r + ⟨A⁻ᵀa, v⟩)` to
/// hyperplanes and `τ ↦ Aτ` to extrusion directions.
pub fn apply_affine(f: &Framework, a: &DMatrix<f64>, v: &DVector<f64>) -> Result<Framework> {
    let d = f.dim();
    if a.shape() != (d, d) || v.len() != d {
        return Err(Error::Dimension("affine map size".into()));
    }
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 || a.determinant().abs() <= 1e-12 * scale.powi(d as i32) {
        return Err(Error::SingularMap);
    }
    let inv_t = a.clone().try_inverse().ok_or(Error::SingularMap)?.transpose();
    let placements = f
        .config()
        .placements
        .iter()
        .map(|p| match p {
            Placement::Point(x) => Placement::Point(a * x + v),
            Placement::Hyperplane { normal, offset } => {
                let n = &inv_t * normal;
                let r = offset + n.dot(v);
                Placement::Hyperplane { normal: n, offset: r }
            }
        })
        .collect();
    let extrusion = f.extrusion().map(|spec| ExtrusionSpec {
        directions: spec.directions.iter().map(|t| a * t).collect(),
        fixed_sets: spec.fixed_sets.clone(),
        active: spec.active.clone(),
    });
    let g = Framework::new(f.graph().clone(), Configuration { dim: d, placements }, extrusion)?;
    g.with_orbits(f.orbits().to_vec())
}

/// Applies `I + λS` (with `S` skew-symmetric) to points and normals and
/// scales offsets by `1 + λ`.
pub fn apply_infinitesimal_rotation(f: &Framework, lambda: f64, s: &DMatrix<f64>) -> Result<Framework> {
    let d = f.dim();
    if s.shape() != (d, d) {
        return Err(Error::Dimension("rotation generator size".into()));
    }
    if (s + s.transpose()).amax() > 1e-12 * s.amax().max(1.0) {
        return Err(Error::Precondition("rotation generator is not skew-symmetric".into()));
    }
    let m = DMatrix::identity(d, d) + s * lambda;
    let placements = f
        .config()
        .placements
        .iter()
        .map(|p| match p {
            Placement::Point(x) => Placement::Point(&m * x),
            Placement::Hyperplane { normal, offset } => Placement::Hyperplane {
                normal: &m * normal,
                offset: (1.0 + lambda) * offset,
            },
        })
        .collect();
    let g = Framework::new(
        f.graph().clone(),
        Configuration { dim: d, placements },
        f.extrusion().cloned(),
    )?;
    g.with_orbits(f.orbits().to_vec())
}

/// Orthonormal basis of the orthogonal complement of `a` (as columns).
pub fn hyperplane_basis(a: &DVector<f64>) -> DMatrix<f64> {
    let d = a.len();
    let row = DMatrix::from_row_slice(1, d, a.as_slice());
    linalg::nullspace(&row, linalg::DEFAULT_TOL)
}

/// Whether the points together with `d` affinely independent sample points
/// of each hyperplane affinely span `ℝ^d`.
pub fn affine_span_check(f: &Framework, tol: f64) -> bool {
    let d = f.dim();
    let mut samples: Vec<DVector<f64>> = Vec::new();
    for (v, p) in f.config().placements.iter().enumerate() {
        match p {
            Placement::Point(x) => samples.push(x.clone()),
            Placement::Hyperplane { normal, offset } => {
                let base = normal * (offset / normal.norm_squared());
                samples.push(base.clone());
                let dirs = hyperplane_basis(normal);
                for c in 0..dirs.ncols() {
                    samples.push(&base + dirs.column(c));
                }
                let _ = v;
            }
        }
    }
    if samples.len() < d + 1 {
        return false;
    }
    let origin = samples[0].clone();
    let diffs: Vec<DVector<f64>> = samples[1..].iter().map(|s| s - &origin).collect();
    let m = DMatrix::from_columns(&diffs);
    linalg::rank(&m, tol) == d
}

/// Rescales every hyperplane to a unit normal.
pub fn normalize(f: &Framework) -> Framework {
    let mut g = f.clone();
    for p in g.config.placements.iter_mut() {
        if let Placement::Hyperplane { normal, offset } = p {
            let n = normal.norm();
            *normal /= n;
            *offset /= n;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn prism_coordinates() {
        let f = fixtures::prism();
        let v = f.graph().find_id("v2:1").unwrap();
        assert_eq!(f.point(v).as_slice(), &[3.0, 2.0]);
        assert!(verify_extrusion_symmetry(&f, 1e-9).passed());
    }

    #[test]
    fn point_line_offsets() {
        let f = fixtures::point_line();
        let w = f.graph().find_id("w1:*1").unwrap();
        assert_eq!(f.offset(w), -3.0);
        let w2 = f.graph().find_id("w2:1*").unwrap();
        assert_eq!(f.offset(w2), 1.5);
        assert!(verify_extrusion_symmetry(&f, 1e-9).passed());
    }

    #[test]
    fn perturbed_point_is_flagged() {
        let f = fixtures::prism();
        let mut x = f.coordinates();
        x[0] += 0.1;
        let g = f.with_coordinates(&x);
        let report = verify_extrusion_symmetry(&g, 1e-9);
        assert!(report.violations.iter().any(|v| v.condition == 1));
    }

    #[test]
    fn containment_mismatch_rejected() {
        let base = fixtures::point_two_lines_base();
        let spec = ExtrusionSpec::new(
            vec![DVector::from_vec(vec![4.0, 0.0])],
            vec![["w1".to_string()].into_iter().collect()],
        );
        assert!(matches!(
            extrude_framework(&base, &spec),
            Err(Error::ContainmentMismatch { .. })
        ));
    }

    #[test]
    fn zero_direction_rejected() {
        let base = fixtures::triangle();
        let spec = ExtrusionSpec::new(vec![DVector::zeros(2)], vec![]);
        assert_eq!(extrude_framework(&base, &spec).unwrap_err(), Error::ZeroDirection(0));
    }

    #[test]
    fn singular_affine_rejected() {
        let f = fixtures::prism();
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert_eq!(
            apply_affine(&f, &a, &DVector::zeros(2)).unwrap_err(),
            Error::SingularMap
        );
    }

    #[test]
    fn dependent_directions_flagged() {
        let base = fixtures::triangle();
        let spec = ExtrusionSpec::new(
            vec![DVector::from_vec(vec![0.0, 2.0]), DVector::from_vec(vec![0.0, 3.0])],
            vec![],
        );
        let f = extrude_framework(&base, &spec).unwrap();
        let report = verify_extrusion_symmetry(&f, 1e-9);
        assert!(report.dependent_directions);
        assert!(report.passed());
    }

    #[test]
    fn span_checks() {
        assert!(affine_span_check(&fixtures::point_line(), 1e-9));
        assert!(affine_span_check(&fixtures::prism(), 1e-9));
        assert!(!affine_span_check(&fixtures::collinear_triangle(), 1e-9));
    }
}
