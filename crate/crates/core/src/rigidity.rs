//! Rigidity matrices, trivial motions, infinitesimal analysis and pinning.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::framework::{contains_direction, ExtrusionSpec, Framework, CONTAINMENT_TOL};
use crate::graph::{EdgeKind, VertexKind};
use crate::linalg;

/// Coordinates and hyperplanes held fixed during an analysis.
///
/// `pinned_coords` holds `(vertex, coordinate)` pairs. A fully pinned
/// hyperplane loses all `d + 1` columns; a parallel-only hyperplane keeps
/// only its offset column.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PinningSpec {
    pub pinned_coords: BTreeSet<(usize, usize)>,
    pub fully_pinned: BTreeSet<usize>,
    pub parallel_only: BTreeSet<usize>,
}

impl PinningSpec {
    pub fn none() -> Self {
        PinningSpec::default()
    }

    pub fn is_empty(&self) -> bool {
        self.pinned_coords.is_empty() && self.fully_pinned.is_empty() && self.parallel_only.is_empty()
    }

    /// Pins every coordinate of the given point vertices.
    pub fn points(f: &Framework, vertices: &[usize]) -> Self {
        let mut pin = PinningSpec::none();
        for &v in vertices {
            for c in 0..f.dim() {
                pin.pinned_coords.insert((v, c));
            }
        }
        pin
    }

    pub fn validate(&self, f: &Framework) -> Result<()> {
        let g = f.graph();
        let n = g.vertices().len();
        for &(v, c) in &self.pinned_coords {
            if v >= n || c >= f.layout().width(v) {
                return Err(Error::Precondition(format!("pinned coordinate ({v}, {c}) out of range")));
            }
        }
        for &v in self.fully_pinned.iter().chain(&self.parallel_only) {
            if v >= n || g.vertex(v).kind != VertexKind::Hyperplane {
                return Err(Error::Precondition(format!("pinned vertex {v} is not a hyperplane")));
            }
        }
        if self.fully_pinned.intersection(&self.parallel_only).next().is_some() {
            return Err(Error::Precondition(
                "a hyperplane cannot be both fully pinned and parallel-only".into(),
            ));
        }
        Ok(())
    }

    /// Full-layout columns deleted by this pinning.
    pub fn removed_columns(&self, f: &Framework) -> BTreeSet<usize> {
        let layout = f.layout();
        let d = f.dim();
        let mut removed = BTreeSet::new();
        for &(v, c) in &self.pinned_coords {
            removed.insert(layout.offset(v) + c);
        }
        for &v in &self.fully_pinned {
            removed.extend(layout.offset(v)..layout.offset(v) + d + 1);
        }
        for &v in &self.parallel_only {
            removed.extend(layout.offset(v)..layout.offset(v) + d);
        }
        removed
    }

    pub fn kept_columns(&self, f: &Framework) -> Vec<usize> {
        let removed = self.removed_columns(f);
        (0..f.layout().columns()).filter(|c| !removed.contains(c)).collect()
    }

    /// Human-readable coordinate names such as `v1:0.x`.
    pub fn describe(&self, f: &Framework) -> Vec<String> {
        let mut out: Vec<String> = self
            .pinned_coords
            .iter()
            .map(|&(v, c)| format!("{}.{}", f.graph().vertex(v).label, coordinate_name(c, f.dim())))
            .collect();
        out.extend(
            self.fully_pinned
                .iter()
                .map(|&v| format!("{} (pinned)", f.graph().vertex(v).label)),
        );
        out.extend(
            self.parallel_only
                .iter()
                .map(|&v| format!("{} (parallel only)", f.graph().vertex(v).label)),
        );
        out
    }
}

/// `x`, `y`, `z` for the first three coordinates, `r` for a hyperplane
/// offset, `c<i>` beyond that.
pub fn coordinate_name(c: usize, dim: usize) -> String {
    if c == dim {
        return "r".into();
    }
    match (dim <= 3, c) {
        (true, 0) => "x".into(),
        (true, 1) => "y".into(),
        (true, 2) => "z".into(),
        _ => format!("c{c}"),
    }
}

/// Label of one rigidity row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowLabel {
    /// Row `component` of edge `edge` (parallel edges carry `d − 1` rows).
    Edge { edge: usize, component: usize },
    Normalization { vertex: usize },
}

/// Label of one rigidity column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColLabel {
    pub vertex: usize,
    pub coord: usize,
}

/// Rows of the full (unpinned) rigidity matrix in order: point-point,
/// point-hyperplane, angle, parallel (`d − 1` each), normalisation.
pub fn full_row_labels(f: &Framework) -> Vec<RowLabel> {
    let d = f.dim();
    let mut rows = Vec::new();
    for (i, e) in f.graph().edges().iter().enumerate() {
        let count = if e.kind == EdgeKind::Parallel { d - 1 } else { 1 };
        rows.extend((0..count).map(|component| RowLabel::Edge { edge: i, component }));
    }
    rows.extend(
        f.graph()
            .hyperplane_indices()
            .into_iter()
            .map(|vertex| RowLabel::Normalization { vertex }),
    );
    rows
}

/// Orthonormal completion `u_1, .., u_{d−1}` of `a / |a|` used for parallel
/// rows in `d = 3`: `u_1` is the normalised rejection of the canonical basis
/// vector least aligned with `a`, `u_2 = â × u_1`.
pub fn parallel_axes(a: &DVector<f64>) -> Vec<DVector<f64>> {
    let d = a.len();
    let hat = a.normalize();
    if d != 3 {
        return Vec::new();
    }
    let k = (0..d)
        .min_by(|&i, &j| hat[i].abs().partial_cmp(&hat[j].abs()).unwrap())
        .unwrap();
    let mut e = DVector::zeros(d);
    e[k] = 1.0;
    let u1 = (&e - &hat * hat.dot(&e)).normalize();
    let u2 = cross(&hat, &u1);
    vec![u1, u2]
}

pub fn cross(a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
    DVector::from_vec(vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])
}

/// `a^⊥ = (−a_y, a_x)` in the plane.
pub fn perp(a: &DVector<f64>) -> DVector<f64> {
    DVector::from_vec(vec![-a[1], a[0]])
}

fn check_parallel_dimension(f: &Framework) -> Result<()> {
    if f.dim() >= 4 && f.graph().edge_count(EdgeKind::Parallel) > 0 {
        return Err(Error::UnsupportedParallelDimension(f.dim()));
    }
    Ok(())
}

/// The unpinned rigidity matrix with its row labels.
pub fn full_rigidity(f: &Framework) -> Result<(DMatrix<f64>, Vec<RowLabel>)> {
    check_parallel_dimension(f)?;
    let d = f.dim();
    let layout = f.layout();
    let rows = full_row_labels(f);
    let mut m = DMatrix::zeros(rows.len(), layout.columns());
    let edges = f.graph().edges();
    for (r, label) in rows.iter().enumerate() {
        match *label {
            RowLabel::Edge { edge, component } => {
                let e = edges[edge];
                let (i, j) = e.ends;
                let (oi, oj) = (layout.offset(i), layout.offset(j));
                match e.kind {
                    EdgeKind::PointPoint => {
                        let diff = f.point(i) - f.point(j);
                        for c in 0..d {
                            m[(r, oi + c)] = diff[c];
                            m[(r, oj + c)] = -diff[c];
                        }
                    }
                    EdgeKind::PointHyperplane => {
                        let (p, a) = (f.point(i), f.normal(j));
                        for c in 0..d {
                            m[(r, oi + c)] = a[c];
                            m[(r, oj + c)] = p[c];
                        }
                        m[(r, oj + d)] = -1.0;
                    }
                    EdgeKind::Angle => {
                        let (ak, al) = (f.normal(i), f.normal(j));
                        for c in 0..d {
                            m[(r, oi + c)] = al[c];
                            m[(r, oj + c)] = ak[c];
                        }
                    }
                    EdgeKind::Parallel => {
                        let (ak, al) = (f.normal(i), f.normal(j));
                        let (left, right) = if d == 2 {
                            (perp(al), -perp(ak))
                        } else {
                            let u = &parallel_axes(ak)[component];
                            (cross(al, u), -cross(ak, u))
                        };
                        for c in 0..d {
                            m[(r, oi + c)] = left[c];
                            m[(r, oj + c)] = right[c];
                        }
                    }
                }
            }
            RowLabel::Normalization { vertex } => {
                let o = layout.offset(vertex);
                let a = f.normal(vertex);
                for c in 0..d {
                    m[(r, o + c)] = a[c];
                }
            }
        }
    }
    Ok((m, rows))
}

/// Full-layout columns a row can touch.
pub fn row_support(f: &Framework, label: &RowLabel) -> Vec<usize> {
    let layout = f.layout();
    let d = f.dim();
    match *label {
        RowLabel::Edge { edge, .. } => {
            let e = f.graph().edges()[edge];
            let (i, j) = e.ends;
            let span = |v: usize, w: usize| layout.offset(v)..layout.offset(v) + w;
            match e.kind {
                EdgeKind::PointPoint => span(i, d).chain(span(j, d)).collect(),
                EdgeKind::PointHyperplane => span(i, d).chain(span(j, d + 1)).collect(),
                EdgeKind::Angle | EdgeKind::Parallel => span(i, d).chain(span(j, d)).collect(),
            }
        }
        RowLabel::Normalization { vertex } => (layout.offset(vertex)..layout.offset(vertex) + d).collect(),
    }
}

/// Rows kept under a pinning: those whose support is not entirely removed.
pub fn kept_rows(f: &Framework, pin: &PinningSpec, rows: &[RowLabel]) -> Vec<usize> {
    let removed = pin.removed_columns(f);
    rows.iter()
        .enumerate()
        .filter(|(_, label)| row_support(f, label).iter().any(|c| !removed.contains(c)))
        .map(|(i, _)| i)
        .collect()
}

/// A pinned rigidity matrix with row and column labels.
#[derive(Debug, Clone)]
pub struct RigidityMatrix {
    pub matrix: DMatrix<f64>,
    pub rows: Vec<RowLabel>,
    pub cols: Vec<ColLabel>,
    /// Indices of kept rows in the full row order.
    pub kept_rows: Vec<usize>,
    /// Indices of kept columns in the full layout.
    pub kept_cols: Vec<usize>,
}

impl RigidityMatrix {
    pub fn nrows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn row_name(&self, f: &Framework, r: usize) -> String {
        let g = f.graph();
        match self.rows[r] {
            RowLabel::Edge { edge, component } => {
                let e = g.edges()[edge];
                let base = format!(
                    "{}-{}",
                    g.vertex(e.ends.0).label,
                    g.vertex(e.ends.1).label
                );
                if e.kind == EdgeKind::Parallel && f.dim() > 2 {
                    format!("{base}#{component}")
                } else {
                    base
                }
            }
            RowLabel::Normalization { vertex } => format!("|{}|", g.vertex(vertex).label),
        }
    }

    pub fn col_name(&self, f: &Framework, c: usize) -> String {
        let l = self.cols[c];
        format!(
            "{}.{}",
            f.graph().vertex(l.vertex).label,
            coordinate_name(l.coord, f.dim())
        )
    }
}

/// Assembles the rigidity matrix with pinned columns and structurally empty
/// rows deleted.
pub fn rigidity_matrix(f: &Framework, pin: &PinningSpec) -> Result<RigidityMatrix> {
    pin.validate(f)?;
    let (full, labels) = full_rigidity(f)?;
    let kept_cols = pin.kept_columns(f);
    let kept_rows = kept_rows(f, pin, &labels);
    let matrix = linalg::select(&full, &kept_rows, &kept_cols);
    let rows = kept_rows.iter().map(|&r| labels[r]).collect();
    let cols = kept_cols
        .iter()
        .map(|&c| {
            let (vertex, coord) = f.layout().locate(c);
            ColLabel { vertex, coord }
        })
        .collect();
    Ok(RigidityMatrix {
        matrix,
        rows,
        cols,
        kept_rows,
        kept_cols,
    })
}

/// Translations and rotations of the whole framework in the full layout,
/// `d` translations followed by the `d(d−1)/2` rotations `E_ij − E_ji`.
pub fn full_trivial_motions(f: &Framework) -> DMatrix<f64> {
    let d = f.dim();
    let layout = f.layout();
    let count = d * (d + 1) / 2;
    let mut t = DMatrix::zeros(layout.columns(), count);
    let mut generators: Vec<Option<DMatrix<f64>>> = (0..d).map(|_| None).collect();
    for i in 0..d {
        for j in i + 1..d {
            let mut s = DMatrix::zeros(d, d);
            s[(i, j)] = 1.0;
            s[(j, i)] = -1.0;
            generators.push(Some(s));
        }
    }
    for (k, gen) in generators.iter().enumerate() {
        for (v, vert) in f.graph().vertices().iter().enumerate() {
            let o = layout.offset(v);
            match (vert.kind, gen) {
                (VertexKind::Point, None) => t[(o + k, k)] = 1.0,
                (VertexKind::Point, Some(s)) => {
                    let w = s * f.point(v);
                    t.view_mut((o, k), (d, 1)).copy_from(&w);
                }
                (VertexKind::Hyperplane, None) => t[(o + d, k)] = f.normal(v)[k],
                (VertexKind::Hyperplane, Some(s)) => {
                    let w = s * f.normal(v);
                    t.view_mut((o, k), (d, 1)).copy_from(&w);
                }
            }
        }
    }
    t
}

/// Orthonormal basis (over the kept columns) of the trivial motions that
/// leave every pinned coordinate fixed.
pub fn trivial_motion_basis(f: &Framework, pin: &PinningSpec) -> DMatrix<f64> {
    let t = full_trivial_motions(f);
    let removed: Vec<usize> = pin.removed_columns(f).into_iter().collect();
    let kept = pin.kept_columns(f);
    let all: Vec<usize> = (0..t.ncols()).collect();
    let coeffs = if removed.is_empty() {
        DMatrix::identity(t.ncols(), t.ncols())
    } else {
        linalg::nullspace(&linalg::select(&t, &removed, &all), linalg::DEFAULT_TOL)
    };
    let motions = linalg::select(&t, &kept, &all) * coeffs;
    linalg::column_space(&motions, linalg::DEFAULT_TOL)
}

/// Ranks and subspaces of a pinned rigidity matrix.
#[derive(Debug, Clone)]
pub struct InfinitesimalAnalysis {
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
    pub nullity: usize,
    pub trivial_dim: usize,
    /// `m`: motions beyond the trivial ones.
    pub flex_dim: usize,
    /// `s`: self-stresses.
    pub stress_dim: usize,
    pub motions: DMatrix<f64>,
    pub stresses: DMatrix<f64>,
    pub singular_values: Vec<f64>,
}

pub fn infinitesimal_analysis(f: &Framework, pin: &PinningSpec, tol: f64) -> Result<InfinitesimalAnalysis> {
    let r = rigidity_matrix(f, pin)?;
    let values = linalg::singular_values(&r.matrix);
    let rank = linalg::rank_from_singular(&values, r.nrows(), r.ncols(), tol);
    let motions = linalg::nullspace(&r.matrix, tol);
    let stresses = linalg::left_nullspace(&r.matrix, tol);
    let trivial_dim = trivial_motion_basis(f, pin).ncols();
    let nullity = r.ncols() - rank;
    if trivial_dim > nullity {
        return Err(Error::Numeric(format!(
            "trivial motions ({trivial_dim}) exceed the nullity ({nullity})"
        )));
    }
    Ok(InfinitesimalAnalysis {
        rank,
        rows: r.nrows(),
        cols: r.ncols(),
        nullity,
        trivial_dim,
        flex_dim: nullity - trivial_dim,
        stress_dim: r.nrows() - rank,
        motions,
        stresses,
        singular_values: values,
    })
}

/// Pins all coordinates of the first point vertex, then greedily adds point
/// coordinates (in vertex order, then `x, y, ..`) that lower the number of
/// remaining trivial motions, until none is left.
pub fn minimal_pinning(f: &Framework) -> Result<PinningSpec> {
    let d = f.dim();
    let points = f.graph().point_indices();
    let first = *points.first().ok_or(Error::NoPointVertex)?;
    let full = d * (d + 1) / 2;
    if trivial_motion_basis(f, &PinningSpec::none()).ncols() < full {
        return Err(Error::NotSpanning);
    }
    let mut pin = PinningSpec::points(f, &[first]);
    let mut remaining = trivial_motion_basis(f, &pin).ncols();
    'outer: for &v in &points[1..] {
        for c in 0..d {
            if remaining == 0 {
                break 'outer;
            }
            let mut trial = pin.clone();
            trial.pinned_coords.insert((v, c));
            let k = trivial_motion_basis(f, &trial).ncols();
            if k < remaining {
                pin = trial;
                remaining = k;
            }
        }
    }
    if remaining > 0 {
        return Err(Error::NotSpanning);
    }
    for &coord in &pin.pinned_coords {
        let mut trial = pin.clone();
        trial.pinned_coords.remove(&coord);
        if trivial_motion_basis(f, &trial).ncols() == 0 {
            return Err(Error::Numeric("greedy pinning is not minimal".into()));
        }
    }
    if pin.pinned_coords.len() != full {
        return Err(Error::Numeric(format!(
            "minimal pinning has {} coordinates, expected {full}",
            pin.pinned_coords.len()
        )));
    }
    Ok(pin)
}

/// Pins the first hyperplane that contains an extrusion direction and makes
/// the rest of its parallel class parallel-only. Returns the pinning and the
/// extrusion data restricted to the surviving directions.
///
/// A direction `h` survives when the pinned hyperplane contains `τ_h` and
/// every hyperplane in `F_h` is either pinned, parallel-only, or has no
/// point-hyperplane edge.
pub fn hyperplane_pinning(f: &Framework) -> Result<(PinningSpec, ExtrusionSpec)> {
    let spec = f.extrusion().ok_or(Error::NoContainedHyperplane)?;
    let g = f.graph();
    let chosen = g
        .hyperplane_indices()
        .into_iter()
        .find(|&w| {
            spec.directions
                .iter()
                .any(|tau| contains_direction(tau, f.normal(w), CONTAINMENT_TOL))
        })
        .ok_or(Error::NoContainedHyperplane)?;
    let class = g.parallel_class(chosen).expect("hyperplane has a class");
    let mut pin = PinningSpec::none();
    pin.fully_pinned.insert(chosen);
    for w in g.class_members(class) {
        if w != chosen {
            pin.parallel_only.insert(w);
        }
    }
    let handled = |w: usize| pin.fully_pinned.contains(&w) || pin.parallel_only.contains(&w);
    let active: Vec<usize> = spec
        .active
        .iter()
        .copied()
        .filter(|&h| {
            g.in_fixed_set(chosen, h)
                && g.hyperplane_indices()
                    .into_iter()
                    .filter(|&w| g.in_fixed_set(w, h))
                    .all(|w| handled(w) || !g.has_incidence(w))
        })
        .collect();
    let mut reduced = spec.clone();
    reduced.active = active;
    Ok((pin, reduced))
}

/// Velocity vector in the full layout from a kept-column vector.
pub fn expand(f: &Framework, pin: &PinningSpec, x: &DVector<f64>) -> DVector<f64> {
    let mut full = DVector::zeros(f.layout().columns());
    for (k, &c) in pin.kept_columns(f).iter().enumerate() {
        full[c] = x[k];
    }
    full
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn prism_counts() {
        let f = fixtures::prism();
        let a = infinitesimal_analysis(&f, &PinningSpec::none(), 1e-9).unwrap();
        assert_eq!((a.rows, a.cols, a.rank), (9, 12, 8));
        assert_eq!((a.trivial_dim, a.flex_dim, a.stress_dim), (3, 1, 1));
    }

    #[test]
    fn pinned_prism_is_square() {
        let (f, pin) = fixtures::prism_pinned();
        let r = rigidity_matrix(&f, &pin).unwrap();
        assert_eq!((r.nrows(), r.ncols()), (8, 8));
        let a = infinitesimal_analysis(&f, &pin, 1e-9).unwrap();
        assert_eq!((a.trivial_dim, a.flex_dim, a.stress_dim), (0, 1, 1));
    }

    #[test]
    fn triangle_rigid() {
        let a = infinitesimal_analysis(&fixtures::triangle(), &PinningSpec::none(), 1e-9).unwrap();
        assert_eq!((a.rank, a.flex_dim, a.stress_dim), (3, 0, 0));
    }

    #[test]
    fn prism_minimal_pinning() {
        let f = fixtures::prism();
        let pin = minimal_pinning(&f).unwrap();
        assert_eq!(pin.describe(&f), ["v1:0.x", "v1:0.y", "v1:1.x"]);
    }

    #[test]
    fn point_line_hyperplane_pinning() {
        let f = fixtures::point_line();
        let (pin, reduced) = hyperplane_pinning(&f).unwrap();
        assert_eq!(pin.describe(&f), ["w1:*0 (pinned)", "w1:*1 (parallel only)"]);
        assert_eq!(reduced.active, vec![0]);
        let r = rigidity_matrix(&f, &pin).unwrap();
        assert_eq!((r.nrows(), r.ncols()), (15, 15));
    }

    #[test]
    fn cube_hyperplane_pinning() {
        let f = fixtures::cube();
        let (pin, reduced) = hyperplane_pinning(&f).unwrap();
        assert_eq!(pin.describe(&f), ["w1:**0 (pinned)", "w1:**1 (parallel only)"]);
        assert_eq!(reduced.active, vec![0]);
        let r = rigidity_matrix(&f, &pin).unwrap();
        assert_eq!((r.nrows(), r.ncols()), (32, 33));
        assert_eq!(trivial_motion_basis(&f, &pin).ncols(), 3);
    }

    #[test]
    fn no_contained_hyperplane() {
        assert_eq!(
            hyperplane_pinning(&fixtures::prism()).unwrap_err(),
            Error::NoContainedHyperplane
        );
    }

    #[test]
    fn parallel_rows_rejected_in_four_dimensions() {
        let f = fixtures::parallel_pair(4);
        assert_eq!(
            rigidity_matrix(&f, &PinningSpec::none()).unwrap_err(),
            Error::UnsupportedParallelDimension(4)
        );
    }

    #[test]
    fn axes_are_orthonormal() {
        let a = DVector::from_vec(vec![0.3, -1.2, 0.7]);
        let u = parallel_axes(&a);
        let hat = a.normalize();
        assert!(u[0].dot(&hat).abs() < 1e-14 && u[1].dot(&hat).abs() < 1e-14);
        assert!(u[0].dot(&u[1]).abs() < 1e-14);
        assert!((u[0].norm() - 1.0).abs() < 1e-14 && (u[1].norm() - 1.0).abs() < 1e-14);
    }
}
