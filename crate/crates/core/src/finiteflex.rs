//! Measurement maps, regularity tests on affine subspaces, finite-flex
//! certification and the numerical linear push.
//!
//! Configurations are full-layout coordinate vectors (see
//! [`Framework::coordinates`]). Pinned coordinates stay at their values in the
//! framework the map was built from.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::framework::{affine_span_check, Framework};
use crate::graph::{EdgeKind, VertexKind};
use crate::linalg;
use crate::rigidity::{cross, parallel_axes, perp, rigidity_matrix, trivial_motion_basis, PinningSpec};
use crate::symmetry::{block_decompose_with, build_reps, orbit_symmetric_subspace};

/// Largest sine of the angle between two normals joined by a parallel edge
/// that still counts as parallel.
pub const PARALLEL_TOL: f64 = 1e-8;

/// Threshold on `‖(I − BBᵀ)x‖` for the nullspace containment test of the
/// linear push.
pub const CONTAINMENT_RESIDUAL: f64 = 1e-8;

/// Relative radius of the neighbourhood sampled by [`finite_flex_test`].
pub const REGULARITY_RADIUS: f64 = 0.1;

/// One component of a measurement map.
#[derive(Debug, Clone, PartialEq)]
pub enum Term {
    /// `‖p_i − p_j‖²`.
    Distance(usize, usize),
    /// `⟨p, a_h⟩ − r_h`.
    Incidence { point: usize, hyperplane: usize },
    /// `⟨a_k, a_l⟩`.
    Angle(usize, usize),
    /// In the plane `⟨a_k, a_l^⊥⟩`; in space `⟨a_k × a_l, u⟩` for an axis
    /// `u` orthogonal to the base normal of `k`, frozen at construction.
    Parallel {
        first: usize,
        second: usize,
        axis: Option<DVector<f64>>,
    },
    /// `⟨a_h, a_h⟩`.
    Norm(usize),
}

impl Term {
    fn vertices(&self) -> Vec<usize> {
        match *self {
            Term::Distance(i, j) | Term::Angle(i, j) => vec![i, j],
            Term::Incidence { point, hyperplane } => vec![point, hyperplane],
            Term::Parallel { first, second, .. } => vec![first, second],
            Term::Norm(h) => vec![h],
        }
    }
}

/// A measurement map `f_G` with its analytic Jacobian.
///
/// Rows follow the rigidity matrix: point-point, point-hyperplane, angle,
/// parallel and normalisation terms. Distance and norm rows of the Jacobian
/// are twice the corresponding rigidity rows; all others coincide.
#[derive(Debug, Clone)]
pub struct MeasurementMap {
    framework: Framework,
    terms: Vec<Term>,
}

fn parallel_terms(f: &Framework, k: usize, l: usize) -> Result<Vec<Term>> {
    let d = f.dim();
    match d {
        1 => Ok(Vec::new()),
        2 => Ok(vec![Term::Parallel {
            first: k,
            second: l,
            axis: None,
        }]),
        3 => Ok(parallel_axes(f.normal(k))
            .into_iter()
            .map(|u| Term::Parallel {
                first: k,
                second: l,
                axis: Some(u),
            })
            .collect()),
        _ => Err(Error::UnsupportedParallelDimension(d)),
    }
}

impl MeasurementMap {
    /// The map of the framework's own graph.
    pub fn for_graph(f: &Framework) -> Result<Self> {
        let g = f.graph();
        let mut terms = Vec::new();
        for e in g.edges() {
            let (i, j) = e.ends;
            match e.kind {
                EdgeKind::PointPoint => terms.push(Term::Distance(i, j)),
                EdgeKind::PointHyperplane => terms.push(Term::Incidence {
                    point: i,
                    hyperplane: j,
                }),
                EdgeKind::Angle => terms.push(Term::Angle(i, j)),
                EdgeKind::Parallel => terms.extend(parallel_terms(f, i, j)?),
            }
        }
        terms.extend(g.hyperplane_indices().into_iter().map(Term::Norm));
        Ok(MeasurementMap {
            framework: f.clone(),
            terms,
        })
    }

    /// The map of the decorated complete graph on the same vertices:
    /// hyperplanes in one parallel class are joined by parallel terms, all
    /// other hyperplane pairs by angle terms.
    pub fn complete(f: &Framework) -> Result<Self> {
        let g = f.graph();
        let n = g.vertices().len();
        let (mut pp, mut ph, mut angle, mut parallel) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for i in 0..n {
            for j in i + 1..n {
                match (g.vertex(i).kind, g.vertex(j).kind) {
                    (VertexKind::Point, VertexKind::Point) => pp.push(Term::Distance(i, j)),
                    (VertexKind::Point, VertexKind::Hyperplane) => ph.push(Term::Incidence {
                        point: i,
                        hyperplane: j,
                    }),
                    (VertexKind::Hyperplane, VertexKind::Point) => ph.push(Term::Incidence {
                        point: j,
                        hyperplane: i,
                    }),
                    (VertexKind::Hyperplane, VertexKind::Hyperplane) => {
                        if g.parallel_class(i) == g.parallel_class(j) {
                            parallel.extend(parallel_terms(f, i, j)?);
                        } else {
                            angle.push(Term::Angle(i, j));
                        }
                    }
                }
            }
        }
        let mut terms = pp;
        terms.extend(ph);
        terms.extend(angle);
        terms.extend(parallel);
        terms.extend(g.hyperplane_indices().into_iter().map(Term::Norm));
        Ok(MeasurementMap {
            framework: f.clone(),
            terms,
        })
    }

    pub fn framework(&self) -> &Framework {
        &self.framework
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn block<'a>(&self, x: &'a DVector<f64>, v: usize) -> nalgebra::DVectorView<'a, f64> {
        x.rows(self.framework.layout().offset(v), self.framework.dim())
    }

    fn offset_of(&self, x: &DVector<f64>, h: usize) -> f64 {
        x[self.framework.layout().offset(h) + self.framework.dim()]
    }

    /// `f(x)`.
    pub fn evaluate(&self, x: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(
            self.terms.len(),
            self.terms.iter().map(|t| match t {
                Term::Distance(i, j) => (self.block(x, *i) - self.block(x, *j)).norm_squared(),
                Term::Incidence { point, hyperplane } => {
                    self.block(x, *point).dot(&self.block(x, *hyperplane)) - self.offset_of(x, *hyperplane)
                }
                Term::Angle(k, l) => self.block(x, *k).dot(&self.block(x, *l)),
                Term::Parallel { first, second, axis } => {
                    let (ak, al) = (self.block(x, *first).into_owned(), self.block(x, *second).into_owned());
                    match axis {
                        None => ak.dot(&perp(&al)),
                        Some(u) => cross(&ak, &al).dot(u),
                    }
                }
                Term::Norm(h) => self.block(x, *h).norm_squared(),
            }),
        )
    }

    /// Analytic Jacobian of [`evaluate`](Self::evaluate) over all columns.
    pub fn jacobian(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let layout = self.framework.layout();
        let d = self.framework.dim();
        let mut m = DMatrix::zeros(self.terms.len(), layout.columns());
        let mut put = |r: usize, v: usize, w: &DVector<f64>| {
            let o = layout.offset(v);
            for c in 0..d {
                m[(r, o + c)] += w[c];
            }
        };
        let mut offsets = Vec::new();
        for (r, t) in self.terms.iter().enumerate() {
            match t {
                Term::Distance(i, j) => {
                    let diff = (self.block(x, *i) - self.block(x, *j)) * 2.0;
                    put(r, *i, &diff);
                    put(r, *j, &-diff);
                }
                Term::Incidence { point, hyperplane } => {
                    put(r, *point, &self.block(x, *hyperplane).into_owned());
                    put(r, *hyperplane, &self.block(x, *point).into_owned());
                    offsets.push((r, layout.offset(*hyperplane) + d));
                }
                Term::Angle(k, l) => {
                    put(r, *k, &self.block(x, *l).into_owned());
                    put(r, *l, &self.block(x, *k).into_owned());
                }
                Term::Parallel { first, second, axis } => {
                    let (ak, al) = (self.block(x, *first).into_owned(), self.block(x, *second).into_owned());
                    let (left, right) = match axis {
                        None => (perp(&al), -perp(&ak)),
                        Some(u) => (cross(&al, u), -cross(&ak, u)),
                    };
                    put(r, *first, &left);
                    put(r, *second, &right);
                }
                Term::Norm(h) => put(r, *h, &(self.block(x, *h) * 2.0)),
            }
        }
        for (r, c) in offsets {
            m[(r, c)] = -1.0;
        }
        m
    }

    /// Largest sine of the angle between normals joined by a parallel
    /// edge of the graph.
    pub fn parallel_residual(&self, x: &DVector<f64>) -> f64 {
        let g = self.framework.graph();
        g.edges()
            .iter()
            .filter(|e| e.kind == EdgeKind::Parallel)
            .map(|e| {
                let (ak, al) = (self.block(x, e.ends.0), self.block(x, e.ends.1));
                let (nk, nl) = (ak.norm_squared(), al.norm_squared());
                let dot = ak.dot(&al);
                ((nk * nl - dot * dot).max(0.0)).sqrt() / (nk * nl).sqrt().max(f64::MIN_POSITIVE)
            })
            .fold(0.0, f64::max)
    }

    /// Rows whose terms touch at least one free coordinate.
    fn kept_rows(&self, pin: &PinningSpec) -> Vec<usize> {
        let layout = self.framework.layout();
        let d = self.framework.dim();
        let removed = pin.removed_columns(&self.framework);
        (0..self.terms.len())
            .filter(|&r| {
                let t = &self.terms[r];
                t.vertices().iter().any(|&v| {
                    let width = match t {
                        Term::Incidence { hyperplane, .. } if *hyperplane == v => d + 1,
                        _ => d,
                    };
                    (layout.offset(v)..layout.offset(v) + width).any(|c| !removed.contains(&c))
                })
            })
            .collect()
    }
}

fn check_parallel(mm: &MeasurementMap, x: &DVector<f64>) -> Result<()> {
    let residual = mm.parallel_residual(x);
    if residual > PARALLEL_TOL {
        return Err(Error::Precondition(format!(
            "configuration violates a parallel class (sine {residual:.3e})"
        )));
    }
    Ok(())
}

/// Jacobian at `x` with pinned columns and constant rows removed. Errors
/// when `x` breaks a parallel class.
pub fn measurement_jacobian(mm: &MeasurementMap, pin: &PinningSpec, x: &DVector<f64>) -> Result<DMatrix<f64>> {
    check_parallel(mm, x)?;
    Ok(pinned_jacobian(mm, pin, x))
}

fn pinned_jacobian(mm: &MeasurementMap, pin: &PinningSpec, x: &DVector<f64>) -> DMatrix<f64> {
    let full = mm.jacobian(x);
    linalg::select(&full, &mm.kept_rows(pin), &pin.kept_columns(mm.framework()))
}

/// An affine subspace `base + span(basis)` of full-layout configurations.
#[derive(Debug, Clone)]
pub struct AffineSubspace {
    pub base: DVector<f64>,
    /// Orthonormal columns in the full layout.
    pub basis: DMatrix<f64>,
}

impl AffineSubspace {
    /// The subspace through `base` spanned by kept-column vectors `basis`.
    pub fn from_kept(f: &Framework, pin: &PinningSpec, base: DVector<f64>, basis: &DMatrix<f64>) -> Self {
        let kept = pin.kept_columns(f);
        let mut full = DMatrix::zeros(f.layout().columns(), basis.ncols());
        for (k, &c) in kept.iter().enumerate() {
            full.row_mut(c).copy_from(&basis.row(k));
        }
        AffineSubspace { base, basis: full }
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Whether `x − base` lies in the span, up to `tol · max(1, ‖base‖)`.
    pub fn contains(&self, x: &DVector<f64>, tol: f64) -> bool {
        linalg::residual_outside(&self.basis, &(x - &self.base)) <= tol * self.base.norm().max(1.0)
    }

    pub fn point(&self, coeffs: &DVector<f64>) -> DVector<f64> {
        &self.base + &self.basis * coeffs
    }

    /// `count` seeded points `x + basis·c` with `c` uniform in the cube of
    /// half-width `radius / √dim`, so every point lies within `radius` of `x`.
    pub fn sample_near(&self, x: &DVector<f64>, radius: f64, count: usize, seed: u64) -> Vec<DVector<f64>> {
        let m = self.dim();
        if m == 0 {
            return vec![x.clone(); count];
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let scale = radius / (m as f64).sqrt();
        (0..count)
            .map(|_| {
                let c = DVector::from_fn(m, |_, _| rng.gen_range(-1.0..=1.0) * scale);
                x + &self.basis * c
            })
            .collect()
    }
}

/// `J(x) · basis` restricted to free coordinates.
pub fn restricted_jacobian(
    mm: &MeasurementMap,
    pin: &PinningSpec,
    sub: &AffineSubspace,
    x: &DVector<f64>,
) -> Result<DMatrix<f64>> {
    if !sub.contains(x, PARALLEL_TOL) {
        return Err(Error::OutsideSubspace(linalg::residual_outside(&sub.basis, &(x - &sub.base))));
    }
    let removed: Vec<usize> = pin.removed_columns(mm.framework()).into_iter().collect();
    let all: Vec<usize> = (0..sub.dim()).collect();
    if linalg::max_abs(&linalg::select(&sub.basis, &removed, &all)) > 0.0 {
        return Err(Error::Precondition("subspace moves a pinned coordinate".into()));
    }
    let j = measurement_jacobian(mm, pin, x)?;
    let kept = pin.kept_columns(mm.framework());
    Ok(j * linalg::select(&sub.basis, &kept, &all))
}

/// Ranks of the restricted Jacobian at `x` and at seeded samples of the
/// subspace around it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityCheck {
    pub base_rank: usize,
    pub sample_ranks: Vec<usize>,
}

impl RegularityCheck {
    /// The base rank is the largest rank seen.
    pub fn regular(&self) -> bool {
        self.sample_ranks.iter().all(|&r| r <= self.base_rank)
    }
}

#[allow(clippy::too_many_arguments)]
pub fn regularity_ranks(
    mm: &MeasurementMap,
    pin: &PinningSpec,
    sub: &AffineSubspace,
    x: &DVector<f64>,
    samples: usize,
    radius: f64,
    seed: u64,
    tol: f64,
) -> Result<RegularityCheck> {
    let base_rank = linalg::rank(&restricted_jacobian(mm, pin, sub, x)?, tol);
    let sample_ranks = sub
        .sample_near(x, radius, samples, seed)
        .iter()
        .map(|q| restricted_jacobian(mm, pin, sub, q).map(|j| linalg::rank(&j, tol)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RegularityCheck { base_rank, sample_ranks })
}

/// Whether the rank at `x` equals the largest rank over `samples` seeded
/// points of the subspace within `radius` of `x`.
#[allow(clippy::too_many_arguments)]
pub fn regular_point_test(
    mm: &MeasurementMap,
    pin: &PinningSpec,
    sub: &AffineSubspace,
    x: &DVector<f64>,
    samples: usize,
    radius: f64,
    seed: u64,
    tol: f64,
) -> Result<bool> {
    Ok(regularity_ranks(mm, pin, sub, x, samples, radius, seed, tol)?.regular())
}

/// Verdict of [`finite_flex_test`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlexDetermination {
    FiniteFlexCertified,
    NoSymmetricFlex,
    NotRegular,
}

impl FlexDetermination {
    pub fn name(self) -> &'static str {
        match self {
            FlexDetermination::FiniteFlexCertified => "FiniteFlexCertified",
            FlexDetermination::NoSymmetricFlex => "NoSymmetricFlex",
            FlexDetermination::NotRegular => "NotRegular",
        }
    }
}

/// How the symmetric subspace of a finite-flex test was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceRoute {
    /// Isotypic component of the external representation.
    Projection,
    /// Equal velocities along translational orbits.
    Orbits,
}

#[derive(Debug, Clone)]
pub struct FiniteFlexResult {
    pub irrep: usize,
    pub determination: FlexDetermination,
    pub route: SubspaceRoute,
    pub subspace: AffineSubspace,
    pub regularity: RegularityCheck,
    /// Rank of the restricted Jacobian of the complete graph.
    pub complete_rank: usize,
    /// Dimension of the trivial motions inside the subspace.
    pub trivial_in_subspace: usize,
    /// Ranks of the symmetric block `B₀ᵀ R S` at the base point and at each
    /// sample, when the second route applies.
    pub block_ranks: Option<Vec<usize>>,
    pub seed: u64,
    pub samples: usize,
}

impl FiniteFlexResult {
    /// Symmetric flexes at the base point beyond the trivial ones.
    pub fn infinitesimal_flexes(&self) -> usize {
        self.subspace.dim() - self.trivial_in_subspace - self.regularity.base_rank
    }
}

/// Constraint rows `ȧ_k − s ȧ_l` keeping each parallel pair in its current
/// ratio `a_k = s a_l`, over the kept columns.
fn parallel_ratio_constraints(f: &Framework, pin: &PinningSpec) -> DMatrix<f64> {
    let layout = f.layout();
    let d = f.dim();
    let kept = pin.kept_columns(f);
    let edges: Vec<_> = f.graph().edges().iter().filter(|e| e.kind == EdgeKind::Parallel).collect();
    let mut full = DMatrix::zeros(edges.len() * d, layout.columns());
    for (e, edge) in edges.iter().enumerate() {
        let (k, l) = edge.ends;
        let (ak, al) = (f.normal(k), f.normal(l));
        let s = ak.dot(al) / al.norm_squared();
        for c in 0..d {
            full[(e * d + c, layout.offset(k) + c)] = 1.0;
            full[(e * d + c, layout.offset(l) + c)] = -s;
        }
    }
    let rows: Vec<usize> = (0..full.nrows()).collect();
    linalg::select(&full, &rows, &kept)
}

/// Orthonormal kept-column basis of the `ρ_i`-symmetric motions that keep
/// parallel pairs parallel, together with the route used and, for `ρ₀` of a
/// non-trivial group, the isotypic row basis for the block route.
fn symmetric_subspace(
    f: &Framework,
    pin: &PinningSpec,
    irrep: usize,
) -> Result<(DMatrix<f64>, SubspaceRoute, Option<DMatrix<f64>>)> {
    let group = f.group();
    let (raw, route, rows) = if group.size() == 1 && !f.orbits().is_empty() && irrep == 0 {
        (orbit_symmetric_subspace(f, pin)?, SubspaceRoute::Orbits, None)
    } else {
        if irrep >= group.size() {
            return Err(Error::Dimension(format!(
                "irrep {irrep} out of range for a group of order {}",
                group.size()
            )));
        }
        let reps = build_reps(f, pin)?;
        let blocks = block_decompose_with(f, pin, &reps)?;
        let rows = (irrep == 0 && group.size() > 1).then(|| blocks.b[0].clone());
        (blocks.a[irrep].clone(), SubspaceRoute::Projection, rows)
    };
    let constraints = parallel_ratio_constraints(f, pin);
    let basis = if constraints.nrows() == 0 {
        raw
    } else {
        let wlin = linalg::nullspace(&constraints, linalg::DEFAULT_TOL);
        linalg::intersection(&raw, &wlin, linalg::DEFAULT_TOL)
    };
    Ok((basis, route, rows))
}

/// Tests whether the `ρ_i`-symmetric infinitesimal flexes of `f` extend to
/// a finite flex.
///
/// The subspace is `(p, ℓ) + X^{(ρ_i)}`. A regular base point whose graph
/// Jacobian has smaller rank than the complete-graph Jacobian certifies a
/// finite flex. For `ρ₀` of a non-trivial group the graph ranks are
/// recomputed from the symmetric block at every sample and must agree.
pub fn finite_flex_test(
    f: &Framework,
    pin: &PinningSpec,
    irrep: usize,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<FiniteFlexResult> {
    if !affine_span_check(f, tol) {
        return Err(Error::NotSpanning);
    }
    let (basis, route, rows) = symmetric_subspace(f, pin, irrep)?;
    let x = f.coordinates();
    let sub = AffineSubspace::from_kept(f, pin, x.clone(), &basis);
    let graph_map = MeasurementMap::for_graph(f)?;
    let complete_map = MeasurementMap::complete(f)?;
    let kept = pin.kept_columns(f);
    let radius = REGULARITY_RADIUS * select_entries(&x, &kept).norm().max(1.0);
    let regularity = regularity_ranks(&graph_map, pin, &sub, &x, samples, radius, seed, tol)?;
    let complete_rank = linalg::rank(&restricted_jacobian(&complete_map, pin, &sub, &x)?, tol);
    let trivial = trivial_motion_basis(f, pin);
    let trivial_in_subspace = linalg::intersection(&trivial, &basis, linalg::DEFAULT_TOL).ncols();

    let block_ranks = match rows {
        Some(b0) => {
            let points = std::iter::once(x.clone()).chain(sub.sample_near(&x, radius, samples, seed));
            let expected = std::iter::once(regularity.base_rank).chain(regularity.sample_ranks.iter().copied());
            let mut ranks = Vec::new();
            for (q, jac_rank) in points.zip(expected) {
                let r = rigidity_matrix(&f.with_coordinates(&q), pin)?.matrix;
                let block_rank = linalg::rank(&(b0.transpose() * r * &basis), tol);
                if block_rank != jac_rank {
                    return Err(Error::Numeric(format!(
                        "symmetric block rank {block_rank} differs from restricted Jacobian rank {jac_rank}"
                    )));
                }
                ranks.push(block_rank);
            }
            Some(ranks)
        }
        None => None,
    };

    let determination = if !regularity.regular() {
        FlexDetermination::NotRegular
    } else if regularity.base_rank < complete_rank {
        FlexDetermination::FiniteFlexCertified
    } else {
        FlexDetermination::NoSymmetricFlex
    };
    Ok(FiniteFlexResult {
        irrep,
        determination,
        route,
        subspace: sub,
        regularity,
        complete_rank,
        trivial_in_subspace,
        block_ranks,
        seed,
        samples,
    })
}

fn select_entries(x: &DVector<f64>, idx: &[usize]) -> DVector<f64> {
    DVector::from_iterator(idx.len(), idx.iter().map(|&i| x[i]))
}

/// Verdict of [`linear_push`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PushDetermination {
    LinearlyDetectable,
    NotLinearlyDetectable,
    PreconditionFailed,
}

impl PushDetermination {
    pub fn name(self) -> &'static str {
        match self {
            PushDetermination::LinearlyDetectable => "LinearlyDetectable",
            PushDetermination::NotLinearlyDetectable => "NotLinearlyDetectable",
            PushDetermination::PreconditionFailed => "PreconditionFailed",
        }
    }
}

/// One loop of the linear push.
#[derive(Debug, Clone, PartialEq)]
pub struct PushStep {
    pub iteration: usize,
    /// Rank of the pinned Jacobian at the sampled point.
    pub rank: usize,
    /// Dimension of `ℬ` when the point was sampled.
    pub subspace_dim: usize,
    /// `‖(I − BBᵀ)x‖` for the nullspace generator at the sample, when the
    /// rank matched.
    pub residual: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct LinearPushResult {
    pub determination: PushDetermination,
    pub subspace: AffineSubspace,
    pub iterations: usize,
    pub trace: Vec<PushStep>,
    /// Rank of the pinned Jacobian at the starting configuration.
    pub base_rank: usize,
    pub seed: u64,
    /// Diagnostics for `PreconditionFailed`.
    pub note: Option<String>,
}

/// The iteration cap `nd + (d+1)k`.
pub fn push_iteration_bound(f: &Framework) -> usize {
    f.layout().columns()
}

/// Numerical linear push from the single infinitesimal flex of a minimally
/// pinned framework.
///
/// Each loop samples `q = x + B c` with `c` uniform in `[−1, 1]` times the
/// norm of the free coordinates. A rank increase means the flex is not
/// linearly detectable. Otherwise the nullspace generator at `q` either lies
/// in `ℬ` (detectable) or is appended to it.
pub fn linear_push(f: &Framework, pin: &PinningSpec, seed: u64, max_iter: usize, tol: f64) -> Result<LinearPushResult> {
    let mm = MeasurementMap::for_graph(f)?;
    let x = f.coordinates();
    let kept = pin.kept_columns(f);
    let x_kept = select_entries(&x, &kept);
    let j0 = pinned_jacobian(&mm, pin, &x);
    let base_rank = linalg::rank(&j0, tol);
    let null = linalg::nullspace(&j0, tol);
    let trivial = trivial_motion_basis(f, pin).ncols();
    let fail = |basis: &DMatrix<f64>, iterations, trace, note: String| LinearPushResult {
        determination: PushDetermination::PreconditionFailed,
        subspace: AffineSubspace::from_kept(f, pin, x.clone(), basis),
        iterations,
        trace,
        base_rank,
        seed,
        note: Some(note),
    };
    if null.ncols() != 1 || trivial != 0 {
        return Ok(fail(
            &DMatrix::zeros(kept.len(), 0),
            0,
            Vec::new(),
            format!(
                "expected a single flex and no trivial motions; nullity {}, trivial motions {trivial}",
                null.ncols()
            ),
        ));
    }
    let mut basis = null.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = x_kept.norm().max(1.0);
    let limit = max_iter.min(push_iteration_bound(f));
    let mut trace = Vec::new();
    for iteration in 1..=limit {
        let m = basis.ncols();
        let c = DVector::from_fn(m, |_, _| rng.gen_range(-1.0..=1.0) * scale);
        let q_kept = &x_kept + &basis * c;
        let mut q = x.clone();
        for (k, &col) in kept.iter().enumerate() {
            q[col] = q_kept[k];
        }
        let j = pinned_jacobian(&mm, pin, &q);
        let rank = linalg::rank(&j, tol);
        let mut step = PushStep {
            iteration,
            rank,
            subspace_dim: m,
            residual: None,
        };
        let sub = |b: &DMatrix<f64>| AffineSubspace::from_kept(f, pin, x.clone(), b);
        if rank > base_rank {
            trace.push(step);
            return Ok(LinearPushResult {
                determination: PushDetermination::NotLinearlyDetectable,
                subspace: sub(&basis),
                iterations: iteration,
                trace,
                base_rank,
                seed,
                note: None,
            });
        }
        if rank < base_rank {
            trace.push(step);
            return Ok(fail(
                &basis,
                iteration,
                trace,
                format!("rank dropped from {base_rank} to {rank} at a sampled point"),
            ));
        }
        let generator = linalg::nullspace(&j, tol).column(0).into_owned();
        let residual = linalg::residual_outside(&basis, &generator);
        step.residual = Some(residual);
        trace.push(step);
        if residual <= CONTAINMENT_RESIDUAL {
            return Ok(LinearPushResult {
                determination: PushDetermination::LinearlyDetectable,
                subspace: sub(&basis),
                iterations: iteration,
                trace,
                base_rank,
                seed,
                note: None,
            });
        }
        let w = (&generator - &basis * (basis.transpose() * &generator)) / residual;
        basis = linalg::hstack(&basis, &DMatrix::from_column_slice(w.len(), 1, w.as_slice()));
    }
    Ok(fail(
        &basis,
        limit,
        trace,
        format!("no determination after {limit} iterations"),
    ))
}
