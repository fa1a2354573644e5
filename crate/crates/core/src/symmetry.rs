//! External and internal representations of the extrusion group, character
//! counts, and symmetry-adapted block decomposition of the rigidity matrix.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::framework::{verify_extrusion_symmetry, Framework};
use crate::graph::{edge_image, extrusion_action, EdgeKind, PhGraph, VertexKind};
use crate::group::ExtrusionGroup;
use crate::linalg;
use crate::rigidity::{full_rigidity, full_row_labels, kept_rows, rigidity_matrix, trivial_motion_basis, PinningSpec, RigidityMatrix, RowLabel};

/// Tolerance for the geometric symmetry check inside [`build_reps`].
pub const SYMMETRY_TOL: f64 = 1e-8;

/// Summands of the internal representation, in row order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowPart {
    PointPoint,
    PointHyperplane,
    Angle,
    Parallel,
    Normalization,
}

/// The pinned external and internal representations together with the
/// pinned rigidity matrix they intertwine.
#[derive(Debug, Clone)]
pub struct Representations {
    pub group: ExtrusionGroup,
    /// `P'_V(γ)` on the kept columns, one matrix per group element.
    pub external: Vec<DMatrix<f64>>,
    /// `P'_E(γ)` on the kept rows, one matrix per group element.
    pub internal: Vec<DMatrix<f64>>,
    pub rigidity: RigidityMatrix,
    point_cols: Vec<usize>,
    hyperplane_cols: Vec<usize>,
    row_parts: Vec<RowPart>,
    vertex_fixed: Vec<Vec<bool>>,
}

impl Representations {
    pub fn size(&self) -> usize {
        self.group.size()
    }

    /// Kept row indices belonging to a summand.
    pub fn rows_of(&self, part: RowPart) -> Vec<usize> {
        (0..self.row_parts.len())
            .filter(|&r| self.row_parts[r] == part)
            .collect()
    }

    pub fn point_cols(&self) -> &[usize] {
        &self.point_cols
    }

    pub fn hyperplane_cols(&self) -> &[usize] {
        &self.hyperplane_cols
    }
}

fn row_part(graph: &PhGraph, label: &RowLabel) -> RowPart {
    match *label {
        RowLabel::Normalization { .. } => RowPart::Normalization,
        RowLabel::Edge { edge, .. } => match graph.edges()[edge].kind {
            EdgeKind::PointPoint => RowPart::PointPoint,
            EdgeKind::PointHyperplane => RowPart::PointHyperplane,
            EdgeKind::Angle => RowPart::Angle,
            EdgeKind::Parallel => RowPart::Parallel,
        },
    }
}

/// Full-layout external representation `P'_V(γ)`: identity blocks for
/// points, and `[[I, 0], [−τ_γ(i)ᵀ, 1]]` at hyperplane entry `(i, j)` with
/// `i = γj`.
fn full_external(f: &Framework, gamma: &crate::group::GroupElement) -> Result<DMatrix<f64>> {
    let n = f.layout().columns();
    let d = f.dim();
    let mut m = DMatrix::zeros(n, n);
    for (v, vert) in f.graph().vertices().iter().enumerate() {
        let gv = extrusion_action(f.graph(), gamma, v)?;
        let (src, dst) = (f.layout().offset(v), f.layout().offset(gv));
        for c in 0..d {
            m[(dst + c, src + c)] = 1.0;
        }
        if vert.kind == VertexKind::Hyperplane {
            let tau = f.induced_translation(gv, gamma);
            for c in 0..d {
                m[(dst + d, src + c)] = -tau[c];
            }
            m[(dst + d, src + d)] = 1.0;
        }
    }
    Ok(m)
}

/// Full-row internal representation `P'_E(γ)`.
fn full_internal(f: &Framework, gamma: &crate::group::GroupElement, rows: &[RowLabel]) -> Result<DMatrix<f64>> {
    let g = f.graph();
    let index_of = |label: &RowLabel| rows.iter().position(|r| r == label).expect("row exists");
    let mut m = DMatrix::zeros(rows.len(), rows.len());
    for (r, label) in rows.iter().enumerate() {
        let (image, sign) = match *label {
            RowLabel::Normalization { vertex } => (
                RowLabel::Normalization {
                    vertex: extrusion_action(g, gamma, vertex)?,
                },
                1.0,
            ),
            RowLabel::Edge { edge, component } => {
                let target = edge_image(g, gamma, edge)?;
                let e = g.edges()[edge];
                let sign = match e.kind {
                    EdgeKind::PointPoint => match g.extrusion_axis(&e) {
                        Some(h) if gamma.bit(h) => -1.0,
                        _ => 1.0,
                    },
                    EdgeKind::Parallel => {
                        let first = extrusion_action(g, gamma, e.ends.0)?;
                        if first == g.edges()[target].ends.0 {
                            1.0
                        } else {
                            -1.0
                        }
                    }
                    _ => 1.0,
                };
                (RowLabel::Edge { edge: target, component }, sign)
            }
        };
        m[(index_of(&image), r)] = sign;
    }
    Ok(m)
}

/// Builds the pinned representations without checking the geometry. The
/// graph and the pinning must be invariant under the group.
pub fn build_reps_unchecked(f: &Framework, pin: &PinningSpec) -> Result<Representations> {
    let rigidity = rigidity_matrix(f, pin)?;
    let (_, rows) = full_rigidity(f)?;
    let group = f.group();
    let kept_cols = rigidity.kept_cols.clone();
    let kept_r = kept_rows(f, pin, &rows);
    let removed_cols: Vec<usize> = pin.removed_columns(f).into_iter().collect();
    let kept_set: BTreeSet<usize> = kept_r.iter().copied().collect();
    let removed_rows: Vec<usize> = (0..rows.len()).filter(|r| !kept_set.contains(r)).collect();

    let mut external = Vec::with_capacity(group.size());
    let mut internal = Vec::with_capacity(group.size());
    let mut vertex_fixed = Vec::with_capacity(group.size());
    for gamma in group.elements() {
        let ext = full_external(f, &gamma)?;
        let int = full_internal(f, &gamma, &rows)?;
        if linalg::max_abs(&linalg::select(&ext, &removed_cols, &kept_cols)) > 0.0 {
            return Err(Error::Precondition(format!(
                "pinning is not invariant under {gamma}"
            )));
        }
        if linalg::max_abs(&linalg::select(&int, &removed_rows, &kept_r)) > 0.0 {
            return Err(Error::Precondition(format!(
                "deleted rows are not invariant under {gamma}"
            )));
        }
        external.push(linalg::select(&ext, &kept_cols, &kept_cols));
        internal.push(linalg::select(&int, &kept_r, &kept_r));
        let fixed = (0..f.graph().vertices().len())
            .map(|v| extrusion_action(f.graph(), &gamma, v).map(|g| g == v))
            .collect::<Result<Vec<bool>>>()?;
        vertex_fixed.push(fixed);
    }
    let (mut point_cols, mut hyperplane_cols) = (Vec::new(), Vec::new());
    for (k, c) in rigidity.cols.iter().enumerate() {
        match f.graph().vertex(c.vertex).kind {
            VertexKind::Point => point_cols.push(k),
            VertexKind::Hyperplane => hyperplane_cols.push(k),
        }
    }
    let row_parts = rigidity.rows.iter().map(|l| row_part(f.graph(), l)).collect();
    Ok(Representations {
        group,
        external,
        internal,
        rigidity,
        point_cols,
        hyperplane_cols,
        row_parts,
        vertex_fixed,
    })
}

/// Checks that no active reflection fixes a hyperplane carrying a
/// point-hyperplane edge, unless that hyperplane is pinned or parallel-only.
pub fn check_incidence_hypothesis(f: &Framework, pin: &PinningSpec) -> Result<()> {
    let g = f.graph();
    for &h in f.group().generators() {
        for w in g.hyperplane_indices() {
            let handled = pin.fully_pinned.contains(&w) || pin.parallel_only.contains(&w);
            if g.in_fixed_set(w, h) && !handled && g.has_incidence(w) {
                return Err(Error::Precondition(format!(
                    "hyperplane `{}` contains extrusion direction {} and has point-hyperplane edges; \
                     apply hyperplane pinning first",
                    g.vertex(w).label,
                    h + 1
                )));
            }
        }
    }
    Ok(())
}

/// Builds the representations after checking extrusion symmetry of the
/// geometry and the incidence hypothesis.
pub fn build_reps(f: &Framework, pin: &PinningSpec) -> Result<Representations> {
    let report = verify_extrusion_symmetry(f, SYMMETRY_TOL);
    if let Some(v) = report.violations.first() {
        return Err(Error::SymmetryBroken(v.detail.clone()));
    }
    check_incidence_hypothesis(f, pin)?;
    build_reps_unchecked(f, pin)
}

/// `max_γ ‖R P'_V(γ) − P'_E(γ) R‖_∞ / ‖R‖_∞`.
pub fn intertwining_residual(f: &Framework, pin: &PinningSpec) -> Result<f64> {
    let reps = build_reps_unchecked(f, pin)?;
    Ok(residual_of(&reps))
}

pub fn residual_of(reps: &Representations) -> f64 {
    let r = &reps.rigidity.matrix;
    let norm = linalg::inf_norm(r);
    if norm == 0.0 {
        return 0.0;
    }
    reps.external
        .iter()
        .zip(&reps.internal)
        .map(|(ext, int)| linalg::inf_norm(&(r * ext - int * r)) / norm)
        .fold(0.0, f64::max)
}

/// Traces of a representation, one per group element.
pub fn character_of(rep: &[DMatrix<f64>]) -> Vec<f64> {
    rep.iter().map(|m| m.trace()).collect()
}

/// Character of a sub-block given by row/column indices.
pub fn partial_character(rep: &[DMatrix<f64>], indices: &[usize]) -> Vec<f64> {
    rep.iter()
        .map(|m| indices.iter().map(|&i| m[(i, i)]).sum())
        .collect()
}

/// Multiplicities `α_i = (1/|Γ|) Σ_γ ρ_i(γ) χ(γ)`; errors if any is not an
/// integer.
pub fn decompose(group: &ExtrusionGroup, character: &[f64]) -> Result<Vec<i64>> {
    let n = group.size();
    if character.len() != n {
        return Err(Error::Dimension("character length differs from group size".into()));
    }
    (0..n)
        .map(|i| {
            let alpha: f64 = (0..n).map(|j| group.character(i, j) * character[j]).sum::<f64>() / n as f64;
            let rounded = alpha.round();
            if (alpha - rounded).abs() > 1e-9 {
                Err(Error::Numeric(format!("non-integer multiplicity {alpha} for irrep {i}")))
            } else {
                Ok(rounded as i64)
            }
        })
        .collect()
}

/// Dimension of the translations compatible with the pinning: a translation
/// `t` survives when every pinned point coordinate has `t_c = 0` and
/// `⟨t, a⟩ = 0` for every fully pinned hyperplane.
pub fn admissible_translation_dim(f: &Framework, pin: &PinningSpec) -> usize {
    let d = f.dim();
    let t = crate::rigidity::full_trivial_motions(f);
    let removed: Vec<usize> = pin.removed_columns(f).into_iter().collect();
    if removed.is_empty() {
        return d;
    }
    let cols: Vec<usize> = (0..d).collect();
    let constraints = linalg::select(&t, &removed, &cols);
    d - linalg::rank(&constraints, linalg::DEFAULT_TOL)
}

/// Character of the translational subrepresentation (constant).
pub fn translation_subrep_character(f: &Framework, pin: &PinningSpec) -> Vec<f64> {
    vec![admissible_translation_dim(f, pin) as f64; f.group().size()]
}

/// One row of a character table.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterRow {
    pub name: String,
    pub values: Vec<i64>,
}

fn to_int(values: &[f64]) -> Vec<i64> {
    values.iter().map(|v| v.round() as i64).collect()
}

/// The summand characters in the layout used for reports.
pub fn character_rows(f: &Framework, pin: &PinningSpec, reps: &Representations) -> Vec<CharacterRow> {
    let d = f.dim();
    let g = f.graph();
    let kept = reps.rigidity.cols.iter().map(|c| c.vertex).collect::<BTreeSet<_>>();
    let fixed_count = |kind: VertexKind| -> Vec<f64> {
        reps.vertex_fixed
            .iter()
            .map(|fixed| {
                (0..g.vertices().len())
                    .filter(|&v| g.vertex(v).kind == kind && fixed[v] && kept.contains(&v))
                    .count() as f64
            })
            .collect()
    };
    let row = |name: String, values: Vec<f64>| CharacterRow {
        name,
        values: to_int(&values),
    };
    let ext = &reps.external;
    let int = &reps.internal;
    let trans = translation_subrep_character(f, pin);
    let mut out = Vec::new();
    if g.hyperplane_indices().is_empty() {
        out.push(row("χ(P_V)".into(), fixed_count(VertexKind::Point)));
        out.push(row(format!("χ(P_V ⊗ I_{d})"), character_of(ext)));
        out.push(row("χ(P'_E)".into(), character_of(int)));
        out.push(row(format!("χ(P_V ⊗ I_{d})^(T)"), trans));
        return out;
    }
    out.push(row("χ(P_VP)".into(), fixed_count(VertexKind::Point)));
    out.push(row(format!("χ(P_VP ⊗ I_{d})"), partial_character(ext, reps.point_cols())));
    out.push(row("χ(P'_VH)".into(), partial_character(ext, reps.hyperplane_cols())));
    out.push(row("χ(P'_EPP)".into(), partial_character(int, &reps.rows_of(RowPart::PointPoint))));
    out.push(row("χ(P_EPH)".into(), partial_character(int, &reps.rows_of(RowPart::PointHyperplane))));
    let angle = reps.rows_of(RowPart::Angle);
    if !angle.is_empty() {
        out.push(row("χ(P_EHH∦)".into(), partial_character(int, &angle)));
    }
    let parallel_name = if d > 2 {
        format!("χ(P'_EHH∥ ⊗ I_{})", d - 1)
    } else {
        "χ(P'_EHH∥)".into()
    };
    out.push(row(parallel_name, partial_character(int, &reps.rows_of(RowPart::Parallel))));
    out.push(row("χ(P_VH)".into(), partial_character(int, &reps.rows_of(RowPart::Normalization))));
    out.push(row("χ(P'_V)^(T)".into(), trans));
    out.push(row("χ(P'_V)".into(), character_of(ext)));
    out.push(row("χ(P'_E)".into(), character_of(int)));
    out
}

/// Characters computed by counting fixed vertices and edges instead of
/// taking traces.
pub fn combinatorial_characters(f: &Framework, pin: &PinningSpec) -> Result<(Vec<f64>, Vec<f64>)> {
    let g = f.graph();
    let d = f.dim();
    let group = f.group();
    let kept_cols: BTreeSet<usize> = pin.kept_columns(f).into_iter().collect();
    let rows = full_row_labels(f);
    let kept_r: BTreeSet<usize> = kept_rows(f, pin, &rows).into_iter().collect();
    let mut ext = Vec::new();
    let mut int = Vec::new();
    for gamma in group.elements() {
        let mut e = 0.0;
        for v in 0..g.vertices().len() {
            if extrusion_action(g, &gamma, v)? == v {
                let o = f.layout().offset(v);
                e += (o..o + f.layout().width(v)).filter(|c| kept_cols.contains(c)).count() as f64;
            }
        }
        let mut i = 0.0;
        for (r, label) in rows.iter().enumerate() {
            if !kept_r.contains(&r) {
                continue;
            }
            match *label {
                RowLabel::Normalization { vertex } => {
                    if extrusion_action(g, &gamma, vertex)? == vertex {
                        i += 1.0;
                    }
                }
                RowLabel::Edge { edge, .. } => {
                    let status = crate::graph::edge_fixed_flip(g, &gamma, edge)?;
                    let kind = g.edges()[edge].kind;
                    i += match (status, kind) {
                        (crate::graph::FixedStatus::NotFixed, _) => 0.0,
                        (crate::graph::FixedStatus::FixedSwapped, EdgeKind::PointPoint | EdgeKind::Parallel) => -1.0,
                        _ => 1.0,
                    };
                }
            }
        }
        let _ = d;
        ext.push(e);
        int.push(i);
    }
    Ok((ext, int))
}

/// Counts for one irreducible representation.
#[derive(Debug, Clone, PartialEq)]
pub struct IrrepCount {
    pub label: String,
    pub freedoms: i64,
    pub translations: i64,
    pub constraints: i64,
    pub net: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Caveat {
    /// Rotations are not subtracted for `d ≥ 3`.
    RotationsNotCounted,
    /// The external representation of a point-hyperplane framework is not
    /// orthogonal.
    NonUnitary,
}

impl Caveat {
    pub fn describe(self) -> &'static str {
        match self {
            Caveat::RotationsNotCounted => "rotational trivial motions are not subtracted (d >= 3)",
            Caveat::NonUnitary => "external representation is not orthogonal (point-hyperplane)",
        }
    }
}

/// Symmetry-extended Maxwell count per irrep and what the block ranks show.
#[derive(Debug, Clone)]
pub struct MobilityReport {
    pub counts: Vec<IrrepCount>,
    /// Symmetric flexes (trivial motions removed), per irrep.
    pub detected_flexes: Vec<DMatrix<f64>>,
    /// Dimension of the stresses in each isotypic component.
    pub detected_stress_dims: Vec<usize>,
    pub caveats: Vec<Caveat>,
}

/// `λ_i − ν_i − μ_i` for each irrep.
pub fn fowler_guest_count(f: &Framework, pin: &PinningSpec) -> Result<MobilityReport> {
    let reps = build_reps(f, pin)?;
    let blocks = block_decompose_with(f, pin, &reps)?;
    let group = &reps.group;
    let lambda = decompose(group, &character_of(&reps.external))?;
    let nu = decompose(group, &translation_subrep_character(f, pin))?;
    let mu = decompose(group, &character_of(&reps.internal))?;
    let counts = (0..group.size())
        .map(|i| IrrepCount {
            label: group.label(i),
            freedoms: lambda[i],
            translations: nu[i],
            constraints: mu[i],
            net: lambda[i] - nu[i] - mu[i],
        })
        .collect();
    let trivial = trivial_motion_basis(f, pin);
    let mut detected_flexes = Vec::new();
    let mut detected_stress_dims = Vec::new();
    for i in 0..group.size() {
        detected_flexes.push(flex_from_blocks(&blocks, i, &trivial));
        let block = &blocks.blocks[i];
        let rank = linalg::rank(block, linalg::DEFAULT_TOL);
        detected_stress_dims.push(block.nrows() - rank);
    }
    let mut caveats = Vec::new();
    if f.dim() >= 3 {
        caveats.push(Caveat::RotationsNotCounted);
    }
    if !reps.hyperplane_cols().is_empty() {
        let non_orthogonal = reps
            .external
            .iter()
            .any(|m| (m.transpose() * m - DMatrix::identity(m.nrows(), m.ncols())).amax() > 1e-12);
        if non_orthogonal {
            caveats.push(Caveat::NonUnitary);
        }
    }
    Ok(MobilityReport {
        counts,
        detected_flexes,
        detected_stress_dims,
        caveats,
    })
}

/// Orthonormal bases of the isotypic components of a representation,
/// obtained from the projections `π_i = (1/|Γ|) Σ_γ ρ_i(γ) M(γ)`.
pub fn symmetry_adapted_basis(group: &ExtrusionGroup, rep: &[DMatrix<f64>]) -> Result<Vec<DMatrix<f64>>> {
    let n = group.size();
    let expected = decompose(group, &character_of(rep))?;
    let dim = rep.first().map(|m| m.nrows()).unwrap_or(0);
    (0..n)
        .map(|i| {
            let mut proj = DMatrix::zeros(dim, dim);
            for (j, m) in rep.iter().enumerate() {
                proj += m * group.character(i, j);
            }
            proj /= n as f64;
            let basis = linalg::pivoted_qr_basis(&proj, linalg::DEFAULT_TOL, 1.0);
            if basis.ncols() as i64 != expected[i] {
                return Err(Error::Numeric(format!(
                    "projection for irrep {i} has rank {} but the character gives {}",
                    basis.ncols(),
                    expected[i]
                )));
            }
            Ok(basis)
        })
        .collect()
}

/// `R̃ = Bᵀ R A` split into one block per irrep.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    /// Bases of the isotypic components of the external representation.
    pub a: Vec<DMatrix<f64>>,
    /// Bases of the isotypic components of the internal representation.
    pub b: Vec<DMatrix<f64>>,
    /// `B_iᵀ R A_i`, of size `μ_i × λ_i`.
    pub blocks: Vec<DMatrix<f64>>,
    /// Largest off-block entry of `Bᵀ R A`, relative to the largest entry
    /// of `R`.
    pub off_diagonal: f64,
}

impl BlockDecomposition {
    pub fn shapes(&self) -> Vec<(usize, usize)> {
        self.blocks.iter().map(|b| b.shape()).collect()
    }
}

pub fn block_decompose(f: &Framework, pin: &PinningSpec) -> Result<BlockDecomposition> {
    let reps = build_reps(f, pin)?;
    block_decompose_with(f, pin, &reps)
}

pub fn block_decompose_with(_f: &Framework, _pin: &PinningSpec, reps: &Representations) -> Result<BlockDecomposition> {
    let a = symmetry_adapted_basis(&reps.group, &reps.external)?;
    let b = symmetry_adapted_basis(&reps.group, &reps.internal)?;
    let r = &reps.rigidity.matrix;
    let scale = linalg::max_abs(r).max(f64::MIN_POSITIVE);
    let mut off = 0.0f64;
    let mut blocks = Vec::new();
    for (i, bi) in b.iter().enumerate() {
        for (j, aj) in a.iter().enumerate() {
            let m = bi.transpose() * r * aj;
            if i == j {
                blocks.push(m);
            } else {
                off = off.max(linalg::max_abs(&m) / scale);
            }
        }
    }
    Ok(BlockDecomposition {
        a,
        b,
        blocks,
        off_diagonal: off,
    })
}

/// Kernel of block `i`, mapped back to coordinates.
pub fn symmetric_motions(blocks: &BlockDecomposition, irrep: usize) -> DMatrix<f64> {
    let null = linalg::nullspace(&blocks.blocks[irrep], linalg::DEFAULT_TOL);
    &blocks.a[irrep] * null
}

/// The complement is taken in the coordinates of the isotypic basis, so the
/// result stays in the component even when the external representation is
/// not orthogonal.
fn flex_from_blocks(blocks: &BlockDecomposition, irrep: usize, trivial: &DMatrix<f64>) -> DMatrix<f64> {
    let a = &blocks.a[irrep];
    let motions = linalg::nullspace(&blocks.blocks[irrep], linalg::DEFAULT_TOL);
    let symmetric_trivial = linalg::intersection(trivial, a, linalg::DEFAULT_TOL);
    let trivial_coeffs = a.transpose() * symmetric_trivial;
    a * linalg::complement_within(&motions, &trivial_coeffs, linalg::DEFAULT_TOL)
}

/// Basis of the `ρ_i`-symmetric infinitesimal flexes with the symmetric
/// trivial motions removed.
pub fn symmetric_flex(f: &Framework, pin: &PinningSpec, irrep: usize) -> Result<DMatrix<f64>> {
    let blocks = block_decompose(f, pin)?;
    if irrep >= blocks.blocks.len() {
        return Err(Error::Dimension(format!("irrep {irrep} out of range")));
    }
    Ok(flex_from_blocks(&blocks, irrep, &trivial_motion_basis(f, pin)))
}

/// Stresses in the `ρ_i` isotypic component, mapped back to rows.
pub fn symmetric_stresses(blocks: &BlockDecomposition, irrep: usize) -> DMatrix<f64> {
    let null = linalg::left_nullspace(&blocks.blocks[irrep], linalg::DEFAULT_TOL);
    &blocks.b[irrep] * null
}

/// The fully symmetric subspace described by orbits, over the kept columns.
///
/// For translational orbits every member moves with the same velocity; for
/// the extrusion group a hyperplane orbit shares `ȧ` and shifts `ṙ` by
/// `⟨p_{γw} − p_w, ȧ⟩` along the orbit. Vertices outside any orbit are
/// unconstrained.
pub fn orbit_symmetric_subspace(f: &Framework, pin: &PinningSpec) -> Result<DMatrix<f64>> {
    let g = f.graph();
    let d = f.dim();
    let layout = f.layout();
    let n = layout.columns();
    let mut columns: Vec<DVector<f64>> = Vec::new();
    let mut covered = vec![false; g.vertices().len()];
    let group = f.group();
    let orbits: Vec<Vec<usize>> = if !f.orbits().is_empty() && group.size() == 1 {
        f.orbits().to_vec()
    } else {
        let mut seen = vec![false; g.vertices().len()];
        let mut out = Vec::new();
        for v in 0..g.vertices().len() {
            if seen[v] {
                continue;
            }
            let mut orbit = Vec::new();
            for gamma in group.elements() {
                let w = extrusion_action(g, &gamma, v)?;
                if !seen[w] {
                    seen[w] = true;
                    orbit.push(w);
                }
            }
            out.push(orbit);
        }
        out
    };
    for orbit in &orbits {
        let rep = orbit[0];
        match g.vertex(rep).kind {
            VertexKind::Point => {
                for c in 0..d {
                    let mut col = DVector::zeros(n);
                    for &v in orbit {
                        col[layout.offset(v) + c] = 1.0;
                    }
                    columns.push(col);
                }
            }
            VertexKind::Hyperplane => {
                for c in 0..d {
                    let mut col = DVector::zeros(n);
                    for &v in orbit {
                        let o = layout.offset(v);
                        col[o + c] = 1.0;
                        col[o + d] = hyperplane_shift(f, rep, v)?[c];
                    }
                    columns.push(col);
                }
                let mut col = DVector::zeros(n);
                for &v in orbit {
                    col[layout.offset(v) + d] = 1.0;
                }
                columns.push(col);
            }
        }
        for &v in orbit {
            covered[v] = true;
        }
    }
    for v in (0..g.vertices().len()).filter(|&v| !covered[v]) {
        for c in 0..layout.width(v) {
            let mut col = DVector::zeros(n);
            col[layout.offset(v) + c] = 1.0;
            columns.push(col);
        }
    }
    let phi = DMatrix::from_columns(&columns);
    let removed: Vec<usize> = pin.removed_columns(f).into_iter().collect();
    let all: Vec<usize> = (0..phi.ncols()).collect();
    let coeffs = if removed.is_empty() {
        DMatrix::identity(phi.ncols(), phi.ncols())
    } else {
        linalg::nullspace(&linalg::select(&phi, &removed, &all), linalg::DEFAULT_TOL)
    };
    let kept = pin.kept_columns(f);
    Ok(linalg::column_space(&(linalg::select(&phi, &kept, &all) * coeffs), linalg::DEFAULT_TOL))
}

/// Translation carrying hyperplane `from` to `to` within an extrusion orbit.
fn hyperplane_shift(f: &Framework, from: usize, to: usize) -> Result<DVector<f64>> {
    let g = f.graph();
    let group = f.group();
    for gamma in group.elements() {
        if extrusion_action(g, &gamma, from)? == to {
            return Ok(-f.induced_translation(to, &gamma));
        }
    }
    Err(Error::InvalidGraph("hyperplanes are not in one orbit".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn prism_characters() {
        let f = fixtures::prism();
        let reps = build_reps(&f, &PinningSpec::none()).unwrap();
        let rows = character_rows(&f, &PinningSpec::none(), &reps);
        let values: Vec<Vec<i64>> = rows.iter().map(|r| r.values.clone()).collect();
        assert_eq!(values, vec![vec![6, 0], vec![12, 0], vec![9, -3], vec![2, 2]]);
    }

    #[test]
    fn prism_blocks() {
        let f = fixtures::prism();
        let b = block_decompose(&f, &PinningSpec::none()).unwrap();
        assert_eq!(b.shapes(), vec![(3, 6), (6, 6)]);
        assert!(b.off_diagonal < 1e-9);
    }

    #[test]
    fn homomorphism() {
        let f = fixtures::point_line();
        let (pin, reduced) = crate::rigidity::hyperplane_pinning(&f).unwrap();
        let f = f.with_active(reduced.active).unwrap();
        let reps = build_reps(&f, &pin).unwrap();
        for i in 0..reps.size() {
            for j in 0..reps.size() {
                let k = i ^ j;
                let lhs = &reps.external[i] * &reps.external[j];
                assert!((lhs - &reps.external[k]).amax() < 1e-12);
                let lhs = &reps.internal[i] * &reps.internal[j];
                assert!((lhs - &reps.internal[k]).amax() < 1e-12);
            }
        }
    }

    #[test]
    fn incidence_hypothesis_enforced() {
        let f = fixtures::point_line();
        assert!(matches!(
            build_reps(&f, &PinningSpec::none()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn trivial_group_single_block() {
        let f = fixtures::triangle();
        let b = block_decompose(&f, &PinningSpec::none()).unwrap();
        assert_eq!(b.shapes(), vec![(3, 6)]);
    }

    #[test]
    fn orbit_route_matches_projection() {
        let f = fixtures::two_fold_prism();
        let pin = PinningSpec::none();
        let b = block_decompose(&f, &pin).unwrap();
        let o = orbit_symmetric_subspace(&f, &pin).unwrap();
        assert_eq!(o.ncols(), b.a[0].ncols());
        assert_eq!(linalg::intersection(&o, &b.a[0], 1e-9).ncols(), o.ncols());
    }
}
