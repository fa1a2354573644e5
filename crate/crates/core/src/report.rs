//! Analysis reports: a serialisable summary of every count, rank and
//! verdict, with a fixed-layout text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finiteflex::{finite_flex_test, linear_push, SubspaceRoute};
use crate::framework::Framework;
use crate::graph::{EdgeKind, VertexKind};
use crate::group::ExtrusionGroup;
use crate::rigidity::{infinitesimal_analysis, PinningSpec};
use crate::symmetry::{block_decompose_with, build_reps, character_rows, fowler_guest_count, residual_of};

/// Settings that every number in a report depends on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalysisOptions {
    pub tolerance: f64,
    pub seed: u64,
    /// Samples drawn by each regularity test.
    pub samples: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            tolerance: crate::linalg::DEFAULT_TOL,
            seed: 0,
            samples: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameworkSummary {
    pub dimension: usize,
    pub points: usize,
    pub hyperplanes: usize,
    /// Edge counts by kind tag.
    pub edges: BTreeMap<String, usize>,
    pub extrusion_order: usize,
    pub active_directions: Vec<usize>,
    /// Group element labels in character-table column order.
    pub elements: Vec<String>,
    pub pinning: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfinitesimalSummary {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub nullity: usize,
    pub trivial: usize,
    /// `m`.
    pub flexes: usize,
    /// `s`.
    pub stresses: usize,
    /// `cols − rows − trivial`, which must equal `m − s`.
    pub maxwell: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterEntry {
    pub name: String,
    pub values: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IrrepEntry {
    pub irrep: String,
    pub freedoms: i64,
    pub translations: i64,
    pub constraints: i64,
    pub net: i64,
    /// Block shape `μ × λ`.
    pub block: (usize, usize),
    pub detected_flexes: usize,
    pub detected_stresses: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetrySummary {
    pub character_table: Vec<CharacterEntry>,
    pub irreps: Vec<IrrepEntry>,
    pub verdict: Vec<String>,
    pub off_diagonal: f64,
    pub intertwining_residual: f64,
    pub caveats: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlexEntry {
    pub irrep: String,
    pub determination: String,
    pub route: String,
    pub subspace_dim: usize,
    pub graph_rank: usize,
    pub max_sample_rank: usize,
    pub complete_rank: usize,
    pub trivial_in_subspace: usize,
    /// Whether the symmetric-block ranks were computed and agreed.
    pub block_route_checked: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PushTraceEntry {
    pub iteration: usize,
    pub rank: usize,
    pub subspace_dim: usize,
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PushSummary {
    pub determination: String,
    pub iterations: usize,
    pub bound: usize,
    pub base_rank: usize,
    pub subspace_dim: usize,
    pub trace: Vec<PushTraceEntry>,
    pub note: Option<String>,
}

/// Everything printed by the `analyze` and `push` commands.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub options: AnalysisOptions,
    pub framework: FrameworkSummary,
    pub infinitesimal: InfinitesimalSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<SymmetrySummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub finite_flex: Vec<FlexEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub push: Option<PushSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// `ρ_0` for the trivial group, otherwise `ρ_` followed by the element label.
pub fn irrep_name(group: &ExtrusionGroup, i: usize) -> String {
    if group.size() == 1 {
        "ρ_0".into()
    } else {
        format!("ρ_{}", group.label(i))
    }
}

fn plural(n: i64, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}es")
    }
}

fn summarize_framework(f: &Framework, pin: &PinningSpec) -> FrameworkSummary {
    let g = f.graph();
    let group = f.group();
    let mut edges = BTreeMap::new();
    for kind in [EdgeKind::PointPoint, EdgeKind::PointHyperplane, EdgeKind::Angle, EdgeKind::Parallel] {
        let n = g.edge_count(kind);
        if n > 0 {
            edges.insert(kind.tag().to_string(), n);
        }
    }
    FrameworkSummary {
        dimension: f.dim(),
        points: g.vertices().iter().filter(|v| v.kind == VertexKind::Point).count(),
        hyperplanes: g.vertices().iter().filter(|v| v.kind == VertexKind::Hyperplane).count(),
        edges,
        extrusion_order: g.order(),
        active_directions: group.generators().to_vec(),
        elements: (0..group.size()).map(|j| group.label(j)).collect(),
        pinning: pin.describe(f),
    }
}

fn summarize_infinitesimal(f: &Framework, pin: &PinningSpec, tol: f64) -> Result<InfinitesimalSummary> {
    let a = infinitesimal_analysis(f, pin, tol)?;
    let maxwell = a.cols as i64 - a.rows as i64 - a.trivial_dim as i64;
    if a.flex_dim as i64 - a.stress_dim as i64 != maxwell {
        return Err(Error::Numeric("Maxwell identity fails".into()));
    }
    Ok(InfinitesimalSummary {
        rows: a.rows,
        cols: a.cols,
        rank: a.rank,
        nullity: a.nullity,
        trivial: a.trivial_dim,
        flexes: a.flex_dim,
        stresses: a.stress_dim,
        maxwell,
    })
}

fn summarize_symmetry(f: &Framework, pin: &PinningSpec) -> Result<SymmetrySummary> {
    let reps = build_reps(f, pin)?;
    let blocks = block_decompose_with(f, pin, &reps)?;
    let mobility = fowler_guest_count(f, pin)?;
    let group = &reps.group;
    let character_table = character_rows(f, pin, &reps)
        .into_iter()
        .map(|r| CharacterEntry {
            name: r.name,
            values: r.values,
        })
        .collect();
    let irreps: Vec<IrrepEntry> = mobility
        .counts
        .iter()
        .enumerate()
        .map(|(i, c)| IrrepEntry {
            irrep: irrep_name(group, i),
            freedoms: c.freedoms,
            translations: c.translations,
            constraints: c.constraints,
            net: c.net,
            block: blocks.blocks[i].shape(),
            detected_flexes: mobility.detected_flexes[i].ncols(),
            detected_stresses: mobility.detected_stress_dims[i],
        })
        .collect();
    let mut verdict = Vec::new();
    for (i, e) in irreps.iter().enumerate() {
        let tag = if i == 0 { " (fully-symmetric)" } else { "" };
        if e.net > 0 {
            verdict.push(format!("+{}{tag}", plural(e.net, &format!("{} flex", e.irrep))));
        } else if e.net < 0 {
            verdict.push(format!("{}{tag}", plural(-e.net, &format!("{} stress", e.irrep))));
        }
    }
    Ok(SymmetrySummary {
        character_table,
        irreps,
        verdict,
        off_diagonal: blocks.off_diagonal,
        intertwining_residual: residual_of(&reps),
        caveats: mobility.caveats.iter().map(|c| c.describe().to_string()).collect(),
    })
}

/// Character table, per-irrep counts, blocks, infinitesimal ranks and a
/// finite-flex test for every irrep.
pub fn analyze(f: &Framework, pin: &PinningSpec, options: AnalysisOptions) -> Result<ReportDocument> {
    let framework = summarize_framework(f, pin);
    let infinitesimal = summarize_infinitesimal(f, pin, options.tolerance)?;
    let symmetry = summarize_symmetry(f, pin)?;
    let group = f.group();
    let mut notes = Vec::new();
    let mut finite_flex = Vec::new();
    for i in 0..group.size() {
        match finite_flex_test(f, pin, i, options.samples, options.seed, options.tolerance) {
            Ok(r) => finite_flex.push(FlexEntry {
                irrep: irrep_name(&group, i),
                determination: r.determination.name().into(),
                route: match r.route {
                    SubspaceRoute::Projection => "projection".into(),
                    SubspaceRoute::Orbits => "orbits".into(),
                },
                subspace_dim: r.subspace.dim(),
                graph_rank: r.regularity.base_rank,
                max_sample_rank: r.regularity.sample_ranks.iter().copied().max().unwrap_or(r.regularity.base_rank),
                complete_rank: r.complete_rank,
                trivial_in_subspace: r.trivial_in_subspace,
                block_route_checked: r.block_ranks.is_some(),
            }),
            Err(Error::NotSpanning) => {
                notes.push("finite-flex tests skipped: the configuration does not span the space".into());
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ReportDocument {
        options,
        framework,
        infinitesimal,
        symmetry: Some(symmetry),
        finite_flex,
        push: None,
        notes,
    })
}

/// Runs the linear push and reports it with the infinitesimal ranks.
pub fn push_report(
    f: &Framework,
    pin: &PinningSpec,
    max_iter: usize,
    options: AnalysisOptions,
) -> Result<ReportDocument> {
    let framework = summarize_framework(f, pin);
    let infinitesimal = summarize_infinitesimal(f, pin, options.tolerance)?;
    let r = linear_push(f, pin, options.seed, max_iter, options.tolerance)?;
    let push = PushSummary {
        determination: r.determination.name().into(),
        iterations: r.iterations,
        bound: crate::finiteflex::push_iteration_bound(f),
        base_rank: r.base_rank,
        subspace_dim: r.subspace.dim(),
        trace: r
            .trace
            .iter()
            .map(|s| PushTraceEntry {
                iteration: s.iteration,
                rank: s.rank,
                subspace_dim: s.subspace_dim,
                residual: s.residual,
            })
            .collect(),
        note: r.note,
    };
    Ok(ReportDocument {
        options,
        framework,
        infinitesimal,
        symmetry: None,
        finite_flex: Vec::new(),
        push: Some(push),
        notes: Vec::new(),
    })
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialise");
        s.push('\n');
        s
    }

    /// Text layout. Floating-point diagnostics are printed as pass/fail
    /// against fixed thresholds so the text is identical across platforms.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let fw = &self.framework;
        let edges: Vec<String> = fw.edges.iter().map(|(k, n)| format!("{k} {n}")).collect();
        let _ = writeln!(
            out,
            "framework: d = {}, {} points, {} hyperplanes, edges: {}",
            fw.dimension,
            fw.points,
            fw.hyperplanes,
            if edges.is_empty() { "none".into() } else { edges.join(", ") }
        );
        let active: Vec<String> = fw.active_directions.iter().map(|h| format!("τ{}", h + 1)).collect();
        let _ = writeln!(
            out,
            "extrusion: order {}, group of size {} generated by {}",
            fw.extrusion_order,
            fw.elements.len(),
            if active.is_empty() { "nothing".into() } else { active.join(", ") }
        );
        let _ = writeln!(
            out,
            "pinning: {}",
            if fw.pinning.is_empty() { "none".into() } else { fw.pinning.join(", ") }
        );
        if self.push.is_some() {
            let _ = writeln!(out, "tolerance: {:e}, seed: {}", self.options.tolerance, self.options.seed);
        } else {
            let _ = writeln!(
                out,
                "tolerance: {:e}, seed: {}, samples: {}",
                self.options.tolerance, self.options.seed, self.options.samples
            );
        }

        let inf = &self.infinitesimal;
        let _ = writeln!(out, "\ninfinitesimal analysis");
        let _ = writeln!(out, "  rigidity matrix {} x {}, rank {}", inf.rows, inf.cols, inf.rank);
        let _ = writeln!(
            out,
            "  nullity {} = {} trivial + {} flex; {} self-stress",
            inf.nullity,
            inf.trivial,
            inf.flexes,
            inf.stresses
        );
        let _ = writeln!(
            out,
            "  Maxwell: m - s = {} = {} columns - {} rows - {} trivial",
            inf.flexes as i64 - inf.stresses as i64,
            inf.cols,
            inf.rows,
            inf.trivial
        );

        if let Some(sym) = &self.symmetry {
            let width = sym
                .character_table
                .iter()
                .map(|r| r.name.chars().count())
                .max()
                .unwrap_or(0)
                .max(5);
            let col = fw.elements.iter().map(|e| e.chars().count()).max().unwrap_or(1).max(4);
            let _ = writeln!(out, "\ncharacter table");
            let mut header = format!("  {:width$}", "");
            for e in &fw.elements {
                let _ = write!(header, " {e:>col$}");
            }
            let _ = writeln!(out, "{}", header.trim_end());
            for r in &sym.character_table {
                let pad = width - r.name.chars().count();
                let mut line = format!("  {}{}", r.name, " ".repeat(pad));
                for v in &r.values {
                    let _ = write!(line, " {v:>col$}");
                }
                let _ = writeln!(out, "{line}");
            }
            let _ = writeln!(out, "\ncounts per irrep");
            let _ = writeln!(
                out,
                "  {:<10} {:>8} {:>12} {:>11} {:>5} {:>9} {:>6} {:>8}",
                "irrep", "freedoms", "translations", "constraints", "net", "block", "flexes", "stresses"
            );
            for e in &sym.irreps {
                let block = format!("{}x{}", e.block.0, e.block.1);
                let pad = 10usize.saturating_sub(e.irrep.chars().count());
                let _ = writeln!(
                    out,
                    "  {}{} {:>8} {:>12} {:>11} {:>+5} {:>9} {:>6} {:>8}",
                    e.irrep,
                    " ".repeat(pad),
                    e.freedoms,
                    e.translations,
                    e.constraints,
                    e.net,
                    block,
                    e.detected_flexes,
                    e.detected_stresses
                );
            }
            let _ = writeln!(
                out,
                "verdict: {}",
                if sym.verdict.is_empty() { "balanced count".into() } else { sym.verdict.join(", ") }
            );
            let _ = writeln!(
                out,
                "block structure: {}; intertwining: {}",
                if sym.off_diagonal <= 1e-9 { "ok" } else { "BROKEN" },
                if sym.intertwining_residual <= 1e-12 { "ok" } else { "BROKEN" }
            );
            for c in &sym.caveats {
                let _ = writeln!(out, "caveat: {c}");
            }
        }

        if !self.finite_flex.is_empty() {
            let _ = writeln!(out, "\nfinite-flex tests");
            for e in &self.finite_flex {
                let _ = writeln!(
                    out,
                    "  {}: {} (subspace dim {} via {}, rank G {} max sampled {}, rank K {}, trivial {}{})",
                    e.irrep,
                    e.determination,
                    e.subspace_dim,
                    e.route,
                    e.graph_rank,
                    e.max_sample_rank,
                    e.complete_rank,
                    e.trivial_in_subspace,
                    if e.block_route_checked { ", block ranks agree" } else { "" }
                );
            }
        }

        if let Some(p) = &self.push {
            let _ = writeln!(out, "\nlinear push");
            let _ = writeln!(
                out,
                "  {}, dim B = {} after {} iterations (bound {}), base rank {}",
                p.determination, p.subspace_dim, p.iterations, p.bound, p.base_rank
            );
            for s in &p.trace {
                let residual = match s.residual {
                    Some(r) if r <= crate::finiteflex::CONTAINMENT_RESIDUAL => "nullspace inside B".to_string(),
                    Some(_) => "nullspace leaves B".to_string(),
                    None => "-".to_string(),
                };
                let _ = writeln!(
                    out,
                    "  iteration {}: rank {}, dim B {}, {}",
                    s.iteration, s.rank, s.subspace_dim, residual
                );
            }
            if let Some(n) = &p.note {
                let _ = writeln!(out, "  note: {n}");
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn prism_verdict() {
        let f = fixtures::prism();
        let r = analyze(&f, &PinningSpec::none(), AnalysisOptions::default()).unwrap();
        let sym = r.symmetry.as_ref().unwrap();
        assert_eq!(sym.verdict, vec!["+1 ρ_0 flex (fully-symmetric)".to_string()]);
        assert!(r.to_text().contains("χ(P'_E)"));
    }

    #[test]
    fn pinned_prism_verdict() {
        let (f, pin) = fixtures::prism_pinned();
        let r = analyze(&f, &pin, AnalysisOptions::default()).unwrap();
        assert_eq!(
            r.symmetry.unwrap().verdict,
            vec!["+1 ρ_0 flex (fully-symmetric)".to_string(), "1 ρ_1 stress".to_string()]
        );
    }
}
