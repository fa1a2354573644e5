//! Decorated point-hyperplane graphs and the extrusion product.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::group::GroupElement;

/// One letter of a vertex word. The derived order is `0 < 1 < ⋆`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Zero,
    One,
    Star,
}

impl Letter {
    pub fn to_char(self) -> char {
        match self {
            Letter::Zero => '0',
            Letter::One => '1',
            Letter::Star => '*',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            '0' => Some(Letter::Zero),
            '1' => Some(Letter::One),
            '*' | '⋆' => Some(Letter::Star),
            _ => None,
        }
    }

    fn flip(self, on: bool) -> Letter {
        match (self, on) {
            (Letter::Zero, true) => Letter::One,
            (Letter::One, true) => Letter::Zero,
            (l, _) => l,
        }
    }
}

/// A vertex of an extruded graph: the base vertex of `H` and a word over
/// `{0, 1, ⋆}` of length `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexLabel {
    pub base: String,
    pub word: Vec<Letter>,
}

impl VertexLabel {
    pub fn new(base: impl Into<String>, word: Vec<Letter>) -> Self {
        VertexLabel {
            base: base.into(),
            word,
        }
    }

    /// A label with the empty word, used for graphs without extrusion.
    pub fn plain(base: impl Into<String>) -> Self {
        VertexLabel::new(base, Vec::new())
    }

    pub fn parse_word(s: &str) -> Option<Vec<Letter>> {
        s.chars().map(Letter::from_char).collect()
    }

    pub fn word_string(&self) -> String {
        self.word.iter().map(|l| l.to_char()).collect()
    }

    /// The image under `γ`: flip every non-`⋆` letter where `γ` has a 1.
    pub fn act(&self, gamma: &GroupElement) -> VertexLabel {
        let word = self
            .word
            .iter()
            .enumerate()
            .map(|(h, l)| l.flip(gamma.bit(h)))
            .collect();
        VertexLabel {
            base: self.base.clone(),
            word,
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{}:{}", self.base, self.word_string())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Point,
    Hyperplane,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub label: VertexLabel,
    pub kind: VertexKind,
}

/// Edge kinds in rigidity-row order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    PointPoint,
    PointHyperplane,
    Angle,
    Parallel,
}

impl EdgeKind {
    pub fn tag(self) -> &'static str {
        match self {
            EdgeKind::PointPoint => "pp",
            EdgeKind::PointHyperplane => "ph",
            EdgeKind::Angle => "hh-angle",
            EdgeKind::Parallel => "hh-parallel",
        }
    }

    pub fn from_tag(s: &str) -> Option<EdgeKind> {
        match s {
            "pp" => Some(EdgeKind::PointPoint),
            "ph" => Some(EdgeKind::PointHyperplane),
            "hh-angle" => Some(EdgeKind::Angle),
            "hh-parallel" => Some(EdgeKind::Parallel),
            _ => None,
        }
    }
}

/// An edge. Point-hyperplane edges are stored as `(point, hyperplane)`; all
/// other edges as `(lower index, higher index)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub ends: (usize, usize),
    pub kind: EdgeKind,
}

/// How an edge behaves under a group element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedStatus {
    NotFixed,
    FixedPointwise,
    FixedSwapped,
}

/// A decorated graph `G = (V_P ∪ V_H, E)` together with its extrusion
/// bookkeeping (order `t` and fixed sets `F_1, ..., F_t` given as base ids).
#[derive(Debug, Clone)]
pub struct PhGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    order: usize,
    fixed_sets: Vec<BTreeSet<String>>,
    index: HashMap<VertexLabel, usize>,
    edge_index: HashMap<(usize, usize), usize>,
    class_of: Vec<Option<usize>>,
    class_count: usize,
}

impl PhGraph {
    /// Validates and builds a graph. Edges are reordered by kind, then by
    /// endpoints; vertex order is kept as given.
    pub fn new(
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize, EdgeKind)>,
        order: usize,
        fixed_sets: Vec<BTreeSet<String>>,
    ) -> Result<Self> {
        let fixed_sets = normalize_fixed_sets(order, fixed_sets)?;
        let mut index = HashMap::with_capacity(vertices.len());
        let mut base_kind: HashMap<&str, VertexKind> = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.label.word.len() != order {
                return Err(Error::BadWord {
                    base: v.label.base.clone(),
                    word: v.label.word_string(),
                });
            }
            if let Some(k) = base_kind.insert(&v.label.base, v.kind) {
                if k != v.kind {
                    return Err(Error::InvalidGraph(format!(
                        "base vertex `{}` is used for both points and hyperplanes",
                        v.label.base
                    )));
                }
            }
            for (h, l) in v.label.word.iter().enumerate() {
                let fixed = fixed_sets[h].contains(&v.label.base);
                if (*l == Letter::Star) != fixed {
                    return Err(Error::BadWord {
                        base: v.label.base.clone(),
                        word: v.label.word_string(),
                    });
                }
            }
            if index.insert(v.label.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{}`", v.label)));
            }
        }
        for (s, set) in fixed_sets.iter().enumerate() {
            for id in set {
                match base_kind.get(id.as_str()) {
                    Some(VertexKind::Point) => {
                        return Err(Error::FixedSetContainsPoint {
                            set: s,
                            vertex: id.clone(),
                        })
                    }
                    Some(VertexKind::Hyperplane) => {}
                    None => return Err(Error::UnknownVertex(id.clone())),
                }
            }
        }

        let mut normalized = Vec::with_capacity(edges.len());
        for (a, b, kind) in edges {
            if a >= vertices.len() || b >= vertices.len() {
                return Err(Error::InvalidGraph("edge endpoint out of range".into()));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!(
                    "loop at `{}`",
                    vertices[a].label
                )));
            }
            let (ka, kb) = (vertices[a].kind, vertices[b].kind);
            let ends = match kind {
                EdgeKind::PointPoint => {
                    if ka != VertexKind::Point || kb != VertexKind::Point {
                        return Err(kind_error(&vertices, a, b, kind));
                    }
                    (a.min(b), a.max(b))
                }
                EdgeKind::PointHyperplane => match (ka, kb) {
                    (VertexKind::Point, VertexKind::Hyperplane) => (a, b),
                    (VertexKind::Hyperplane, VertexKind::Point) => (b, a),
                    _ => return Err(kind_error(&vertices, a, b, kind)),
                },
                EdgeKind::Angle | EdgeKind::Parallel => {
                    if ka != VertexKind::Hyperplane || kb != VertexKind::Hyperplane {
                        return Err(kind_error(&vertices, a, b, kind));
                    }
                    (a.min(b), a.max(b))
                }
            };
            normalized.push(Edge { ends, kind });
        }
        normalized.sort_by(|x, y| x.kind.cmp(&y.kind).then(x.ends.cmp(&y.ends)));
        let mut edge_index = HashMap::with_capacity(normalized.len());
        for (i, e) in normalized.iter().enumerate() {
            let key = (e.ends.0.min(e.ends.1), e.ends.0.max(e.ends.1));
            if edge_index.insert(key, i).is_some() {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge between `{}` and `{}`",
                    vertices[e.ends.0].label, vertices[e.ends.1].label
                )));
            }
        }

        let (class_of, class_count) = parallel_classes(&vertices, &normalized);
        for e in normalized.iter().filter(|e| e.kind == EdgeKind::Angle) {
            if class_of[e.ends.0] == class_of[e.ends.1] {
                return Err(Error::InvalidGraph(format!(
                    "angle edge joins parallel hyperplanes `{}` and `{}`",
                    vertices[e.ends.0].label, vertices[e.ends.1].label
                )));
            }
        }

        Ok(PhGraph {
            vertices,
            edges: normalized,
            order,
            fixed_sets,
            index,
            edge_index,
            class_of,
            class_count,
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn fixed_sets(&self) -> &[BTreeSet<String>] {
        &self.fixed_sets
    }

    pub fn find(&self, label: &VertexLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Looks a vertex up by its display id (`base` or `base:word`).
    pub fn find_id(&self, id: &str) -> Option<usize> {
        let (base, word) = match id.rsplit_once(':') {
            Some((b, w)) if self.order > 0 => (b, VertexLabel::parse_word(w)?),
            _ => (id, Vec::new()),
        };
        self.find(&VertexLabel::new(base, word))
    }

    pub fn find_edge(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn point_indices(&self) -> Vec<usize> {
        self.indices_of(VertexKind::Point)
    }

    pub fn hyperplane_indices(&self) -> Vec<usize> {
        self.indices_of(VertexKind::Hyperplane)
    }

    fn indices_of(&self, kind: VertexKind) -> Vec<usize> {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| v.kind == kind)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_bar_joint(&self) -> bool {
        self.vertices.iter().all(|v| v.kind == VertexKind::Point)
    }

    pub fn edge_count(&self, kind: EdgeKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    /// Parallel class of a hyperplane vertex (connected component of the
    /// parallel edges); `None` for points.
    pub fn parallel_class(&self, v: usize) -> Option<usize> {
        self.class_of[v]
    }

    pub fn parallel_class_count(&self) -> usize {
        self.class_count
    }

    pub fn class_members(&self, class: usize) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&i| self.class_of[i] == Some(class))
            .collect()
    }

    /// Whether the base vertex of `v` belongs to `F_h`.
    pub fn in_fixed_set(&self, v: usize, h: usize) -> bool {
        self.fixed_sets[h].contains(&self.vertices[v].label.base)
    }

    /// If both ends of `e` share a base vertex and their words differ in
    /// exactly one position, that position.
    pub fn extrusion_axis(&self, e: &Edge) -> Option<usize> {
        let (a, b) = (&self.vertices[e.ends.0].label, &self.vertices[e.ends.1].label);
        if a.base != b.base {
            return None;
        }
        let mut diff = a
            .word
            .iter()
            .zip(&b.word)
            .enumerate()
            .filter(|(_, (x, y))| x != y)
            .map(|(h, _)| h);
        match (diff.next(), diff.next()) {
            (Some(h), None) => Some(h),
            _ => None,
        }
    }

    /// Whether `v` has at least one point-hyperplane edge.
    pub fn has_incidence(&self, v: usize) -> bool {
        self.edges
            .iter()
            .any(|e| e.kind == EdgeKind::PointHyperplane && (e.ends.0 == v || e.ends.1 == v))
    }
}

fn kind_error(vertices: &[Vertex], a: usize, b: usize, kind: EdgeKind) -> Error {
    Error::InvalidGraph(format!(
        "edge `{}`-`{}` cannot have kind {}",
        vertices[a].label,
        vertices[b].label,
        kind.tag()
    ))
}

fn normalize_fixed_sets(
    order: usize,
    fixed_sets: Vec<BTreeSet<String>>,
) -> Result<Vec<BTreeSet<String>>> {
    if fixed_sets.is_empty() {
        return Ok(vec![BTreeSet::new(); order]);
    }
    if fixed_sets.len() != order {
        return Err(Error::FixedSetCount {
            order,
            given: fixed_sets.len(),
        });
    }
    Ok(fixed_sets)
}

fn parallel_classes(vertices: &[Vertex], edges: &[Edge]) -> (Vec<Option<usize>>, usize) {
    let n = vertices.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in edges.iter().filter(|e| e.kind == EdgeKind::Parallel) {
        let (ra, rb) = (root(&mut parent, e.ends.0), root(&mut parent, e.ends.1));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut class_of = vec![None; n];
    let mut ids: HashMap<usize, usize> = HashMap::new();
    for i in 0..n {
        if vertices[i].kind == VertexKind::Hyperplane {
            let r = root(&mut parent, i);
            let next = ids.len();
            class_of[i] = Some(*ids.entry(r).or_insert(next));
        }
    }
    (class_of, ids.len())
}

fn compare_labels(base_rank: &HashMap<String, usize>, a: &VertexLabel, b: &VertexLabel) -> Ordering {
    base_rank[&a.base]
        .cmp(&base_rank[&b.base])
        .then_with(|| a.word.cmp(&b.word))
}

/// Builds `H □_{F_1..F_t} K_2^{□t}`.
///
/// `base` must have order 0. `fixed_sets` either has length `t` or is empty
/// (all fixed sets empty).
pub fn extrusion_product(
    base: &PhGraph,
    order: usize,
    fixed_sets: &[BTreeSet<String>],
) -> Result<PhGraph> {
    if base.order() != 0 {
        return Err(Error::InvalidGraph(
            "the base graph of an extrusion must have order 0".into(),
        ));
    }
    if order == 0 && !fixed_sets.is_empty() {
        return Err(Error::FixedSetCount {
            order,
            given: fixed_sets.len(),
        });
    }
    let fixed_sets = normalize_fixed_sets(order, fixed_sets.to_vec())?;
    for (s, set) in fixed_sets.iter().enumerate() {
        for id in set {
            let v = base
                .find(&VertexLabel::plain(id.clone()))
                .ok_or_else(|| Error::UnknownVertex(id.clone()))?;
            if base.vertex(v).kind == VertexKind::Point {
                return Err(Error::FixedSetContainsPoint {
                    set: s,
                    vertex: id.clone(),
                });
            }
        }
    }
    if order > 20 {
        return Err(Error::InvalidGraph(format!("extrusion order {order} is too large")));
    }

    let base_rank: HashMap<String, usize> = base
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.label.base.clone(), i))
        .collect();
    let starred = |v: usize, h: usize| fixed_sets[h].contains(&base.vertex(v).label.base);

    // Word of base vertex `v` seen from the full 0/1 word `bits`.
    let contract = |v: usize, bits: u32| -> Vec<Letter> {
        (0..order)
            .map(|h| {
                if starred(v, h) {
                    Letter::Star
                } else if (bits >> h) & 1 == 1 {
                    Letter::One
                } else {
                    Letter::Zero
                }
            })
            .collect()
    };

    let mut labels: Vec<(VertexLabel, VertexKind)> = Vec::new();
    let mut seen = BTreeSet::new();
    for (v, vert) in base.vertices().iter().enumerate() {
        for bits in 0..1u32 << order {
            let word = contract(v, bits);
            if seen.insert((v, word.clone())) {
                labels.push((VertexLabel::new(vert.label.base.clone(), word), vert.kind));
            }
        }
    }
    labels.sort_by(|a, b| compare_labels(&base_rank, &a.0, &b.0));
    let vertices: Vec<Vertex> = labels
        .into_iter()
        .map(|(label, kind)| Vertex { label, kind })
        .collect();
    let lookup: HashMap<VertexLabel, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.label.clone(), i))
        .collect();
    let id_of = |v: usize, bits: u32| -> usize {
        lookup[&VertexLabel::new(base.vertex(v).label.base.clone(), contract(v, bits))]
    };

    let mut edge_set = BTreeSet::new();
    let mut edges = Vec::new();
    let mut push = |a: usize, b: usize, kind: EdgeKind, edges: &mut Vec<(usize, usize, EdgeKind)>| {
        if edge_set.insert((a.min(b), a.max(b))) {
            edges.push((a, b, kind));
        }
    };
    for e in base.edges() {
        for bits in 0..1u32 << order {
            push(id_of(e.ends.0, bits), id_of(e.ends.1, bits), e.kind, &mut edges);
        }
    }
    for (v, vert) in base.vertices().iter().enumerate() {
        let kind = match vert.kind {
            VertexKind::Point => EdgeKind::PointPoint,
            VertexKind::Hyperplane => EdgeKind::Parallel,
        };
        for h in (0..order).filter(|&h| !starred(v, h)) {
            for bits in (0..1u32 << order).filter(|b| (b >> h) & 1 == 0) {
                push(id_of(v, bits), id_of(v, bits | (1 << h)), kind, &mut edges);
            }
        }
    }
    PhGraph::new(vertices, edges, order, fixed_sets)
}

/// Image of vertex `v` under `γ`.
pub fn extrusion_action(graph: &PhGraph, gamma: &GroupElement, v: usize) -> Result<usize> {
    if gamma.order() != graph.order() {
        return Err(Error::Dimension(format!(
            "group element of order {} acting on a graph of order {}",
            gamma.order(),
            graph.order()
        )));
    }
    let vert = graph
        .vertices()
        .get(v)
        .ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
    let image = vert.label.act(gamma);
    graph
        .find(&image)
        .ok_or_else(|| Error::InvalidGraph(format!("image `{image}` of `{}` is missing", vert.label)))
}

/// Image of edge `e` under `γ`, checking that the kind is preserved.
pub fn edge_image(graph: &PhGraph, gamma: &GroupElement, e: usize) -> Result<usize> {
    let edge = graph.edges()[e];
    let a = extrusion_action(graph, gamma, edge.ends.0)?;
    let b = extrusion_action(graph, gamma, edge.ends.1)?;
    match graph.find_edge(a, b) {
        Some(f) if graph.edges()[f].kind == edge.kind => Ok(f),
        _ => Err(Error::InvalidGraph(format!(
            "edge `{}`-`{}` has no image under {gamma}",
            graph.vertex(edge.ends.0).label,
            graph.vertex(edge.ends.1).label
        ))),
    }
}

/// Classifies edge `e` under `γ`.
pub fn edge_fixed_flip(graph: &PhGraph, gamma: &GroupElement, e: usize) -> Result<FixedStatus> {
    let edge = graph.edges()[e];
    let (a, b) = edge.ends;
    let (ga, gb) = (
        extrusion_action(graph, gamma, a)?,
        extrusion_action(graph, gamma, b)?,
    );
    Ok(if ga == a && gb == b {
        FixedStatus::FixedPointwise
    } else if ga == b && gb == a {
        FixedStatus::FixedSwapped
    } else {
        FixedStatus::NotFixed
    })
}
