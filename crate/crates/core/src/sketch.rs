//! SVG drawings of frameworks with optional velocity arrows.
//!
//! Planar frameworks are drawn as is. Spatial frameworks use the oblique
//! projection `(x + z/2 · cos 30°, y + z/2 · sin 30°)`.

use std::fmt::Write as _;

use nalgebra::{DVector, Vector2};

use crate::framework::{Framework, Placement};
use crate::graph::EdgeKind;

const CANVAS: f64 = 480.0;
const MARGIN: f64 = 40.0;

fn project(x: &DVector<f64>) -> Vector2<f64> {
    match x.len() {
        1 => Vector2::new(x[0], 0.0),
        2 => Vector2::new(x[0], x[1]),
        _ => {
            let (c, s) = (30f64.to_radians().cos(), 30f64.to_radians().sin());
            Vector2::new(x[0] + 0.5 * x[2] * c, x[1] + 0.5 * x[2] * s)
        }
    }
}

/// Maps world coordinates to the canvas with `y` pointing up.
struct Frame {
    min: Vector2<f64>,
    scale: f64,
}

impl Frame {
    fn new(points: &[Vector2<f64>]) -> Self {
        let mut min = Vector2::new(f64::INFINITY, f64::INFINITY);
        let mut max = Vector2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            min = min.inf(p);
            max = max.sup(p);
        }
        if points.is_empty() {
            min = Vector2::zeros();
            max = Vector2::new(1.0, 1.0);
        }
        let span = (max - min).max().max(1.0);
        // Leave room for hyperplane traces and arrows around the points.
        let pad = 0.25 * span;
        min -= Vector2::new(pad, pad);
        let scale = (CANVAS - 2.0 * MARGIN) / (span + 2.0 * pad);
        Frame { min, scale }
    }

    fn map(&self, p: &Vector2<f64>) -> (f64, f64) {
        let q = (p - self.min) * self.scale;
        (MARGIN + q.x, CANVAS - MARGIN - q.y)
    }

    fn world_extent(&self) -> f64 {
        (CANVAS - 2.0 * MARGIN) / self.scale
    }
}

fn vertex_position(f: &Framework, v: usize, anchor: &Vector2<f64>) -> Vector2<f64> {
    match f.placement(v) {
        Placement::Point(x) => project(x),
        Placement::Hyperplane { normal, offset } => {
            // Foot of the perpendicular from the drawing centre.
            if normal.len() == 2 {
                let a = Vector2::new(normal[0], normal[1]);
                anchor - a * ((a.dot(anchor) - offset) / a.norm_squared())
            } else {
                project(&(normal * (offset / normal.norm_squared())))
            }
        }
    }
}

/// Renders the framework. `velocity`, when given, is a full-layout vector
/// whose point components are drawn as arrows scaled so the longest one is
/// a fifth of the drawing.
pub fn render_svg(f: &Framework, velocity: Option<&DVector<f64>>) -> String {
    let g = f.graph();
    let points: Vec<Vector2<f64>> = g.point_indices().iter().map(|&v| project(f.point(v))).collect();
    let frame = Frame::new(&points);
    let centre = points.iter().fold(Vector2::zeros(), |a, p| a + p) / (points.len().max(1) as f64);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{CANVAS}\" height=\"{CANVAS}\" viewBox=\"0 0 {CANVAS} {CANVAS}\">"
    );
    let _ = writeln!(
        svg,
        "<defs><marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"3\" orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"#c0392b\"/></marker></defs>"
    );

    if f.dim() == 2 {
        let reach = frame.world_extent();
        for w in g.hyperplane_indices() {
            let a = f.normal(w);
            let dir = Vector2::new(-a[1], a[0]).normalize();
            let foot = vertex_position(f, w, &centre);
            let (x1, y1) = frame.map(&(foot - dir * reach));
            let (x2, y2) = frame.map(&(foot + dir * reach));
            let _ = writeln!(
                svg,
                "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"#7f8c8d\" stroke-dasharray=\"6 4\"/>"
            );
        }
    }

    for e in g.edges() {
        let (i, j) = e.ends;
        let (p, q) = (vertex_position(f, i, &centre), vertex_position(f, j, &centre));
        let (x1, y1) = frame.map(&p);
        let (x2, y2) = frame.map(&q);
        let style = match e.kind {
            EdgeKind::PointPoint => "stroke=\"#2c3e50\" stroke-width=\"2\"",
            EdgeKind::PointHyperplane => "stroke=\"#2980b9\" stroke-width=\"1.5\"",
            EdgeKind::Angle => "stroke=\"#8e44ad\" stroke-width=\"1\" stroke-dasharray=\"2 3\"",
            EdgeKind::Parallel => "stroke=\"#27ae60\" stroke-width=\"1\" stroke-dasharray=\"2 3\"",
        };
        let _ = writeln!(
            svg,
            "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" {style}/>"
        );
    }

    for (k, &v) in g.point_indices().iter().enumerate() {
        let (x, y) = frame.map(&points[k]);
        let _ = writeln!(svg, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"#2c3e50\"/>");
        let _ = writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" font-family=\"sans-serif\">{}</text>",
            x + 6.0,
            y - 6.0,
            g.vertex(v).label
        );
    }

    if let Some(vel) = velocity {
        let layout = f.layout();
        let d = f.dim();
        let arrows: Vec<(Vector2<f64>, Vector2<f64>)> = g
            .point_indices()
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                let o = layout.offset(v);
                let tip = project(&(f.point(v) + vel.rows(o, d)));
                (points[k], tip - points[k])
            })
            .collect();
        let longest = arrows.iter().map(|(_, a)| a.norm()).fold(0.0, f64::max);
        if longest > 0.0 {
            let factor = 0.2 * frame.world_extent() / longest;
            for (base, arrow) in &arrows {
                if arrow.norm() <= 1e-12 * longest {
                    continue;
                }
                let (x1, y1) = frame.map(base);
                let (x2, y2) = frame.map(&(base + arrow * factor));
                let _ = writeln!(
                    svg,
                    "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"#c0392b\" stroke-width=\"2\" marker-end=\"url(#head)\"/>"
                );
            }
        }
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn draws_every_edge_and_arrow() {
        let f = fixtures::prism();
        let mut v = DVector::zeros(f.layout().columns());
        v[f.layout().offset(1)] = 1.0;
        let svg = render_svg(&f, Some(&v));
        assert_eq!(svg.matches("<circle").count(), 6);
        assert_eq!(svg.matches("marker-end").count(), 1);
        assert!(svg.ends_with("</svg>\n"));
    }
}
