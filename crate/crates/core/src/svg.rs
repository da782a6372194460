//! SVG drawings of n-polygons.
//!
//! Vertex `k` sits at angle `2πk/n`, vertex 0 on the positive x-axis and angles
//! growing counterclockwise (SVG's y-axis points down, so y is negated). The
//! reflection `k ↦ j − k` fixes the line through angle `πj/n`; when it fixes the
//! figure, that line is drawn as an axis across the whole circle.
//!
//! Coordinates are rounded to three decimals so the output is byte-stable.

use std::f64::consts::PI;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::polygon::{chord_set, Symmetry, VertexCycle};

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Width and height of the square canvas, in pixels.
    pub size: f64,
    pub show_axes: bool,
    pub show_vertex_labels: bool,
    pub edge_color: String,
    pub edge_width: f64,
    pub axis_color: String,
    pub axis_width: f64,
    pub vertex_radius: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            size: 400.0,
            show_axes: false,
            show_vertex_labels: false,
            edge_color: "#1f3a93".to_owned(),
            edge_width: 1.5,
            axis_color: "#c0392b".to_owned(),
            axis_width: 0.75,
            vertex_radius: 3.0,
        }
    }
}

impl RenderOptions {
    pub fn new(size: f64) -> Result<Self> {
        if !(size.is_finite() && size > 0.0) {
            return Err(Error::InvalidCanvas);
        }
        Ok(RenderOptions {
            size,
            ..RenderOptions::default()
        })
    }

    pub fn with_axes(mut self, show: bool) -> Self {
        self.show_axes = show;
        self
    }

    pub fn with_labels(mut self, show: bool) -> Self {
        self.show_vertex_labels = show;
        self
    }
}

fn coord(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".to_owned()
    } else {
        s
    }
}

pub fn render_svg(c: &VertexCycle, opts: &RenderOptions) -> String {
    let n = c.n();
    let size = opts.size;
    let center = size / 2.0;
    // leave room for labels outside the circle
    let radius = size * if opts.show_vertex_labels { 0.40 } else { 0.45 };
    let point = |angle: f64, r: f64| (coord(center + r * angle.cos()), coord(center - r * angle.sin()));
    let vertex = |k: u32| point(2.0 * PI * f64::from(k) / f64::from(n), radius);

    let mut out = String::new();
    let dim = coord(size);
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{dim}" height="{dim}" viewBox="0 0 {dim} {dim}">"#
    )
    .unwrap();
    writeln!(out, "  <title>{n}-polygon {c}</title>").unwrap();
    writeln!(
        out,
        r##"  <circle class="rim" cx="{}" cy="{}" r="{}" fill="none" stroke="#bbbbbb" stroke-width="0.5"/>"##,
        coord(center),
        coord(center),
        coord(radius)
    )
    .unwrap();

    if opts.show_axes {
        let figure = chord_set(c);
        let adjacency: Vec<(u32, u32)> = figure.chords().to_vec();
        writeln!(out, r#"  <g class="axes" stroke="{}" stroke-width="{}" stroke-dasharray="4 3">"#, opts.axis_color, opts.axis_width)
            .unwrap();
        for j in 0..n {
            let g = Symmetry::Reflection(j);
            let fixed = adjacency
                .iter()
                .all(|&(p, q)| figure.contains(g.apply(n, p), g.apply(n, q)));
            if !fixed {
                continue;
            }
            let angle = PI * f64::from(j) / f64::from(n);
            let reach = radius * 1.08;
            let (x1, y1) = point(angle, reach);
            let (x2, y2) = point(angle + PI, reach);
            writeln!(out, r#"    <line class="axis" data-j="{j}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#).unwrap();
        }
        writeln!(out, "  </g>").unwrap();
    }

    writeln!(
        out,
        r#"  <g class="edges" stroke="{}" stroke-width="{}" stroke-linecap="round">"#,
        opts.edge_color, opts.edge_width
    )
    .unwrap();
    let order = c.order();
    for i in 0..order.len() {
        let (p, q) = (order[i], order[(i + 1) % order.len()]);
        let (x1, y1) = vertex(p);
        let (x2, y2) = vertex(q);
        writeln!(out, r#"    <line class="edge" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#).unwrap();
    }
    writeln!(out, "  </g>").unwrap();

    writeln!(out, r#"  <g class="vertices" fill="{}">"#, opts.edge_color).unwrap();
    for k in 0..n {
        let (x, y) = vertex(k);
        writeln!(out, r#"    <circle class="vertex" cx="{x}" cy="{y}" r="{}"/>"#, coord(opts.vertex_radius)).unwrap();
    }
    writeln!(out, "  </g>").unwrap();

    if opts.show_vertex_labels {
        let font = coord((size / 40.0).max(6.0));
        writeln!(
            out,
            r#"  <g class="labels" font-family="sans-serif" font-size="{font}" text-anchor="middle" dominant-baseline="middle">"#
        )
        .unwrap();
        for k in 0..n {
            let (x, y) = point(2.0 * PI * f64::from(k) / f64::from(n), radius * 1.15);
            writeln!(out, r#"    <text x="{x}" y="{y}">{k}</text>"#).unwrap();
        }
        writeln!(out, "  </g>").unwrap();
    }

    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{symmetry_profile, EdgeWord};

    fn count(doc: &roxmltree::Document, class: &str) -> usize {
        doc.descendants()
            .filter(|node| node.attribute("class") == Some(class))
            .count()
    }

    fn render(steps: &[u32], opts: &RenderOptions) -> String {
        let word = EdgeWord::new(steps.len() as u32, steps.to_vec()).unwrap();
        render_svg(&word.vertex_cycle(), opts)
    }

    #[test]
    fn square_with_axes() {
        let svg = render(&[1, 1, 1, 1], &RenderOptions::default().with_axes(true));
        let doc = roxmltree::Document::parse(&svg).unwrap();
        assert_eq!(doc.root_element().tag_name().name(), "svg");
        assert_eq!(count(&doc, "edge"), 4);
        assert_eq!(count(&doc, "axis"), 4);
        assert_eq!(count(&doc, "vertex"), 4);
    }

    #[test]
    fn thirty_gon_with_fifteen_axes() {
        let steps: Vec<u32> = [1, 3].into_iter().cycle().take(30).collect();
        let svg = render(&steps, &RenderOptions::default().with_axes(true).with_labels(true));
        let doc = roxmltree::Document::parse(&svg).unwrap();
        assert_eq!(count(&doc, "edge"), 30);
        assert_eq!(count(&doc, "axis"), 15);
        assert_eq!(doc.descendants().filter(|n| n.has_tag_name("text")).count(), 30);
    }

    #[test]
    fn axes_hidden() {
        let svg = render(&[1; 6], &RenderOptions::default());
        let doc = roxmltree::Document::parse(&svg).unwrap();
        assert_eq!(count(&doc, "axis"), 0);
        assert_eq!(count(&doc, "edge"), 6);
    }

    #[test]
    fn vertex_zero_is_on_the_right() {
        let svg = render(&[1; 4], &RenderOptions::new(100.0).unwrap());
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let first = doc.descendants().find(|n| n.attribute("class") == Some("vertex")).unwrap();
        assert_eq!(first.attribute("cx"), Some("95.000"));
        assert_eq!(first.attribute("cy"), Some("50.000"));
        // vertex 1 is a quarter turn counterclockwise, i.e. straight up
        let second = doc.descendants().filter(|n| n.attribute("class") == Some("vertex")).nth(1).unwrap();
        assert_eq!(second.attribute("cx"), Some("50.000"));
        assert_eq!(second.attribute("cy"), Some("5.000"));
    }

    #[test]
    fn axis_count_matches_profile() {
        for steps in [&[1, 2, 3, 2][..], &[1, 2, 1, 4, 3, 1], &[1, 3, 1, 3, 1, 3], &[1, 1, 2, 1, 4, 3]] {
            let word = EdgeWord::new(steps.len() as u32, steps.to_vec()).unwrap();
            let cycle = word.vertex_cycle();
            let svg = render_svg(&cycle, &RenderOptions::default().with_axes(true));
            let doc = roxmltree::Document::parse(&svg).unwrap();
            assert_eq!(count(&doc, "axis") as u32, symmetry_profile(&cycle.chord_set()).axes);
        }
    }

    #[test]
    fn deterministic() {
        let opts = RenderOptions::default().with_axes(true);
        assert_eq!(render(&[1, 3, 1, 3, 1, 3], &opts), render(&[1, 3, 1, 3, 1, 3], &opts));
    }

    #[test]
    fn canvas_must_be_positive() {
        assert!(RenderOptions::new(0.0).is_err());
        assert!(RenderOptions::new(-5.0).is_err());
        assert!(RenderOptions::new(f64::NAN).is_err());
    }
}
