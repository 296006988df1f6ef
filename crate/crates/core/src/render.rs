//! Deterministic SVG drawings of crease patterns and folded states.

use std::fmt::Write;

use serde::Deserialize;
use thiserror::Error;

use crate::cp::{Assignment, CreasePattern};
use crate::folder::FoldedState;

const SIZE: f64 = 400.0;
const MARGIN: f64 = 20.0;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("folded document: {0}")]
    Document(#[from] serde_json::Error),
    #[error("folded document refers to vertex {0}, which does not exist")]
    VertexIndex(usize),
}

/// Stroke colour, width and dash pattern per assignment.
fn style(a: Assignment) -> (&'static str, f64, Option<&'static str>) {
    match a {
        Assignment::B => ("#000000", 2.0, None),
        Assignment::M => ("#d62728", 1.5, Some("8 3 2 3")),
        Assignment::V => ("#1f77b4", 1.5, Some("6 4")),
        Assignment::F => ("#999999", 0.75, None),
        Assignment::U => ("#2ca02c", 1.0, Some("2 3")),
    }
}

/// Maps model coordinates into the drawing, y up.
struct Frame {
    min: [f64; 2],
    max_y: f64,
    scale: f64,
}

impl Frame {
    fn fit(points: impl Iterator<Item = [f64; 2]>, pad: f64) -> Frame {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in points {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        if !lo[0].is_finite() {
            lo = [0.0; 2];
            hi = [1.0; 2];
        }
        let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-12) + pad;
        Frame { min: lo, max_y: hi[1] + pad, scale: (SIZE - 2.0 * MARGIN) / extent }
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        (MARGIN + (p[0] - self.min[0]) * self.scale, MARGIN + (self.max_y - p[1]) * self.scale)
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = num(SIZE)
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
}

/// Crease pattern with edges styled by assignment.
pub fn render_cp(cp: &CreasePattern) -> String {
    let frame = Frame::fit(cp.vertices_coords.iter().copied(), 0.0);
    let mut out = String::new();
    header(&mut out);
    // Boundary last so it stays on top.
    let mut order: Vec<usize> = (0..cp.num_edges()).collect();
    order.sort_by_key(|&e| (cp.assignment(e) == Assignment::B, e));
    for e in order {
        let [a, b] = cp.edges_vertices[e];
        let a_ = cp.assignment(e);
        let (color, width, dash) = style(a_);
        let (x1, y1) = frame.map(cp.vertices_coords[a]);
        let (x2, y2) = frame.map(cp.vertices_coords[b]);
        let dash = dash.map(|d| format!(r#" stroke-dasharray="{d}""#)).unwrap_or_default();
        let _ = writeln!(
            out,
            r#"<line class="edge {}" data-edge="{e}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="{}"{dash}/>"#,
            a_.as_str(),
            num(x1),
            num(y1),
            num(x2),
            num(y2),
            num(width)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[derive(Debug, Deserialize)]
struct CellExport {
    #[allow(dead_code)]
    polygon: Vec<[f64; 2]>,
    faces: Vec<usize>,
}

#[derive(Debug, Deserialize)]
struct FoldedExport {
    #[serde(rename = "P")]
    p: Vec<[f64; 3]>,
    #[serde(rename = "SP")]
    sp: Vec<[usize; 3]>,
    #[serde(rename = "CF")]
    cf: Vec<CellExport>,
    faces_vertices: Vec<Vec<usize>>,
    #[serde(default)]
    face_layers: Vec<usize>,
}

/// Folded state: faces drawn bottom to top, each shifted by its depth so
/// stacked layers stay visible, then crease marks tagged with their source
/// edge.
pub fn render_folded(state: &FoldedState) -> String {
    render_export(&state.export()).expect("own export is well formed")
}

/// Same as [`render_folded`], from an export document.
pub fn render_export(doc: &serde_json::Value) -> Result<String, RenderError> {
    let ex = FoldedExport::deserialize(doc)?;
    let n = ex.p.len();
    for &v in ex.faces_vertices.iter().flatten().chain(ex.sp.iter().flat_map(|s| &s[..2])) {
        if v >= n {
            return Err(RenderError::VertexIndex(v));
        }
    }
    let depth: Vec<usize> = if ex.face_layers.len() == ex.faces_vertices.len() {
        ex.face_layers.clone()
    } else {
        let mut d = vec![0; ex.faces_vertices.len()];
        for cell in &ex.cf {
            for (i, &f) in cell.faces.iter().enumerate() {
                if f < d.len() {
                    d[f] = d[f].max(i);
                }
            }
        }
        d
    };
    let max_depth = depth.iter().copied().max().unwrap_or(0);
    let xy = |v: usize| [ex.p[v][0], ex.p[v][1]];
    let pad = 0.02 * max_depth as f64;
    let frame = Frame::fit((0..n).map(xy), pad);
    let shift = |d: usize| 0.02 * (max_depth - d) as f64;

    let mut out = String::new();
    header(&mut out);
    let mut order: Vec<usize> = (0..ex.faces_vertices.len()).collect();
    order.sort_by_key(|&f| (std::cmp::Reverse(depth[f]), f));
    for f in order {
        let s = shift(depth[f]);
        let pts: Vec<String> = ex.faces_vertices[f]
            .iter()
            .map(|&v| {
                let (x, y) = frame.map([ex.p[v][0] + s, ex.p[v][1] + s]);
                format!("{},{}", num(x), num(y))
            })
            .collect();
        let shade = 0.35 + 0.5 * (max_depth - depth[f]) as f64 / (max_depth.max(1)) as f64;
        let _ = writeln!(
            out,
            r##"<polygon class="face" data-face="{f}" data-layer="{}" points="{}" fill="#e8d5a9" fill-opacity="{}" stroke="#5a4a2a" stroke-width="0.750"/>"##,
            depth[f],
            pts.join(" "),
            num(shade)
        );
    }
    for &[i, j, e] in &ex.sp {
        let (x1, y1) = frame.map(xy(i));
        let (x2, y2) = frame.map(xy(j));
        let _ = writeln!(
            out,
            r##"<line class="crease" data-edge="{e}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#333333" stroke-width="0.500"/>"##,
            num(x1),
            num(y1),
            num(x2),
            num(y2)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
