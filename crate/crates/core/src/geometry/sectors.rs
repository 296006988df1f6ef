use std::f64::consts::TAU;

use super::EPS;
use crate::cp::{Assignment, CreasePattern};
use crate::diagnostics::{Code, Diagnostic};

/// Sector angles around one vertex.
///
/// `edges` are the incident edge ids sorted counterclockwise by bearing.
/// For an interior vertex `angles[i]` is the sector from `edges[i]` to
/// `edges[(i + 1) % n]`. For a boundary vertex only the sectors covered by
/// the sheet are listed: `angles[i]` runs from `edges[i]` to `edges[i + 1]`
/// and `edges` has one more entry than `angles`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorAngles {
    pub vertex: usize,
    pub angles: Vec<f64>,
    pub edges: Vec<usize>,
    pub interior: bool,
}

impl SectorAngles {
    pub fn sum(&self) -> f64 {
        self.angles.iter().sum()
    }

    /// Sectors between consecutive creases that take part in the fold
    /// (M, V, U); flat edges are treated as absent. Interior vertices only.
    pub fn crease_sectors(&self, cp: &CreasePattern) -> (Vec<f64>, Vec<usize>) {
        let n = self.edges.len();
        let keep: Vec<usize> = (0..n).filter(|&i| cp.assignment(self.edges[i]) != Assignment::F).collect();
        if keep.is_empty() {
            return (Vec::new(), Vec::new());
        }
        let mut angles = Vec::with_capacity(keep.len());
        for (k, &i) in keep.iter().enumerate() {
            let j = keep[(k + 1) % keep.len()];
            let span = if j > i { i..j } else { i..j + n };
            angles.push(span.map(|s| self.angles[s % n]).sum());
        }
        (angles, keep.iter().map(|&i| self.edges[i]).collect())
    }
}

fn placement_error(v: usize, msg: String) -> Diagnostic {
    Diagnostic::error(Code::GeomCreasePlacementInvalid, msg).with("vertex", v).with("faulty_vertex_ids_or_point_coordinates", vec![v])
}

/// Counterclockwise sector angles at vertex `v`.
pub fn sector_angles(cp: &CreasePattern, v: usize) -> Result<SectorAngles, Diagnostic> {
    let origin = cp.vertex(v);
    let mut incident: Vec<(f64, usize, usize)> = Vec::new();
    for (e, &[a, b]) in cp.edges_vertices.iter().enumerate() {
        let other = if a == v {
            b
        } else if b == v {
            a
        } else {
            continue;
        };
        let d = cp.vertex(other) - origin;
        if d.norm() <= EPS {
            return Err(placement_error(v, format!("Edge {e} at vertex {v} has zero length."))
                .with("faulty_crease_ids", vec![e]));
        }
        incident.push((d.bearing(), e, other));
    }
    if incident.len() < 2 {
        return Err(placement_error(
            v,
            format!("Vertex {v} has {} incident edge(s); at least 2 are needed to form sectors.", incident.len()),
        ));
    }
    incident.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    let n = incident.len();
    let gaps: Vec<f64> = (0..n)
        .map(|i| {
            let next = if i + 1 == n { incident[0].0 + TAU } else { incident[i + 1].0 };
            next - incident[i].0
        })
        .collect();

    // A face corner (.., p, v, q, ..) covers the sector starting at edge v→q.
    let mut covered = vec![false; n];
    for face in &cp.faces_vertices {
        let m = face.len();
        for (k, &w) in face.iter().enumerate() {
            if w == v {
                let q = face[(k + 1) % m];
                if let Some(i) = incident.iter().position(|&(_, _, o)| o == q) {
                    covered[i] = true;
                }
            }
        }
    }
    let edges: Vec<usize> = incident.iter().map(|t| t.1).collect();

    if covered.iter().all(|&c| c) {
        return Ok(SectorAngles { vertex: v, angles: gaps, edges, interior: true });
    }
    // Boundary vertex: start right after the first uncovered gap.
    let gap = covered.iter().position(|&c| !c).unwrap_or(0);
    let mut angles = Vec::new();
    let mut ordered = vec![edges[(gap + 1) % n]];
    for k in 1..n {
        let i = (gap + k) % n;
        if !covered[i] {
            break;
        }
        angles.push(gaps[i]);
        ordered.push(edges[(i + 1) % n]);
    }
    Ok(SectorAngles { vertex: v, angles, edges: ordered, interior: false })
}
