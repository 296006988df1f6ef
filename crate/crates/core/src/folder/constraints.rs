//! Overlap constraints on the layer order of a folded state.
//!
//! A *taco* is a pair of faces joined by a mountain or valley crease; after
//! folding both lie on the same side of the crease image. A *tortilla* is a
//! face that is not folded at the place in question.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::FoldGeometry;
use crate::cp::Assignment;
use crate::geometry::{centroid, collinear_overlap, segment_interior_length, Vec2, EPS};

/// Quantum used for canonical footprints.
pub const FOOTPRINT_QUANTUM: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConstraintKind {
    TacoTaco,
    TacoTortilla,
    Transitivity,
}

impl ConstraintKind {
    pub const ALL: [ConstraintKind; 3] =
        [ConstraintKind::TacoTaco, ConstraintKind::TacoTortilla, ConstraintKind::Transitivity];

    pub fn short(self) -> &'static str {
        match self {
            ConstraintKind::TacoTaco => "TT",
            ConstraintKind::TacoTortilla => "TTo",
            ConstraintKind::Transitivity => "Trans",
        }
    }
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

/// Quantized centre and extent of the region a constraint lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Footprint {
    pub centroid: [i64; 2],
    pub extent: [i64; 2],
}

pub fn quantize(x: f64) -> i64 {
    (x / FOOTPRINT_QUANTUM).round() as i64
}

pub fn quantize_point(p: Vec2) -> [i64; 2] {
    [quantize(p.x), quantize(p.y)]
}

impl Footprint {
    pub fn from_bounds(lo: Vec2, hi: Vec2) -> Self {
        Footprint {
            centroid: [quantize(0.5 * (lo.x + hi.x)), quantize(0.5 * (lo.y + hi.y))],
            extent: [quantize(hi.x - lo.x), quantize(hi.y - lo.y)],
        }
    }

    fn of_segment(a: Vec2, b: Vec2) -> Self {
        Self::from_bounds(Vec2::new(a.x.min(b.x), a.y.min(b.y)), Vec2::new(a.x.max(b.x), a.y.max(b.y)))
    }
}

/// One overlap constraint.
///
/// Face order is canonical and carries the roles:
/// * `TacoTaco`: `[a, b, c, d]`, tacos `(a, b)` and `(c, d)`, each pair
///   ascending and the first pair smaller. Either both of `c`, `d` lie
///   between `a` and `b` in the stack or neither does.
/// * `TacoTortilla`: `[a, b, c]`, taco `(a, b)` ascending and tortilla `c`,
///   which may not lie between `a` and `b`.
/// * `Transitivity`: ascending triple; the three pairwise orders may not
///   form a cycle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OverlapConstraint {
    pub kind: ConstraintKind,
    pub faces: Vec<usize>,
    pub edges: Vec<usize>,
    pub footprint: Footprint,
}

/// Forced relation across a folded crease: `upper` lies above `lower`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ForcedPair {
    pub upper: usize,
    pub lower: usize,
    pub edge: usize,
}

/// Order forced by each mountain/valley crease. Looking from above, a
/// valley puts the face across the crease on top of a face that keeps its
/// orientation; a mountain puts it underneath; a flipped face swaps both.
pub fn forced_pairs(geom: &FoldGeometry) -> Vec<ForcedPair> {
    let cp = &geom.cp;
    let mut out = Vec::new();
    for (e, uses) in geom.topology.edge_faces.iter().enumerate() {
        let a = cp.assignment(e);
        if !a.is_fold() || uses.len() != 2 {
            continue;
        }
        let (f, g) = (uses[0].0, uses[1].0);
        let g_above = (a == Assignment::V) ^ (geom.parity[f] < 0);
        let (upper, lower) = if g_above { (g, f) } else { (f, g) };
        out.push(ForcedPair { upper, lower, edge: e });
    }
    out
}

struct Crease {
    edge: usize,
    faces: [usize; 2],
    a: Vec2,
    b: Vec2,
}

fn creases(geom: &FoldGeometry, pred: impl Fn(Assignment) -> bool) -> Vec<Crease> {
    let cp = &geom.cp;
    geom.topology
        .edge_faces
        .iter()
        .enumerate()
        .filter(|(e, uses)| uses.len() == 2 && pred(cp.assignment(*e)))
        .map(|(e, uses)| {
            let [u, v] = cp.edges_vertices[e];
            let (f, g) = (uses[0].0, uses[1].0);
            Crease { edge: e, faces: [f.min(g), f.max(g)], a: geom.vertices[u], b: geom.vertices[v] }
        })
        .collect()
}

/// Which side of the directed line `a → b` the folded face lies on.
fn side(geom: &FoldGeometry, face: usize, a: Vec2, b: Vec2) -> i8 {
    let c = geom.face_centroids[face];
    let s = (b - a).cross(c - a);
    if s > EPS {
        1
    } else if s < -EPS {
        -1
    } else {
        0
    }
}

/// Taco-taco, taco-tortilla and transitivity constraints, sorted and
/// deduplicated by kind and faces.
pub fn extract_constraints(geom: &FoldGeometry) -> Vec<OverlapConstraint> {
    let folds = creases(geom, Assignment::is_fold);
    let flats = creases(geom, |a| matches!(a, Assignment::F | Assignment::U));
    let mut out: BTreeMap<(ConstraintKind, Vec<usize>), OverlapConstraint> = BTreeMap::new();
    let mut push = |c: OverlapConstraint| {
        out.entry((c.kind, c.faces.clone())).or_insert(c);
    };

    for (i, p) in folds.iter().enumerate() {
        for q in &folds[i + 1..] {
            let faces: BTreeSet<usize> = p.faces.iter().chain(&q.faces).copied().collect();
            if faces.len() != 4 {
                continue;
            }
            let Some((s0, s1)) = collinear_overlap(p.a, p.b, q.a, q.b) else {
                continue;
            };
            let sp = side(geom, p.faces[0], p.a, p.b);
            let sq = side(geom, q.faces[0], p.a, p.b);
            if sp == 0 || sp != sq {
                continue;
            }
            let (x, y) = if p.faces < q.faces { (p, q) } else { (q, p) };
            let mut edges = vec![x.edge, y.edge];
            edges.sort_unstable();
            push(OverlapConstraint {
                kind: ConstraintKind::TacoTaco,
                faces: vec![x.faces[0], x.faces[1], y.faces[0], y.faces[1]],
                edges,
                footprint: Footprint::of_segment(s0, s1),
            });
        }
    }

    for p in &folds {
        let taco_side = side(geom, p.faces[0], p.a, p.b);
        let mut tortillas: Vec<(usize, Vec<usize>)> = Vec::new();
        for (c, poly) in geom.face_polygons.iter().enumerate() {
            if !p.faces.contains(&c) && segment_interior_length(p.a, p.b, poly) > EPS {
                tortillas.push((c, vec![p.edge]));
            }
        }
        // A crease lying along an unfolded edge: the face on the taco's side
        // is a tortilla for it.
        for q in &flats {
            if collinear_overlap(p.a, p.b, q.a, q.b).is_none() {
                continue;
            }
            for &c in &q.faces {
                if !p.faces.contains(&c) && taco_side != 0 && side(geom, c, p.a, p.b) == taco_side {
                    let mut edges = vec![p.edge, q.edge];
                    edges.sort_unstable();
                    tortillas.push((c, edges));
                }
            }
        }
        for (c, edges) in tortillas {
            push(OverlapConstraint {
                kind: ConstraintKind::TacoTortilla,
                faces: vec![p.faces[0], p.faces[1], c],
                edges,
                footprint: Footprint::of_segment(p.a, p.b),
            });
        }
    }

    // Transitivity: footprint is the bounding box of every cell holding the
    // triple.
    let mut triples: BTreeMap<[usize; 3], (Vec2, Vec2)> = BTreeMap::new();
    for cell in &geom.cells {
        let (lo, hi) = bounds(&cell.polygon);
        let f = &cell.faces;
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                for k in j + 1..f.len() {
                    triples
                        .entry([f[i], f[j], f[k]])
                        .and_modify(|(l, h)| {
                            *l = Vec2::new(l.x.min(lo.x), l.y.min(lo.y));
                            *h = Vec2::new(h.x.max(hi.x), h.y.max(hi.y));
                        })
                        .or_insert((lo, hi));
                }
            }
        }
    }
    for (t, (lo, hi)) in triples {
        push(OverlapConstraint {
            kind: ConstraintKind::Transitivity,
            faces: t.to_vec(),
            edges: Vec::new(),
            footprint: Footprint::from_bounds(lo, hi),
        });
    }

    out.into_values().collect()
}

pub(crate) fn bounds(poly: &[Vec2]) -> (Vec2, Vec2) {
    let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in poly {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (lo, hi)
}

/// Source-sheet centroid of every face, used to match faces across
/// differently indexed patterns.
pub fn source_centroids(geom: &FoldGeometry) -> Vec<Vec2> {
    (0..geom.cp.num_faces()).map(|f| centroid(&geom.cp.face_polygon(f))).collect()
}
