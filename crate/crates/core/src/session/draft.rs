//! Editing a draft crease pattern as a planar subdivision.
//!
//! Every structural edit turns the draft back into assigned segments,
//! applies the change and rebuilds vertices, edges and faces from the
//! segment arrangement. Collinear chains of one assignment meeting at a
//! vertex of degree two are fused.

use crate::cp::{Assignment, CreasePattern};
use crate::diagnostics::{Code, Diagnostic};
use crate::geometry::{point_in_polygon, point_segment_distance, segment_intersection, Arrangement, PointLocation, Vec2, EPS};

type Segment = (Vec2, Vec2, Assignment);

fn segments(cp: &CreasePattern) -> Vec<Segment> {
    cp.edges_vertices
        .iter()
        .enumerate()
        .map(|(e, &[a, b])| (cp.vertex(a), cp.vertex(b), cp.assignment(e)))
        .collect()
}

/// The reference sheet with every crease removed.
pub fn bare_sheet(reference: &CreasePattern) -> CreasePattern {
    let topo = reference.topology();
    let outline: Vec<Segment> = segments(reference)
        .into_iter()
        .enumerate()
        .filter(|&(e, _)| topo.boundary_edge[e])
        .map(|(_, (a, b, _))| (a, b, Assignment::B))
        .collect();
    rebuild(outline)
}

fn arrange(segs: &[Segment]) -> (Arrangement, Vec<Assignment>) {
    let plain: Vec<(Vec2, Vec2)> = segs.iter().map(|s| (s.0, s.1)).collect();
    let arr = Arrangement::build(&plain);
    let assignments = arr
        .edges
        .iter()
        .map(|e| {
            if e.sources.iter().any(|&s| segs[s].2 == Assignment::B) {
                Assignment::B
            } else {
                segs[*e.sources.last().expect("edge has a source")].2
            }
        })
        .collect();
    (arr, assignments)
}

/// Fuse collinear same-assignment edges meeting at degree-two vertices.
fn fuse(points: &[Vec2], edges: &mut [Option<(usize, usize, Assignment)>]) {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); points.len()];
    for (i, e) in edges.iter().enumerate() {
        let (a, b, _) = e.expect("all edges alive");
        incident[a].push(i);
        incident[b].push(i);
    }
    for p in 0..points.len() {
        let [i, j] = incident[p][..] else {
            continue;
        };
        let (Some(ei), Some(ej)) = (edges[i], edges[j]) else {
            continue;
        };
        if ei.2 != ej.2 {
            continue;
        }
        let qi = if ei.0 == p { ei.1 } else { ei.0 };
        let qj = if ej.0 == p { ej.1 } else { ej.0 };
        let (u, w) = (points[qi] - points[p], points[qj] - points[p]);
        if u.cross(w).abs() > EPS * u.norm() * w.norm() || u.dot(w) >= 0.0 {
            continue;
        }
        edges[i] = Some((qi, qj, ei.2));
        edges[j] = None;
        incident[p].clear();
        for q in [qi, qj] {
            incident[q].retain(|&k| k != j);
        }
        incident[qj].push(i);
    }
}

fn rebuild(segs: Vec<Segment>) -> CreasePattern {
    let (arr, assignments) = arrange(&segs);
    let mut edges: Vec<Option<(usize, usize, Assignment)>> =
        arr.edges.iter().zip(&assignments).map(|(e, &a)| Some((e.a, e.b, a))).collect();
    fuse(&arr.points, &mut edges);
    let fused: Vec<Segment> = edges.into_iter().flatten().map(|(a, b, s)| (arr.points[a], arr.points[b], s)).collect();
    let (arr, assignments) = arrange(&fused);

    let mut used = vec![false; arr.points.len()];
    for e in &arr.edges {
        used[e.a] = true;
        used[e.b] = true;
    }
    let mut remap = vec![usize::MAX; arr.points.len()];
    let mut vertices_coords = Vec::new();
    for (i, p) in arr.points.iter().enumerate() {
        if used[i] {
            remap[i] = vertices_coords.len();
            vertices_coords.push([p.x, p.y]);
        }
    }
    CreasePattern {
        vertices_coords,
        edges_vertices: arr.edges.iter().map(|e| [remap[e.a], remap[e.b]]).collect(),
        edges_assignment: assignments,
        faces_vertices: arr.faces.iter().map(|f| f.iter().map(|&v| remap[v]).collect()).collect(),
        extra: Default::default(),
    }
}

fn placement(message: impl Into<String>) -> Diagnostic {
    Diagnostic::error(Code::GeomCreasePlacementInvalid, message)
}

fn check_crease_assignment(a: Assignment) -> Result<(), Diagnostic> {
    if a == Assignment::B {
        return Err(Diagnostic::error(Code::CpSyntaxInvalidParamType, "A crease cannot be assigned B.")
            .with("value", "B")
            .with("expected", "one of M, V, F, U"));
    }
    Ok(())
}

fn check_edge(cp: &CreasePattern, e: usize) -> Result<(), Diagnostic> {
    if e >= cp.num_edges() {
        return Err(Diagnostic::error(
            Code::CpSyntaxInvalidLineReference,
            format!("Edge {e} does not exist; the draft has {} edges.", cp.num_edges()),
        )
        .with("faulty_crease_ids", vec![e]));
    }
    if cp.topology().boundary_edge[e] {
        return Err(placement(format!("Edge {e} is part of the sheet boundary.")).with("faulty_crease_ids", vec![e]));
    }
    Ok(())
}

/// Parts of segment `a`-`b` inside the sheet, excluding pieces that run
/// along its boundary.
fn clip_to_sheet(cp: &CreasePattern, a: Vec2, b: Vec2) -> Vec<(Vec2, Vec2)> {
    let topo = cp.topology();
    let outline: Vec<(Vec2, Vec2)> = (0..cp.num_edges())
        .filter(|&e| topo.boundary_edge[e])
        .map(|e| {
            let [u, v] = cp.edges_vertices[e];
            (cp.vertex(u), cp.vertex(v))
        })
        .collect();
    let faces: Vec<Vec<Vec2>> = (0..cp.num_faces()).map(|f| cp.face_polygon(f)).collect();
    let len = a.dist(b);
    let mut ts = vec![0.0, 1.0];
    for &(u, v) in &outline {
        if let Some(x) = segment_intersection(a, b, u, v) {
            ts.push(x.dist(a) / len);
        }
        for p in [u, v] {
            let (d, t) = point_segment_distance(p, a, b);
            if d <= EPS {
                ts.push(t);
            }
        }
    }
    ts.sort_by(f64::total_cmp);
    ts.dedup_by(|x, y| (*x - *y).abs() * len <= EPS);
    let on_outline = |p: Vec2| outline.iter().any(|&(u, v)| point_segment_distance(p, u, v).0 <= EPS);
    let inside = |p: Vec2| faces.iter().any(|f| point_in_polygon(p, f) != PointLocation::Outside);
    ts.windows(2)
        .map(|w| (a.lerp(b, w[0]), a.lerp(b, w[1])))
        .filter(|&(p, q)| {
            let mid = p.lerp(q, 0.5);
            !on_outline(mid) && inside(mid)
        })
        .collect()
}

pub fn add_crease(cp: &CreasePattern, a: Vec2, b: Vec2, assignment: Assignment) -> Result<CreasePattern, Diagnostic> {
    check_crease_assignment(assignment)?;
    if !a.is_finite() || !b.is_finite() {
        return Err(Diagnostic::error(Code::CpSyntaxValueOutOfRange, "Crease endpoints must be finite numbers.")
            .with("faulty_vertex_ids_or_point_coordinates", vec![[a.x, a.y], [b.x, b.y]]));
    }
    let region = vec![[a.x, a.y], [b.x, b.y]];
    if a.dist(b) <= EPS {
        return Err(placement("The crease has zero length.").with("problematic_coordinates_or_regions", region));
    }
    let pieces = clip_to_sheet(cp, a, b);
    if pieces.is_empty() {
        return Err(placement("The crease does not cross the interior of the sheet.")
            .with("problematic_coordinates_or_regions", region));
    }
    let mut segs = segments(cp);
    segs.extend(pieces.into_iter().map(|(p, q)| (p, q, assignment)));
    Ok(rebuild(segs))
}

pub fn remove_crease(cp: &CreasePattern, e: usize) -> Result<CreasePattern, Diagnostic> {
    check_edge(cp, e)?;
    let mut segs = segments(cp);
    segs.remove(e);
    Ok(rebuild(segs))
}

/// Reassign one crease in place; edge ids are unchanged.
pub fn set_assignment(cp: &CreasePattern, e: usize, assignment: Assignment) -> Result<CreasePattern, Diagnostic> {
    check_crease_assignment(assignment)?;
    check_edge(cp, e)?;
    let mut out = cp.clone();
    if out.edges_assignment.len() != out.num_edges() {
        out.edges_assignment = (0..out.num_edges()).map(|i| cp.assignment(i)).collect();
    }
    out.edges_assignment[e] = assignment;
    Ok(out)
}
