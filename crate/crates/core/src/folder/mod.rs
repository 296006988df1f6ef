//! Flat folding: face isometries, folded geometry, overlap cells and the
//! layer order.

pub mod constraints;
pub mod layers;

use std::collections::{BTreeSet, VecDeque};

use serde_json::{json, Value};

pub use constraints::{
    extract_constraints, forced_pairs, quantize_point, source_centroids, ConstraintKind, Footprint, ForcedPair, OverlapConstraint,
};
pub use layers::{layer_solve, LayerOrder, LayerOutcome};

use crate::cp::{validate_structure, Assignment, CreasePattern, Topology};
use crate::diagnostics::{Code, Diagnostic, Diagnostics};
use crate::foldability::check_flat_foldable_all;
use crate::geometry::{
    centroid, interior_point, point_in_polygon, signed_area, Arrangement, PlanarIsometry, PointLocation, Vec2, EPS,
};

pub const DEFAULT_LAYER_CAP: usize = 64;

/// Closure tolerance for composed face transforms.
const CLOSURE_TOL: f64 = 1e-9;

/// Largest number of unassigned creases automatic completion will try.
const COMPLETION_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct FoldOptions {
    /// Maximum faces stacked in any overlap cell.
    pub layer_cap: usize,
    /// Try every M/V completion of unassigned creases instead of reporting
    /// them as ambiguous.
    pub complete_unassigned: bool,
}

impl Default for FoldOptions {
    fn default() -> Self {
        FoldOptions { layer_cap: DEFAULT_LAYER_CAP, complete_unassigned: false }
    }
}

/// A maximal-or-finer region of the folded plane covered by a fixed set of
/// face images.
#[derive(Clone, Debug, PartialEq)]
pub struct OverlapCell {
    pub polygon: Vec<Vec2>,
    /// A point strictly inside the cell.
    pub point: Vec2,
    /// Covering faces, ascending.
    pub faces: Vec<usize>,
}

/// Everything about a folded state except the layer order.
#[derive(Clone, Debug)]
pub struct FoldGeometry {
    pub cp: CreasePattern,
    pub topology: Topology,
    pub isometries: Vec<PlanarIsometry>,
    pub parity: Vec<i8>,
    /// Folded vertex positions.
    pub vertices: Vec<Vec2>,
    /// Folded face images, counterclockwise.
    pub face_polygons: Vec<Vec<Vec2>>,
    pub face_centroids: Vec<Vec2>,
    pub cells: Vec<OverlapCell>,
    /// Face pairs sharing a cell, ascending.
    pub overlaps: BTreeSet<(usize, usize)>,
}

/// One overlap cell with its faces ordered top to bottom.
#[derive(Clone, Debug, PartialEq)]
pub struct CellStack {
    pub polygon: Vec<Vec2>,
    pub faces: Vec<usize>,
}

/// A successfully compiled flat-folded state.
#[derive(Clone, Debug)]
pub struct FoldedState {
    pub geometry: FoldGeometry,
    /// Folded segments `[i, j, source_edge]`, indices into the folded
    /// vertices.
    pub segments: Vec<[usize; 3]>,
    pub layer_order: LayerOrder,
    pub stacks: Vec<CellStack>,
    /// Depth of each face in a global top-to-bottom order.
    pub face_depth: Vec<usize>,
}

impl FoldedState {
    pub fn cp(&self) -> &CreasePattern {
        &self.geometry.cp
    }

    /// Layer of each vertex: the smallest depth of any face using it.
    pub fn vertex_layers(&self) -> Vec<usize> {
        let mut layer = vec![usize::MAX; self.geometry.vertices.len()];
        for (f, face) in self.geometry.cp.faces_vertices.iter().enumerate() {
            for &v in face {
                layer[v] = layer[v].min(self.face_depth[f]);
            }
        }
        layer.iter().map(|&l| if l == usize::MAX { 0 } else { l }).collect()
    }

    /// Export document with keys `P`, `SP`, `CF`, `faces_vertices` and
    /// `face_layers` (global depth per face, 0 on top).
    pub fn export(&self) -> Value {
        let layers = self.vertex_layers();
        let p: Vec<Value> =
            self.geometry.vertices.iter().zip(&layers).map(|(v, &l)| json!([v.x, v.y, l])).collect();
        let cf: Vec<Value> = self
            .stacks
            .iter()
            .map(|s| json!({"polygon": s.polygon.iter().map(|p| [p.x, p.y]).collect::<Vec<_>>(), "faces": s.faces}))
            .collect();
        json!({
            "P": p,
            "SP": self.segments,
            "CF": cf,
            "faces_vertices": self.geometry.cp.faces_vertices,
            "face_layers": self.face_depth,
        })
    }
}

fn dual_disconnected(unreached: &[usize]) -> Diagnostic {
    Diagnostic::error(
        Code::CpSyntaxValueOutOfRange,
        format!("Faces {unreached:?} are not connected to face 0 through shared edges."),
    )
    .with("check", "dual_connectivity")
}

/// Per-face isometries: face 0 is fixed, every other face is reached by
/// breadth-first search across shared edges, reflecting across M/V creases.
/// Every non-tree adjacency is checked for closure.
pub fn compute_face_transforms(cp: &CreasePattern) -> Result<Vec<PlanarIsometry>, Diagnostics> {
    let topo = cp.topology();
    face_transforms(cp, &topo)
}

fn face_transforms(cp: &CreasePattern, topo: &Topology) -> Result<Vec<PlanarIsometry>, Diagnostics> {
    let nf = cp.num_faces();
    if nf == 0 {
        return Ok(Vec::new());
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nf];
    for (e, uses) in topo.edge_faces.iter().enumerate() {
        if let [(f, _), (g, _)] = uses.as_slice() {
            if f != g {
                adj[*f].push((*g, e));
                adj[*g].push((*f, e));
            }
        }
    }
    let across = |t: &PlanarIsometry, e: usize| -> Result<PlanarIsometry, Diagnostic> {
        if !cp.assignment(e).is_fold() {
            return Ok(*t);
        }
        let [u, v] = cp.edges_vertices[e];
        let (a, b) = (cp.vertex(u), cp.vertex(v));
        PlanarIsometry::reflect_across(a, b - a).map(|r| t.compose(&r)).map_err(|_| {
            Diagnostic::error(Code::GeomCreasePlacementInvalid, format!("Crease {e} has zero length."))
                .with("faulty_crease_ids", vec![e])
        })
    };

    let mut transforms: Vec<Option<PlanarIsometry>> = vec![None; nf];
    transforms[0] = Some(PlanarIsometry::IDENTITY);
    let mut queue = VecDeque::from([0usize]);
    let mut errors = Vec::new();
    while let Some(f) = queue.pop_front() {
        let tf = transforms[f].expect("queued faces have transforms");
        for &(g, e) in &adj[f] {
            let tg = match across(&tf, e) {
                Ok(t) => t,
                Err(d) => {
                    errors.push(d);
                    continue;
                }
            };
            match transforms[g] {
                None => {
                    transforms[g] = Some(tg);
                    queue.push_back(g);
                }
                Some(existing) if f < g && !existing.approx_eq(&tg, CLOSURE_TOL) => {
                    errors.push(
                        Diagnostic::error(
                            Code::GeomLengthConstraintViolation,
                            format!(
                                "Folding around the faces next to edge {e} does not close up: face {g} would have to stretch to meet face {f}."
                            ),
                        )
                        .with("faulty_crease_ids", vec![e])
                        .with("intersecting_facet_ids", vec![f, g]),
                    );
                }
                Some(_) => {}
            }
        }
    }
    let unreached: Vec<usize> = (0..nf).filter(|&f| transforms[f].is_none()).collect();
    if !unreached.is_empty() {
        errors.insert(0, dual_disconnected(&unreached));
    }
    if !errors.is_empty() {
        errors.dedup();
        return Err(Diagnostics(errors));
    }
    Ok(transforms.into_iter().map(|t| t.expect("all faces reached")).collect())
}

/// Folded geometry without the local-law gate or layer solving. Needs a
/// structurally valid pattern with a consistent set of face transforms.
pub fn fold_geometry(cp: &CreasePattern) -> Result<FoldGeometry, Diagnostics> {
    let report = validate_structure(cp);
    if !report.valid {
        return Err(Diagnostics(report.errors().cloned().collect()));
    }
    let topology = cp.topology();
    let isometries = face_transforms(cp, &topology)?;
    let parity: Vec<i8> = isometries.iter().map(PlanarIsometry::parity).collect();

    let mut vertices = vec![None; cp.num_vertices()];
    for (f, face) in cp.faces_vertices.iter().enumerate() {
        for &v in face {
            if vertices[v].is_none() {
                vertices[v] = Some(isometries[f].apply(cp.vertex(v)));
            }
        }
    }
    let vertices: Vec<Vec2> =
        vertices.into_iter().enumerate().map(|(v, p)| p.unwrap_or_else(|| cp.vertex(v))).collect();

    let face_polygons: Vec<Vec<Vec2>> = cp
        .faces_vertices
        .iter()
        .enumerate()
        .map(|(f, face)| {
            let mut poly: Vec<Vec2> = face.iter().map(|&v| isometries[f].apply(cp.vertex(v))).collect();
            if signed_area(&poly) < 0.0 {
                poly.reverse();
            }
            poly
        })
        .collect();
    let face_centroids = face_polygons.iter().map(|p| centroid(p)).collect();
    let cells = overlap_cells(&face_polygons);
    let mut overlaps = BTreeSet::new();
    for cell in &cells {
        for (i, &a) in cell.faces.iter().enumerate() {
            for &b in &cell.faces[i + 1..] {
                overlaps.insert((a, b));
            }
        }
    }
    Ok(FoldGeometry { cp: cp.clone(), topology, isometries, parity, vertices, face_polygons, face_centroids, cells, overlaps })
}

/// Cells of the arrangement of all folded face boundaries, each with the
/// faces covering it. Uncovered holes are dropped.
fn overlap_cells(face_polygons: &[Vec<Vec2>]) -> Vec<OverlapCell> {
    let mut segments = Vec::new();
    for poly in face_polygons {
        let n = poly.len();
        for i in 0..n {
            segments.push((poly[i], poly[(i + 1) % n]));
        }
    }
    let arr = Arrangement::build(&segments);
    let mut cells = Vec::new();
    for k in 0..arr.faces.len() {
        let polygon = arr.face_polygon(k);
        let Some(point) = interior_point(&polygon) else {
            continue;
        };
        let faces: Vec<usize> = face_polygons
            .iter()
            .enumerate()
            .filter(|(_, poly)| point_in_polygon(point, poly) == PointLocation::Inside)
            .map(|(f, _)| f)
            .collect();
        if !faces.is_empty() {
            cells.push(OverlapCell { polygon, point, faces });
        }
    }
    cells
}

/// Compile with default options.
pub fn fold(cp: &CreasePattern) -> Result<FoldedState, Diagnostics> {
    fold_with(cp, &FoldOptions::default())
}

/// Compile a crease pattern to its flat-folded state.
///
/// Gates, in order: structure, unassigned creases, degenerate creases, local
/// flat-foldability laws, transform closure, layer cap, layer order.
pub fn fold_with(cp: &CreasePattern, opts: &FoldOptions) -> Result<FoldedState, Diagnostics> {
    let report = validate_structure(cp);
    if !report.valid {
        return Err(Diagnostics(report.errors().cloned().collect()));
    }
    let topo = cp.topology();

    let unassigned: Vec<usize> = (0..cp.num_edges())
        .filter(|&e| cp.assignment(e) == Assignment::U && !topo.boundary_edge[e])
        .collect();
    if !unassigned.is_empty() {
        if opts.complete_unassigned {
            return complete_unassigned(cp, &unassigned, opts);
        }
        return Err(Diagnostic::error(
            Code::AmbiguousMountainValleyAssignment,
            format!(
                "Creases {unassigned:?} are unassigned; each could fold as mountain or valley. Assign M or V."
            ),
        )
        .with("ambiguous_crease_ids_or_vertex_ids", unassigned.clone())
        .with("number_of_possible_states", 2)
        .into());
    }

    let zero: Vec<usize> = (0..cp.num_edges()).filter(|&e| cp.edge_length(e) <= EPS).collect();
    if !zero.is_empty() {
        return Err(Diagnostic::error(
            Code::GeomCreasePlacementInvalid,
            format!("Edges {zero:?} have zero length."),
        )
        .with("faulty_crease_ids", zero)
        .into());
    }

    let local = check_flat_foldable_all(cp);
    if !local.is_empty() {
        return Err(Diagnostics(local));
    }

    let geometry = fold_geometry(cp)?;

    if let Some(cell) = geometry.cells.iter().find(|c| c.faces.len() > opts.layer_cap) {
        return Err(Diagnostic::error(
            Code::GeomTooManyLayers,
            format!(
                "{} layers of paper meet at ({:.6}, {:.6}), exceeding the limit of {} layers.",
                cell.faces.len(),
                cell.point.x,
                cell.point.y,
                opts.layer_cap
            ),
        )
        .with("max_allowable_layers", opts.layer_cap)
        .with("calculated_layers_at_point", cell.faces.len())
        .with("problematic_coordinates_or_regions", json!([cell.point.x, cell.point.y]))
        .into());
    }

    let constraints = extract_constraints(&geometry);
    let forced = forced_pairs(&geometry);
    let order = match layer_solve(&geometry.overlaps, &constraints, &forced) {
        LayerOutcome::Unique(order) => order,
        LayerOutcome::Infeasible { faces } => {
            let region = faces
                .iter()
                .map(|&f| geometry.face_centroids[f])
                .map(|c| json!([c.x, c.y]))
                .collect::<Vec<_>>();
            return Err(Diagnostic::error(
                Code::PhysSelfIntersection,
                format!("Paper self-intersection: no layer order of faces {faces:?} avoids a cycle or penetration."),
            )
            .with("intersecting_facet_ids", faces)
            .with("problematic_coordinates_or_regions", region)
            .into());
        }
        LayerOutcome::Ambiguous { pair: (a, b), .. } => {
            return Err(Diagnostic::error(
                Code::AmbiguousLayerOrder,
                format!("Layer order between face {a} and face {b} is ambiguous: at least two valid orders exist."),
            )
            .with("layer_a_id", a)
            .with("layer_b_id", b)
            .with("number_of_possible_states", 2)
            .with(
                "suggested_disambiguation",
                format!("Add or reassign a crease so that face {a} is forced above or below face {b}."),
            )
            .into());
        }
    };

    let stacks = geometry
        .cells
        .iter()
        .map(|c| CellStack { polygon: c.polygon.clone(), faces: order.stack(&c.faces) })
        .collect();
    let face_depth = order.depths(cp.num_faces()).unwrap_or_else(|| vec![0; cp.num_faces()]);
    let segments = cp.edges_vertices.iter().enumerate().map(|(e, &[u, v])| [u, v, e]).collect();
    Ok(FoldedState { geometry, segments, layer_order: order, stacks, face_depth })
}

fn complete_unassigned(cp: &CreasePattern, unassigned: &[usize], opts: &FoldOptions) -> Result<FoldedState, Diagnostics> {
    let ambiguous = |states: usize| -> Diagnostics {
        Diagnostic::error(
            Code::AmbiguousMountainValleyAssignment,
            format!("Unassigned creases {unassigned:?} admit {states} valid completions."),
        )
        .with("ambiguous_crease_ids_or_vertex_ids", unassigned.to_vec())
        .with("number_of_possible_states", states)
        .into()
    };
    if unassigned.len() > COMPLETION_CAP {
        return Err(ambiguous(2));
    }
    let strict = FoldOptions { complete_unassigned: false, ..opts.clone() };
    let mut found: Option<FoldedState> = None;
    let mut last_err = None;
    for mask in 0u32..(1 << unassigned.len()) {
        let mut trial = cp.clone();
        if trial.edges_assignment.len() != trial.num_edges() {
            trial.edges_assignment = (0..trial.num_edges()).map(|e| cp.assignment(e)).collect();
        }
        for (k, &e) in unassigned.iter().enumerate() {
            trial.edges_assignment[e] = if mask >> k & 1 == 1 { Assignment::V } else { Assignment::M };
        }
        match fold_with(&trial, &strict) {
            Ok(state) if found.is_some() => {
                drop(state);
                return Err(ambiguous(2));
            }
            Ok(state) => found = Some(state),
            Err(e) => last_err = Some(e),
        }
    }
    found.ok_or_else(|| last_err.unwrap_or_else(|| ambiguous(0)))
}

/// One angle per non-boundary edge (in edge order): 0 degrees when the
/// two faces have opposite parity, 180 otherwise.
pub fn dihedral_angles(geom: &FoldGeometry) -> Vec<f64> {
    geom.topology
        .edge_faces
        .iter()
        .filter(|uses| uses.len() == 2)
        .map(|uses| if geom.parity[uses[0].0] != geom.parity[uses[1].0] { 0.0 } else { 180.0 })
        .collect()
}
