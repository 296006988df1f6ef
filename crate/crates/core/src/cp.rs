//! Crease-pattern data model, document format and structural validation.
//!
//! The document is a JSON object with the keys `vertices_coords`,
//! `edges_vertices`, `edges_assignment` and `faces_vertices`. Any other
//! top-level key is carried through untouched.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::diagnostics::{Code, Diagnostic, Diagnostics};
use crate::geometry::{signed_area, Vec2, EPS};

/// Per-edge fold type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Assignment {
    /// Boundary of the sheet.
    B,
    /// Mountain fold.
    M,
    /// Valley fold.
    V,
    /// Flat (drawn but not folded).
    F,
    /// Unassigned.
    U,
}

impl Assignment {
    pub const ALL: [Assignment; 5] = [Assignment::B, Assignment::M, Assignment::V, Assignment::F, Assignment::U];

    pub fn as_str(self) -> &'static str {
        match self {
            Assignment::B => "B",
            Assignment::M => "M",
            Assignment::V => "V",
            Assignment::F => "F",
            Assignment::U => "U",
        }
    }

    /// Mountain or valley.
    pub fn is_fold(self) -> bool {
        matches!(self, Assignment::M | Assignment::V)
    }

    pub fn opposite(self) -> Assignment {
        match self {
            Assignment::M => Assignment::V,
            Assignment::V => Assignment::M,
            other => other,
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Assignment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "B" => Ok(Assignment::B),
            "M" => Ok(Assignment::M),
            "V" => Ok(Assignment::V),
            "F" => Ok(Assignment::F),
            "U" => Ok(Assignment::U),
            other => Err(other.to_owned()),
        }
    }
}

/// A parsed crease pattern.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CreasePattern {
    pub vertices_coords: Vec<[f64; 2]>,
    pub edges_vertices: Vec<[usize; 2]>,
    /// Empty when the document carries no assignments.
    pub edges_assignment: Vec<Assignment>,
    pub faces_vertices: Vec<Vec<usize>>,
    /// Unknown top-level keys, kept for round-tripping.
    pub extra: BTreeMap<String, Value>,
}

impl CreasePattern {
    pub fn num_vertices(&self) -> usize {
        self.vertices_coords.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges_vertices.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces_vertices.len()
    }

    pub fn vertex(&self, v: usize) -> Vec2 {
        Vec2::from(self.vertices_coords[v])
    }

    pub fn has_assignments(&self) -> bool {
        !self.edges_assignment.is_empty()
    }

    /// Assignment of edge `e`; `U` when the document has none.
    pub fn assignment(&self, e: usize) -> Assignment {
        self.edges_assignment.get(e).copied().unwrap_or(Assignment::U)
    }

    pub fn face_polygon(&self, f: usize) -> Vec<Vec2> {
        self.faces_vertices[f].iter().map(|&v| self.vertex(v)).collect()
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        let [a, b] = self.edges_vertices[e];
        self.vertex(a).dist(self.vertex(b))
    }

    /// Adjacency facts derived from faces. Out-of-range indices are ignored.
    pub fn topology(&self) -> Topology {
        Topology::new(self)
    }
}

/// Edge/face incidence derived from a crease pattern.
#[derive(Clone, Debug, Default)]
pub struct Topology {
    pub edge_map: HashMap<(usize, usize), usize>,
    /// Faces using each edge as a side, with the traversal direction
    /// (`true` when the face walks the edge from its first to second vertex).
    pub edge_faces: Vec<Vec<(usize, bool)>>,
    pub boundary_edge: Vec<bool>,
    pub boundary_vertex: Vec<bool>,
    /// Incident edge ids per vertex.
    pub vertex_edges: Vec<Vec<usize>>,
}

impl Topology {
    fn new(cp: &CreasePattern) -> Self {
        let nv = cp.num_vertices();
        let ne = cp.num_edges();
        let mut edge_map = HashMap::new();
        let mut vertex_edges = vec![Vec::new(); nv];
        for (e, &[a, b]) in cp.edges_vertices.iter().enumerate() {
            edge_map.entry((a.min(b), a.max(b))).or_insert(e);
            if a < nv && b < nv && a != b {
                vertex_edges[a].push(e);
                vertex_edges[b].push(e);
            }
        }
        let mut edge_faces = vec![Vec::new(); ne];
        for (f, cycle) in cp.faces_vertices.iter().enumerate() {
            let n = cycle.len();
            for i in 0..n {
                let (u, v) = (cycle[i], cycle[(i + 1) % n]);
                if let Some(&e) = edge_map.get(&(u.min(v), u.max(v))) {
                    let forward = cp.edges_vertices[e][0] == u;
                    edge_faces[e].push((f, forward));
                }
            }
        }
        let boundary_edge: Vec<bool> = (0..ne)
            .map(|e| match cp.assignment(e) {
                Assignment::B => true,
                Assignment::U => edge_faces[e].len() == 1,
                _ => false,
            })
            .collect();
        let mut boundary_vertex = vec![false; nv];
        for (e, &b) in boundary_edge.iter().enumerate() {
            if b {
                for &v in &cp.edges_vertices[e] {
                    if v < nv {
                        boundary_vertex[v] = true;
                    }
                }
            }
        }
        Topology { edge_map, edge_faces, boundary_edge, boundary_vertex, vertex_edges }
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_map.get(&(u.min(v), u.max(v))).copied()
    }

    /// Interior vertices with at least one incident edge.
    pub fn interior_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.boundary_vertex.len()).filter(|&v| !self.boundary_vertex[v] && !self.vertex_edges[v].is_empty())
    }
}

// ---------------------------------------------------------------------------
// Parsing

const KEYS: [&str; 4] = ["vertices_coords", "edges_vertices", "edges_assignment", "faces_vertices"];

/// Parse a CP document. Clockwise face cycles are reoriented silently; use
/// [`parse_cp_with_notes`] to see the notes.
pub fn parse_cp(text: &str) -> Result<CreasePattern, Diagnostics> {
    parse_cp_with_notes(text).map(|(cp, _)| cp)
}

/// Parse a CP document, also returning non-fatal notes.
pub fn parse_cp_with_notes(text: &str) -> Result<(CreasePattern, Vec<Diagnostic>), Diagnostics> {
    let doc: Value = serde_json::from_str(text).map_err(syntax_diagnostic)?;
    let Value::Object(map) = doc else {
        return Err(Diagnostic::error(
            Code::CpSyntaxInvalidParamType,
            "Parameter 'document' has an invalid type. Expected type 'object'.",
        )
        .with("element", "document")
        .with("expected", "object")
        .into());
    };

    let mut errs = Vec::new();
    let mut cp = CreasePattern::default();

    if let Some(v) = map.get("vertices_coords") {
        for_each_item(v, "vertices_coords", &mut errs, |i, item, errs| {
            let path = format!("vertices_coords[{i}]");
            if let Some(pair) = fixed_array(item, 2, &path, "[x, y]", errs) {
                let mut xy = [0.0; 2];
                let mut ok = true;
                for (k, c) in pair.iter().enumerate() {
                    match c.as_f64() {
                        Some(x) => xy[k] = x,
                        None => {
                            errs.push(type_error(&format!("{path}[{k}]"), "number", c));
                            ok = false;
                        }
                    }
                }
                if ok {
                    cp.vertices_coords.push(xy);
                }
            }
        });
    }
    let nv = cp.vertices_coords.len();

    if let Some(v) = map.get("edges_vertices") {
        for_each_item(v, "edges_vertices", &mut errs, |i, item, errs| {
            let path = format!("edges_vertices[{i}]");
            if let Some(pair) = fixed_array(item, 2, &path, "[i, j]", errs) {
                let a = index_value(&pair[0], &format!("{path}[0]"), nv, errs);
                let b = index_value(&pair[1], &format!("{path}[1]"), nv, errs);
                if let (Some(a), Some(b)) = (a, b) {
                    cp.edges_vertices.push([a, b]);
                }
            }
        });
    }

    if let Some(v) = map.get("edges_assignment") {
        for_each_item(v, "edges_assignment", &mut errs, |i, item, errs| {
            let path = format!("edges_assignment[{i}]");
            match item.as_str().map(str::parse::<Assignment>) {
                Some(Ok(a)) => cp.edges_assignment.push(a),
                _ => errs.push(
                    type_error(&path, "one of B, M, V, F, U", item)
                        .with("faulty_token_or_command", item.as_str().map_or_else(|| item.to_string(), str::to_owned)),
                ),
            }
        });
    }

    if let Some(v) = map.get("faces_vertices") {
        for_each_item(v, "faces_vertices", &mut errs, |i, item, errs| {
            let path = format!("faces_vertices[{i}]");
            let Some(arr) = item.as_array() else {
                errs.push(type_error(&path, "array of vertex indices", item));
                return;
            };
            let mut face = Vec::with_capacity(arr.len());
            let mut ok = true;
            for (k, x) in arr.iter().enumerate() {
                match index_value(x, &format!("{path}[{k}]"), nv, errs) {
                    Some(idx) => face.push(idx),
                    None => ok = false,
                }
            }
            if ok {
                cp.faces_vertices.push(face);
            }
        });
    }

    for (k, v) in &map {
        if !KEYS.contains(&k.as_str()) {
            cp.extra.insert(k.clone(), v.clone());
        }
    }

    if !errs.is_empty() {
        return Err(Diagnostics(errs));
    }

    let mut notes = Vec::new();
    for (f, face) in cp.faces_vertices.iter_mut().enumerate() {
        if face.len() >= 3 {
            let poly: Vec<Vec2> = face.iter().map(|&v| Vec2::from(cp.vertices_coords[v])).collect();
            if signed_area(&poly) < 0.0 {
                face.reverse();
                notes.push(
                    Diagnostic::note(
                        Code::CpSyntaxValueOutOfRange,
                        format!("Face {f} was listed clockwise and has been reoriented counterclockwise."),
                    )
                    .with("check", "face_orientation")
                    .with("element", format!("faces_vertices[{f}]")),
                );
            }
        }
    }
    Ok((cp, notes))
}

fn syntax_diagnostic(err: serde_json::Error) -> Diagnostics {
    let (line, column) = (err.line(), err.column());
    let d = if err.is_eof() {
        Diagnostic::error(
            Code::CpSyntaxMissingDelimiter,
            format!("Document is missing a required delimiter: input ended at line {line}, column {column}."),
        )
    } else {
        Diagnostic::error(
            Code::CpSyntaxUnexpectedToken,
            format!("Unexpected symbol/character encountered at line {line}, column {column}: {err}."),
        )
    };
    d.with("line", line).with("column", column).with("faulty_cp_code_line_numbers", vec![line]).into()
}

fn value_type(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(n) if n.is_f64() => "float",
        Value::Number(_) => "integer",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

fn type_error(path: &str, expected: &str, got: &Value) -> Diagnostic {
    Diagnostic::error(
        Code::CpSyntaxInvalidParamType,
        format!(
            "Parameter '{path}' has an invalid type. Expected type '{expected}', but received value '{got}' of type '{}'.",
            value_type(got)
        ),
    )
    .with("element", path)
    .with("expected", expected)
    .with("value", got.clone())
}

fn for_each_item(
    v: &Value,
    key: &str,
    errs: &mut Vec<Diagnostic>,
    mut f: impl FnMut(usize, &Value, &mut Vec<Diagnostic>),
) {
    match v.as_array() {
        Some(items) => items.iter().enumerate().for_each(|(i, item)| f(i, item, errs)),
        None => errs.push(type_error(key, "array", v)),
    }
}

fn fixed_array<'a>(
    item: &'a Value,
    n: usize,
    path: &str,
    shape: &str,
    errs: &mut Vec<Diagnostic>,
) -> Option<&'a Vec<Value>> {
    let Some(arr) = item.as_array() else {
        errs.push(type_error(path, shape, item));
        return None;
    };
    if arr.len() != n {
        errs.push(
            Diagnostic::error(
                Code::CpSyntaxInvalidParamCount,
                format!(
                    "Instruction '{path}' has an insufficient or excessive number of parameters. Expected {n}, got {}.",
                    arr.len()
                ),
            )
            .with("element", path)
            .with("expected", n)
            .with("actual", arr.len()),
        );
        return None;
    }
    Some(arr)
}

fn index_value(x: &Value, path: &str, bound: usize, errs: &mut Vec<Diagnostic>) -> Option<usize> {
    let Some(i) = x.as_u64() else {
        errs.push(type_error(path, "non-negative integer", x));
        return None;
    };
    let i = i as usize;
    if i >= bound {
        errs.push(reference_error(path, i, bound));
        return None;
    }
    Some(i)
}

fn reference_error(path: &str, index: usize, bound: usize) -> Diagnostic {
    Diagnostic::error(
        Code::CpSyntaxInvalidLineReference,
        format!("Instruction '{path}' references a non-existent point ID '{index}' (only {bound} vertices)."),
    )
    .with("element", path)
    .with("value", index)
    .with("faulty_vertex_ids_or_point_coordinates", vec![index])
}

// ---------------------------------------------------------------------------
// Serialization

fn number(x: f64) -> String {
    serde_json::to_string(&x).unwrap_or_else(|_| "null".to_owned())
}

/// Canonical document: known keys in fixed order, one element per line,
/// shortest round-trip number formatting, trailing newline.
pub fn serialize_cp(cp: &CreasePattern) -> String {
    fn block<T>(out: &mut String, key: &str, items: &[T], fmt_item: impl Fn(&T) -> String, last: bool) {
        out.push_str(&format!("  \"{key}\": ["));
        if items.is_empty() {
            out.push(']');
        } else {
            out.push('\n');
            for (i, it) in items.iter().enumerate() {
                out.push_str("    ");
                out.push_str(&fmt_item(it));
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str("  ]");
        }
        if !last {
            out.push(',');
        }
        out.push('\n');
    }

    let mut out = String::from("{\n");
    let has_extra = !cp.extra.is_empty();
    block(&mut out, "vertices_coords", &cp.vertices_coords, |p| format!("[{}, {}]", number(p[0]), number(p[1])), false);
    block(&mut out, "edges_vertices", &cp.edges_vertices, |e| format!("[{}, {}]", e[0], e[1]), false);
    let assignments: Vec<String> = cp.edges_assignment.iter().map(|a| format!("\"{a}\"")).collect();
    out.push_str(&format!("  \"edges_assignment\": [{}],\n", assignments.join(", ")));
    block(
        &mut out,
        "faces_vertices",
        &cp.faces_vertices,
        |f| format!("[{}]", f.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")),
        !has_extra,
    );
    let n = cp.extra.len();
    for (i, (k, v)) in cp.extra.iter().enumerate() {
        out.push_str(&format!("  {}: {}", Value::String(k.clone()), v));
        if i + 1 < n {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("}\n");
    out
}

// ---------------------------------------------------------------------------
// Validation

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub valid: bool,
    pub diagnostics: Vec<Diagnostic>,
}

impl ValidationReport {
    fn from_diagnostics(diagnostics: Vec<Diagnostic>) -> Self {
        Self { valid: !diagnostics.iter().any(Diagnostic::is_error), diagnostics }
    }

    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| d.is_error())
    }
}

fn presence(key: &str) -> Diagnostic {
    Diagnostic::error(
        Code::CpSyntaxInvalidParamCount,
        format!("Element '{key}' is missing or empty. Expected at least 1 entry, got 0."),
    )
    .with("check", "presence")
    .with("element", key)
    .with("expected", 1)
    .with("actual", 0)
}

/// Structural checks, in order: presence, coordinates, edges, assignments,
/// faces, duplicate edges, Euler characteristic, face coverage. Every
/// failing check is reported.
pub fn validate_structure(cp: &CreasePattern) -> ValidationReport {
    let mut ds = Vec::new();
    let nv = cp.num_vertices();

    for (key, empty) in [
        ("vertices_coords", cp.vertices_coords.is_empty()),
        ("edges_vertices", cp.edges_vertices.is_empty()),
        ("faces_vertices", cp.faces_vertices.is_empty()),
    ] {
        if empty {
            ds.push(presence(key));
        }
    }

    for (i, p) in cp.vertices_coords.iter().enumerate() {
        if !(p[0].is_finite() && p[1].is_finite()) {
            ds.push(
                Diagnostic::error(
                    Code::CpSyntaxInvalidParamType,
                    format!("Parameter 'vertices_coords[{i}]' must hold two finite numbers."),
                )
                .with("check", "coordinates")
                .with("element", format!("vertices_coords[{i}]")),
            );
        }
    }

    let mut edges_ok = true;
    for (e, &[a, b]) in cp.edges_vertices.iter().enumerate() {
        for (k, idx) in [(0, a), (1, b)] {
            if idx >= nv {
                edges_ok = false;
                ds.push(reference_error(&format!("edges_vertices[{e}][{k}]"), idx, nv).with("check", "edges"));
            }
        }
        if a == b {
            edges_ok = false;
            ds.push(
                Diagnostic::error(
                    Code::CpSyntaxInvalidLineReference,
                    format!("Instruction 'edges_vertices[{e}]' references point ID '{a}' twice; edges need two distinct vertices."),
                )
                .with("check", "edges")
                .with("element", format!("edges_vertices[{e}]"))
                .with("faulty_crease_ids", vec![e]),
            );
        }
    }

    if cp.has_assignments() && cp.edges_assignment.len() != cp.num_edges() {
        ds.push(
            Diagnostic::error(
                Code::CpSyntaxInvalidParamCount,
                format!(
                    "Instruction 'edges_assignment' has an insufficient or excessive number of parameters. Expected {}, got {}.",
                    cp.num_edges(),
                    cp.edges_assignment.len()
                ),
            )
            .with("check", "assignments")
            .with("element", "edges_assignment")
            .with("expected", cp.num_edges())
            .with("actual", cp.edges_assignment.len()),
        );
    }

    let mut faces_ok = true;
    for (f, face) in cp.faces_vertices.iter().enumerate() {
        if face.len() < 3 {
            faces_ok = false;
            ds.push(
                Diagnostic::error(
                    Code::CpSyntaxInvalidParamCount,
                    format!(
                        "Instruction 'faces_vertices[{f}]' has an insufficient number of parameters. Expected at least 3, got {}.",
                        face.len()
                    ),
                )
                .with("check", "faces")
                .with("element", format!("faces_vertices[{f}]"))
                .with("expected", 3)
                .with("actual", face.len()),
            );
        }
        for (k, &v) in face.iter().enumerate() {
            if v >= nv {
                faces_ok = false;
                ds.push(reference_error(&format!("faces_vertices[{f}][{k}]"), v, nv).with("check", "faces"));
            }
        }
    }

    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    for (e, &[a, b]) in cp.edges_vertices.iter().enumerate() {
        if let Some(&first) = seen.get(&(a.min(b), a.max(b))) {
            edges_ok = false;
            ds.push(
                Diagnostic::error(
                    Code::CpSyntaxInvalidLineReference,
                    format!("Instruction 'edges_vertices[{e}]' duplicates line ID '{first}' ({a}, {b})."),
                )
                .with("check", "duplicate_edge")
                .with("element", format!("edges_vertices[{e}]"))
                .with("faulty_crease_ids", vec![first, e]),
            );
        } else {
            seen.insert((a.min(b), a.max(b)), e);
        }
    }

    let chi = nv as i64 - cp.num_edges() as i64 + cp.num_faces() as i64 + 1;
    if chi != 2 {
        ds.push(
            Diagnostic::error(
                Code::CpSyntaxValueOutOfRange,
                format!(
                    "Euler characteristic V - E + F = {nv} - {} + {} = {chi} is out of the allowed range [2, 2] (F counts the outer face).",
                    cp.num_edges(),
                    cp.num_faces() + 1
                ),
            )
            .with("check", "euler")
            .with("expected", 2)
            .with("actual", chi),
        );
    }

    if edges_ok && faces_ok && !cp.faces_vertices.is_empty() {
        face_coverage(cp, &mut ds);
    }

    ValidationReport::from_diagnostics(ds)
}

/// Faces must tile the sheet: every face side is an edge, boundary edges are
/// used once, interior edges twice by two different faces in opposite
/// directions.
fn face_coverage(cp: &CreasePattern, ds: &mut Vec<Diagnostic>) {
    let topo = cp.topology();
    let coverage = |msg: String| Diagnostic::error(Code::CpSyntaxValueOutOfRange, msg).with("check", "face_coverage");

    for (f, face) in cp.faces_vertices.iter().enumerate() {
        let n = face.len();
        for i in 0..n {
            let (u, v) = (face[i], face[(i + 1) % n]);
            if topo.edge_between(u, v).is_none() {
                ds.push(
                    Diagnostic::error(
                        Code::CpSyntaxInvalidLineReference,
                        format!("Instruction 'faces_vertices[{f}]' references a non-existent line ({u}, {v})."),
                    )
                    .with("check", "face_coverage")
                    .with("element", format!("faces_vertices[{f}]"))
                    .with("faulty_vertex_ids_or_point_coordinates", vec![u, v]),
                );
            }
        }
        if signed_area(&cp.face_polygon(f)).abs() <= EPS * EPS {
            ds.push(
                coverage(format!("Face {f} has zero area."))
                    .with("element", format!("faces_vertices[{f}]")),
            );
        }
        let distinct: HashSet<usize> = face.iter().copied().collect();
        if distinct.len() != face.len() {
            ds.push(
                coverage(format!("Face {f} visits a vertex more than once; a crease is dangling inside it."))
                    .with("element", format!("faces_vertices[{f}]")),
            );
        }
    }

    for (e, uses) in topo.edge_faces.iter().enumerate() {
        let a = cp.assignment(e);
        let problem = match uses.as_slice() {
            [] => Some(format!("Edge {e} does not bound any face.")),
            [_] if matches!(a, Assignment::B | Assignment::U) => None,
            [_] => Some(format!("Edge {e} is assigned {a} but lies on the sheet boundary.")),
            [(f, d), (g, d2)] => {
                if f == g {
                    Some(format!("Edge {e} has face {f} on both sides; it is a dangling crease."))
                } else if d == d2 {
                    Some(format!("Faces {f} and {g} traverse edge {e} in the same direction; they overlap."))
                } else if a == Assignment::B {
                    Some(format!("Edge {e} is assigned B but lies between faces {f} and {g}."))
                } else {
                    None
                }
            }
            more => Some(format!("Edge {e} bounds {} face sides; at most 2 are allowed.", more.len())),
        };
        if let Some(msg) = problem {
            ds.push(coverage(msg).with("faulty_crease_ids", vec![e]));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const SQUARE: &str = r#"{
        "vertices_coords": [[0,0],[1,0],[1,1],[0,1]],
        "edges_vertices": [[0,1],[1,2],[2,3],[3,0]],
        "edges_assignment": ["B","B","B","B"],
        "faces_vertices": [[0,1,2,3]]
    }"#;

    fn square_with_diagonal() -> CreasePattern {
        parse_cp(
            r#"{
            "vertices_coords": [[0,0],[1,0],[1,1],[0,1]],
            "edges_vertices": [[0,1],[1,2],[2,3],[3,0],[0,2]],
            "edges_assignment": ["B","B","B","B","V"],
            "faces_vertices": [[0,1,2],[0,2,3]]
        }"#,
        )
        .unwrap()
    }

    #[test]
    fn parses_minimal_square() {
        let cp = parse_cp(SQUARE).unwrap();
        assert_eq!((cp.num_vertices(), cp.num_edges(), cp.num_faces()), (4, 4, 1));
        assert!(validate_structure(&cp).valid);
    }

    #[test]
    fn invalid_assignment_names_the_value() {
        let doc = SQUARE.replace(r#""B","B","B","B""#, r#""B","X","B","B""#);
        let err = parse_cp(&doc).unwrap_err();
        assert_eq!(err.0.len(), 1);
        assert_eq!(err.0[0].code(), Code::CpSyntaxInvalidParamType);
        assert!(err.0[0].render().contains("'\"X\"'") || err.0[0].render().contains("X"));
        assert_eq!(err.0[0].param("faulty_token_or_command").unwrap(), "X");
    }

    #[test]
    fn out_of_bounds_edge_reference() {
        let doc = SQUARE.replace("[3,0]]", "[0,9]]");
        let err = parse_cp(&doc).unwrap_err();
        assert_eq!(err.0[0].code(), Code::CpSyntaxInvalidLineReference);
        assert_eq!(err.0[0].param("value").unwrap(), 9);
    }

    #[test]
    fn malformed_document_has_position() {
        let err = parse_cp("{\n  \"vertices_coords\": [[0, 0] [1, 0]]\n}").unwrap_err();
        let d = &err.0[0];
        assert_eq!(d.code(), Code::CpSyntaxUnexpectedToken);
        assert_eq!(d.param("line").unwrap(), 2);
        assert!(d.render().contains("line 2"));
        let eof = parse_cp("{\"vertices_coords\": [[0, 0]").unwrap_err();
        assert_eq!(eof.0[0].code(), Code::CpSyntaxMissingDelimiter);
    }

    #[test]
    fn arity_and_type_errors_are_all_reported() {
        let doc = r#"{"vertices_coords": [[0,0,0],["a",1],[1,1]],
                     "edges_vertices": [[0,1,2],[0,1.5]],
                     "faces_vertices": [[0,1,2]]}"#;
        let err = parse_cp(doc).unwrap_err();
        let codes: Vec<Code> = err.0.iter().map(Diagnostic::code).collect();
        assert_eq!(
            codes,
            vec![
                Code::CpSyntaxInvalidParamCount,
                Code::CpSyntaxInvalidParamType,
                Code::CpSyntaxInvalidParamCount,
                Code::CpSyntaxInvalidParamType,
                // only one vertex survived, so the face references fail too
                Code::CpSyntaxInvalidLineReference,
                Code::CpSyntaxInvalidLineReference,
            ]
        );
    }

    #[test]
    fn unknown_keys_survive_round_trip() {
        let doc = SQUARE.replace("{", r#"{"file_creator": "hand", "frame_title": {"a": [1, 2]},"#);
        let cp = parse_cp(&doc).unwrap();
        assert_eq!(cp.extra.len(), 2);
        assert_eq!(parse_cp(&serialize_cp(&cp)).unwrap(), cp);
    }

    #[test]
    fn serialization_is_canonical() {
        let mut cp = parse_cp(SQUARE).unwrap();
        cp.vertices_coords[2] = [0.5, 1.0];
        let text = serialize_cp(&cp);
        assert!(text.contains("[0.5, 1.0]"));
        assert!(text.ends_with("}\n"));
        let order: Vec<usize> = KEYS.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(parse_cp(&text).unwrap(), cp);
        assert_eq!(serialize_cp(&parse_cp(&text).unwrap()), text);
    }

    #[test]
    fn all_assignment_codes_survive() {
        let mut cp = square_with_diagonal();
        cp.edges_assignment = vec![Assignment::B, Assignment::M, Assignment::V, Assignment::F, Assignment::U];
        let text = serialize_cp(&cp);
        for a in Assignment::ALL {
            assert!(text.contains(&format!("\"{a}\"")));
        }
        assert_eq!(parse_cp(&text).unwrap(), cp);
    }

    #[test]
    fn clockwise_faces_are_reoriented_with_note() {
        let doc = SQUARE.replace("[0,1,2,3]", "[3,2,1,0]");
        let (cp, notes) = parse_cp_with_notes(&doc).unwrap();
        assert_eq!(notes.len(), 1);
        assert!(!notes[0].is_error());
        assert!(signed_area(&cp.face_polygon(0)) > 0.0);
    }

    #[test]
    fn diagonal_square_satisfies_euler() {
        let cp = square_with_diagonal();
        assert!(validate_structure(&cp).valid);
    }

    #[test]
    fn dangling_edge_is_caught_by_face_coverage() {
        // V=6, E=6, F=1: Euler holds but the two extra edges bound no face.
        let mut cp = parse_cp(SQUARE).unwrap();
        cp.vertices_coords.extend([[0.25, 0.5], [0.75, 0.5]]);
        cp.edges_vertices.extend([[4, 5], [0, 4]]);
        cp.edges_assignment.extend([Assignment::M, Assignment::M]);
        let report = validate_structure(&cp);
        assert!(!report.valid);
        assert!(report.errors().all(|d| d.param("check").unwrap() == "face_coverage"));
        assert!(report.errors().count() >= 2);
    }

    #[test]
    fn missing_faces_are_reported() {
        let mut cp = parse_cp(SQUARE).unwrap();
        cp.faces_vertices.clear();
        let report = validate_structure(&cp);
        assert!(!report.valid);
        let checks: Vec<&Value> = report.errors().filter_map(|d| d.param("check")).collect();
        assert!(checks.contains(&&Value::from("presence")));
        assert!(checks.contains(&&Value::from("euler")));
    }

    #[test]
    fn duplicate_edge_and_euler_are_both_reported() {
        let mut cp = square_with_diagonal();
        cp.edges_vertices.push([2, 0]);
        cp.edges_assignment.push(Assignment::M);
        let report = validate_structure(&cp);
        let checks: Vec<String> =
            report.errors().filter_map(|d| d.param("check")).map(|v| v.as_str().unwrap().to_owned()).collect();
        assert!(checks.contains(&"duplicate_edge".to_owned()));
        assert!(checks.contains(&"euler".to_owned()));
    }

    #[test]
    fn validation_is_total_on_garbage() {
        let cp = CreasePattern {
            vertices_coords: vec![[f64::NAN, 0.0]],
            edges_vertices: vec![[0, 0], [0, 7]],
            edges_assignment: vec![Assignment::M],
            faces_vertices: vec![vec![0], vec![0, 1, 9]],
            extra: BTreeMap::new(),
        };
        let report = validate_structure(&cp);
        assert!(!report.valid);
        assert!(report.errors().all(|d| d.category() == crate::diagnostics::Category::Cse));
    }
}
