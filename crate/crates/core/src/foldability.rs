//! Local flat-foldability laws at single vertices and a brute-force
//! single-vertex oracle.
//!
//! All angle lists follow [`SectorAngles`]: sector `i` lies between crease
//! `i` and crease `i + 1` (cyclically). Flat (`F`) edges are transparent and
//! only `M`/`V` creases count toward Maekawa.

use std::f64::consts::{PI, TAU};

use serde_json::{json, Value};
use thiserror::Error;

use crate::cp::{Assignment, CreasePattern};
use crate::diagnostics::{degrees_list, Code, Diagnostic};
use crate::geometry::{sector_angles, SectorAngles, ANGLE_EPS, EPS};

/// Largest crease count [`enumerate_mv_assignments`] will try.
pub const ENUMERATION_CAP: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("vertex has {0} creases; enumeration is capped at {ENUMERATION_CAP}")]
pub struct CapacityError(pub usize);

/// Local law verdicts at one vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexFoldReport {
    pub vertex: usize,
    /// False for boundary vertices, where the laws do not apply; all `_ok`
    /// flags are then `true`.
    pub applicable: bool,
    pub mountains: usize,
    pub valleys: usize,
    /// Incident M, V and U creases.
    pub degree: usize,
    pub angle_sum_ok: bool,
    pub maekawa_ok: bool,
    pub kawasaki_ok: bool,
    pub blb_ok: bool,
    /// Sums of the even- and odd-indexed crease sectors.
    pub alternating_sums: (f64, f64),
    /// Crease-level sectors and the creases bounding them.
    pub angles: Vec<f64>,
    pub creases: Vec<usize>,
    /// Sector index of the first big-little-big violation.
    pub blb_violation: Option<usize>,
}

impl VertexFoldReport {
    fn not_applicable(vertex: usize) -> Self {
        VertexFoldReport {
            vertex,
            applicable: false,
            mountains: 0,
            valleys: 0,
            degree: 0,
            angle_sum_ok: true,
            maekawa_ok: true,
            kawasaki_ok: true,
            blb_ok: true,
            alternating_sums: (PI, PI),
            angles: Vec::new(),
            creases: Vec::new(),
            blb_violation: None,
        }
    }

    pub fn odd_degree(&self) -> bool {
        self.degree % 2 == 1
    }

    /// Failed checks, most fundamental first.
    pub fn reasons(&self) -> Vec<&'static str> {
        let mut r = Vec::new();
        if !self.angle_sum_ok {
            r.push("angle-sum");
        }
        if self.odd_degree() {
            r.push("odd-degree");
        }
        if !self.kawasaki_ok && !self.odd_degree() {
            r.push("kawasaki");
        }
        if !self.maekawa_ok {
            r.push("maekawa");
        }
        if !self.blb_ok {
            r.push("blb");
        }
        r
    }

    pub fn ok(&self) -> bool {
        self.angle_sum_ok && self.maekawa_ok && self.kawasaki_ok && self.blb_ok
    }
}

// ---------------------------------------------------------------------------
// Laws on bare angle/assignment lists

pub fn maekawa_holds(assignments: &[Assignment]) -> bool {
    let m = assignments.iter().filter(|&&a| a == Assignment::M).count();
    let v = assignments.iter().filter(|&&a| a == Assignment::V).count();
    m.abs_diff(v) == 2
}

/// Even- and odd-indexed sector sums; `None` for an odd count.
pub fn alternating_sums(angles: &[f64]) -> Option<(f64, f64)> {
    if angles.len() % 2 == 1 {
        return None;
    }
    let even = angles.iter().step_by(2).sum();
    let odd = angles.iter().skip(1).step_by(2).sum();
    Some((even, odd))
}

pub fn kawasaki_holds(angles: &[f64]) -> bool {
    match alternating_sums(angles) {
        Some((a, b)) if !angles.is_empty() => (a - PI).abs() <= ANGLE_EPS && (b - PI).abs() <= ANGLE_EPS,
        Some(_) => true,
        None => false,
    }
}

/// First strict local-minimum sector whose bounding creases share a
/// mountain or valley assignment.
pub fn blb_violation(angles: &[f64], assignments: &[Assignment]) -> Option<usize> {
    let n = angles.len();
    if n < 3 {
        return None;
    }
    (0..n).find(|&i| {
        let (prev, next) = (angles[(i + n - 1) % n], angles[(i + 1) % n]);
        let strict_min = angles[i] < prev - ANGLE_EPS && angles[i] < next - ANGLE_EPS;
        let (a, b) = (assignments[i], assignments[(i + 1) % n]);
        strict_min && a.is_fold() && a == b
    })
}

/// Crimp reduction: repeatedly fold away a sector that is no larger than its
/// neighbours and bounded by opposite creases. The labeling folds flat iff
/// the reduction ends with two equal sectors bounded by equal creases.
pub fn crimp_foldable(angles: &[f64], assignments: &[Assignment]) -> bool {
    let n = angles.len();
    if n == 0 {
        return true;
    }
    if n % 2 == 1 || assignments.len() != n || !assignments.iter().all(|a| a.is_fold()) {
        return false;
    }
    if (angles.iter().sum::<f64>() - TAU).abs() > ANGLE_EPS {
        return false;
    }
    let mut a = angles.to_vec();
    let mut s = assignments.to_vec();
    while a.len() > 2 {
        let n = a.len();
        let pick = (0..n).find(|&i| {
            let (prev, next) = (a[(i + n - 1) % n], a[(i + 1) % n]);
            a[i] <= prev + EPS && a[i] <= next + EPS && s[i] != s[(i + 1) % n]
        });
        let Some(i) = pick else {
            return false;
        };
        // Bring the crimped sector to index 1, then merge sectors 0..=2.
        let shift = (i + n - 1) % n;
        a.rotate_left(shift);
        s.rotate_left(shift);
        let merged = a[0] - a[1] + a[2];
        a.splice(0..3, [merged]);
        s.drain(1..3);
    }
    (a[0] - a[1]).abs() <= ANGLE_EPS && s[0] == s[1]
}

/// Number of M/V labelings of a single vertex that fold flat.
pub fn enumerate_mv_assignments(angles: &SectorAngles) -> Result<usize, CapacityError> {
    count_flat_labelings(&angles.angles)
}

/// [`enumerate_mv_assignments`] on a bare angle list.
pub fn count_flat_labelings(angles: &[f64]) -> Result<usize, CapacityError> {
    let n = angles.len();
    if n > ENUMERATION_CAP {
        return Err(CapacityError(n));
    }
    Ok(flat_labelings(angles).count())
}

/// Every flat-foldable M/V labeling, in binary counting order (bit `i` set
/// means crease `i` is a valley).
pub fn flat_labelings(angles: &[f64]) -> impl Iterator<Item = Vec<Assignment>> + '_ {
    let n = angles.len().min(ENUMERATION_CAP);
    (0u32..(1u32 << n)).filter_map(move |mask| {
        let labels: Vec<Assignment> =
            (0..n).map(|i| if mask >> i & 1 == 1 { Assignment::V } else { Assignment::M }).collect();
        (maekawa_holds(&labels) && crimp_foldable(angles, &labels)).then_some(labels)
    })
}

// ---------------------------------------------------------------------------
// Checks on crease patterns

/// All local laws at vertex `v`.
pub fn vertex_report(cp: &CreasePattern, v: usize) -> Result<VertexFoldReport, Diagnostic> {
    let topo = cp.topology();
    vertex_report_with(cp, v, topo.boundary_vertex.get(v).copied().unwrap_or(false))
}

fn vertex_report_with(cp: &CreasePattern, v: usize, boundary: bool) -> Result<VertexFoldReport, Diagnostic> {
    if boundary {
        return Ok(VertexFoldReport::not_applicable(v));
    }
    let sectors = sector_angles(cp, v)?;
    let angle_sum_ok = sectors.interior && (sectors.sum() - TAU).abs() <= ANGLE_EPS;
    let (angles, creases) = sectors.crease_sectors(cp);
    let labels: Vec<Assignment> = creases.iter().map(|&e| cp.assignment(e)).collect();
    let mountains = labels.iter().filter(|&&a| a == Assignment::M).count();
    let valleys = labels.iter().filter(|&&a| a == Assignment::V).count();
    if creases.is_empty() {
        // Only flat edges meet here; nothing folds.
        return Ok(VertexFoldReport { applicable: true, angle_sum_ok, ..VertexFoldReport::not_applicable(v) });
    }
    let blb = blb_violation(&angles, &labels);
    Ok(VertexFoldReport {
        vertex: v,
        applicable: true,
        mountains,
        valleys,
        degree: creases.len(),
        angle_sum_ok,
        maekawa_ok: mountains.abs_diff(valleys) == 2,
        kawasaki_ok: kawasaki_holds(&angles),
        blb_ok: blb.is_none(),
        alternating_sums: alternating_sums(&angles).unwrap_or((f64::NAN, f64::NAN)),
        angles,
        creases,
        blb_violation: blb,
    })
}

/// Maekawa verdict at `v` (the report carries every law; read the
/// `maekawa_ok` field).
pub fn check_maekawa(cp: &CreasePattern, v: usize) -> Result<VertexFoldReport, Diagnostic> {
    vertex_report(cp, v)
}

/// Kawasaki verdict at `v`; see [`check_maekawa`].
pub fn check_kawasaki(cp: &CreasePattern, v: usize) -> Result<VertexFoldReport, Diagnostic> {
    vertex_report(cp, v)
}

/// Big-little-big verdict at `v`; a violation comes back as the diagnostic.
pub fn check_big_little_big(cp: &CreasePattern, v: usize) -> Result<bool, Diagnostic> {
    let r = vertex_report(cp, v)?;
    match r.blb_violation {
        None => Ok(true),
        Some(_) => Err(vertex_diagnostic(&r, "blb")),
    }
}

fn vertex_diagnostic(r: &VertexFoldReport, reason: &str) -> Diagnostic {
    let n = r.creases.len();
    let detail = match reason {
        "angle-sum" => format!("sector angles do not close to 360 degrees around interior vertex {}", r.vertex),
        "odd-degree" => format!("interior vertex {} has an odd number of creases ({})", r.vertex, r.degree),
        "kawasaki" => format!(
            "alternating sector sums at vertex {} are {:.6} and {:.6} degrees, not 180 (sectors {})",
            r.vertex,
            r.alternating_sums.0.to_degrees(),
            r.alternating_sums.1.to_degrees(),
            degrees_list(&r.angles)
        ),
        "maekawa" => format!(
            "vertex {} has {} mountain and {} valley creases; they must differ by 2",
            r.vertex, r.mountains, r.valleys
        ),
        _ => {
            let i = r.blb_violation.unwrap_or(0);
            format!(
                "sector of {:.3} degrees at vertex {} is a strict local minimum bounded by two creases with the same assignment",
                r.angles.get(i).copied().unwrap_or(0.0).to_degrees(),
                r.vertex
            )
        }
    };
    let faulty: Vec<usize> = match (reason, r.blb_violation) {
        ("blb", Some(i)) => vec![r.creases[i], r.creases[(i + 1) % n]],
        _ => r.creases.clone(),
    };
    let pairs: Vec<Value> =
        r.creases.iter().zip(&r.angles).map(|(&e, &a)| json!([e, (a.to_degrees() * 1e6).round() / 1e6])).collect();
    Diagnostic::error(Code::GeomAngleConstraintViolation, format!("Angle constraint violated: {detail}."))
        .with("vertex", r.vertex)
        .with("reason", reason)
        .with("reasons", r.reasons())
        .with("faulty_crease_ids", faulty)
        .with("conflicting_crease_ids_and_angles", pairs)
}

/// One diagnostic per interior vertex that breaks a local law, in vertex
/// order. Degenerate creases produce a placement diagnostic instead.
pub fn check_flat_foldable_all(cp: &CreasePattern) -> Vec<Diagnostic> {
    let topo = cp.topology();
    let mut out = Vec::new();
    for v in topo.interior_vertices() {
        match vertex_report_with(cp, v, false) {
            Ok(r) => {
                if let Some(&reason) = r.reasons().first() {
                    out.push(vertex_diagnostic(&r, reason));
                }
            }
            Err(d) => out.push(d),
        }
    }
    out
}

/// Whether every interior vertex satisfies Kawasaki and Maekawa
/// respectively (odd degree counts against both).
pub fn global_law_summary(cp: &CreasePattern) -> (bool, bool) {
    let topo = cp.topology();
    let mut kawasaki = true;
    let mut maekawa = true;
    for v in topo.interior_vertices() {
        match vertex_report_with(cp, v, false) {
            Ok(r) => {
                kawasaki &= r.kawasaki_ok && r.angle_sum_ok;
                maekawa &= r.maekawa_ok;
            }
            Err(_) => {
                kawasaki = false;
                maekawa = false;
            }
        }
    }
    (kawasaki, maekawa)
}
