//! Geometric similarity of folded shapes: point clouds, dihedral angle
//! distributions and bounding-box proportions.

use serde::{Deserialize, Serialize};

use super::metrics::{angle_histogram, box_proportions, cosine_similarity, point_similarity, Point3};

pub const GS_NO_MODEL: f64 = 0.2;
pub const S_ANGLE_DEFAULT: f64 = 0.5;
pub const S_SIZE_DEFAULT: f64 = 0.5;

/// Folded point set of one side; `angles` is `None` when the folded
/// geometry is the simplified stand-in.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeModel {
    pub points: Vec<Point3>,
    pub angles: Option<Vec<f64>>,
    pub simplified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometricReport {
    pub s_point: Option<f64>,
    pub s_angle: Option<f64>,
    pub s_size: Option<f64>,
    pub gen_simplified: bool,
    pub ref_simplified: bool,
    pub score: f64,
}

/// Returns the report and the names of the fallbacks that fired.
pub fn score_geometric(
    gen: Option<&ShapeModel>,
    reference: Option<&ShapeModel>,
    k: f64,
) -> (GeometricReport, Vec<&'static str>) {
    let (Some(g), Some(r)) = (gen, reference) else {
        let report = GeometricReport {
            s_point: None,
            s_angle: None,
            s_size: None,
            gen_simplified: false,
            ref_simplified: false,
            score: GS_NO_MODEL,
        };
        return (report, vec!["gs_no_model"]);
    };
    let mut fired = Vec::new();
    if g.points.is_empty() || r.points.is_empty() {
        let report = GeometricReport {
            s_point: None,
            s_angle: None,
            s_size: None,
            gen_simplified: g.simplified,
            ref_simplified: r.simplified,
            score: GS_NO_MODEL,
        };
        return (report, vec!["gs_no_model"]);
    }
    let s_point = point_similarity(&g.points, &r.points, k).expect("nonempty point sets");

    let s_angle = match (&g.angles, &r.angles) {
        (Some(a), Some(b)) if !a.is_empty() && !b.is_empty() => {
            cosine_similarity(&angle_histogram(a), &angle_histogram(b))
        }
        _ => {
            fired.push("s_angle_default");
            S_ANGLE_DEFAULT
        }
    };

    let s_size = match (box_proportions(&g.points), box_proportions(&r.points)) {
        (Some(a), Some(b)) => cosine_similarity(&a, &b),
        _ => {
            fired.push("s_size_default");
            S_SIZE_DEFAULT
        }
    };

    if g.simplified {
        fired.push("gs_simplified_gen");
    }
    if r.simplified {
        fired.push("gs_simplified_ref");
    }
    let report = GeometricReport {
        s_point: Some(s_point),
        s_angle: Some(s_angle),
        s_size: Some(s_size),
        gen_simplified: g.simplified,
        ref_simplified: r.simplified,
        score: 0.4 * s_point + 0.3 * s_angle + 0.3 * s_size,
    };
    (report, fired)
}
