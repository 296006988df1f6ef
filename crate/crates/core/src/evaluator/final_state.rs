//! Final folded state similarity: folded outline plus agreement of the
//! pairwise layer order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::metrics::{point_similarity, Point3};
use crate::folder::{quantize_point, source_centroids, FoldedState};

pub const FFS_COMPILE_FAILED: f64 = 0.3;
pub const S_LAYER_DEFAULT: f64 = 0.5;
const SHAPE_K: f64 = 5.0;

/// How `s_layer` is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LayerMode {
    /// Pairwise agreement of above/below relations.
    #[default]
    Full,
    /// Constant 0.5.
    PaperFaithful,
}

/// Faces are matched across patterns by source and folded centroid.
pub type FaceKey = ([i64; 2], [i64; 2]);

/// Above/below relation for every overlapping face pair, keyed by the
/// smaller face key first; `true` when that face is on top.
pub fn layer_relations(state: &FoldedState) -> BTreeMap<(FaceKey, FaceKey), bool> {
    let geom = &state.geometry;
    let keys: Vec<FaceKey> = source_centroids(geom)
        .into_iter()
        .zip(&geom.face_centroids)
        .map(|(s, &f)| (quantize_point(s), quantize_point(f)))
        .collect();
    let mut out = BTreeMap::new();
    for (a, b) in state.layer_order.pairs() {
        let (ka, kb) = (keys[a], keys[b]);
        if ka < kb {
            out.insert((ka, kb), true);
        } else {
            out.insert((kb, ka), false);
        }
    }
    out
}

/// Fraction of pair keys on which both relations exist and agree, over
/// the union of keys. Two empty relations agree fully.
pub fn layer_agreement(a: &BTreeMap<(FaceKey, FaceKey), bool>, b: &BTreeMap<(FaceKey, FaceKey), bool>) -> f64 {
    let mut union = a.len();
    let mut agree = 0;
    for (k, v) in b {
        match a.get(k) {
            Some(w) if w == v => agree += 1,
            Some(_) => {}
            None => union += 1,
        }
    }
    if union == 0 {
        1.0
    } else {
        agree as f64 / union as f64
    }
}

/// Folded outline of one side; `state` is absent for the simplified
/// stand-in.
#[derive(Debug, Clone, Copy)]
pub struct FinalSide<'a> {
    pub points: &'a [Point3],
    pub state: Option<&'a FoldedState>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinalStateReport {
    pub s_shape: Option<f64>,
    pub s_layer: Option<f64>,
    pub score: f64,
}

pub fn score_final_state(
    gen: Option<FinalSide<'_>>,
    reference: Option<FinalSide<'_>>,
    mode: LayerMode,
) -> (FinalStateReport, Vec<&'static str>) {
    let (Some(g), Some(r)) = (gen, reference) else {
        return (FinalStateReport { s_shape: None, s_layer: None, score: FFS_COMPILE_FAILED }, vec!["ffs_compile_failed"]);
    };
    let Ok(s_shape) = point_similarity(g.points, r.points, SHAPE_K) else {
        return (FinalStateReport { s_shape: None, s_layer: None, score: FFS_COMPILE_FAILED }, vec!["ffs_compile_failed"]);
    };
    let mut fired = Vec::new();
    let s_layer = match (mode, g.state, r.state) {
        (LayerMode::PaperFaithful, _, _) => {
            fired.push("s_layer_placeholder");
            S_LAYER_DEFAULT
        }
        (LayerMode::Full, Some(gs), Some(rs)) => layer_agreement(&layer_relations(gs), &layer_relations(rs)),
        (LayerMode::Full, _, _) => {
            fired.push("s_layer_missing");
            S_LAYER_DEFAULT
        }
    };
    let report = FinalStateReport { s_shape: Some(s_shape), s_layer: Some(s_layer), score: 0.7 * s_shape + 0.3 * s_layer };
    (report, fired)
}
