//! Constraint-satisfaction similarity: overlap constraint sets compared by
//! Jaccard index, plus a penalty for losing local flat-foldability.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::metrics::count_similarity;
use crate::folder::{extract_constraints, quantize_point, source_centroids, ConstraintKind, FoldGeometry};

pub const CS_GATE: f64 = 0.2;
pub const CS_INTERNAL_FAILURE: f64 = 0.3;
pub const ONE_SIDE_EMPTY: f64 = 0.3;
pub const LAW_REGRESSION: f64 = 0.2;

/// How constraints are identified across the two patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstraintKeyMode {
    /// Quantized folded footprint plus the source centroids of the faces.
    #[default]
    Geometric,
    /// Face and edge indices, as written.
    RawIndex,
}

/// Canonical constraint keys, one set per kind in `ConstraintKind::ALL`
/// order.
pub type ConstraintSets = [BTreeSet<String>; 3];

pub fn constraint_keys(geom: &FoldGeometry, mode: ConstraintKeyMode) -> ConstraintSets {
    let centroids: Vec<[i64; 2]> = source_centroids(geom).into_iter().map(quantize_point).collect();
    let mut sets: ConstraintSets = Default::default();
    for c in extract_constraints(geom) {
        let slot = ConstraintKind::ALL.iter().position(|&k| k == c.kind).expect("known kind");
        let key = match mode {
            ConstraintKeyMode::Geometric => {
                let mut faces: Vec<[i64; 2]> = c.faces.iter().map(|&f| centroids[f]).collect();
                faces.sort_unstable();
                format!("{}|{:?}|{:?}|{:?}", c.kind.short(), c.footprint.centroid, c.footprint.extent, faces)
            }
            ConstraintKeyMode::RawIndex => format!("{}|{:?}|{:?}", c.kind.short(), c.faces, c.edges),
        };
        sets[slot].insert(key);
    }
    sets
}

pub fn jaccard(a: &BTreeSet<String>, b: &BTreeSet<String>) -> f64 {
    let union = a.union(b).count();
    if union == 0 {
        return 1.0;
    }
    a.intersection(b).count() as f64 / union as f64
}

/// Similarity of one constraint kind and whether the one-side-empty
/// fallback fired.
pub fn kind_similarity(gen: &BTreeSet<String>, reference: &BTreeSet<String>) -> (f64, bool) {
    match (gen.is_empty(), reference.is_empty()) {
        (true, true) => (1.0, false),
        (true, false) | (false, true) => (ONE_SIDE_EMPTY, true),
        _ => {
            let count = count_similarity(gen.len() as f64, reference.len() as f64);
            (0.7 * jaccard(gen, reference) + 0.3 * count, false)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintReport {
    #[serde(rename = "s_TT")]
    pub s_tt: Option<f64>,
    #[serde(rename = "s_TTo")]
    pub s_tto: Option<f64>,
    #[serde(rename = "s_Trans")]
    pub s_trans: Option<f64>,
    pub s_flatfold: Option<f64>,
    #[serde(rename = "s_K")]
    pub s_k: Option<f64>,
    #[serde(rename = "s_Mk")]
    pub s_mk: Option<f64>,
    /// Constraint counts per kind, generated then reference.
    pub counts: Option<[[usize; 3]; 2]>,
    pub score: f64,
}

impl ConstraintReport {
    fn flat(score: f64) -> Self {
        ConstraintReport {
            s_tt: None,
            s_tto: None,
            s_trans: None,
            s_flatfold: None,
            s_k: None,
            s_mk: None,
            counts: None,
            score,
        }
    }
}

/// What the constraint scorer needs from one side.
#[derive(Debug, Clone, Copy)]
pub struct ConstraintSide<'a> {
    pub foldable: bool,
    pub geometry: Option<&'a FoldGeometry>,
    /// Kawasaki and Maekawa hold at every interior vertex.
    pub laws: (bool, bool),
}

pub fn score_constraints(
    gen: ConstraintSide<'_>,
    reference: ConstraintSide<'_>,
    mode: ConstraintKeyMode,
) -> (ConstraintReport, Vec<&'static str>) {
    if reference.foldable && !gen.foldable {
        return (ConstraintReport::flat(CS_GATE), vec!["cs_gate"]);
    }
    let (Some(gg), Some(rg)) = (gen.geometry, reference.geometry) else {
        return (ConstraintReport::flat(CS_INTERNAL_FAILURE), vec!["cs_internal_failure"]);
    };
    let (gs, rs) = (constraint_keys(gg, mode), constraint_keys(rg, mode));
    let mut fired = Vec::new();
    let mut s = [0.0; 3];
    for (slot, kind) in ConstraintKind::ALL.iter().enumerate() {
        let (score, empty) = kind_similarity(&gs[slot], &rs[slot]);
        if empty {
            fired.push(match kind {
                ConstraintKind::TacoTaco => "s_TT_one_empty",
                ConstraintKind::TacoTortilla => "s_TTo_one_empty",
                ConstraintKind::Transitivity => "s_Trans_one_empty",
            });
        }
        s[slot] = score;
    }
    let law = |r: bool, g: bool, name: &'static str, fired: &mut Vec<&'static str>| {
        if r && !g {
            fired.push(name);
            LAW_REGRESSION
        } else {
            1.0
        }
    };
    let s_k = law(reference.laws.0, gen.laws.0, "s_K_regression", &mut fired);
    let s_mk = law(reference.laws.1, gen.laws.1, "s_Mk_regression", &mut fired);
    let s_flatfold = 0.5 * s_k + 0.5 * s_mk;
    let report = ConstraintReport {
        s_tt: Some(s[0]),
        s_tto: Some(s[1]),
        s_trans: Some(s[2]),
        s_flatfold: Some(s_flatfold),
        s_k: Some(s_k),
        s_mk: Some(s_mk),
        counts: Some([gs.each_ref().map(BTreeSet::len), rs.each_ref().map(BTreeSet::len)]),
        score: 0.3 * s[0] + 0.3 * s[1] + 0.2 * s[2] + 0.2 * s_flatfold,
    };
    (report, fired)
}
