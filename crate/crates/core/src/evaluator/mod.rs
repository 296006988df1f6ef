//! Similarity scoring of a generated crease pattern against a reference
//! along four dimensions: topology, folded geometry, constraint
//! satisfaction and final folded state.

pub mod constraints;
pub mod final_state;
pub mod geometric;
pub mod metrics;
pub mod topological;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use constraints::{score_constraints, ConstraintKeyMode, ConstraintReport, ConstraintSide};
pub use final_state::{score_final_state, FinalSide, FinalStateReport, LayerMode};
pub use geometric::{score_geometric, GeometricReport, ShapeModel};
pub use metrics::{hausdorff_bidirectional, wasserstein_1d, Point3};
pub use topological::{score_topological, TopologicalReport};

use crate::cp::{parse_cp, validate_structure, CreasePattern};
use crate::diagnostics::{DiagnosticRecord, Diagnostics};
use crate::foldability::global_law_summary;
use crate::folder::{dihedral_angles, fold_geometry, fold_with, FoldGeometry, FoldOptions, FoldedState, DEFAULT_LAYER_CAP};

pub const DEFAULT_K: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub layer_mode: LayerMode,
    /// Sensitivity of the point-cloud score.
    pub k: f64,
    pub key_mode: ConstraintKeyMode,
    pub layer_cap: usize,
    /// Let the final-state score use unfolded coordinates when a side fails
    /// to compile but is structurally valid.
    pub allow_simplified_final: bool,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            layer_mode: LayerMode::Full,
            k: DEFAULT_K,
            key_mode: ConstraintKeyMode::Geometric,
            layer_cap: DEFAULT_LAYER_CAP,
            allow_simplified_final: false,
        }
    }
}

impl EvalConfig {
    pub fn paper_faithful() -> Self {
        EvalConfig { layer_mode: LayerMode::PaperFaithful, ..Default::default() }
    }
}

/// One side of a comparison, compiled once.
#[derive(Debug, Clone)]
pub struct Compiled {
    pub cp: CreasePattern,
    pub valid: bool,
    pub fold: Result<FoldedState, Diagnostics>,
    /// Unfiltered folded geometry when the fold itself was refused.
    fallback_geometry: Option<FoldGeometry>,
    /// Kawasaki and Maekawa hold at every interior vertex.
    pub laws: (bool, bool),
}

impl Compiled {
    pub fn new(cp: CreasePattern, layer_cap: usize) -> Self {
        let valid = validate_structure(&cp).valid;
        let fold = fold_with(&cp, &FoldOptions { layer_cap, ..Default::default() });
        let fallback_geometry = match (&fold, valid) {
            (Err(_), true) => fold_geometry(&cp).ok(),
            _ => None,
        };
        let laws = if valid { global_law_summary(&cp) } else { (false, false) };
        Compiled { cp, valid, fold, fallback_geometry, laws }
    }

    pub fn state(&self) -> Option<&FoldedState> {
        self.fold.as_ref().ok()
    }

    pub fn geometry(&self) -> Option<&FoldGeometry> {
        self.state().map(|s| &s.geometry).or(self.fallback_geometry.as_ref())
    }

    pub fn constraint_side(&self) -> ConstraintSide<'_> {
        ConstraintSide { foldable: self.state().is_some(), geometry: self.geometry(), laws: self.laws }
    }

    fn folded_points(&self) -> Option<Vec<Point3>> {
        self.state().map(|s| s.geometry.vertices.iter().map(|v| [v.x, v.y, 0.0]).collect())
    }

    fn sheet_points(&self) -> Vec<Point3> {
        self.cp.vertices_coords.iter().map(|&[x, y]| [x, y, 0.0]).collect()
    }

    /// Folded shape, or the unfolded sheet when only the structure is sound.
    pub fn shape(&self) -> Option<ShapeModel> {
        if let Some(s) = self.state() {
            return Some(ShapeModel {
                points: self.folded_points().expect("folded"),
                angles: Some(dihedral_angles(&s.geometry)),
                simplified: false,
            });
        }
        self.valid.then(|| ShapeModel { points: self.sheet_points(), angles: None, simplified: true })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompileSummary {
    pub ok: bool,
    pub diagnostics: Vec<DiagnosticRecord>,
}

impl CompileSummary {
    fn of(c: &Compiled) -> Self {
        match &c.fold {
            Ok(_) => CompileSummary { ok: true, diagnostics: Vec::new() },
            Err(ds) => CompileSummary { ok: false, diagnostics: ds.iter().map(|d| d.to_record()).collect() },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub layer_mode: LayerMode,
    pub key_mode: ConstraintKeyMode,
    pub k: f64,
    pub tss: TopologicalReport,
    pub gs: GeometricReport,
    pub cs: ConstraintReport,
    pub ffs: FinalStateReport,
    #[serde(rename = "S_topological")]
    pub s_topological: f64,
    #[serde(rename = "S_geometric")]
    pub s_geometric: f64,
    #[serde(rename = "S_foldability")]
    pub s_foldability: f64,
    #[serde(rename = "S_final_state")]
    pub s_final_state: f64,
    #[serde(rename = "S_total")]
    pub s_total: f64,
    /// Every fallback constant or substitution that fired.
    pub fallbacks: Vec<String>,
    pub gen_compile: CompileSummary,
    pub ref_compile: CompileSummary,
}

impl ScoreReport {
    /// The four dimension scores in report order.
    pub fn dimensions(&self) -> [f64; 4] {
        [self.s_topological, self.s_geometric, self.s_foldability, self.s_final_state]
    }
}

/// Score two already compiled sides.
pub fn score_compiled(gen: &Compiled, reference: &Compiled, cfg: &EvalConfig) -> ScoreReport {
    let mut fallbacks: Vec<String> = Vec::new();

    let tss = score_topological(&gen.cp, &reference.cp);
    if tss.crease.is_none() {
        fallbacks.push("s_crease_no_assignments".into());
    }

    let (gs, fired) = score_geometric(gen.shape().as_ref(), reference.shape().as_ref(), cfg.k);
    fallbacks.extend(fired.into_iter().map(String::from));

    let (cs, fired) = score_constraints(gen.constraint_side(), reference.constraint_side(), cfg.key_mode);
    fallbacks.extend(fired.into_iter().map(String::from));

    let gen_pts = final_points(gen, cfg);
    let ref_pts = final_points(reference, cfg);
    let (ffs, fired) = score_final_state(
        gen_pts.as_deref().map(|points| FinalSide { points, state: gen.state() }),
        ref_pts.as_deref().map(|points| FinalSide { points, state: reference.state() }),
        cfg.layer_mode,
    );
    fallbacks.extend(fired.into_iter().map(String::from));

    let dims = [tss.score, gs.score, cs.score, ffs.score];
    let s_total = 0.25 * (dims[0] + dims[1] + dims[2] + dims[3]);
    ScoreReport {
        layer_mode: cfg.layer_mode,
        key_mode: cfg.key_mode,
        k: cfg.k,
        s_topological: dims[0],
        s_geometric: dims[1],
        s_foldability: dims[2],
        s_final_state: dims[3],
        s_total,
        tss,
        gs,
        cs,
        ffs,
        fallbacks,
        gen_compile: CompileSummary::of(gen),
        ref_compile: CompileSummary::of(reference),
    }
}

fn final_points(c: &Compiled, cfg: &EvalConfig) -> Option<Vec<Point3>> {
    c.folded_points().or_else(|| (cfg.allow_simplified_final && c.valid).then(|| c.sheet_points()))
}

/// Score a generated pattern against a reference.
pub fn score_total(gen: &CreasePattern, reference: &CreasePattern, cfg: &EvalConfig) -> ScoreReport {
    score_compiled(&Compiled::new(gen.clone(), cfg.layer_cap), &Compiled::new(reference.clone(), cfg.layer_cap), cfg)
}

#[derive(Debug, Error)]
pub enum ScoreError {
    #[error("generated pattern does not parse: {0}")]
    Generated(Diagnostics),
    #[error("reference pattern does not parse: {0}")]
    Reference(Diagnostics),
}

/// Parse and score two documents. An unparsable generated pattern yields
/// its syntax diagnostics instead of a score.
pub fn score_documents(gen: &str, reference: &str, cfg: &EvalConfig) -> Result<ScoreReport, ScoreError> {
    let gen = parse_cp(gen).map_err(ScoreError::Generated)?;
    let reference = parse_cp(reference).map_err(ScoreError::Reference)?;
    Ok(score_total(&gen, &reference, cfg))
}
