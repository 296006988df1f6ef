//! Interactive construction of a crease pattern against a reference, with
//! compile feedback and reward accounting.

pub mod draft;
pub mod transcript;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cp::{Assignment, CreasePattern};
use crate::diagnostics::{DiagnosticRecord, Diagnostics};
use crate::evaluator::{score_compiled, Compiled, EvalConfig, ScoreReport};
use crate::geometry::Vec2;

pub const DEFAULT_ROUND_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RewardConfig {
    /// Bonus for a successful compile.
    pub b_success: f64,
    /// Penalty for a failed compile.
    pub p_fail: f64,
    /// Cost of every action.
    pub c_step: f64,
}

impl Default for RewardConfig {
    fn default() -> Self {
        RewardConfig { b_success: 0.05, p_fail: 0.10, c_step: 0.01 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SessionConfig {
    pub reward: RewardConfig,
    pub round_cap: usize,
    pub eval: EvalConfig,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig { reward: RewardConfig::default(), round_cap: DEFAULT_ROUND_CAP, eval: EvalConfig::default() }
    }
}

/// Step reward of a compile. The first compile measures progress from 0.
pub fn compute_reward(prev_partial: Option<f64>, new_partial: f64, compile_ok: bool, cfg: &RewardConfig) -> f64 {
    if compile_ok {
        (new_partial - prev_partial.unwrap_or(0.0)) + cfg.b_success - cfg.c_step
    } else {
        -cfg.p_fail - cfg.c_step
    }
}

/// One agent request. `note` carries free-form planning text and is
/// ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "snake_case")]
pub enum Action {
    AddCrease {
        segment: [[f64; 2]; 2],
        assignment: Assignment,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    RemoveCrease {
        edge: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    SetAssignment {
        edge: usize,
        assignment: Assignment,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    Compile {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    Finish {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
}

impl Action {
    pub fn name(&self) -> &'static str {
        match self {
            Action::AddCrease { .. } => "add_crease",
            Action::RemoveCrease { .. } => "remove_crease",
            Action::SetAssignment { .. } => "set_assignment",
            Action::Compile { .. } => "compile",
            Action::Finish { .. } => "finish",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DraftSummary {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl DraftSummary {
    fn of(cp: &CreasePattern) -> Self {
        DraftSummary { vertices: cp.num_vertices(), edges: cp.num_edges(), faces: cp.num_faces() }
    }
}

/// Response to one action.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Feedback {
    pub round: usize,
    pub action: String,
    /// The edit applied, or the compile succeeded.
    pub ok: bool,
    pub diagnostics: Vec<DiagnosticRecord>,
    pub partial_score: Option<f64>,
    pub reward: f64,
    pub rounds_remaining: usize,
    pub done: bool,
    /// Total score of the final draft, on the terminal action.
    pub final_score: Option<f64>,
    pub draft: DraftSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub round: usize,
    pub action: String,
    /// Step reward; `reward` adds the final score on the terminal action.
    pub step_reward: f64,
    pub reward: f64,
    pub compile_ok: Option<bool>,
    pub partial_score: Option<f64>,
    pub final_score: Option<f64>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SessionError {
    #[error("reference does not compile: {0}")]
    Reference(Diagnostics),
    #[error("session is finished")]
    Done,
}

pub struct Session {
    config: SessionConfig,
    reference: Compiled,
    draft: CreasePattern,
    round: usize,
    prev_partial: Option<f64>,
    ledger: Vec<LedgerEntry>,
    done: bool,
    final_report: Option<ScoreReport>,
}

impl Session {
    /// Start from the bare sheet of a reference that must compile.
    pub fn new(reference: CreasePattern, config: SessionConfig) -> Result<Self, SessionError> {
        let reference = Compiled::new(reference, config.eval.layer_cap);
        if let Err(ds) = &reference.fold {
            return Err(SessionError::Reference(ds.clone()));
        }
        let draft = draft::bare_sheet(&reference.cp);
        Ok(Session { config, reference, draft, round: 0, prev_partial: None, ledger: Vec::new(), done: false, final_report: None })
    }

    pub fn config(&self) -> &SessionConfig {
        &self.config
    }

    pub fn reference(&self) -> &CreasePattern {
        &self.reference.cp
    }

    pub fn draft(&self) -> &CreasePattern {
        &self.draft
    }

    pub fn round(&self) -> usize {
        self.round
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    pub fn ledger(&self) -> &[LedgerEntry] {
        &self.ledger
    }

    pub fn final_report(&self) -> Option<&ScoreReport> {
        self.final_report.as_ref()
    }

    fn partial_score(&self, draft: &Compiled) -> f64 {
        let cfg = EvalConfig { allow_simplified_final: true, ..self.config.eval };
        score_compiled(draft, &self.reference, &cfg).s_total
    }

    /// Full score of the current draft, without simplified fallbacks for
    /// the final state.
    pub fn score_draft(&self) -> ScoreReport {
        let cfg = EvalConfig { allow_simplified_final: false, ..self.config.eval };
        score_compiled(&Compiled::new(self.draft.clone(), cfg.layer_cap), &self.reference, &cfg)
    }

    pub fn apply(&mut self, action: &Action) -> Result<Feedback, SessionError> {
        if self.done {
            return Err(SessionError::Done);
        }
        self.round += 1;
        let c_step = self.config.reward.c_step;
        let mut compile_ok = None;
        let mut partial = None;
        let (ok, diagnostics, step_reward) = match action {
            Action::AddCrease { segment: [a, b], assignment, .. } => {
                let edited = draft::add_crease(&self.draft, Vec2::new(a[0], a[1]), Vec2::new(b[0], b[1]), *assignment);
                self.edit(edited)
            }
            Action::RemoveCrease { edge, .. } => {
                let edited = draft::remove_crease(&self.draft, *edge);
                self.edit(edited)
            }
            Action::SetAssignment { edge, assignment, .. } => {
                let edited = draft::set_assignment(&self.draft, *edge, *assignment);
                self.edit(edited)
            }
            Action::Compile { .. } => {
                let compiled = Compiled::new(self.draft.clone(), self.config.eval.layer_cap);
                let score = self.partial_score(&compiled);
                let success = compiled.fold.is_ok();
                let reward = compute_reward(self.prev_partial, score, success, &self.config.reward);
                if success {
                    self.prev_partial = Some(score);
                }
                compile_ok = Some(success);
                partial = Some(score);
                let diagnostics = match &compiled.fold {
                    Ok(_) => Vec::new(),
                    Err(ds) => ds.iter().map(|d| d.to_record()).collect(),
                };
                (success, diagnostics, reward)
            }
            Action::Finish { .. } => (true, Vec::new(), -c_step),
        };

        let terminal = matches!(action, Action::Finish { .. }) || self.round >= self.config.round_cap;
        let mut reward = step_reward;
        let mut final_score = None;
        if terminal {
            let report = self.score_draft();
            final_score = Some(report.s_total);
            reward += report.s_total;
            self.final_report = Some(report);
            self.done = true;
        }
        self.ledger.push(LedgerEntry {
            round: self.round,
            action: action.name().to_owned(),
            step_reward,
            reward,
            compile_ok,
            partial_score: partial,
            final_score,
        });
        Ok(Feedback {
            round: self.round,
            action: action.name().to_owned(),
            ok,
            diagnostics,
            partial_score: partial,
            reward,
            rounds_remaining: if self.done { 0 } else { self.config.round_cap - self.round },
            done: self.done,
            final_score,
            draft: DraftSummary::of(&self.draft),
        })
    }

    fn edit(&mut self, edited: Result<CreasePattern, crate::diagnostics::Diagnostic>) -> (bool, Vec<DiagnosticRecord>, f64) {
        let c_step = self.config.reward.c_step;
        match edited {
            Ok(cp) => {
                self.draft = cp;
                (true, Vec::new(), -c_step)
            }
            Err(d) => (false, vec![d.to_record()], -c_step),
        }
    }
}
