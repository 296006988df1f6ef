//! Reward arithmetic, determinism, ledger conservation and the round cap.

use cpforge::cp::Assignment;
use cpforge::evaluator::{score_compiled, Compiled, EvalConfig};
use cpforge::session::transcript::{replay, TranscriptWriter};
use cpforge::session::{compute_reward, Action, Feedback, RewardConfig, Session, SessionConfig, SessionError};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::{common, Checker};

const REFERENCE: &str = "golden/half_valley_vertical.cp";

fn add(a: [f64; 2], b: [f64; 2], assignment: Assignment) -> Action {
    Action::AddCrease { segment: [a, b], assignment, note: None }
}

fn compile() -> Action {
    Action::Compile { note: None }
}

fn random_action(rng: &mut StdRng) -> Action {
    let mut coord = || [rng.gen_range(0..=4) as f64 / 4.0, rng.gen_range(0..=4) as f64 / 4.0];
    let (a, b) = (coord(), coord());
    let assignment = [Assignment::M, Assignment::V, Assignment::F][rng.gen_range(0..3)];
    match rng.gen_range(0..5) {
        0 | 1 => add(a, b, assignment),
        2 => Action::RemoveCrease { edge: rng.gen_range(0..12), note: None },
        3 => Action::SetAssignment { edge: rng.gen_range(0..12), assignment, note: None },
        _ => compile(),
    }
}

fn play(actions: &[Action], config: SessionConfig) -> (Session, Vec<Feedback>) {
    let mut s = Session::new(common::load(REFERENCE), config).expect("reference folds");
    let feedback = actions.iter().map_while(|a| s.apply(a).ok()).collect();
    (s, feedback)
}

fn conservation(c: &mut Checker, label: &str, s: &Session, feedback: &[Feedback]) {
    let cfg = s.config().reward;
    let ledger = s.ledger();
    c.eq(format!("{label}: one ledger entry per feedback"), ledger.len(), feedback.len());
    let from_ledger: f64 = ledger.iter().map(|e| e.reward).sum();
    let from_feedback: f64 = feedback.iter().map(|f| f.reward).sum();
    c.close(format!("{label}: ledger sum equals feedback sum"), from_ledger, from_feedback, 1e-12);

    let mut prev = None;
    let mut recomputed = 0.0;
    for e in ledger {
        let step = match (e.compile_ok, e.partial_score) {
            (Some(ok), Some(p)) => {
                let r = if ok { p - prev.unwrap_or(0.0) + cfg.b_success - cfg.c_step } else { -cfg.p_fail - cfg.c_step };
                if ok {
                    prev = Some(p);
                }
                r
            }
            _ => -cfg.c_step,
        };
        c.close(format!("{label}: round {} step reward", e.round), e.step_reward, step, 1e-12);
        recomputed += step + e.final_score.unwrap_or(0.0);
    }
    c.close(format!("{label}: recomputed total"), recomputed, from_ledger, 1e-12);
}

pub fn run(c: &mut Checker) {
    let r = RewardConfig::default();
    c.close("compile 0.40 -> 0.55", compute_reward(Some(0.40), 0.55, true, &r), 0.19, 1e-12);
    c.close("failed compile", compute_reward(Some(0.55), 0.9, false, &r), -0.11, 1e-12);
    c.close("no progress", compute_reward(Some(0.7), 0.7, true, &r), 0.04, 1e-12);

    // Adding the reference crease then compiling earns the partial score
    // measured independently, plus the success bonus, minus the step cost.
    let (s, fb) = play(&[add([0.5, 0.0], [0.5, 1.0], Assignment::V), compile()], SessionConfig::default());
    c.close("edit costs one step", fb[0].reward, -0.01, 1e-12);
    let eval = EvalConfig { allow_simplified_final: true, ..EvalConfig::default() };
    let layer_cap = eval.layer_cap;
    let independent =
        score_compiled(&Compiled::new(s.draft().clone(), layer_cap), &Compiled::new(common::load(REFERENCE), layer_cap), &eval);
    c.close("partial score matches the evaluator", fb[1].partial_score.unwrap(), independent.s_total, 0.0);
    c.close("compile reward", fb[1].reward, independent.s_total + 0.04, 1e-12);
    c.truth("compile succeeded", fb[1].ok);

    // Deterministic replay, in memory and through a transcript.
    let mut rng = StdRng::seed_from_u64(0x05e5_510a);
    for trial in 0..20 {
        let actions: Vec<Action> = (0..12).map(|_| random_action(&mut rng)).collect();
        let (s1, f1) = play(&actions, SessionConfig::default());
        let (_, f2) = play(&actions, SessionConfig::default());
        c.eq(format!("trial {trial}: replay identical"), &f1, &f2);
        conservation(c, &format!("trial {trial}"), &s1, &f1);

        // The cap: the tenth action ends the session, the eleventh is refused.
        c.eq(format!("trial {trial}: ten rounds played"), f1.len(), 10);
        let last = f1.last().unwrap();
        c.truth(format!("trial {trial}: tenth action terminal"), last.done && last.rounds_remaining == 0 && last.final_score.is_some());
        c.truth(format!("trial {trial}: earlier actions open"), f1[..9].iter().all(|f| !f.done && f.final_score.is_none()));
        let mut s = s1;
        c.eq(format!("trial {trial}: eleventh action"), s.apply(&compile()).unwrap_err(), SessionError::Done);

        if trial < 3 {
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("t.jsonl");
            let config = SessionConfig::default();
            let mut session = Session::new(common::load(REFERENCE), config).unwrap();
            let mut writer = TranscriptWriter::create(&path, session.reference(), &config).unwrap();
            for a in &actions[..10] {
                let f = session.apply(a).unwrap();
                writer.append(a, &f).unwrap();
            }
            drop(writer);
            match replay(&path) {
                Ok(replayed) => c.eq(format!("trial {trial}: transcript replay"), &replayed, &f1),
                Err(e) => c.truth(format!("trial {trial}: transcript replay failed: {e}"), false),
            }
        }
    }

    // An early finish also closes the session and adds the final score.
    let (s, fb) = play(&[add([0.5, 0.0], [0.5, 1.0], Assignment::V), Action::Finish { note: None }], SessionConfig::default());
    let fin = &fb[1];
    c.truth("finish is terminal", fin.done && s.is_done());
    c.close("finish reward", fin.reward, fin.final_score.unwrap() - 0.01, 1e-12);
    c.close("reconstructed draft scores 1", fin.final_score.unwrap(), 1.0, 1e-9);
    conservation(c, "finish", &s, &fb);
}
