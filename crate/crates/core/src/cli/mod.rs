//! Command-line interface. Every command returns its exit status:
//! 0 success, 1 compile or scoring failure, 2 usage or I/O error.

pub mod bench;

use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cp::{parse_cp, validate_structure, CreasePattern};
use crate::diagnostics::{Diagnostic, DiagnosticRecord, Diagnostics};
use crate::evaluator::{score_documents, ConstraintKeyMode, EvalConfig, LayerMode, ScoreError, DEFAULT_K};
use crate::folder::{fold_with, FoldOptions, DEFAULT_LAYER_CAP};
use crate::render::{render_cp, render_export, render_folded};
use crate::session::transcript::{replay, ReplayError, TranscriptWriter};
use crate::session::{Action, RewardConfig, Session, SessionConfig, SessionError, DEFAULT_ROUND_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_IO: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Full,
    PaperFaithful,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KeyMode {
    Geometric,
    RawIndex,
}

#[derive(Debug, Parser)]
#[command(name = "cpforge", version, about = "Compile, fold, diagnose and score origami crease patterns")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Layer similarity mode used when scoring.
    #[arg(long, global = true, value_enum, env = "CPFORGE_MODE", default_value = "full")]
    pub mode: Mode,
    /// Sensitivity of the point-cloud score.
    #[arg(long, global = true, default_value_t = DEFAULT_K)]
    pub k: f64,
    /// Largest allowed number of layers in any overlap cell.
    #[arg(long, global = true, default_value_t = DEFAULT_LAYER_CAP)]
    pub layer_cap: usize,
    /// How overlap constraints are matched across patterns.
    #[arg(long, global = true, value_enum, default_value = "geometric")]
    pub key_mode: KeyMode,
    /// Write the output document here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl GlobalOpts {
    pub fn eval_config(&self) -> EvalConfig {
        EvalConfig {
            layer_mode: match self.mode {
                Mode::Full => LayerMode::Full,
                Mode::PaperFaithful => LayerMode::PaperFaithful,
            },
            k: self.k,
            key_mode: match self.key_mode {
                KeyMode::Geometric => ConstraintKeyMode::Geometric,
                KeyMode::RawIndex => ConstraintKeyMode::RawIndex,
            },
            layer_cap: self.layer_cap,
            allow_simplified_final: false,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a crease pattern's structure.
    Validate { file: PathBuf },
    /// Fold a crease pattern and print its folded state.
    Fold {
        file: PathBuf,
        /// Try every M/V completion of unassigned creases.
        #[arg(long)]
        complete_unassigned: bool,
    },
    /// Score a generated pattern against a reference.
    Score { gen: PathBuf, reference: PathBuf },
    /// Draw a crease pattern or folded state as SVG.
    Render {
        file: PathBuf,
        /// Fold the pattern first and draw the folded state.
        #[arg(long)]
        folded: bool,
    },
    /// Run an interactive session: actions on stdin, feedback on stdout,
    /// one JSON record per line.
    Session {
        /// Reference pattern the draft is scored against.
        #[arg(long = "ref", required_unless_present = "replay")]
        reference: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ROUND_CAP)]
        rounds: usize,
        #[arg(long, default_value_t = RewardConfig::default().b_success)]
        b_success: f64,
        #[arg(long, default_value_t = RewardConfig::default().p_fail)]
        p_fail: f64,
        #[arg(long, default_value_t = RewardConfig::default().c_step)]
        c_step: f64,
        /// Append every step to this transcript.
        #[arg(long)]
        transcript: Option<PathBuf>,
        /// Re-run a transcript and check every feedback is reproduced.
        #[arg(long, conflicts_with = "reference")]
        replay: Option<PathBuf>,
    },
    /// Score every `<name>.gen.cp` / `<name>.ref.cp` pair in a directory.
    Bench {
        dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// Standard streams, injectable for tests.
pub struct Io<'a> {
    pub stdin: &'a mut dyn BufRead,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

fn read(path: &Path, io: &mut Io<'_>) -> Result<String, i32> {
    fs::read_to_string(path).map_err(|e| {
        let _ = writeln!(io.stderr, "error: cannot read {}: {e}", path.display());
        EXIT_IO
    })
}

fn report_diagnostics<'d>(ds: impl IntoIterator<Item = &'d Diagnostic>, io: &mut Io<'_>) {
    for d in ds {
        let _ = writeln!(io.stderr, "{}", d.render());
    }
}

fn load(path: &Path, io: &mut Io<'_>) -> Result<CreasePattern, i32> {
    let text = read(path, io)?;
    parse_cp(&text).map_err(|ds| {
        report_diagnostics(ds.iter(), io);
        EXIT_FAIL
    })
}

/// Write `text` to `--out` or standard output.
fn emit(text: &str, out: Option<&Path>, io: &mut Io<'_>) -> i32 {
    match out {
        Some(p) => match fs::write(p, text) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(io.stderr, "error: cannot write {}: {e}", p.display());
                EXIT_IO
            }
        },
        None => match io.stdout.write_all(text.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(_) => EXIT_IO,
        },
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct DiagnosticDocument {
    ok: bool,
    diagnostics: Vec<DiagnosticRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    valid: Option<bool>,
}

fn diagnostic_document(ok: bool, ds: &[Diagnostic], valid: Option<bool>) -> String {
    to_json(&DiagnosticDocument { ok, diagnostics: ds.iter().map(Diagnostic::to_record).collect(), valid })
}

pub fn run(cli: &Cli, io: &mut Io<'_>) -> i32 {
    let g = &cli.global;
    let out = g.out.as_deref();
    let result = match &cli.command {
        Command::Validate { file } => cmd_validate(file, out, io),
        Command::Fold { file, complete_unassigned } => cmd_fold(file, *complete_unassigned, g, io),
        Command::Score { gen, reference } => cmd_score(gen, reference, g, io),
        Command::Render { file, folded } => cmd_render(file, *folded, g, io),
        Command::Session { reference, rounds, b_success, p_fail, c_step, transcript, replay } => match replay {
            Some(path) => cmd_replay(path, io),
            None => {
                let config = SessionConfig {
                    reward: RewardConfig { b_success: *b_success, p_fail: *p_fail, c_step: *c_step },
                    round_cap: *rounds,
                    eval: g.eval_config(),
                };
                let reference = reference.as_deref().expect("clap requires --ref without --replay");
                cmd_session(reference, config, transcript.as_deref(), io)
            }
        },
        Command::Bench { dir, jobs } => cmd_bench(dir, *jobs, g, io),
    };
    result.unwrap_or_else(|code| code)
}

pub fn cmd_validate(file: &Path, out: Option<&Path>, io: &mut Io<'_>) -> Result<i32, i32> {
    let text = read(file, io)?;
    let (valid, ds) = match parse_cp(&text) {
        Err(Diagnostics(ds)) => (false, ds),
        Ok(cp) => {
            let r = validate_structure(&cp);
            (r.valid, r.diagnostics)
        }
    };
    report_diagnostics(&ds, io);
    let _ = writeln!(io.stderr, "{}: {}", file.display(), if valid { "valid" } else { "invalid" });
    if let Some(p) = out {
        let code = emit(&diagnostic_document(valid, &ds, Some(valid)), Some(p), io);
        if code != EXIT_OK {
            return Err(code);
        }
    }
    Ok(if valid { EXIT_OK } else { EXIT_FAIL })
}

pub fn cmd_fold(file: &Path, complete_unassigned: bool, g: &GlobalOpts, io: &mut Io<'_>) -> Result<i32, i32> {
    let cp = load(file, io)?;
    let opts = FoldOptions { layer_cap: g.layer_cap, complete_unassigned };
    match fold_with(&cp, &opts) {
        Ok(state) => Ok(emit(&to_json(&state.export()), g.out.as_deref(), io)),
        Err(Diagnostics(ds)) => {
            report_diagnostics(&ds, io);
            let code = emit(&diagnostic_document(false, &ds, None), g.out.as_deref(), io);
            Ok(if code == EXIT_OK { EXIT_FAIL } else { code })
        }
    }
}

pub fn cmd_score(gen: &Path, reference: &Path, g: &GlobalOpts, io: &mut Io<'_>) -> Result<i32, i32> {
    let gen_text = read(gen, io)?;
    let ref_text = read(reference, io)?;
    match score_documents(&gen_text, &ref_text, &g.eval_config()) {
        Ok(report) => {
            let _ = writeln!(
                io.stdout,
                "S_total={:.6} S_topological={:.6} S_geometric={:.6} S_foldability={:.6} S_final_state={:.6}",
                report.s_total, report.s_topological, report.s_geometric, report.s_foldability, report.s_final_state
            );
            if let Some(p) = g.out.as_deref() {
                let code = emit(&to_json(&report), Some(p), io);
                if code != EXIT_OK {
                    return Err(code);
                }
            }
            Ok(EXIT_OK)
        }
        Err(ScoreError::Generated(ds)) | Err(ScoreError::Reference(ds)) => {
            report_diagnostics(ds.iter(), io);
            if let Some(p) = g.out.as_deref() {
                emit(&diagnostic_document(false, &ds.0, None), Some(p), io);
            }
            Ok(EXIT_FAIL)
        }
    }
}

pub fn cmd_render(file: &Path, folded: bool, g: &GlobalOpts, io: &mut Io<'_>) -> Result<i32, i32> {
    let text = read(file, io)?;
    let is_export = serde_json::from_str::<serde_json::Value>(&text)
        .ok()
        .filter(|v| v.get("P").is_some())
        .map(|v| render_export(&v));
    let svg = match is_export {
        Some(Ok(svg)) => svg,
        Some(Err(e)) => {
            let _ = writeln!(io.stderr, "error: {e}");
            return Ok(EXIT_FAIL);
        }
        None => {
            let cp = parse_cp(&text).map_err(|ds| {
                report_diagnostics(ds.iter(), io);
                EXIT_FAIL
            })?;
            if folded {
                match fold_with(&cp, &FoldOptions { layer_cap: g.layer_cap, ..Default::default() }) {
                    Ok(state) => render_folded(&state),
                    Err(ds) => {
                        report_diagnostics(ds.iter(), io);
                        return Ok(EXIT_FAIL);
                    }
                }
            } else {
                render_cp(&cp)
            }
        }
    };
    Ok(emit(&svg, g.out.as_deref(), io))
}

#[derive(Serialize)]
struct ProtocolError {
    error: String,
}

pub fn cmd_session(reference: &Path, config: SessionConfig, transcript: Option<&Path>, io: &mut Io<'_>) -> Result<i32, i32> {
    let cp = load(reference, io)?;
    let mut session = match Session::new(cp, config) {
        Ok(s) => s,
        Err(SessionError::Reference(ds)) => {
            report_diagnostics(ds.iter(), io);
            return Ok(EXIT_FAIL);
        }
        Err(e) => {
            let _ = writeln!(io.stderr, "error: {e}");
            return Ok(EXIT_FAIL);
        }
    };
    let mut writer = match transcript {
        Some(p) => Some(TranscriptWriter::create(p, session.reference(), session.config()).map_err(|e| {
            let _ = writeln!(io.stderr, "error: cannot write {}: {e}", p.display());
            EXIT_IO
        })?),
        None => None,
    };
    let mut line = String::new();
    loop {
        line.clear();
        match io.stdin.read_line(&mut line) {
            Ok(0) => break,
            Ok(_) => {}
            Err(e) => {
                let _ = writeln!(io.stderr, "error: {e}");
                return Err(EXIT_IO);
            }
        }
        if line.trim().is_empty() {
            continue;
        }
        let response = match serde_json::from_str::<Action>(line.trim()) {
            Err(e) => serde_json::to_string(&ProtocolError { error: format!("malformed action: {e}") }),
            Ok(action) => match session.apply(&action) {
                Ok(fb) => {
                    if let Some(w) = writer.as_mut() {
                        if let Err(e) = w.append(&action, &fb) {
                            let _ = writeln!(io.stderr, "error: transcript: {e}");
                            return Err(EXIT_IO);
                        }
                    }
                    serde_json::to_string(&fb)
                }
                Err(e) => serde_json::to_string(&ProtocolError { error: e.to_string() }),
            },
        }
        .expect("serializable");
        if writeln!(io.stdout, "{response}").and_then(|_| io.stdout.flush()).is_err() {
            return Err(EXIT_IO);
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_replay(path: &Path, io: &mut Io<'_>) -> Result<i32, i32> {
    match replay(path) {
        Ok(steps) => {
            let _ = writeln!(io.stdout, "replayed {} steps: identical", steps.len());
            Ok(EXIT_OK)
        }
        Err(ReplayError::Io(e)) => {
            let _ = writeln!(io.stderr, "error: cannot read {}: {e}", path.display());
            Ok(EXIT_IO)
        }
        Err(e) => {
            let _ = writeln!(io.stderr, "error: {e}");
            Ok(EXIT_FAIL)
        }
    }
}

pub fn cmd_bench(dir: &Path, jobs: usize, g: &GlobalOpts, io: &mut Io<'_>) -> Result<i32, i32> {
    let report = bench::run_bench(dir, jobs, &g.eval_config()).map_err(|e| {
        let _ = writeln!(io.stderr, "error: cannot read {}: {e}", dir.display());
        EXIT_IO
    })?;
    let a = &report.aggregate;
    let fmt = |x: Option<f64>| x.map_or_else(|| "n/a".to_owned(), |v| format!("{v:.6}"));
    let _ = writeln!(
        io.stderr,
        "pairs={} skipped={} CPR={} S_total={}",
        a.pairs,
        a.skipped,
        fmt(a.cpr),
        fmt(a.s_total)
    );
    Ok(emit(&to_json(&report), g.out.as_deref(), io))
}
