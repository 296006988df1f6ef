//! Benchmark aggregation on a synthetic directory with known composition,
//! identical across worker counts.

use std::fs;
use std::path::Path;

use clap::Parser;
use cpforge::cli::bench::BenchReport;
use cpforge::cli::{self, Cli, Io};
use cpforge::evaluator::{score_documents, EvalConfig};

use crate::{common, Checker};

const REFERENCE: &str = "golden/half_valley_vertical.cp";

const UNPARSABLE: [&str; 4] =
    ["errors/cse_truncated.cp", "errors/cse_unexpected_token.cp", "errors/cse_bad_assignment.cp", "errors/cse_coordinate_arity.cp"];
const FAILING: [(&str, &str); 8] = [
    ("errors/cse_euler.cp", "CSE"),
    ("errors/gif_maekawa.cp", "GIF"),
    ("errors/gif_kawasaki.cp", "GIF"),
    ("errors/gif_big_little_big.cp", "GIF"),
    ("errors/psi_strip_interlock_valley.cp", "PSI"),
    ("errors/psi_strip_interlock_mountain.cp", "PSI"),
    ("errors/afs_open_flaps.cp", "AFS"),
    ("errors/afs_thirds_roll.cp", "AFS"),
];

/// Writes the corpus and returns `(gen, ref)` texts for every pair.
fn build(dir: &Path) -> Vec<(String, String)> {
    let reference = common::read(REFERENCE);
    let mut pairs = Vec::new();
    let mut put = |name: String, gen: String, reference: String| {
        fs::write(dir.join(format!("{name}.gen.cp")), &gen).unwrap();
        fs::write(dir.join(format!("{name}.ref.cp")), &reference).unwrap();
        pairs.push((gen, reference));
    };
    for (i, (name, _)) in common::golden().into_iter().take(8).enumerate() {
        let text = common::read(&name);
        put(format!("ok{i:02}"), text.clone(), text);
    }
    for (i, name) in UNPARSABLE.iter().enumerate() {
        put(format!("syntax{i:02}"), common::read(name), reference.clone());
    }
    for (i, (name, _)) in FAILING.iter().enumerate() {
        put(format!("fail{i:02}"), common::read(name), reference.clone());
    }
    fs::write(dir.join("orphan.gen.cp"), &reference).unwrap();
    pairs
}

fn bench(dir: &Path, jobs: usize) -> (i32, BenchReport) {
    let cli = Cli::try_parse_from(["cpforge", "bench", dir.to_str().unwrap(), "--jobs", &jobs.to_string()]).unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(&cli, &mut Io { stdin: &mut &b""[..], stdout: &mut out, stderr: &mut err });
    (code, serde_json::from_slice(&out).expect("bench report"))
}

pub fn run(c: &mut Checker) {
    let dir = tempfile::tempdir().unwrap();
    let pairs = build(dir.path());
    c.eq("corpus size", pairs.len(), 20);

    let (code, report) = bench(dir.path(), 1);
    c.eq("exit code", code, 0);
    let a = &report.aggregate;
    c.eq("pairs", a.pairs, 20);
    c.eq("skipped", a.skipped, 1);
    c.eq("skipped name", report.skipped.iter().map(|s| s.0.as_str()).collect::<Vec<_>>(), vec!["orphan"]);
    c.eq("CPR", a.cpr, Some(0.4));

    let mut expect = [("CSE", 5.0), ("GIF", 0.0), ("PSI", 0.0), ("AFS", 0.0)];
    for (_, cat) in FAILING.iter().skip(1) {
        expect.iter_mut().find(|e| e.0 == *cat).unwrap().1 += 1.0;
    }
    for (cat, hits) in expect {
        let inc = &a.errors[cat];
        c.close(format!("{cat} incidence"), inc.incidence, hits / 20.0, 1e-12);
        c.close(format!("{cat} free"), inc.free, 1.0 - hits / 20.0, 1e-12);
    }

    // Mean total against per-pair scores computed directly; unparsable
    // patterns score 0.
    let cfg = EvalConfig::default();
    let direct: f64 = pairs.iter().map(|(g, r)| score_documents(g, r, &cfg).map(|s| s.s_total).unwrap_or(0.0)).sum();
    c.close("mean S_total", a.s_total.unwrap(), direct / 20.0, 1e-12);
    let identical: Vec<f64> = report.results.iter().filter(|r| r.name.starts_with("ok")).map(|r| r.s_total).collect();
    c.truth(format!("identical pairs score 1: {identical:?}"), identical.iter().all(|s| (s - 1.0).abs() < 1e-9));

    for jobs in [4, 8] {
        let (code, other) = bench(dir.path(), jobs);
        c.eq(format!("exit code with {jobs} jobs"), code, 0);
        c.eq(format!("aggregate with {jobs} jobs"), &other.aggregate, a);
    }
}
