//! Batch scoring of `<name>.gen.cp` / `<name>.ref.cp` pairs.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cp::parse_cp;
use crate::diagnostics::Category;
use crate::evaluator::{score_compiled, Compiled, EvalConfig};

const GEN_SUFFIX: &str = ".gen.cp";
const REF_SUFFIX: &str = ".ref.cp";
const CATEGORIES: [Category; 4] = [Category::Cse, Category::Gif, Category::Psi, Category::Afs];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairResult {
    pub name: String,
    pub parsed: bool,
    pub compiled: bool,
    /// Error categories raised while compiling the generated pattern.
    pub categories: Vec<Category>,
    /// Topological, geometric, foldability and final-state scores.
    pub dimensions: [f64; 4],
    #[serde(rename = "S_total")]
    pub s_total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Incidence {
    /// Fraction of generated patterns raising the category.
    pub incidence: f64,
    /// Fraction free of it.
    pub free: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub pairs: usize,
    pub skipped: usize,
    /// Compilation pass rate.
    pub cpr: Option<f64>,
    pub errors: BTreeMap<String, Incidence>,
    #[serde(rename = "S_topological")]
    pub s_topological: Option<f64>,
    #[serde(rename = "S_geometric")]
    pub s_geometric: Option<f64>,
    #[serde(rename = "S_foldability")]
    pub s_foldability: Option<f64>,
    #[serde(rename = "S_final_state")]
    pub s_final_state: Option<f64>,
    #[serde(rename = "S_total")]
    pub s_total: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub aggregate: Aggregate,
    pub results: Vec<PairResult>,
    /// Pairs that could not be scored, with the reason.
    pub skipped: Vec<(String, String)>,
}

enum Job {
    Pair { name: String, gen: String, reference: String },
    Skip { name: String, reason: String },
}

fn collect_jobs(dir: &Path) -> io::Result<Vec<Job>> {
    let mut names: BTreeMap<String, (bool, bool)> = BTreeMap::new();
    for entry in fs::read_dir(dir)? {
        let file = entry?.file_name().to_string_lossy().into_owned();
        if let Some(n) = file.strip_suffix(GEN_SUFFIX) {
            names.entry(n.to_owned()).or_default().0 = true;
        } else if let Some(n) = file.strip_suffix(REF_SUFFIX) {
            names.entry(n.to_owned()).or_default().1 = true;
        }
    }
    let mut jobs = Vec::new();
    for (name, present) in names {
        let job = match present {
            (true, true) => Job::Pair {
                gen: fs::read_to_string(dir.join(format!("{name}{GEN_SUFFIX}")))?,
                reference: fs::read_to_string(dir.join(format!("{name}{REF_SUFFIX}")))?,
                name,
            },
            (true, false) => Job::Skip { name, reason: "missing reference".into() },
            _ => Job::Skip { name, reason: "missing generated pattern".into() },
        };
        jobs.push(job);
    }
    Ok(jobs)
}

fn score_pair(name: &str, gen: &str, reference: &str, cfg: &EvalConfig) -> Result<PairResult, String> {
    let reference = parse_cp(reference).map_err(|e| format!("reference does not parse: {e}"))?;
    let gen = match parse_cp(gen) {
        Ok(cp) => cp,
        Err(_) => {
            return Ok(PairResult {
                name: name.to_owned(),
                parsed: false,
                compiled: false,
                categories: vec![Category::Cse],
                dimensions: [0.0; 4],
                s_total: 0.0,
            })
        }
    };
    let gen = Compiled::new(gen, cfg.layer_cap);
    let reference = Compiled::new(reference, cfg.layer_cap);
    let report = score_compiled(&gen, &reference, cfg);
    Ok(PairResult {
        name: name.to_owned(),
        parsed: true,
        compiled: gen.fold.is_ok(),
        categories: gen.fold.as_ref().err().map(|d| d.categories()).unwrap_or_default(),
        dimensions: report.dimensions(),
        s_total: report.s_total,
    })
}

/// Sums run over results sorted by name, so the aggregate does not depend
/// on scheduling.
pub fn aggregate(results: &[PairResult], skipped: usize) -> Aggregate {
    let mut sorted: Vec<&PairResult> = results.iter().collect();
    sorted.sort_by(|a, b| a.name.cmp(&b.name));
    let n = sorted.len();
    let mean = |f: &dyn Fn(&PairResult) -> f64| (n > 0).then(|| sorted.iter().map(|r| f(r)).sum::<f64>() / n as f64);
    let mut errors = BTreeMap::new();
    if n > 0 {
        for cat in CATEGORIES {
            let hits = sorted.iter().filter(|r| r.categories.contains(&cat)).count() as f64 / n as f64;
            errors.insert(cat.as_str().to_owned(), Incidence { incidence: hits, free: 1.0 - hits });
        }
    }
    Aggregate {
        pairs: n,
        skipped,
        cpr: mean(&|r| if r.compiled { 1.0 } else { 0.0 }),
        errors,
        s_topological: mean(&|r| r.dimensions[0]),
        s_geometric: mean(&|r| r.dimensions[1]),
        s_foldability: mean(&|r| r.dimensions[2]),
        s_final_state: mean(&|r| r.dimensions[3]),
        s_total: mean(&|r| r.s_total),
    }
}

pub fn run_bench(dir: &Path, jobs: usize, cfg: &EvalConfig) -> io::Result<BenchReport> {
    let work = collect_jobs(dir)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().map_err(io::Error::other)?;
    let outcomes: Vec<Result<PairResult, (String, String)>> = pool.install(|| {
        work.par_iter()
            .map(|job| match job {
                Job::Pair { name, gen, reference } => score_pair(name, gen, reference, cfg).map_err(|r| (name.clone(), r)),
                Job::Skip { name, reason } => Err((name.clone(), reason.clone())),
            })
            .collect()
    });
    let mut results = Vec::new();
    let mut skipped = Vec::new();
    for o in outcomes {
        match o {
            Ok(r) => results.push(r),
            Err(s) => {
                log::warn!("skipping pair {}: {}", s.0, s.1);
                skipped.push(s);
            }
        }
    }
    if results.is_empty() {
        log::warn!("no scorable pairs in {}", dir.display());
    }
    Ok(BenchReport { aggregate: aggregate(&results, skipped.len()), results, skipped })
}
