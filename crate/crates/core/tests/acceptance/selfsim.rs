//! Every golden pattern scores 1 against itself, 0.9625 with the constant
//! layer placeholder.

use cpforge::evaluator::{score_total, EvalConfig};

use crate::{common, Checker};

pub fn run(c: &mut Checker) {
    let golden = common::golden();
    c.truth(format!("golden corpus has {} patterns, need 20", golden.len()), golden.len() >= 20);
    for (name, cp) in &golden {
        let full = score_total(cp, cp, &EvalConfig::default());
        c.close(format!("{name} full"), full.s_total, 1.0, 1e-9);
        c.truth(format!("{name} full: no fallback, got {:?}", full.fallbacks), full.fallbacks.is_empty());
        let paper = score_total(cp, cp, &EvalConfig::paper_faithful());
        c.close(format!("{name} paper-faithful"), paper.s_total, 0.9625, 1e-9);
    }
}
