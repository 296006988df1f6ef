//! Hand-checkable evaluations of every scoring formula and fallback.

use std::collections::BTreeSet;

use cpforge::cp::{parse_cp, Assignment, CreasePattern};
use cpforge::evaluator::constraints::{kind_similarity, score_constraints, ConstraintKeyMode, ConstraintSide};
use cpforge::evaluator::metrics::{hausdorff_bidirectional, point_similarity, wasserstein_1d};
use cpforge::evaluator::topological::{crease_similarity, score_topological, vertex_similarity};
use cpforge::evaluator::{score_total, Compiled, EvalConfig, ScoreReport};

use crate::{common, Checker};

const TOL: f64 = 1e-9;

const SQUARE: &str = r#"{"vertices_coords": [[0,0],[1,0],[1,1],[0,1]],
    "edges_vertices": [[0,1],[1,2],[2,3],[3,0]],
    "edges_assignment": ["B","B","B","B"], "faces_vertices": [[0,1,2,3]]}"#;

const HALF: &str = r#"{"vertices_coords": [[0,0],[0.5,0],[1,0],[1,1],[0.5,1],[0,1]],
    "edges_vertices": [[0,1],[1,2],[2,3],[3,4],[4,5],[5,0],[1,4]],
    "edges_assignment": ["B","B","B","B","B","B","V"],
    "faces_vertices": [[0,1,4,5],[1,2,3,4]]}"#;

fn mix(m: usize, v: usize, b: usize) -> CreasePattern {
    let mut a = vec![Assignment::M; m];
    a.extend(vec![Assignment::V; v]);
    a.extend(vec![Assignment::B; b]);
    CreasePattern { edges_assignment: a, ..Default::default() }
}

fn keys(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn weights(c: &mut Checker, label: &str, r: &ScoreReport) {
    let t = &r.tss;
    c.close(format!("{label}: s_edge = 0.7/0.3"), t.s_edge, 0.7 * t.s_degree + 0.3 * t.s_conn, 1e-12);
    c.close(format!("{label}: s_face = 0.3/0.3/0.4"), t.s_face, 0.3 * t.s_fcount + 0.3 * t.s_favgv + 0.4 * t.s_fdist, 1e-12);
    if let Some(k) = &t.crease {
        c.close(format!("{label}: s_crease = 0.4/0.4/0.2 x p_L"), t.s_crease, (0.4 * k.s_m + 0.4 * k.s_v + 0.2 * k.s_b) * k.p_l, 1e-12);
    }
    c.close(
        format!("{label}: TSS = 0.2/0.3/0.3/0.2"),
        r.s_topological,
        0.2 * t.s_v + 0.3 * t.s_edge + 0.3 * t.s_face + 0.2 * t.s_crease,
        1e-12,
    );
    if let (Some(p), Some(a), Some(s)) = (r.gs.s_point, r.gs.s_angle, r.gs.s_size) {
        c.close(format!("{label}: GS = 0.4/0.3/0.3"), r.s_geometric, 0.4 * p + 0.3 * a + 0.3 * s, 1e-12);
    }
    if let (Some(tt), Some(tto), Some(tr), Some(ff)) = (r.cs.s_tt, r.cs.s_tto, r.cs.s_trans, r.cs.s_flatfold) {
        c.close(format!("{label}: CS = 0.3/0.3/0.2/0.2"), r.s_foldability, 0.3 * tt + 0.3 * tto + 0.2 * tr + 0.2 * ff, 1e-12);
        c.close(format!("{label}: s_flatfold = 0.5/0.5"), ff, 0.5 * r.cs.s_k.unwrap() + 0.5 * r.cs.s_mk.unwrap(), 1e-12);
    }
    if let (Some(sh), Some(la)) = (r.ffs.s_shape, r.ffs.s_layer) {
        c.close(format!("{label}: FFS = 0.7/0.3"), r.s_final_state, 0.7 * sh + 0.3 * la, 1e-12);
    }
    let d = r.dimensions();
    c.close(format!("{label}: total = 0.25 x 4"), r.s_total, 0.25 * d[0] + 0.25 * d[1] + 0.25 * d[2] + 0.25 * d[3], 1e-12);
}

pub fn run(c: &mut Checker) {
    // Vertex count similarity.
    c.close("s_v(10, 8)", vertex_similarity(10, 8), (-0.125f64).exp(), TOL);
    c.close("s_v(8, 10)", vertex_similarity(8, 10), (-0.125f64).exp(), TOL);
    c.close("s_v equal counts", vertex_similarity(9, 9), 1.0, 0.0);

    // Point similarity at a normalized Hausdorff distance of 0.2: both
    // clouds are already centred with unit radius.
    let a = [[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, -1.0, 0.0]];
    let b = [[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.8, 0.0], [0.0, -0.8, 0.0]];
    c.close("d_H of the probe clouds", hausdorff_bidirectional(&a, &b).unwrap(), 0.2, TOL);
    c.close("s_p at d_H = 0.2, k = 5", point_similarity(&a, &b, 5.0).unwrap(), (-1.0f64).exp(), TOL);

    // Wasserstein and Hausdorff examples.
    c.close("W([1,0],[0,1])", wasserstein_1d(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0, TOL);
    c.close("W([1,0,1],[0,2,0])", wasserstein_1d(&[1.0, 0.0, 1.0], &[0.0, 2.0, 0.0]).unwrap(), 0.5, TOL);
    c.close("W identical", wasserstein_1d(&[2.0, 5.0, 1.0], &[2.0, 5.0, 1.0]).unwrap(), 0.0, 0.0);
    c.truth("W rejects mismatched bins", wasserstein_1d(&[1.0], &[1.0, 1.0]).is_err());
    c.close("d_H two points", hausdorff_bidirectional(&[[0.0; 3]], &[[1.0, 0.0, 0.0]]).unwrap(), 1.0, TOL);
    c.close(
        "d_H subset",
        hausdorff_bidirectional(&[[0.0; 3], [1.0, 0.0, 0.0]], &[[0.0; 3]]).unwrap(),
        1.0,
        TOL,
    );

    // Crease mix example and its fallback.
    let k = crease_similarity(&mix(4, 4, 4), &mix(5, 3, 4)).unwrap();
    let s_crease = (0.4 * k.s_m + 0.4 * k.s_v + 0.2 * k.s_b) * k.p_l;
    c.close("s_crease (4,4,4) vs (5,3,4)", s_crease, 0.4 * 11.0 / 12.0 + 0.4 * 11.0 / 12.0 + 0.2, TOL);
    let no_assign = score_topological(&CreasePattern::default(), &mix(1, 1, 1));
    c.eq("s_crease without assignments", no_assign.s_crease, 0.2);

    // Topology of a half fold against the bare square, by hand:
    // degrees {2,2,2,2,3,3} vs {2,2,2,2} give W = (1/3)/3, faces 2 vs 1.
    let half = parse_cp(HALF).unwrap();
    let square = parse_cp(SQUARE).unwrap();
    let t = score_topological(&half, &square);
    c.close("s_v(6, 4)", t.s_v, (-0.25f64).exp(), TOL);
    c.close("s_degree", t.s_degree, 1.0 - 1.0 / 9.0, TOL);
    c.close("s_conn", t.s_conn, 1.0, 0.0);
    c.close("s_fcount(2, 1)", t.s_fcount, (-1.0f64).exp(), TOL);
    c.close("s_favgv", t.s_favgv, 1.0, TOL);
    c.close("s_fdist", t.s_fdist, 1.0, TOL);
    c.close("s_crease half vs square", t.s_crease, (0.4 + 0.4 * 6.0 / 7.0 + 0.2 * 6.0 / 7.0) * 4.0 / 7.0, TOL);

    // Constraint set similarity.
    let (s, _) = kind_similarity(&keys(&["a", "b", "c", "d"]), &keys(&["a", "b", "e", "f"]));
    c.close("s_Trans, 4 vs 4 with 2 shared", s, 0.7 * (2.0 / 6.0) + 0.3, TOL);
    c.eq("s_TT one side empty", kind_similarity(&keys(&["x", "y"]), &keys(&[])).0, 0.3);
    c.eq("s_TT both empty", kind_similarity(&keys(&[]), &keys(&[])).0, 1.0);

    // Fallback branches on real patterns.
    let cfg = EvalConfig::default();
    let reference = common::load("golden/half_valley_vertical.cp");
    let unfoldable = common::load("errors/gif_maekawa.cp");
    let r = score_total(&unfoldable, &reference, &cfg);
    c.eq("CS gate: ref foldable, gen not", r.s_foldability, 0.2);
    c.eq("FFS: gen fails to compile", r.s_final_state, 0.3);
    c.eq("GS simplified gen: s_angle default", r.gs.s_angle, Some(0.5));
    c.truth("unfoldable gen bounded below 0.8", r.s_total < 0.8);
    weights(c, "maekawa vs half fold", &r);

    let invalid = common::load("errors/cse_euler.cp");
    let r = score_total(&invalid, &reference, &cfg);
    c.eq("GS: gen without any model", r.s_geometric, 0.2);

    let broken = ConstraintSide { foldable: false, geometry: None, laws: (false, false) };
    let (cs, _) = score_constraints(broken, broken, ConstraintKeyMode::Geometric);
    c.eq("CS internal failure", cs.score, 0.3);

    // Flat-foldability regression: ref passes both laws but is ambiguous, so
    // the gate does not fire; gen breaks Maekawa only.
    let ambiguous = Compiled::new(common::load("errors/afs_open_flaps.cp"), 64);
    let maekawa = Compiled::new(unfoldable.clone(), 64);
    c.truth("ambiguous ref passes both laws", ambiguous.laws == (true, true));
    let (cs, _) = score_constraints(maekawa.constraint_side(), ambiguous.constraint_side(), ConstraintKeyMode::Geometric);
    c.eq("s_Mk regression", cs.s_mk, Some(0.2));
    c.eq("s_K kept", cs.s_k, Some(1.0));
    c.eq("s_flatfold", cs.s_flatfold, Some(0.6));

    let paper = score_total(&reference, &reference, &EvalConfig::paper_faithful());
    c.eq("s_layer placeholder", paper.ffs.s_layer, Some(0.5));
    c.close("paper-faithful FFS", paper.s_final_state, 0.85, TOL);

    // Weight accounting on unrelated foldable patterns.
    let kite = common::load("golden/kite.cp");
    let map = common::load("golden/map_fold.cp");
    weights(c, "kite vs map fold", &score_total(&kite, &map, &cfg));
    weights(c, "map fold vs half fold", &score_total(&map, &reference, &EvalConfig::paper_faithful()));
}
