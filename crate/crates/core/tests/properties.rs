mod common;

use cpforge::cp::{parse_cp, serialize_cp, Assignment, CreasePattern};
use cpforge::evaluator::topological::vertex_similarity;
use cpforge::evaluator::{score_total, EvalConfig};
use proptest::prelude::*;

/// Unit-height strip with the given panel widths (in quarters) and crease
/// assignments.
fn strip(widths: &[u8], creases: &[Assignment]) -> CreasePattern {
    let mut xs = vec![0.0];
    for &w in widths {
        xs.push(xs.last().unwrap() + f64::from(w) / 4.0);
    }
    let n = xs.len();
    let vertices_coords = xs.iter().map(|&x| [x, 0.0]).chain(xs.iter().map(|&x| [x, 1.0])).collect();
    let mut edges_vertices = Vec::new();
    let mut edges_assignment = Vec::new();
    for i in 0..n - 1 {
        edges_vertices.extend([[i, i + 1], [n + i, n + i + 1]]);
        edges_assignment.extend([Assignment::B, Assignment::B]);
    }
    edges_vertices.extend([[0, n], [n - 1, 2 * n - 1]]);
    edges_assignment.extend([Assignment::B, Assignment::B]);
    for i in 1..n - 1 {
        edges_vertices.push([i, n + i]);
        edges_assignment.push(creases[(i - 1) % creases.len()]);
    }
    let faces_vertices = (0..n - 1).map(|i| vec![i, i + 1, n + i + 1, n + i]).collect();
    CreasePattern { vertices_coords, edges_vertices, edges_assignment, faces_vertices, ..Default::default() }
}

fn assignment() -> impl Strategy<Value = Assignment> {
    prop_oneof![Just(Assignment::M), Just(Assignment::V), Just(Assignment::F), Just(Assignment::U)]
}

fn strips() -> impl Strategy<Value = CreasePattern> {
    (prop::collection::vec(1u8..=4, 2..7), prop::collection::vec(assignment(), 1..6)).prop_map(|(w, a)| strip(&w, &a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialize_then_parse_is_identity(cp in strips()) {
        let text = serialize_cp(&cp);
        prop_assert_eq!(parse_cp(&text).unwrap(), cp);
    }

    #[test]
    fn scores_stay_in_unit_interval(gen in strips(), reference in strips(), paper in any::<bool>()) {
        let cfg = if paper { EvalConfig::paper_faithful() } else { EvalConfig::default() };
        let r = score_total(&gen, &reference, &cfg);
        for s in r.dimensions().into_iter().chain([r.s_total]) {
            prop_assert!((0.0..=1.0).contains(&s), "{s}");
        }
    }

    #[test]
    fn scoring_is_deterministic(gen in strips(), reference in strips()) {
        let cfg = EvalConfig::default();
        prop_assert_eq!(score_total(&gen, &reference, &cfg), score_total(&gen, &reference, &cfg));
    }

    #[test]
    fn self_score_is_one_when_foldable(cp in strips()) {
        let r = score_total(&cp, &cp, &EvalConfig::default());
        if r.fallbacks.is_empty() {
            prop_assert!((r.s_total - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn vertex_similarity_decreases_with_distance(a in 1usize..200, d in 0usize..50, e in 1usize..50) {
        let near = vertex_similarity(a, a + d);
        let far = vertex_similarity(a, a + d + e);
        prop_assert!(far < near);
        prop_assert_eq!(vertex_similarity(a, a + d), vertex_similarity(a + d, a));
    }
}

#[test]
fn golden_fixtures_round_trip() {
    for (name, cp) in common::golden() {
        assert_eq!(parse_cp(&serialize_cp(&cp)).unwrap(), cp, "{name}");
    }
}
