//! Layer-order verdicts against exhaustive search over face permutations.
//!
//! Every acyclic assignment of the overlapping pairs extends to a linear
//! order of all faces, so enumerating permutations and keeping those that
//! respect the crease-forced pairs and the taco rules yields exactly the
//! set of valid layer orders, read off on the overlapping pairs.

use std::collections::BTreeSet;

use cpforge::cp::{Assignment, CreasePattern};
use cpforge::folder::{
    extract_constraints, fold_geometry, forced_pairs, layer_solve, ConstraintKind, ForcedPair, LayerOutcome,
    OverlapConstraint,
};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::{common, Checker};

const MAX_FACES: usize = 8;

fn permutations(n: usize, visit: &mut impl FnMut(&[usize])) {
    fn go(k: usize, perm: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if k == perm.len() {
            visit(perm);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            go(k + 1, perm, visit);
            perm.swap(k, i);
        }
    }
    go(0, &mut (0..n).collect(), visit);
}

fn between(pos: &[usize], x: usize, a: usize, b: usize) -> bool {
    let (lo, hi) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
    lo < pos[x] && pos[x] < hi
}

/// `order[i]` is the face at height `i` from the top.
fn admissible(pos: &[usize], forced: &[ForcedPair], constraints: &[OverlapConstraint]) -> bool {
    forced.iter().all(|p| pos[p.upper] < pos[p.lower])
        && constraints.iter().all(|c| match c.kind {
            ConstraintKind::TacoTaco => {
                let [a, b, x, y] = c.faces[..] else { unreachable!() };
                between(pos, x, a, b) == between(pos, y, a, b)
            }
            ConstraintKind::TacoTortilla => {
                let [a, b, t] = c.faces[..] else { unreachable!() };
                !between(pos, t, a, b)
            }
            ConstraintKind::Transitivity => true,
        })
}

/// A unit-height strip of `panels` random-width panels with random M/V
/// creases between them.
fn strip(rng: &mut StdRng, panels: usize) -> CreasePattern {
    let mut xs = vec![0.0];
    for _ in 0..panels {
        let w = rng.gen_range(1..=4) as f64 / 4.0;
        xs.push(xs.last().unwrap() + w);
    }
    let n = xs.len();
    let mut vertices_coords: Vec<[f64; 2]> = xs.iter().map(|&x| [x, 0.0]).collect();
    vertices_coords.extend(xs.iter().map(|&x| [x, 1.0]));
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
        edges_assignment.push(if rng.gen_bool(0.5) { Assignment::M } else { Assignment::V });
    }
    let faces_vertices = (0..n - 1).map(|i| vec![i, i + 1, n + i + 1, n + i]).collect();
    CreasePattern { vertices_coords, edges_vertices, edges_assignment, faces_vertices, ..Default::default() }
}

pub fn run(c: &mut Checker) {
    let mut cases: Vec<(String, CreasePattern)> = common::golden();
    cases.extend(common::error_cases().into_iter().filter_map(|(name, code, _)| {
        matches!(code.as_str(), "E_PHYS_SELF_INTERSECTION" | "E_AMBIGUOUS_LAYER_ORDER").then(|| {
            let cp = common::load(&name);
            (name, cp)
        })
    }));
    let mut rng = StdRng::seed_from_u64(0x001a_7e05);
    for i in 0..40 {
        let panels = rng.gen_range(3..=MAX_FACES);
        cases.push((format!("strip {i} ({panels} panels)"), strip(&mut rng, panels)));
    }
    let mut verdicts = BTreeSet::new();
    let mut tried = 0;
    for (name, cp) in cases {
        if cp.num_faces() > MAX_FACES {
            continue;
        }
        tried += 1;
        let geom = fold_geometry(&cp).unwrap_or_else(|e| panic!("{name}: {e}"));
        let constraints = extract_constraints(&geom);
        let forced = forced_pairs(&geom);
        let pairs: Vec<(usize, usize)> = geom.overlaps.iter().copied().collect();

        let mut found: BTreeSet<Vec<bool>> = BTreeSet::new();
        let mut pos = vec![0; cp.num_faces()];
        permutations(cp.num_faces(), &mut |order| {
            for (i, &f) in order.iter().enumerate() {
                pos[f] = i;
            }
            if admissible(&pos, &forced, &constraints) {
                found.insert(pairs.iter().map(|&(a, b)| pos[a] < pos[b]).collect());
            }
        });

        let outcome = layer_solve(&geom.overlaps, &constraints, &forced);
        let verdict = match &outcome {
            LayerOutcome::Unique(_) => "unique",
            LayerOutcome::Infeasible { .. } => "infeasible",
            LayerOutcome::Ambiguous { .. } => "ambiguous",
        };
        let expected = match found.len() {
            0 => "infeasible",
            1 => "unique",
            _ => "ambiguous",
        };
        verdicts.insert(verdict);
        c.eq(format!("{name}: verdict ({} oracle orders)", found.len()), verdict, expected);
        if let (LayerOutcome::Unique(order), Some(only)) = (&outcome, found.iter().next()) {
            let solver: Vec<bool> = pairs.iter().map(|&(a, b)| order.is_above(a, b) == Some(true)).collect();
            c.eq(format!("{name}: unique order"), &solver, only);
        }
    }
    c.truth(format!("{tried} patterns checked"), tried >= 60);
    c.eq("all three verdicts exercised", verdicts.len(), 3);
}
