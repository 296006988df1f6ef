//! Topological similarity: vertex count, degree and connectivity, face
//! structure and crease assignment mix.

use serde::{Deserialize, Serialize};

use super::metrics::{count_similarity, shared_histograms, wasserstein_1d};
use crate::cp::{Assignment, CreasePattern};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CreaseReport {
    #[serde(rename = "s_M")]
    pub s_m: f64,
    #[serde(rename = "s_V")]
    pub s_v: f64,
    #[serde(rename = "s_B")]
    pub s_b: f64,
    #[serde(rename = "p_L")]
    pub p_l: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopologicalReport {
    pub s_v: f64,
    pub s_edge: f64,
    pub s_degree: f64,
    pub s_conn: f64,
    pub s_face: f64,
    pub s_fcount: f64,
    pub s_favgv: f64,
    pub s_fdist: f64,
    pub s_crease: f64,
    /// Absent when the 0.2 fallback fired.
    pub crease: Option<CreaseReport>,
    pub score: f64,
}

pub const S_CREASE_NO_ASSIGNMENTS: f64 = 0.2;

/// `1` for equal counts, else `exp(-0.5 * (max - min) / min)`.
pub fn vertex_similarity(a: usize, b: usize) -> f64 {
    if a == b {
        return 1.0;
    }
    let (lo, hi) = (a.min(b) as f64, a.max(b) as f64);
    if lo == 0.0 {
        return 0.0;
    }
    (-0.5 * (hi - lo) / lo).exp()
}

pub fn vertex_degrees(cp: &CreasePattern) -> Vec<usize> {
    let mut deg = vec![0; cp.num_vertices()];
    for &[a, b] in &cp.edges_vertices {
        if a < deg.len() && b < deg.len() {
            deg[a] += 1;
            deg[b] += 1;
        }
    }
    deg
}

/// Connected components of the vertex/edge graph by depth-first search;
/// isolated vertices count as components.
pub fn connected_components(cp: &CreasePattern) -> usize {
    let n = cp.num_vertices();
    let mut adj = vec![Vec::new(); n];
    for &[a, b] in &cp.edges_vertices {
        if a < n && b < n {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

fn mean_arity(cp: &CreasePattern) -> f64 {
    if cp.faces_vertices.is_empty() {
        return 0.0;
    }
    cp.faces_vertices.iter().map(Vec::len).sum::<usize>() as f64 / cp.faces_vertices.len() as f64
}

fn distribution_similarity(a: &[usize], b: &[usize]) -> f64 {
    let (ha, hb) = shared_histograms(a, b);
    1.0 - wasserstein_1d(&ha, &hb).expect("shared support")
}

fn proportions(cp: &CreasePattern) -> [f64; 3] {
    let total = cp.edges_assignment.len() as f64;
    let count = |x: Assignment| cp.edges_assignment.iter().filter(|&&a| a == x).count() as f64 / total;
    [count(Assignment::M), count(Assignment::V), count(Assignment::B)]
}

pub fn crease_similarity(gen: &CreasePattern, reference: &CreasePattern) -> Option<CreaseReport> {
    if !gen.has_assignments() || !reference.has_assignments() {
        return None;
    }
    let (pg, pr) = (proportions(gen), proportions(reference));
    let (lg, lr) = (gen.edges_assignment.len() as f64, reference.edges_assignment.len() as f64);
    Some(CreaseReport {
        s_m: 1.0 - (pg[0] - pr[0]).abs(),
        s_v: 1.0 - (pg[1] - pr[1]).abs(),
        s_b: 1.0 - (pg[2] - pr[2]).abs(),
        p_l: lg.min(lr) / lg.max(lr),
    })
}

pub fn score_topological(gen: &CreasePattern, reference: &CreasePattern) -> TopologicalReport {
    let s_v = vertex_similarity(gen.num_vertices(), reference.num_vertices());

    let s_degree = distribution_similarity(&vertex_degrees(gen), &vertex_degrees(reference));
    let (cg, cr) = (connected_components(gen), connected_components(reference));
    let s_conn = if cg == cr { 1.0 } else { (-(cg.abs_diff(cr) as f64)).exp() };
    let s_edge = 0.7 * s_degree + 0.3 * s_conn;

    let s_fcount = count_similarity(gen.num_faces() as f64, reference.num_faces() as f64);
    let s_favgv = count_similarity(mean_arity(gen), mean_arity(reference));
    let arity = |cp: &CreasePattern| cp.faces_vertices.iter().map(Vec::len).collect::<Vec<_>>();
    let s_fdist = distribution_similarity(&arity(gen), &arity(reference));
    let s_face = 0.3 * s_fcount + 0.3 * s_favgv + 0.4 * s_fdist;

    let crease = crease_similarity(gen, reference);
    let s_crease = match &crease {
        Some(c) => (0.4 * c.s_m + 0.4 * c.s_v + 0.2 * c.s_b) * c.p_l,
        None => S_CREASE_NO_ASSIGNMENTS,
    };

    TopologicalReport {
        s_v,
        s_edge,
        s_degree,
        s_conn,
        s_face,
        s_fcount,
        s_favgv,
        s_fdist,
        s_crease,
        crease,
        score: 0.2 * s_v + 0.3 * s_edge + 0.3 * s_face + 0.2 * s_crease,
    }
}
