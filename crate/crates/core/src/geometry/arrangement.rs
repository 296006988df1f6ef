//! Planar arrangement of line segments.
//!
//! Input segments are split at every mutual intersection, points within
//! [`EPS`] are snapped together, and the bounded faces of the resulting
//! planar graph are traced with a half-edge walk.

use std::collections::HashMap;

use super::{point_segment_distance, segment_intersection, signed_area, Vec2, EPS};

const GRID: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct ArrangementEdge {
    pub a: usize,
    pub b: usize,
    /// Indices of the input segments this piece lies on, ascending.
    pub sources: Vec<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct Arrangement {
    pub points: Vec<Vec2>,
    pub edges: Vec<ArrangementEdge>,
    /// Bounded faces as counterclockwise vertex cycles.
    pub faces: Vec<Vec<usize>>,
}

#[derive(Default)]
struct PointSet {
    points: Vec<Vec2>,
    grid: HashMap<(i64, i64), Vec<usize>>,
}

impl PointSet {
    fn key(p: Vec2) -> (i64, i64) {
        ((p.x / GRID).floor() as i64, (p.y / GRID).floor() as i64)
    }

    fn find(&self, p: Vec2) -> Option<usize> {
        let (kx, ky) = Self::key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.grid.get(&(kx + dx, ky + dy)) {
                    if let Some(&id) = ids.iter().find(|&&id| self.points[id].dist(p) <= EPS) {
                        return Some(id);
                    }
                }
            }
        }
        None
    }

    fn insert(&mut self, p: Vec2) -> usize {
        if let Some(id) = self.find(p) {
            return id;
        }
        let id = self.points.len();
        self.points.push(p);
        self.grid.entry(Self::key(p)).or_default().push(id);
        id
    }
}

impl Arrangement {
    pub fn build(segments: &[(Vec2, Vec2)]) -> Arrangement {
        Self::build_with_points(segments, &[])
    }

    /// Like [`Arrangement::build`], with `seed` points inserted first so that
    /// they keep indices `0..seed.len()` (after snapping).
    pub fn build_with_points(segments: &[(Vec2, Vec2)], seed: &[Vec2]) -> Arrangement {
        let mut ps = PointSet::default();
        for &p in seed {
            ps.insert(p);
        }
        for &(a, b) in segments {
            ps.insert(a);
            ps.insert(b);
        }
        for i in 0..segments.len() {
            for j in (i + 1)..segments.len() {
                let (a0, a1) = segments[i];
                let (b0, b1) = segments[j];
                if let Some(x) = segment_intersection(a0, a1, b0, b1) {
                    ps.insert(x);
                }
            }
        }

        let mut edge_index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut edges: Vec<ArrangementEdge> = Vec::new();
        for (si, &(a, b)) in segments.iter().enumerate() {
            if a.dist(b) <= EPS {
                continue;
            }
            let mut on: Vec<(f64, usize)> = ps
                .points
                .iter()
                .enumerate()
                .filter_map(|(id, &p)| {
                    let (d, t) = point_segment_distance(p, a, b);
                    (d <= EPS).then_some((t, id))
                })
                .collect();
            on.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
            on.dedup_by_key(|x| x.1);
            for w in on.windows(2) {
                let (u, v) = (w[0].1, w[1].1);
                if u == v {
                    continue;
                }
                let key = (u.min(v), u.max(v));
                let idx = *edge_index.entry(key).or_insert_with(|| {
                    edges.push(ArrangementEdge { a: key.0, b: key.1, sources: Vec::new() });
                    edges.len() - 1
                });
                if !edges[idx].sources.contains(&si) {
                    edges[idx].sources.push(si);
                }
            }
        }
        edges.iter_mut().for_each(|e| e.sources.sort_unstable());

        let faces = trace_faces(&ps.points, &edges);
        Arrangement { points: ps.points, edges, faces }
    }

    pub fn face_polygon(&self, face: usize) -> Vec<Vec2> {
        self.faces[face].iter().map(|&i| self.points[i]).collect()
    }
}

/// Bounded faces of a planar straight-line graph, as counterclockwise cycles
/// rotated to start at their smallest vertex id.
pub(crate) fn trace_faces(points: &[Vec2], edges: &[ArrangementEdge]) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut around: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in edges {
        around[e.a].push(e.b);
        around[e.b].push(e.a);
    }
    for (v, nbrs) in around.iter_mut().enumerate() {
        let o = points[v];
        nbrs.sort_by(|&p, &q| (points[p] - o).bearing().total_cmp(&(points[q] - o).bearing()).then(p.cmp(&q)));
    }
    // Half-edges keyed by (from, to).
    let mut visited: HashMap<(usize, usize), bool> = HashMap::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    for e in edges {
        order.push((e.a, e.b));
        order.push((e.b, e.a));
    }
    for &h in &order {
        visited.insert(h, false);
    }
    let mut faces = Vec::new();
    for &start in &order {
        if visited[&start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut h = start;
        loop {
            visited.insert(h, true);
            cycle.push(h.0);
            let (u, v) = h;
            let nbrs = &around[v];
            let idx = nbrs.iter().position(|&w| w == u).expect("twin present");
            let w = nbrs[(idx + nbrs.len() - 1) % nbrs.len()];
            h = (v, w);
            if h == start {
                break;
            }
        }
        let poly: Vec<Vec2> = cycle.iter().map(|&i| points[i]).collect();
        if signed_area(&poly) > EPS * EPS {
            let m = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
            cycle.rotate_left(m);
            faces.push(cycle);
        }
    }
    faces
}
