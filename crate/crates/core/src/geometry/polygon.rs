use super::{collinear_overlap, point_segment_distance, segment_intersection, GeometryError, Vec2, EPS};

/// Shoelace area; positive for counterclockwise rings.
pub fn signed_area(poly: &[Vec2]) -> f64 {
    let n = poly.len();
    let mut acc = 0.0;
    for i in 0..n {
        acc += poly[i].cross(poly[(i + 1) % n]);
    }
    0.5 * acc
}

pub fn is_ccw(poly: &[Vec2]) -> bool {
    signed_area(poly) > 0.0
}

/// Area centroid; falls back to the vertex mean for degenerate rings.
pub fn centroid(poly: &[Vec2]) -> Vec2 {
    let n = poly.len();
    if n == 0 {
        return Vec2::ZERO;
    }
    let a = signed_area(poly);
    if a.abs() <= EPS * EPS {
        let s = poly.iter().fold(Vec2::ZERO, |acc, &p| acc + p);
        return s * (1.0 / n as f64);
    }
    let (mut cx, mut cy) = (0.0, 0.0);
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let c = p.cross(q);
        cx += (p.x + q.x) * c;
        cy += (p.y + q.y) * c;
    }
    Vec2::new(cx / (6.0 * a), cy / (6.0 * a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointLocation {
    Inside,
    Boundary,
    Outside,
}

pub fn point_on_polygon_boundary(p: Vec2, poly: &[Vec2]) -> bool {
    let n = poly.len();
    (0..n).any(|i| point_segment_distance(p, poly[i], poly[(i + 1) % n]).0 <= EPS)
}

/// Classify `p` against a simple polygon of either orientation.
pub fn point_in_polygon(p: Vec2, poly: &[Vec2]) -> PointLocation {
    if point_on_polygon_boundary(p, poly) {
        return PointLocation::Boundary;
    }
    let n = poly.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (poly[i], poly[j]);
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x {
                inside = !inside;
            }
        }
        j = i;
    }
    if inside {
        PointLocation::Inside
    } else {
        PointLocation::Outside
    }
}

/// True when the ring has ≥ 3 vertices, nonzero area, and no two
/// non-adjacent edges touch.
pub fn is_simple(poly: &[Vec2]) -> bool {
    let n = poly.len();
    if n < 3 || signed_area(poly).abs() <= EPS * EPS {
        return false;
    }
    for i in 0..n {
        if poly[i].approx_eq(poly[(i + 1) % n]) {
            return false;
        }
    }
    for i in 0..n {
        let (a0, a1) = (poly[i], poly[(i + 1) % n]);
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (b0, b1) = (poly[j], poly[(j + 1) % n]);
            if adjacent {
                // Adjacent edges may only share their common vertex.
                if collinear_overlap(a0, a1, b0, b1).is_some() {
                    return false;
                }
                continue;
            }
            if segment_intersection(a0, a1, b0, b1).is_some() || collinear_overlap(a0, a1, b0, b1).is_some() {
                return false;
            }
        }
    }
    true
}

fn drop_collinear(poly: &[Vec2]) -> Vec<Vec2> {
    let mut pts: Vec<Vec2> = poly.to_vec();
    loop {
        let n = pts.len();
        if n < 3 {
            return pts;
        }
        let mut removed = false;
        for i in 0..n {
            let prev = pts[(i + n - 1) % n];
            let next = pts[(i + 1) % n];
            let cur = pts[i];
            let scale = (cur - prev).norm().max((next - cur).norm()).max(f64::MIN_POSITIVE);
            if cur.approx_eq(prev) || ((cur - prev).cross(next - cur)).abs() <= 1e-12 * scale * scale {
                pts.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            return pts;
        }
    }
}

fn point_in_triangle_closed(p: Vec2, a: Vec2, b: Vec2, c: Vec2) -> bool {
    let d1 = (b - a).cross(p - a);
    let d2 = (c - b).cross(p - b);
    let d3 = (a - c).cross(p - c);
    d1 >= -1e-15 && d2 >= -1e-15 && d3 >= -1e-15
}

/// Ear-clipping triangulation of a simple polygon (either orientation).
/// Triangles are returned counterclockwise.
pub fn triangulate(poly: &[Vec2]) -> Vec<[Vec2; 3]> {
    let mut pts = drop_collinear(poly);
    if signed_area(&pts) < 0.0 {
        pts.reverse();
    }
    let mut out = Vec::with_capacity(pts.len().saturating_sub(2));
    let mut guard = 0;
    while pts.len() > 3 && guard < 10_000 {
        guard += 1;
        let n = pts.len();
        let mut clipped = false;
        for i in 0..n {
            let a = pts[(i + n - 1) % n];
            let b = pts[i];
            let c = pts[(i + 1) % n];
            if (b - a).cross(c - b) <= 0.0 {
                continue;
            }
            let blocked = pts.iter().enumerate().any(|(k, &p)| {
                k != i
                    && k != (i + n - 1) % n
                    && k != (i + 1) % n
                    && !p.approx_eq(a)
                    && !p.approx_eq(b)
                    && !p.approx_eq(c)
                    && point_in_triangle_closed(p, a, b, c)
            });
            if !blocked {
                out.push([a, b, c]);
                pts.remove(i);
                clipped = true;
                break;
            }
        }
        if !clipped {
            // Numerically stuck; fan the remainder.
            break;
        }
    }
    if pts.len() >= 3 {
        for i in 1..pts.len() - 1 {
            out.push([pts[0], pts[i], pts[i + 1]]);
        }
    }
    out
}

fn clip_convex(subject: &[Vec2], clip: &[Vec2; 3]) -> Vec<Vec2> {
    let mut output = subject.to_vec();
    for i in 0..3 {
        let (c0, c1) = (clip[i], clip[(i + 1) % 3]);
        let edge = c1 - c0;
        let input = std::mem::take(&mut output);
        if input.is_empty() {
            break;
        }
        let side = |p: Vec2| edge.cross(p - c0);
        for j in 0..input.len() {
            let cur = input[j];
            let prev = input[(j + input.len() - 1) % input.len()];
            let (sc, sp) = (side(cur), side(prev));
            if sc >= 0.0 {
                if sp < 0.0 {
                    output.push(prev + (cur - prev) * (sp / (sp - sc)));
                }
                output.push(cur);
            } else if sp >= 0.0 {
                output.push(prev + (cur - prev) * (sp / (sp - sc)));
            }
        }
    }
    output
}

/// Area of the intersection of two simple polygons.
///
/// Touching polygons (shared boundary only) overlap with area 0.
pub fn polygon_overlap(a: &[Vec2], b: &[Vec2]) -> Result<f64, GeometryError> {
    if !is_simple(a) || !is_simple(b) {
        return Err(GeometryError::NotSimple);
    }
    let ta = triangulate(a);
    let tb = triangulate(b);
    let mut area = 0.0;
    for t in &ta {
        for u in &tb {
            let piece = clip_convex(t, u);
            if piece.len() >= 3 {
                area += signed_area(&piece).abs();
            }
        }
    }
    // Snap touching configurations (area from rounding only) to zero.
    if area <= EPS * EPS.sqrt() {
        area = 0.0;
    }
    Ok(area)
}

/// A point strictly inside a simple polygon.
///
/// Scans the horizontal line through the middle of the widest gap between
/// distinct vertex heights, and returns the midpoint of its widest interior
/// interval.
pub fn interior_point(poly: &[Vec2]) -> Option<Vec2> {
    let mut ys: Vec<f64> = poly.iter().map(|p| p.y).collect();
    ys.sort_by(f64::total_cmp);
    ys.dedup_by(|a, b| (*a - *b).abs() <= EPS);
    let mut best: Option<(f64, Vec2)> = None;
    for w in ys.windows(2) {
        let y = 0.5 * (w[0] + w[1]);
        let mut xs = Vec::new();
        let n = poly.len();
        for i in 0..n {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            if (a.y > y) != (b.y > y) {
                xs.push(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
            }
        }
        xs.sort_by(f64::total_cmp);
        for pair in xs.chunks_exact(2) {
            let width = (pair[1] - pair[0]).min(w[1] - w[0]);
            if best.is_none_or(|(bw, _)| width > bw) {
                best = Some((width, Vec2::new(0.5 * (pair[0] + pair[1]), y)));
            }
        }
    }
    best.map(|(_, p)| p)
}

/// Length of the part of segment `a`–`b` lying strictly inside `poly`.
pub fn segment_interior_length(a: Vec2, b: Vec2, poly: &[Vec2]) -> f64 {
    let len = a.dist(b);
    if len <= EPS {
        return 0.0;
    }
    let mut ts = vec![0.0, 1.0];
    let d = b - a;
    let n = poly.len();
    let param = |p: Vec2| (p - a).dot(d) / (len * len);
    for i in 0..n {
        let (p, q) = (poly[i], poly[(i + 1) % n]);
        if let Some(x) = segment_intersection(a, b, p, q) {
            ts.push(param(x));
        }
        for v in [p, q] {
            let (dist, t) = point_segment_distance(v, a, b);
            if dist <= EPS {
                ts.push(t);
            }
        }
    }
    ts.iter_mut().for_each(|t| *t = t.clamp(0.0, 1.0));
    ts.sort_by(f64::total_cmp);
    ts.dedup_by(|x, y| (*x - *y).abs() * len <= EPS);
    let mut inside = 0.0;
    for w in ts.windows(2) {
        let mid = a + d * (0.5 * (w[0] + w[1]));
        if point_in_polygon(mid, poly) == PointLocation::Inside {
            inside += (w[1] - w[0]) * len;
        }
    }
    inside
}
