//! Distance and similarity primitives used by the scorers.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("histograms have {0} and {1} bins")]
    BinMismatch(usize, usize),
    #[error("histogram has no bins")]
    NoBins,
    #[error("point set is empty")]
    EmptySet,
}

pub type Point3 = [f64; 3];

fn normalized(h: &[f64]) -> Vec<f64> {
    let total: f64 = h.iter().sum();
    if total <= 0.0 {
        vec![1.0 / h.len() as f64; h.len()]
    } else {
        h.iter().map(|x| x / total).collect()
    }
}

/// Simplified 1-D Wasserstein distance: L1 distance between the CDFs of the
/// normalized histograms divided by `n - 1`, clamped to `[0, 1]`.
pub fn wasserstein_1d(h1: &[f64], h2: &[f64]) -> Result<f64, MetricError> {
    if h1.len() != h2.len() {
        return Err(MetricError::BinMismatch(h1.len(), h2.len()));
    }
    let n = h1.len();
    if n == 0 {
        return Err(MetricError::NoBins);
    }
    if n == 1 {
        return Ok(0.0);
    }
    let (a, b) = (normalized(h1), normalized(h2));
    let (mut ca, mut cb, mut total) = (0.0, 0.0, 0.0);
    for i in 0..n {
        ca += a[i];
        cb += b[i];
        total += (ca - cb).abs();
    }
    Ok((total / (n - 1) as f64).clamp(0.0, 1.0))
}

fn dist(a: &Point3, b: &Point3) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

fn directed_hausdorff(a: &[Point3], b: &[Point3]) -> f64 {
    a.iter().map(|p| b.iter().map(|q| dist(p, q)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
}

/// Bidirectional Hausdorff distance, exact over all pairs.
pub fn hausdorff_bidirectional(a: &[Point3], b: &[Point3]) -> Result<f64, MetricError> {
    if a.is_empty() || b.is_empty() {
        return Err(MetricError::EmptySet);
    }
    Ok(directed_hausdorff(a, b).max(directed_hausdorff(b, a)))
}

/// Translate the centroid to the origin and scale the farthest point to
/// distance 1. A set of coincident points collapses to the origin.
pub fn normalize_points(points: &[Point3]) -> Vec<Point3> {
    if points.is_empty() {
        return Vec::new();
    }
    let n = points.len() as f64;
    let mut c = [0.0; 3];
    for p in points {
        for k in 0..3 {
            c[k] += p[k] / n;
        }
    }
    let shifted: Vec<Point3> = points.iter().map(|p| [p[0] - c[0], p[1] - c[1], p[2] - c[2]]).collect();
    let r = shifted.iter().map(|p| dist(p, &[0.0; 3])).fold(0.0, f64::max);
    if r <= 0.0 {
        return vec![[0.0; 3]; points.len()];
    }
    shifted.iter().map(|p| [p[0] / r, p[1] / r, p[2] / r]).collect()
}

/// `exp(-k * d_H)` on normalized copies of both sets.
pub fn point_similarity(a: &[Point3], b: &[Point3], k: f64) -> Result<f64, MetricError> {
    let d = hausdorff_bidirectional(&normalize_points(a), &normalize_points(b))?;
    Ok((-k * d).exp())
}

/// Cosine similarity; two zero vectors count as identical, one zero vector
/// as orthogonal. Equal vectors score exactly 1.
pub fn cosine_similarity(a: &[f64], b: &[f64]) -> f64 {
    if a == b {
        return 1.0;
    }
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    match (na > 0.0, nb > 0.0) {
        (true, true) => (dot / (na * nb)).clamp(0.0, 1.0),
        (false, false) => 1.0,
        _ => 0.0,
    }
}

/// Ten-degree bins over `[0, 180]`; 180 falls in the last bin.
pub fn angle_histogram(angles_deg: &[f64]) -> [f64; 18] {
    let mut h = [0.0; 18];
    for &a in angles_deg {
        let bin = ((a.clamp(0.0, 180.0) / 10.0).floor() as usize).min(17);
        h[bin] += 1.0;
    }
    h
}

/// Histograms of two integer samples over the shared support `0..=max`.
pub fn shared_histograms(a: &[usize], b: &[usize]) -> (Vec<f64>, Vec<f64>) {
    let max = a.iter().chain(b).copied().max().unwrap_or(0);
    let mut ha = vec![0.0; max + 1];
    let mut hb = vec![0.0; max + 1];
    a.iter().for_each(|&x| ha[x] += 1.0);
    b.iter().for_each(|&x| hb[x] += 1.0);
    (ha, hb)
}

/// Bounding-box dimensions sorted descending and divided by the largest.
pub fn box_proportions(points: &[Point3]) -> Option<[f64; 3]> {
    if points.is_empty() {
        return None;
    }
    let mut dims = [0.0; 3];
    for (k, d) in dims.iter_mut().enumerate() {
        let lo = points.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min);
        let hi = points.iter().map(|p| p[k]).fold(f64::NEG_INFINITY, f64::max);
        *d = hi - lo;
    }
    dims.sort_by(|a, b| b.total_cmp(a));
    if dims[0] > 0.0 {
        let l = dims[0];
        dims.iter_mut().for_each(|d| *d /= l);
    }
    Some(dims)
}

/// `exp(-|a - b| / max(1, min(a, b)))`.
pub fn count_similarity(a: f64, b: f64) -> f64 {
    (-(a - b).abs() / a.min(b).max(1.0)).exp()
}
