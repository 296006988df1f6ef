//! Folding is an isometry; the point-cloud metrics are symmetric, vanish on
//! identical input and ignore uniform scaling.

use cpforge::evaluator::metrics::{hausdorff_bidirectional, point_similarity, wasserstein_1d, Point3};
use cpforge::folder::fold;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::{common, Checker};

const TOL: f64 = 1e-9;

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn signed_area(pts: &[[f64; 2]]) -> f64 {
    let n = pts.len();
    (0..n).map(|i| pts[i][0] * pts[(i + 1) % n][1] - pts[(i + 1) % n][0] * pts[i][1]).sum::<f64>() / 2.0
}

fn cloud(rng: &mut StdRng, n: usize) -> Vec<Point3> {
    (0..n).map(|_| [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0)]).collect()
}

fn isometry(c: &mut Checker) {
    for (name, cp) in common::golden() {
        let state = fold(&cp).unwrap_or_else(|e| panic!("{name}: {e}"));
        let g = &state.geometry;
        let folded: Vec<[f64; 2]> = g.vertices.iter().map(|v| [v.x, v.y]).collect();
        let worst = cp
            .edges_vertices
            .iter()
            .map(|&[a, b]| (dist(folded[a], folded[b]) - dist(cp.vertices_coords[a], cp.vertices_coords[b])).abs())
            .fold(0.0, f64::max);
        c.truth(format!("{name}: edge length drift {worst:e}"), worst <= TOL);

        // Every face image is congruent to its source, mirrored iff its
        // parity is odd.
        for (f, face) in cp.faces_vertices.iter().enumerate() {
            let src: Vec<[f64; 2]> = face.iter().map(|&v| cp.vertices_coords[v]).collect();
            let img: Vec<[f64; 2]> = face.iter().map(|&v| folded[v]).collect();
            let mut drift: f64 = 0.0;
            for i in 0..face.len() {
                for j in i + 1..face.len() {
                    drift = drift.max((dist(src[i], src[j]) - dist(img[i], img[j])).abs());
                }
            }
            c.truth(format!("{name}: face {f} distance drift {drift:e}"), drift <= TOL);
            let (a, b) = (signed_area(&src), signed_area(&img));
            c.close(format!("{name}: face {f} area"), b.abs(), a.abs(), TOL);
            c.eq(format!("{name}: face {f} mirrored"), a * b < 0.0, g.parity[f] < 0);
        }
    }
}

fn metrics(c: &mut Checker) {
    let mut rng = StdRng::seed_from_u64(0x9e0_7e51);
    for trial in 0..200 {
        let (na, nb) = (rng.gen_range(1..40), rng.gen_range(1..40));
        let a = cloud(&mut rng, na);
        let b = cloud(&mut rng, nb);
        let ab = hausdorff_bidirectional(&a, &b).unwrap();
        let ba = hausdorff_bidirectional(&b, &a).unwrap();
        c.eq(format!("trial {trial}: d_H symmetric"), ab, ba);
        c.eq(format!("trial {trial}: d_H(a, a)"), hausdorff_bidirectional(&a, &a).unwrap(), 0.0);

        let bins = rng.gen_range(1..20);
        let h1: Vec<f64> = (0..bins).map(|_| rng.gen_range(0.0..5.0)).collect();
        let h2: Vec<f64> = (0..bins).map(|_| rng.gen_range(0.0..5.0)).collect();
        let w12 = wasserstein_1d(&h1, &h2).unwrap();
        let w21 = wasserstein_1d(&h2, &h1).unwrap();
        c.close(format!("trial {trial}: W symmetric"), w12, w21, 1e-12);
        c.eq(format!("trial {trial}: W(h, h)"), wasserstein_1d(&h1, &h1).unwrap(), 0.0);

        let s = rng.gen_range(0.1..10.0);
        let shift = [rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), 0.0];
        let moved: Vec<Point3> = b.iter().map(|p| [p[0] * s + shift[0], p[1] * s + shift[1], p[2] * s]).collect();
        for k in [1.0, 5.0] {
            let base = point_similarity(&a, &b, k).unwrap();
            c.close(format!("trial {trial}: s_p(k={k}) under scale {s}"), point_similarity(&a, &moved, k).unwrap(), base, 1e-9);
        }
        c.close(format!("trial {trial}: s_p of a scaled copy"), point_similarity(&b, &moved, 5.0).unwrap(), 1.0, 1e-9);
    }
}

pub fn run(c: &mut Checker) {
    isometry(c);
    metrics(c);
}
