//! Single-vertex flat-foldability against independent checks of the
//! Kawasaki, Maekawa and big-little-big laws, plus the known bounds on the
//! number of valid labelings of a generic flat-foldable vertex.

use std::f64::consts::PI;

use cpforge::cp::Assignment;
use cpforge::foldability::{enumerate_mv_assignments, flat_labelings};
use cpforge::geometry::SectorAngles;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::Checker;

const SAMPLES: usize = 500;

fn weights(rng: &mut StdRng, n: usize, total: f64) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.15..1.0)).collect();
    let sum: f64 = raw.iter().sum();
    raw.iter().map(|w| w * total / sum).collect()
}

/// Sector angles around one vertex; half the samples are built to satisfy
/// Kawasaki by construction.
fn sample(rng: &mut StdRng, i: usize) -> Vec<f64> {
    if i.is_multiple_of(2) {
        let k = rng.gen_range(2..=4);
        let even = weights(rng, k, PI);
        let odd = weights(rng, k, PI);
        even.iter().zip(&odd).flat_map(|(&a, &b)| [a, b]).collect()
    } else {
        let n = rng.gen_range(4..=8);
        weights(rng, n, 2.0 * PI)
    }
}

fn kawasaki(angles: &[f64]) -> bool {
    angles.len().is_multiple_of(2) && (angles.iter().step_by(2).sum::<f64>() - PI).abs() <= 1e-6
}

fn maekawa(labels: &[Assignment]) -> bool {
    let m = labels.iter().filter(|&&a| a == Assignment::M).count() as i64;
    let v = labels.iter().filter(|&&a| a == Assignment::V).count() as i64;
    (m - v).abs() == 2
}

/// A sector strictly smaller than both neighbours is bounded by creases of
/// opposite type. Sector `i` lies between creases `i` and `i + 1`.
fn big_little_big(angles: &[f64], labels: &[Assignment]) -> bool {
    let n = angles.len();
    (0..n).all(|i| {
        let small = angles[i] < angles[(i + n - 1) % n] - 1e-9 && angles[i] < angles[(i + 1) % n] - 1e-9;
        !small || labels[i] != labels[(i + 1) % n]
    })
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn run(c: &mut Checker) {
    let mut rng = StdRng::seed_from_u64(0x5eed_f01d);
    let mut passing = 0;
    for i in 0..SAMPLES {
        let angles = sample(&mut rng, i);
        let n = angles.len();
        let sectors = SectorAngles { vertex: 0, angles: angles.clone(), edges: (0..n).collect(), interior: true };
        let count = enumerate_mv_assignments(&sectors).expect("within capacity");
        let kw = kawasaki(&angles);
        passing += kw as usize;
        c.truth(format!("sample {i}: {count} labelings, kawasaki {kw}, angles {angles:?}"), (count > 0) == kw);
        let labelings: Vec<Vec<Assignment>> = flat_labelings(&angles).collect();
        c.eq(format!("sample {i}: count matches listing"), labelings.len(), count);
        for labels in &labelings {
            c.truth(format!("sample {i}: {labels:?} breaks Maekawa"), maekawa(labels));
            c.truth(format!("sample {i}: {labels:?} breaks big-little-big"), big_little_big(&angles, labels));
        }
        if kw {
            let half = (n / 2) as u64;
            let lo = 1u64 << half;
            let hi = 2 * binomial(n as u64, half - 1);
            c.truth(format!("sample {i}: {count} outside [{lo}, {hi}]"), (lo..=hi).contains(&(count as u64)));
        }
    }
    c.truth(format!("{passing} Kawasaki vertices sampled"), passing >= SAMPLES / 2);
}
