//! Deterministic synthetic inputs: seeded Gaussian series and rasterized
//! shapes, used by the benchmark harness and by fixtures.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::series::TimeSeries;
use crate::shape::BinaryImage;

/// Standard-normal series of length `n`, reproducible from `seed`.
pub fn gaussian_series(n: usize, seed: u64) -> TimeSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = (0..n)
        .map(|_| StandardNormal.sample(&mut rng))
        .collect();
    TimeSeries::new(samples).expect("gaussian samples are finite")
}

/// Filled disk of the given radius centered in a size x size image.
pub fn disk_image(size: usize, radius: f64) -> BinaryImage {
    let c = (size - 1) as f64 / 2.0;
    BinaryImage::from_fn(size, size, |x, y| {
        let dx = x as f64 - c;
        let dy = y as f64 - c;
        dx * dx + dy * dy <= radius * radius
    })
    .expect("valid dimensions")
}

/// Filled convex regular polygon centered in a size x size image.
/// `rotation` is the angular offset of the first vertex, in radians.
pub fn regular_polygon_image(
    size: usize,
    sides: usize,
    radius: f64,
    rotation: f64,
) -> BinaryImage {
    assert!(sides >= 3, "polygon needs at least 3 sides");
    let c = (size - 1) as f64 / 2.0;
    let vertices: Vec<(f64, f64)> = (0..sides)
        .map(|i| {
            let theta = rotation + std::f64::consts::TAU * i as f64 / sides as f64;
            (c + radius * theta.cos(), c + radius * theta.sin())
        })
        .collect();
    BinaryImage::from_fn(size, size, |x, y| {
        point_in_convex_polygon(x as f64, y as f64, &vertices)
    })
    .expect("valid dimensions")
}

fn point_in_convex_polygon(px: f64, py: f64, vertices: &[(f64, f64)]) -> bool {
    // vertices are in counter-clockwise order; the point is inside when it
    // lies on the left of (or on) every edge
    let n = vertices.len();
    (0..n).all(|i| {
        let (x1, y1) = vertices[i];
        let (x2, y2) = vertices[(i + 1) % n];
        (x2 - x1) * (py - y1) - (y2 - y1) * (px - x1) >= 0.0
    })
}
