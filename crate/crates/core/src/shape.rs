//! Binary-image shape handling: centroid, contour extraction and the
//! centroid-distance signature sampled over uniform angular bins.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// A width x height bitmap. `true` marks foreground (shape) pixels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    pixels: Vec<bool>,
}

impl BinaryImage {
    pub fn new(width: usize, height: usize, pixels: Vec<bool>) -> Result<Self> {
        if width < 1 || height < 1 {
            return Err(Error::invalid("image dimensions must be at least 1x1"));
        }
        let expected = width
            .checked_mul(height)
            .ok_or_else(|| Error::invalid("image dimensions overflow"))?;
        if pixels.len() != expected {
            return Err(Error::invalid(format!(
                "pixel buffer length {} does not match {width}x{height}",
                pixels.len()
            )));
        }
        Ok(BinaryImage {
            width,
            height,
            pixels,
        })
    }

    /// Builds an image by evaluating `f(x, y)` for every pixel.
    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width.checked_mul(height).unwrap_or(0));
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        BinaryImage::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[bool] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.pixels[y * self.width + x]
    }

    /// Flips foreground and background, for inputs using the opposite
    /// ink convention.
    pub fn inverted(&self) -> BinaryImage {
        BinaryImage {
            width: self.width,
            height: self.height,
            pixels: self.pixels.iter().map(|p| !p).collect(),
        }
    }
}

/// Sub-pixel shape center, the mean of the foreground pixel coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Centroid {
    pub x: f64,
    pub y: f64,
}

/// A contour pixel with its polar coordinates relative to the centroid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourPoint {
    pub x: usize,
    pub y: usize,
    /// atan2 angle to the centroid, normalized to [0, 2*pi).
    pub angle: f64,
    /// Euclidean distance to the centroid, in pixels.
    pub distance: f64,
}

/// Fixed-length centroid-distance signature over K uniform angular bins.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeSignature {
    pub samples: TimeSeries,
    pub bin_width: f64,
}

fn foreground_sums(image: &BinaryImage) -> Option<(u64, u64, u64)> {
    let mut n = 0u64;
    let mut sx = 0u64;
    let mut sy = 0u64;
    for y in 0..image.height() {
        for x in 0..image.width() {
            if image.get(x, y) {
                n += 1;
                sx += x as u64;
                sy += y as u64;
            }
        }
    }
    (n > 0).then_some((n, sx, sy))
}

/// Mean of the foreground pixel coordinates.
pub fn centroid(image: &BinaryImage) -> Result<Centroid> {
    let (n, sx, sy) = foreground_sums(image).ok_or(Error::EmptyShape)?;
    Ok(Centroid {
        x: sx as f64 / n as f64,
        y: sy as f64 / n as f64,
    })
}

/// Foreground pixels with at least one 4-neighbor that is background or
/// out of bounds, in row-major order.
pub fn extract_contour(image: &BinaryImage) -> Result<Vec<(usize, usize)>> {
    let mut contour = Vec::new();
    for y in 0..image.height() {
        for x in 0..image.width() {
            if image.get(x, y) && is_border(image, x, y) {
                contour.push((x, y));
            }
        }
    }
    if contour.is_empty() {
        return Err(Error::EmptyShape);
    }
    Ok(contour)
}

fn is_border(image: &BinaryImage, x: usize, y: usize) -> bool {
    let neighbors = [
        (x.wrapping_sub(1), y),
        (x + 1, y),
        (x, y.wrapping_sub(1)),
        (x, y + 1),
    ];
    neighbors
        .iter()
        .any(|&(nx, ny)| nx >= image.width() || ny >= image.height() || !image.get(nx, ny))
}

/// Contour pixels annotated with angle and distance to the centroid.
///
/// Polar coordinates are computed from the integer numerators N*x - Sx and
/// N*y - Sy, which are unchanged by integer translation of the shape, so
/// the signature downstream is bit-identical under translation.
pub fn contour_points(image: &BinaryImage) -> Result<Vec<ContourPoint>> {
    let (n, sx, sy) = foreground_sums(image).ok_or(Error::EmptyShape)?;
    let contour = extract_contour(image)?;
    let nf = n as f64;
    let points = contour
        .into_iter()
        .map(|(x, y)| {
            let ndx = (n * x as u64) as f64 - sx as f64;
            let ndy = (n * y as u64) as f64 - sy as f64;
            let mut angle = ndy.atan2(ndx);
            if angle < 0.0 {
                angle += TAU;
            }
            if angle >= TAU {
                angle = 0.0;
            }
            ContourPoint {
                x,
                y,
                angle,
                distance: (ndx * ndx + ndy * ndy).sqrt() / nf,
            }
        })
        .collect();
    Ok(points)
}

/// Samples the centroid-distance function over `bins` uniform angular bins.
/// Each bin takes the maximum distance among its contour points; empty bins
/// are filled by circular linear interpolation between non-empty neighbors.
pub fn signature(image: &BinaryImage, bins: usize) -> Result<ShapeSignature> {
    if bins < 4 {
        return Err(Error::invalid("bin count must be at least 4"));
    }
    let points = contour_points(image)?;
    let bin_width = TAU / bins as f64;
    let mut samples: Vec<Option<f64>> = vec![None; bins];
    for p in &points {
        let idx = ((p.angle / bin_width) as usize).min(bins - 1);
        let slot = &mut samples[idx];
        *slot = Some(slot.map_or(p.distance, |d: f64| d.max(p.distance)));
    }
    let occupied = samples.iter().filter(|s| s.is_some()).count();
    if occupied < 3 {
        return Err(Error::DegenerateShape(format!(
            "only {occupied} non-empty angular bins, need at least 3"
        )));
    }
    let filled = fill_empty_bins(&samples);
    Ok(ShapeSignature {
        samples: TimeSeries::new(filled)?,
        bin_width,
    })
}

fn fill_empty_bins(samples: &[Option<f64>]) -> Vec<f64> {
    let k = samples.len();
    samples
        .iter()
        .enumerate()
        .map(|(i, s)| {
            if let Some(v) = s {
                return *v;
            }
            let mut back = 1;
            while samples[(i + k - back) % k].is_none() {
                back += 1;
            }
            let mut fwd = 1;
            while samples[(i + fwd) % k].is_none() {
                fwd += 1;
            }
            let prev = samples[(i + k - back) % k].unwrap();
            let next = samples[(i + fwd) % k].unwrap();
            prev + (next - prev) * back as f64 / (back + fwd) as f64
        })
        .collect()
}

/// In-plane rotation about the image center with nearest-neighbor sampling.
/// Pixels rotated out of frame are dropped; in-rotated regions become
/// background.
pub fn rotate_image(image: &BinaryImage, angle: f64) -> BinaryImage {
    let cx = (image.width() - 1) as f64 / 2.0;
    let cy = (image.height() - 1) as f64 / 2.0;
    let (sin, cos) = angle.sin_cos();
    BinaryImage::from_fn(image.width(), image.height(), |x, y| {
        // inverse rotation of the output pixel back into the source frame
        let dx = x as f64 - cx;
        let dy = y as f64 - cy;
        let sx = (cx + cos * dx + sin * dy).round();
        let sy = (cy - sin * dx + cos * dy).round();
        sx >= 0.0
            && sy >= 0.0
            && (sx as usize) < image.width()
            && (sy as usize) < image.height()
            && image.get(sx as usize, sy as usize)
    })
    .expect("dimensions unchanged")
}
