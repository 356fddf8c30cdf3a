//! SAX-based time-series discretization and binary-shape classification.
//!
//! The pipeline reduces a 2D binary shape to a 1D centroid-distance
//! signature, maps the signature (or any time-series) to a short symbol
//! string via z-normalization, piecewise aggregate approximation and
//! Gaussian-breakpoint discretization, and classifies candidate words by
//! brute-force minimum word distance against per-class rotation word sets.
//!
//! All operations are pure functions over immutable inputs and are safe to
//! call concurrently.

pub mod bench;
pub mod classify;
pub mod error;
pub mod io;
pub mod sax;
pub mod series;
pub mod shape;
pub mod synth;

pub use classify::{classify_image, ClassificationResult, WordSetDatabase};
pub use error::{Error, Result};
pub use sax::{sax_transform, word_distance, SaxConfig, SaxWord};
pub use series::{NormalizationStats, TimeSeries};
pub use shape::{signature, BinaryImage, ShapeSignature};
