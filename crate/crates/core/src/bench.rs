//! Wall-clock timing harness for the pipeline operations. Runs strictly
//! sequential repetitions after a single warm-up, on seeded synthetic
//! inputs, and reports min/median/mean in nanoseconds.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{classify, WordSetDatabase};
use crate::error::{Error, Result};
use crate::sax::{discretize, paa, sax_transform, znormalize, SaxConfig, SaxWord};
use crate::shape::signature;
use crate::synth;

/// Which operation the harness exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchOp {
    /// Full SAX transform on a synthetic Gaussian series of length `size`.
    Sax,
    /// Angular signature of a synthetic disk in a `size` x `size` image.
    Signature,
    /// Brute-force scan of a candidate against `size` random words.
    Classify,
}

impl std::str::FromStr for BenchOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sax" => Ok(BenchOp::Sax),
            "signature" => Ok(BenchOp::Signature),
            "classify" => Ok(BenchOp::Classify),
            other => Err(Error::invalid(format!(
                "unknown bench op {other:?}, expected sax, signature or classify"
            ))),
        }
    }
}

/// Timing summary for one operation.
#[derive(Debug, Clone)]
pub struct BenchReport {
    pub operation: String,
    pub size: usize,
    pub reps: usize,
    pub seed: u64,
    pub durations_ns: Vec<u128>,
}

impl BenchReport {
    fn from_durations(operation: &str, size: usize, reps: usize, seed: u64, mut ns: Vec<u128>) -> Self {
        ns.sort_unstable();
        BenchReport {
            operation: operation.to_string(),
            size,
            reps,
            seed,
            durations_ns: ns,
        }
    }

    pub fn min_ns(&self) -> u128 {
        self.durations_ns[0]
    }

    pub fn median_ns(&self) -> u128 {
        let d = &self.durations_ns;
        let mid = d.len() / 2;
        if d.len() % 2 == 1 {
            d[mid]
        } else {
            (d[mid - 1] + d[mid]) / 2
        }
    }

    pub fn mean_ns(&self) -> u128 {
        self.durations_ns.iter().sum::<u128>() / self.durations_ns.len() as u128
    }
}

fn time_reps(reps: usize, mut f: impl FnMut()) -> Vec<u128> {
    f(); // warm-up
    (0..reps)
        .map(|_| {
            let start = Instant::now();
            f();
            start.elapsed().as_nanos().max(1)
        })
        .collect()
}

/// Runs the chosen operation `reps` times. For the SAX op the report also
/// carries a per-stage breakdown (znormalize, paa, discretize).
pub fn run(op: BenchOp, size: usize, reps: usize, seed: u64) -> Result<Vec<BenchReport>> {
    if reps < 3 {
        return Err(Error::invalid("repetition count must be at least 3"));
    }
    if size < 1 {
        return Err(Error::invalid("input size must be at least 1"));
    }
    match op {
        BenchOp::Sax => run_sax(size, reps, seed),
        BenchOp::Signature => run_signature(size, reps, seed),
        BenchOp::Classify => run_classify(size, reps, seed),
    }
}

fn run_sax(size: usize, reps: usize, seed: u64) -> Result<Vec<BenchReport>> {
    let series = synth::gaussian_series(size, seed);
    let word_length = size.min(32);
    let config = SaxConfig::new(8, word_length)?;

    let full = time_reps(reps, || {
        std::hint::black_box(sax_transform(std::hint::black_box(&series), &config).unwrap());
    });
    let norm = time_reps(reps, || {
        std::hint::black_box(znormalize(std::hint::black_box(&series)));
    });
    let normalized = znormalize(&series).0;
    let paa_stage = time_reps(reps, || {
        std::hint::black_box(paa(std::hint::black_box(&normalized), word_length).unwrap());
    });
    let reduced = paa(&normalized, word_length)?;
    let disc = time_reps(reps, || {
        std::hint::black_box(discretize(std::hint::black_box(&reduced), &config).unwrap());
    });
    Ok(vec![
        BenchReport::from_durations("sax", size, reps, seed, full),
        BenchReport::from_durations("sax/znormalize", size, reps, seed, norm),
        BenchReport::from_durations("sax/paa", size, reps, seed, paa_stage),
        BenchReport::from_durations("sax/discretize", size, reps, seed, disc),
    ])
}

fn run_signature(size: usize, reps: usize, seed: u64) -> Result<Vec<BenchReport>> {
    let side = size.max(8);
    let image = synth::disk_image(side, side as f64 * 0.35);
    let ns = time_reps(reps, || {
        std::hint::black_box(signature(std::hint::black_box(&image), 360).unwrap());
    });
    Ok(vec![BenchReport::from_durations(
        "signature", size, reps, seed, ns,
    )])
}

fn run_classify(size: usize, reps: usize, seed: u64) -> Result<Vec<BenchReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabet = 8usize;
    let word_length = 16usize;
    let mut words: BTreeSet<SaxWord> = BTreeSet::new();
    while words.len() < size {
        let symbols: Vec<u8> = (0..word_length)
            .map(|_| rng.gen_range(1..=alphabet as u8))
            .collect();
        words.insert(SaxWord::new(symbols, alphabet)?);
    }
    let mut classes = BTreeMap::new();
    classes.insert("synthetic".to_string(), words);
    let db = WordSetDatabase::new(classes, alphabet, word_length)?;
    let candidate = SaxWord::new(
        (0..word_length)
            .map(|_| rng.gen_range(1..=alphabet as u8))
            .collect(),
        alphabet,
    )?;
    let ns = time_reps(reps, || {
        std::hint::black_box(classify(std::hint::black_box(&candidate), &db).unwrap());
    });
    Ok(vec![BenchReport::from_durations(
        "classify", size, reps, seed, ns,
    )])
}
