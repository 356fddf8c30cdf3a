//! The SAX pipeline: z-normalization, piecewise aggregate approximation,
//! Gaussian-breakpoint discretization, word distance and letter-transition
//! detection.

use crate::error::{Error, Result};
use crate::series::{NormalizationStats, TimeSeries};

/// Breakpoint look-up table for alphabet sizes 3 through 8, as published.
/// Each row holds the a-1 cuts that split the standard normal curve into
/// a equiprobable intervals, rounded to two decimals.
const BREAKPOINT_TABLE: [&[f64]; 6] = [
    &[-0.43, 0.43],
    &[-0.67, 0.0, 0.67],
    &[-0.84, -0.25, 0.25, 0.84],
    &[-0.97, -0.43, 0.0, 0.43, 0.97],
    &[-1.07, -0.57, -0.18, 0.18, 0.57, 1.07],
    &[-1.15, -0.67, -0.32, 0.0, 0.32, 0.67, 1.15],
];

pub const MIN_ALPHABET: usize = 3;
pub const MAX_ALPHABET: usize = 8;

/// Returns the breakpoints for alphabet size `a`, or an error outside 3..=8.
pub fn breakpoints(alphabet_size: usize) -> Result<&'static [f64]> {
    if !(MIN_ALPHABET..=MAX_ALPHABET).contains(&alphabet_size) {
        return Err(Error::UnsupportedAlphabet(alphabet_size));
    }
    Ok(BREAKPOINT_TABLE[alphabet_size - MIN_ALPHABET])
}

/// Alphabet size, word length and the matching breakpoint row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaxConfig {
    alphabet_size: usize,
    word_length: usize,
    breakpoints: &'static [f64],
}

impl SaxConfig {
    pub fn new(alphabet_size: usize, word_length: usize) -> Result<Self> {
        let breakpoints = breakpoints(alphabet_size)?;
        if word_length < 1 {
            return Err(Error::invalid("word length must be at least 1"));
        }
        Ok(SaxConfig {
            alphabet_size,
            word_length,
            breakpoints,
        })
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn word_length(&self) -> usize {
        self.word_length
    }

    pub fn breakpoints(&self) -> &'static [f64] {
        self.breakpoints
    }
}

/// A fixed-length word over a small alphabet. Symbols are 1-based indices;
/// index 1 renders as 'a'.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SaxWord {
    symbols: Vec<u8>,
    alphabet_size: usize,
}

impl SaxWord {
    pub fn new(symbols: Vec<u8>, alphabet_size: usize) -> Result<Self> {
        breakpoints(alphabet_size)?;
        if symbols.is_empty() {
            return Err(Error::invalid("word must contain at least one symbol"));
        }
        if let Some(&s) = symbols.iter().find(|&&s| s < 1 || s as usize > alphabet_size) {
            return Err(Error::invalid(format!(
                "symbol index {s} outside [1, {alphabet_size}]"
            )));
        }
        Ok(SaxWord {
            symbols,
            alphabet_size,
        })
    }

    /// Parses a rendered word such as "abca" back into symbol indices.
    pub fn from_letters(letters: &str, alphabet_size: usize) -> Result<Self> {
        breakpoints(alphabet_size)?;
        let symbols = letters
            .chars()
            .map(|c| {
                let idx = (c as i64) - ('a' as i64) + 1;
                if idx >= 1 && idx <= alphabet_size as i64 {
                    Ok(idx as u8)
                } else {
                    Err(Error::invalid(format!(
                        "letter '{c}' outside alphabet of size {alphabet_size}"
                    )))
                }
            })
            .collect::<Result<Vec<u8>>>()?;
        SaxWord::new(symbols, alphabet_size)
    }

    /// Renders symbol indices as letters, 1 -> 'a', 2 -> 'b', ...
    pub fn to_letters(&self) -> String {
        self.symbols
            .iter()
            .map(|&s| (b'a' + s - 1) as char)
            .collect()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl std::fmt::Display for SaxWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_letters())
    }
}

/// A change between adjacent letters in a word. `position` is the 1-based
/// index of the segment before the change, so it lies in [1, w-1].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransitionEvent {
    pub position: usize,
    pub from_symbol: u8,
    pub to_symbol: u8,
}

/// Z-normalizes a series to zero mean and unit population standard
/// deviation. A constant series (sigma = 0) maps to all zeros.
pub fn znormalize(series: &TimeSeries) -> (TimeSeries, NormalizationStats) {
    let samples = series.samples();
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / n;
    let std_dev = var.sqrt();
    let normalized: Vec<f64> = if std_dev > 0.0 {
        samples.iter().map(|s| (s - mean) / std_dev).collect()
    } else {
        vec![0.0; samples.len()]
    };
    (
        TimeSeries::new(normalized).expect("normalized samples are finite"),
        NormalizationStats { mean, std_dev },
    )
}

/// Piecewise aggregate approximation: reduces a length-n series to w
/// per-segment means. When w does not divide n, boundary samples are split
/// proportionally between the two segments they straddle, so the weighted
/// mean of the output equals the mean of the input.
pub fn paa(series: &TimeSeries, word_length: usize) -> Result<TimeSeries> {
    let samples = series.samples();
    let n = samples.len();
    let w = word_length;
    if w < 1 || w > n {
        return Err(Error::invalid(format!(
            "word length {w} outside [1, {n}]"
        )));
    }
    let out = if n.is_multiple_of(w) {
        let seg = n / w;
        samples
            .chunks_exact(seg)
            .map(|chunk| chunk.iter().sum::<f64>() / seg as f64)
            .collect()
    } else {
        let seg_width = n as f64 / w as f64;
        let mut out = Vec::with_capacity(w);
        for i in 0..w {
            let start = (i * n) as f64 / w as f64;
            let end = ((i + 1) * n) as f64 / w as f64;
            let first = start.floor() as usize;
            let last = (end.ceil() as usize).min(n);
            let mut sum = 0.0;
            for (j, &s) in samples.iter().enumerate().take(last).skip(first) {
                let overlap = end.min((j + 1) as f64) - start.max(j as f64);
                if overlap > 0.0 {
                    sum += s * overlap;
                }
            }
            out.push(sum / seg_width);
        }
        out
    };
    TimeSeries::new(out)
}

/// Maps each PAA value to a symbol by breakpoint interval: symbol 1 for
/// t <= beta_1, symbol a for t > beta_{a-1}, otherwise the unique k with
/// beta_{k-1} < t <= beta_k.
pub fn discretize(paa_series: &TimeSeries, config: &SaxConfig) -> Result<SaxWord> {
    if paa_series.len() != config.word_length() {
        return Err(Error::invalid(format!(
            "series length {} does not match word length {}",
            paa_series.len(),
            config.word_length()
        )));
    }
    let cuts = config.breakpoints();
    let symbols = paa_series
        .samples()
        .iter()
        .map(|&t| (cuts.partition_point(|&b| t > b) + 1) as u8)
        .collect();
    SaxWord::new(symbols, config.alphabet_size())
}

/// The full three-step pipeline: normalize, PAA, discretize.
pub fn sax_transform(series: &TimeSeries, config: &SaxConfig) -> Result<SaxWord> {
    let (normalized, _) = znormalize(series);
    let reduced = paa(&normalized, config.word_length())?;
    discretize(&reduced, config)
}

/// Per-position letter distance summed over a pair of equal-length words.
/// Identical or neighboring letters cost zero; otherwise the width of the
/// breakpoint span strictly between the two letters is added.
pub fn word_distance(w1: &SaxWord, w2: &SaxWord) -> Result<f64> {
    if w1.len() != w2.len() {
        return Err(Error::invalid(format!(
            "word lengths differ: {} vs {}",
            w1.len(),
            w2.len()
        )));
    }
    if w1.alphabet_size() != w2.alphabet_size() {
        return Err(Error::invalid(format!(
            "alphabet sizes differ: {} vs {}",
            w1.alphabet_size(),
            w2.alphabet_size()
        )));
    }
    let cuts = breakpoints(w1.alphabet_size())?;
    let dist = w1
        .symbols()
        .iter()
        .zip(w2.symbols())
        .map(|(&a, &b)| letter_cell(a, b, cuts))
        .sum();
    Ok(dist)
}

fn letter_cell(a: u8, b: u8, cuts: &[f64]) -> f64 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    if hi - lo <= 1 {
        0.0
    } else {
        cuts[hi as usize - 2] - cuts[lo as usize - 1]
    }
}

/// Scans adjacent letter pairs and reports every change in positional order.
pub fn detect_transitions(word: &SaxWord) -> Vec<TransitionEvent> {
    word.symbols()
        .windows(2)
        .enumerate()
        .filter(|(_, pair)| pair[0] != pair[1])
        .map(|(i, pair)| TransitionEvent {
            position: i + 1,
            from_symbol: pair[0],
            to_symbol: pair[1],
        })
        .collect()
}
