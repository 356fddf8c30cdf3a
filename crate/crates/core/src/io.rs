//! Deterministic parsers and serializers: portable bitmaps (P1/P4), series
//! text files and word-set files.
//!
//! PBM convention: bit 1 (ink) maps to foreground by default. Callers whose
//! shapes are encoded as PBM white (bit 0) can flip the result with
//! [`BinaryImage::inverted`].

use std::collections::{BTreeMap, BTreeSet};

use crate::classify::WordSetDatabase;
use crate::error::{Error, Result};
use crate::sax::SaxWord;
use crate::series::TimeSeries;
use crate::shape::BinaryImage;

/// Upper bound on parsed pixel counts, to keep hostile headers from
/// requesting absurd allocations.
const MAX_PIXELS: usize = 1 << 28;

struct PbmCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> PbmCursor<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        PbmCursor { bytes, pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    /// Skips whitespace and `#` comments (comments run to end of line).
    fn skip_separators(&mut self) {
        while let Some(b) = self.peek() {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(b) = self.bump() {
                    if b == b'\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn read_decimal(&mut self, what: &str) -> Result<usize> {
        self.skip_separators();
        let start = self.pos;
        let mut value: usize = 0;
        while let Some(b) = self.peek() {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as usize))
                .ok_or_else(|| Error::parse(start, format!("{what} overflows")))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::parse(self.pos, format!("expected {what}")));
        }
        Ok(value)
    }
}

/// Parses a plain (P1) or raw (P4) portable bitmap. Bit 1 becomes
/// foreground.
pub fn read_pbm(bytes: &[u8]) -> Result<BinaryImage> {
    let mut cur = PbmCursor::new(bytes);
    let magic = [cur.bump(), cur.bump()];
    let raw = match magic {
        [Some(b'P'), Some(b'1')] => false,
        [Some(b'P'), Some(b'4')] => true,
        _ => return Err(Error::parse(0, "expected PBM magic number P1 or P4")),
    };
    let width = cur.read_decimal("width")?;
    let height = cur.read_decimal("height")?;
    if width == 0 || height == 0 {
        return Err(Error::parse(cur.pos, "dimensions must be positive"));
    }
    let total = width
        .checked_mul(height)
        .filter(|&t| t <= MAX_PIXELS)
        .ok_or_else(|| Error::parse(cur.pos, "dimensions overflow"))?;

    // cap the up-front reservation so hostile headers cannot demand huge
    // allocations before the payload length is known
    let mut pixels = Vec::with_capacity(total.min(1 << 20));
    if raw {
        // exactly one whitespace byte separates the header from the payload
        match cur.bump() {
            Some(b) if b.is_ascii_whitespace() => {}
            _ => return Err(Error::parse(cur.pos, "expected whitespace before raster")),
        }
        let row_bytes = width.div_ceil(8);
        let payload = row_bytes * height;
        if cur.bytes.len() - cur.pos < payload {
            return Err(Error::parse(cur.bytes.len(), "truncated raster payload"));
        }
        for _ in 0..height {
            for bx in 0..row_bytes {
                let byte = cur
                    .bump()
                    .ok_or_else(|| Error::parse(cur.pos, "truncated raster payload"))?;
                let bits_in_byte = (width - bx * 8).min(8);
                for bit in 0..bits_in_byte {
                    pixels.push(byte & (0x80 >> bit) != 0);
                }
            }
        }
    } else {
        while pixels.len() < total {
            cur.skip_separators();
            match cur.bump() {
                Some(b'0') => pixels.push(false),
                Some(b'1') => pixels.push(true),
                Some(b) => {
                    return Err(Error::parse(
                        cur.pos - 1,
                        format!("unexpected byte {b:#04x} in P1 raster"),
                    ))
                }
                None => return Err(Error::parse(cur.pos, "truncated raster payload")),
            }
        }
    }
    BinaryImage::new(width, height, pixels)
}

/// Serializes an image as plain P1, one image row per line.
pub fn write_pbm(image: &BinaryImage) -> Vec<u8> {
    let mut out = format!("P1\n{} {}\n", image.width(), image.height()).into_bytes();
    for y in 0..image.height() {
        for x in 0..image.width() {
            if x > 0 {
                out.push(b' ');
            }
            out.push(if image.get(x, y) { b'1' } else { b'0' });
        }
        out.push(b'\n');
    }
    out
}

/// Reads a series file: one sample per line, `#` comments and blank lines
/// ignored.
pub fn read_series(text: &str) -> Result<TimeSeries> {
    let mut samples = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value: f64 = line
            .parse()
            .map_err(|_| Error::parse_line(i + 1, format!("not a number: {line:?}")))?;
        if !value.is_finite() {
            return Err(Error::parse_line(i + 1, format!("non-finite sample {line:?}")));
        }
        samples.push(value);
    }
    if samples.is_empty() {
        return Err(Error::invalid("series file contains no samples"));
    }
    TimeSeries::new(samples)
}

/// Writes a series file, one sample per line, with shortest exact decimal
/// formatting so read/write round-trips are lossless.
pub fn write_series(series: &TimeSeries) -> String {
    let mut out = String::new();
    for s in series.samples() {
        out.push_str(&format!("{s}\n"));
    }
    out
}

/// Reads a word-set file: header `#sax a=<a> w=<w>`, then one
/// `<label>\t<letters>` entry per line. Validates the symbol range and
/// cross-class exclusivity.
pub fn read_word_sets(text: &str) -> Result<WordSetDatabase> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse_line(1, "missing #sax header"))?;
    let (alphabet_size, word_length) = parse_header(header)?;

    let mut classes: BTreeMap<String, BTreeSet<SaxWord>> = BTreeMap::new();
    let mut seen: BTreeMap<SaxWord, String> = BTreeMap::new();
    for (i, line) in lines {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let (label, letters) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse_line(line_no, "expected <label>\\t<word>"))?;
        let word = SaxWord::from_letters(letters, alphabet_size)
            .map_err(|e| Error::parse_line(line_no, e.to_string()))?;
        if word.len() != word_length {
            return Err(Error::parse_line(
                line_no,
                format!("word length {} does not match header w={word_length}", word.len()),
            ));
        }
        if let Some(other) = seen.get(&word) {
            if other != label {
                return Err(Error::parse_line(
                    line_no,
                    format!("word '{word}' already assigned to class '{other}'"),
                ));
            }
        } else {
            seen.insert(word.clone(), label.to_string());
        }
        classes.entry(label.to_string()).or_default().insert(word);
    }
    if classes.is_empty() {
        return Err(Error::invalid("word-set file contains no entries"));
    }
    WordSetDatabase::new(classes, alphabet_size, word_length)
}

fn parse_header(header: &str) -> Result<(usize, usize)> {
    let rest = header
        .strip_prefix("#sax ")
        .ok_or_else(|| Error::parse_line(1, "header must start with '#sax '"))?;
    let mut a = None;
    let mut w = None;
    for field in rest.split_whitespace() {
        if let Some(v) = field.strip_prefix("a=") {
            a = v.parse::<usize>().ok();
        } else if let Some(v) = field.strip_prefix("w=") {
            w = v.parse::<usize>().ok();
        } else {
            return Err(Error::parse_line(1, format!("unknown header field {field:?}")));
        }
    }
    match (a, w) {
        (Some(a), Some(w)) if w >= 1 => Ok((a, w)),
        _ => Err(Error::parse_line(1, "header must carry a=<3-8> and w=<n>")),
    }
}

/// Writes a word-set file in canonical order: classes sorted, then words
/// sorted within each class.
pub fn write_word_sets(db: &WordSetDatabase) -> String {
    let mut out = format!("#sax a={} w={}\n", db.alphabet_size(), db.word_length());
    for (label, words) in db.classes() {
        for word in words {
            out.push_str(&format!("{label}\t{word}\n"));
        }
    }
    out
}
