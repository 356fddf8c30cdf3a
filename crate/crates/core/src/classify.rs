//! Word-set construction and brute-force nearest-word classification.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::sax::{sax_transform, word_distance, SaxConfig, SaxWord};
use crate::shape::{signature, BinaryImage};

/// Per-class deduplicated word sets. Classes never share a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSetDatabase {
    classes: BTreeMap<String, BTreeSet<SaxWord>>,
    alphabet_size: usize,
    word_length: usize,
}

impl WordSetDatabase {
    /// Assembles a database from per-class word sets, enforcing mutual
    /// exclusivity and uniform alphabet and word length.
    pub fn new(
        classes: BTreeMap<String, BTreeSet<SaxWord>>,
        alphabet_size: usize,
        word_length: usize,
    ) -> Result<Self> {
        let mut seen: BTreeMap<&SaxWord, &str> = BTreeMap::new();
        for (label, words) in &classes {
            if label.contains('\t') || label.contains('\n') {
                return Err(Error::invalid(format!(
                    "class label {label:?} contains tab or newline"
                )));
            }
            for word in words {
                if word.alphabet_size() != alphabet_size || word.len() != word_length {
                    return Err(Error::invalid(format!(
                        "word '{word}' in class '{label}' does not match a={alphabet_size} w={word_length}"
                    )));
                }
                if let Some(other) = seen.insert(word, label) {
                    return Err(Error::invalid(format!(
                        "word '{word}' appears in classes '{other}' and '{label}'"
                    )));
                }
            }
        }
        Ok(WordSetDatabase {
            classes,
            alphabet_size,
            word_length,
        })
    }

    pub fn classes(&self) -> &BTreeMap<String, BTreeSet<SaxWord>> {
        &self.classes
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn word_length(&self) -> usize {
        self.word_length
    }

    pub fn word_count(&self) -> usize {
        self.classes.values().map(|s| s.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.values().all(|s| s.is_empty())
    }
}

/// Outcome of nearest-word classification.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationResult {
    pub label: String,
    pub distance: f64,
    pub nearest_word: SaxWord,
}

/// A word removed from the database because it appeared in more than one
/// class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordConflict {
    pub word: SaxWord,
    pub labels: Vec<String>,
}

/// Converts each labeled image to a word via signature + SAX, deduplicates
/// per class, and removes any word occurring in two or more classes from
/// all of them. Removed words are reported as conflicts.
pub fn build_word_sets(
    labeled_images: &[(String, BinaryImage)],
    config: &SaxConfig,
    bins: usize,
) -> Result<(WordSetDatabase, Vec<WordConflict>)> {
    if labeled_images.is_empty() {
        return Err(Error::invalid("no labeled images supplied"));
    }
    let mut classes: BTreeMap<String, BTreeSet<SaxWord>> = BTreeMap::new();
    for (label, image) in labeled_images {
        let sig = signature(image, bins)?;
        let word = sax_transform(&sig.samples, config)?;
        classes.entry(label.clone()).or_default().insert(word);
    }

    let mut owners: BTreeMap<SaxWord, Vec<String>> = BTreeMap::new();
    for (label, words) in &classes {
        for word in words {
            owners.entry(word.clone()).or_default().push(label.clone());
        }
    }
    let mut conflicts = Vec::new();
    for (word, labels) in owners {
        if labels.len() > 1 {
            for label in &labels {
                classes.get_mut(label).unwrap().remove(&word);
            }
            conflicts.push(WordConflict { word, labels });
        }
    }
    if let Some((label, _)) = classes.iter().find(|(_, words)| words.is_empty()) {
        return Err(Error::DegenerateClass(label.clone()));
    }
    let db = WordSetDatabase::new(classes, config.alphabet_size(), config.word_length())?;
    Ok((db, conflicts))
}

/// Exhaustive scan over every word in every class, returning the label of
/// the global minimum distance. Ties break to the lexicographically
/// smallest class label, then the smallest word.
pub fn classify(candidate: &SaxWord, db: &WordSetDatabase) -> Result<ClassificationResult> {
    if db.is_empty() {
        return Err(Error::invalid("word-set database is empty"));
    }
    if candidate.alphabet_size() != db.alphabet_size() || candidate.len() != db.word_length() {
        return Err(Error::invalid(format!(
            "candidate a={} w={} does not match database a={} w={}",
            candidate.alphabet_size(),
            candidate.len(),
            db.alphabet_size(),
            db.word_length()
        )));
    }
    let mut best: Option<ClassificationResult> = None;
    for (label, words) in db.classes() {
        for word in words {
            let distance = word_distance(candidate, word)?;
            if best.as_ref().is_none_or(|b| distance < b.distance) {
                best = Some(ClassificationResult {
                    label: label.clone(),
                    distance,
                    nearest_word: word.clone(),
                });
            }
        }
    }
    Ok(best.expect("database is non-empty"))
}

/// End-to-end image classification: signature, SAX word, nearest-word scan.
pub fn classify_image(
    image: &BinaryImage,
    db: &WordSetDatabase,
    config: &SaxConfig,
    bins: usize,
) -> Result<ClassificationResult> {
    if config.alphabet_size() != db.alphabet_size() || config.word_length() != db.word_length() {
        return Err(Error::invalid(format!(
            "config a={} w={} does not match database a={} w={}",
            config.alphabet_size(),
            config.word_length(),
            db.alphabet_size(),
            db.word_length()
        )));
    }
    let sig = signature(image, bins)?;
    let word = sax_transform(&sig.samples, config)?;
    classify(&word, db)
}
