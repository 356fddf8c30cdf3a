//! C ABI over the saxshape library.
//!
//! Every function returns a [`SaxshapeStatus`] code; outputs travel through
//! caller-provided buffers or opaque handles. A thread-local copy of the
//! last error message is available via [`saxshape_last_error_message`].
//!
//! Image buffers are row-major, one byte per pixel, nonzero = foreground.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::slice;

use saxshape::classify::{classify, classify_image};
use saxshape::error::Error;
use saxshape::sax::{sax_transform, word_distance, SaxConfig, SaxWord};
use saxshape::shape::signature;
use saxshape::{io, BinaryImage, TimeSeries, WordSetDatabase};

/// Status codes returned by every API function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaxshapeStatus {
    Ok = 0,
    InvalidInput = 1,
    UnsupportedAlphabet = 2,
    EmptyShape = 3,
    DegenerateShape = 4,
    DegenerateClass = 5,
    ParseError = 6,
    NullPointer = 7,
    BufferTooSmall = 8,
    InternalError = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized: String = message.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn fail(err: &Error) -> SaxshapeStatus {
    set_error(&err.to_string());
    match err {
        Error::InvalidInput(_) => SaxshapeStatus::InvalidInput,
        Error::UnsupportedAlphabet(_) => SaxshapeStatus::UnsupportedAlphabet,
        Error::EmptyShape => SaxshapeStatus::EmptyShape,
        Error::DegenerateShape(_) => SaxshapeStatus::DegenerateShape,
        Error::DegenerateClass(_) => SaxshapeStatus::DegenerateClass,
        Error::Parse { .. } | Error::ParseLine { .. } => SaxshapeStatus::ParseError,
        Error::Io(_) => SaxshapeStatus::InternalError,
    }
}

fn null_pointer(what: &str) -> SaxshapeStatus {
    set_error(&format!("{what} is null"));
    SaxshapeStatus::NullPointer
}

/// Opaque word-set database handle. Create with [`saxshape_db_parse`],
/// release with [`saxshape_db_free`]. Immutable after creation, so a handle
/// may be shared across threads for concurrent classification.
pub struct SaxshapeDb {
    inner: WordSetDatabase,
}

/// Message text for the most recent error on this thread, NUL-terminated.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn saxshape_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

unsafe fn series_from_raw(samples: *const f64, len: usize) -> Result<TimeSeries, Error> {
    TimeSeries::new(slice::from_raw_parts(samples, len).to_vec())
}

unsafe fn image_from_raw(
    pixels: *const u8,
    width: usize,
    height: usize,
) -> Result<BinaryImage, Error> {
    let len = width
        .checked_mul(height)
        .ok_or_else(|| Error::InvalidInput("image dimensions overflow".into()))?;
    let raw = slice::from_raw_parts(pixels, len);
    BinaryImage::new(width, height, raw.iter().map(|&p| p != 0).collect())
}

fn copy_letters(word: &SaxWord, out: *mut c_char, out_capacity: usize) -> SaxshapeStatus {
    let letters = word.to_letters();
    if out_capacity < letters.len() + 1 {
        set_error(&format!(
            "output buffer holds {out_capacity} bytes, need {}",
            letters.len() + 1
        ));
        return SaxshapeStatus::BufferTooSmall;
    }
    unsafe {
        std::ptr::copy_nonoverlapping(letters.as_ptr() as *const c_char, out, letters.len());
        *out.add(letters.len()) = 0;
    }
    SaxshapeStatus::Ok
}

fn copy_label(label: &str, out: *mut c_char, out_capacity: usize) -> SaxshapeStatus {
    if out_capacity < label.len() + 1 {
        set_error(&format!(
            "label buffer holds {out_capacity} bytes, need {}",
            label.len() + 1
        ));
        return SaxshapeStatus::BufferTooSmall;
    }
    unsafe {
        std::ptr::copy_nonoverlapping(label.as_ptr() as *const c_char, out, label.len());
        *out.add(label.len()) = 0;
    }
    SaxshapeStatus::Ok
}

unsafe fn word_from_c(letters: *const c_char, alphabet_size: usize) -> Result<SaxWord, Error> {
    let text = CStr::from_ptr(letters)
        .to_str()
        .map_err(|_| Error::InvalidInput("word is not valid UTF-8".into()))?;
    SaxWord::from_letters(text, alphabet_size)
}

/// Runs the full SAX pipeline on `samples` and writes the word letters plus
/// a NUL terminator into `out_word` (capacity must be at least
/// `word_length + 1`).
///
/// # Safety
/// `samples` must point to `len` doubles; `out_word` must point to
/// `out_capacity` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn saxshape_sax_transform(
    samples: *const f64,
    len: usize,
    alphabet_size: usize,
    word_length: usize,
    out_word: *mut c_char,
    out_capacity: usize,
) -> SaxshapeStatus {
    if samples.is_null() {
        return null_pointer("samples");
    }
    if out_word.is_null() {
        return null_pointer("out_word");
    }
    let result = series_from_raw(samples, len)
        .and_then(|series| {
            let config = SaxConfig::new(alphabet_size, word_length)?;
            sax_transform(&series, &config)
        });
    match result {
        Ok(word) => copy_letters(&word, out_word, out_capacity),
        Err(e) => fail(&e),
    }
}

/// Algorithm-1 distance between two rendered words of equal length.
///
/// # Safety
/// `word1` and `word2` must be NUL-terminated strings; `out_distance` must
/// be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn saxshape_word_distance(
    word1: *const c_char,
    word2: *const c_char,
    alphabet_size: usize,
    out_distance: *mut f64,
) -> SaxshapeStatus {
    if word1.is_null() || word2.is_null() {
        return null_pointer("word");
    }
    if out_distance.is_null() {
        return null_pointer("out_distance");
    }
    let result = word_from_c(word1, alphabet_size)
        .and_then(|w1| Ok((w1, word_from_c(word2, alphabet_size)?)))
        .and_then(|(w1, w2)| word_distance(&w1, &w2));
    match result {
        Ok(d) => {
            *out_distance = d;
            SaxshapeStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Centroid-distance signature of a binary image over `bins` angular bins.
/// Writes `bins` doubles into `out_samples`.
///
/// # Safety
/// `pixels` must point to `width * height` bytes; `out_samples` must point
/// to `bins` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn saxshape_signature(
    pixels: *const u8,
    width: usize,
    height: usize,
    bins: usize,
    out_samples: *mut f64,
) -> SaxshapeStatus {
    if pixels.is_null() {
        return null_pointer("pixels");
    }
    if out_samples.is_null() {
        return null_pointer("out_samples");
    }
    let result = image_from_raw(pixels, width, height).and_then(|img| signature(&img, bins));
    match result {
        Ok(sig) => {
            std::ptr::copy_nonoverlapping(sig.samples.samples().as_ptr(), out_samples, bins);
            SaxshapeStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Parses a word-set document (`#sax a=<a> w=<w>` header followed by
/// `<label>\t<letters>` lines) into a database handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out_db` must be a valid
/// pointer. The returned handle must be released with [`saxshape_db_free`].
#[no_mangle]
pub unsafe extern "C" fn saxshape_db_parse(
    text: *const c_char,
    out_db: *mut *mut SaxshapeDb,
) -> SaxshapeStatus {
    if text.is_null() {
        return null_pointer("text");
    }
    if out_db.is_null() {
        return null_pointer("out_db");
    }
    let text = match CStr::from_ptr(text).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("word-set text is not valid UTF-8");
            return SaxshapeStatus::ParseError;
        }
    };
    match io::read_word_sets(text) {
        Ok(db) => {
            *out_db = Box::into_raw(Box::new(SaxshapeDb { inner: db }));
            SaxshapeStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Releases a database handle. Accepts null.
///
/// # Safety
/// `db` must be a handle from [`saxshape_db_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn saxshape_db_free(db: *mut SaxshapeDb) {
    if !db.is_null() {
        drop(Box::from_raw(db));
    }
}

/// Alphabet size of the database behind the handle.
///
/// # Safety
/// `db` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn saxshape_db_alphabet_size(
    db: *const SaxshapeDb,
    out: *mut usize,
) -> SaxshapeStatus {
    if db.is_null() {
        return null_pointer("db");
    }
    if out.is_null() {
        return null_pointer("out");
    }
    *out = (*db).inner.alphabet_size();
    SaxshapeStatus::Ok
}

/// Word length of the database behind the handle.
///
/// # Safety
/// `db` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn saxshape_db_word_length(
    db: *const SaxshapeDb,
    out: *mut usize,
) -> SaxshapeStatus {
    if db.is_null() {
        return null_pointer("db");
    }
    if out.is_null() {
        return null_pointer("out");
    }
    *out = (*db).inner.word_length();
    SaxshapeStatus::Ok
}

/// Classifies a rendered candidate word by brute-force minimum distance.
/// Writes the winning class label (NUL-terminated) and the distance.
///
/// # Safety
/// `db` must be a live handle, `word` a NUL-terminated string, `out_label`
/// a buffer of `label_capacity` bytes, `out_distance` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn saxshape_db_classify_word(
    db: *const SaxshapeDb,
    word: *const c_char,
    out_label: *mut c_char,
    label_capacity: usize,
    out_distance: *mut f64,
) -> SaxshapeStatus {
    if db.is_null() {
        return null_pointer("db");
    }
    if word.is_null() {
        return null_pointer("word");
    }
    if out_label.is_null() || out_distance.is_null() {
        return null_pointer("output");
    }
    let db = &(*db).inner;
    let result =
        word_from_c(word, db.alphabet_size()).and_then(|candidate| classify(&candidate, db));
    match result {
        Ok(r) => {
            *out_distance = r.distance;
            copy_label(&r.label, out_label, label_capacity)
        }
        Err(e) => fail(&e),
    }
}

/// End-to-end image classification: signature, SAX word, nearest-word scan.
/// The database header fixes alphabet size and word length.
///
/// # Safety
/// `db` must be a live handle, `pixels` must point to `width * height`
/// bytes, `out_label` to `label_capacity` writable bytes, `out_distance`
/// must be valid.
#[no_mangle]
pub unsafe extern "C" fn saxshape_db_classify_image(
    db: *const SaxshapeDb,
    pixels: *const u8,
    width: usize,
    height: usize,
    bins: usize,
    out_label: *mut c_char,
    label_capacity: usize,
    out_distance: *mut f64,
) -> SaxshapeStatus {
    if db.is_null() {
        return null_pointer("db");
    }
    if pixels.is_null() {
        return null_pointer("pixels");
    }
    if out_label.is_null() || out_distance.is_null() {
        return null_pointer("output");
    }
    let db = &(*db).inner;
    let result = image_from_raw(pixels, width, height).and_then(|img| {
        let config = SaxConfig::new(db.alphabet_size(), db.word_length())?;
        classify_image(&img, db, &config, bins)
    });
    match result {
        Ok(r) => {
            *out_distance = r.distance;
            copy_label(&r.label, out_label, label_capacity)
        }
        Err(e) => fail(&e),
    }
}
