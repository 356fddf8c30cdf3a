#ifndef SAXSHAPE_H
#define SAXSHAPE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every API function.
 */
typedef enum SaxshapeStatus {
  SAXSHAPE_STATUS_OK = 0,
  SAXSHAPE_STATUS_INVALID_INPUT = 1,
  SAXSHAPE_STATUS_UNSUPPORTED_ALPHABET = 2,
  SAXSHAPE_STATUS_EMPTY_SHAPE = 3,
  SAXSHAPE_STATUS_DEGENERATE_SHAPE = 4,
  SAXSHAPE_STATUS_DEGENERATE_CLASS = 5,
  SAXSHAPE_STATUS_PARSE_ERROR = 6,
  SAXSHAPE_STATUS_NULL_POINTER = 7,
  SAXSHAPE_STATUS_BUFFER_TOO_SMALL = 8,
  SAXSHAPE_STATUS_INTERNAL_ERROR = 9,
} SaxshapeStatus;

/**
 * Opaque word-set database handle. Create with [`saxshape_db_parse`],
 * release with [`saxshape_db_free`]. Immutable after creation, so a handle
 * may be shared across threads for concurrent classification.
 */
typedef struct saxshape_db saxshape_db;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message text for the most recent error on this thread, NUL-terminated.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *saxshape_last_error_message(void);

/**
 * Runs the full SAX pipeline on `samples` and writes the word letters plus
 * a NUL terminator into `out_word` (capacity must be at least
 * `word_length + 1`).
 *
 * # Safety
 * `samples` must point to `len` doubles; `out_word` must point to
 * `out_capacity` writable bytes.
 */
enum SaxshapeStatus saxshape_sax_transform(const double *samples,
                                           size_t len,
                                           size_t alphabet_size,
                                           size_t word_length,
                                           char *out_word,
                                           size_t out_capacity);

/**
 * Algorithm-1 distance between two rendered words of equal length.
 *
 * # Safety
 * `word1` and `word2` must be NUL-terminated strings; `out_distance` must
 * be a valid pointer.
 */
enum SaxshapeStatus saxshape_word_distance(const char *word1,
                                           const char *word2,
                                           size_t alphabet_size,
                                           double *out_distance);

/**
 * Centroid-distance signature of a binary image over `bins` angular bins.
 * Writes `bins` doubles into `out_samples`.
 *
 * # Safety
 * `pixels` must point to `width * height` bytes; `out_samples` must point
 * to `bins` writable doubles.
 */
enum SaxshapeStatus saxshape_signature(const uint8_t *pixels,
                                       size_t width,
                                       size_t height,
                                       size_t bins,
                                       double *out_samples);

/**
 * Parses a word-set document (`#sax a=<a> w=<w>` header followed by
 * `<label>\t<letters>` lines) into a database handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out_db` must be a valid
 * pointer. The returned handle must be released with [`saxshape_db_free`].
 */
enum SaxshapeStatus saxshape_db_parse(const char *text, struct saxshape_db **out_db);

/**
 * Releases a database handle. Accepts null.
 *
 * # Safety
 * `db` must be a handle from [`saxshape_db_parse`] not yet freed.
 */
void saxshape_db_free(struct saxshape_db *db);

/**
 * Alphabet size of the database behind the handle.
 *
 * # Safety
 * `db` must be a live handle; `out` must be valid.
 */
enum SaxshapeStatus saxshape_db_alphabet_size(const struct saxshape_db *db, size_t *out);

/**
 * Word length of the database behind the handle.
 *
 * # Safety
 * `db` must be a live handle; `out` must be valid.
 */
enum SaxshapeStatus saxshape_db_word_length(const struct saxshape_db *db, size_t *out);

/**
 * Classifies a rendered candidate word by brute-force minimum distance.
 * Writes the winning class label (NUL-terminated) and the distance.
 *
 * # Safety
 * `db` must be a live handle, `word` a NUL-terminated string, `out_label`
 * a buffer of `label_capacity` bytes, `out_distance` a valid pointer.
 */
enum SaxshapeStatus saxshape_db_classify_word(const struct saxshape_db *db,
                                              const char *word,
                                              char *out_label,
                                              size_t label_capacity,
                                              double *out_distance);

/**
 * End-to-end image classification: signature, SAX word, nearest-word scan.
 * The database header fixes alphabet size and word length.
 *
 * # Safety
 * `db` must be a live handle, `pixels` must point to `width * height`
 * bytes, `out_label` to `label_capacity` writable bytes, `out_distance`
 * must be valid.
 */
enum SaxshapeStatus saxshape_db_classify_image(const struct saxshape_db *db,
                                               const uint8_t *pixels,
                                               size_t width,
                                               size_t height,
                                               size_t bins,
                                               char *out_label,
                                               size_t label_capacity,
                                               double *out_distance);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SAXSHAPE_H */
