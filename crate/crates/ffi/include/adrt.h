#ifndef ADRT_H
#define ADRT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum AdrtStatus {
  ADRT_STATUS_OK = 0,
  ADRT_STATUS_NULL_POINTER = 1,
  ADRT_STATUS_INVALID_ARGUMENT = 2,
  ADRT_STATUS_DIMENSION = 3,
  ADRT_STATUS_NON_FINITE = 4,
  ADRT_STATUS_INDEX = 5,
  ADRT_STATUS_STRUCTURAL = 6,
  ADRT_STATUS_PRECONDITION = 7,
  ADRT_STATUS_FORMAT = 8,
  ADRT_STATUS_UNSUPPORTED_VERSION = 9,
  ADRT_STATUS_IO = 10,
  ADRT_STATUS_INTERNAL = 11,
} AdrtStatus;

/**
 * Opaque image handle.
 */
typedef struct AdrtImage AdrtImage;

/**
 * Opaque handle to a level stack of section transforms plus its quadrant tag.
 */
typedef struct AdrtTransform AdrtTransform;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *adrt_last_error_message(void);

/**
 * Static description of a status code.
 */
const char *adrt_status_string(enum AdrtStatus status);

/**
 * Creates a `2^n x 2^n` image from `len == 4^n` row-major values
 * (`j * 2^n + i`, row `j = 0` at the bottom).
 *
 * # Safety
 * `values` must point to `len` readable doubles; `out` must be writable.
 */
enum AdrtStatus adrt_image_new(uint32_t n,
                               const double *values,
                               size_t len,
                               struct AdrtImage **out);

/**
 * # Safety
 * `img` must be null or a handle from this library not yet freed.
 */
void adrt_image_free(struct AdrtImage *img);

/**
 * Level exponent and pixel count of an image.
 *
 * # Safety
 * `img` must be a live handle; `out_n` and `out_len` may be null.
 */
enum AdrtStatus adrt_image_shape(const struct AdrtImage *img, uint32_t *out_n, size_t *out_len);

/**
 * Copies the row-major pixel values into `out`, which must hold exactly
 * `len == 4^n` doubles.
 *
 * # Safety
 * `img` must be a live handle; `out` must point to `len` writable doubles.
 */
enum AdrtStatus adrt_image_copy_values(const struct AdrtImage *img, double *out, size_t len);

/**
 * Reads an image; the format follows the extension (`.pgm`, `.csv`,
 * `.adri`/`.raw`).
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum AdrtStatus adrt_image_read(const char *path, struct AdrtImage **out);

/**
 * Writes an image; the format follows the extension.
 *
 * # Safety
 * `img` must be a live handle and `path` a NUL-terminated string.
 */
enum AdrtStatus adrt_image_write(const struct AdrtImage *img, const char *path);

/**
 * Single-quadrant transform of `img` after applying the symmetry of
 * `quadrant` (0..=3). Pass 255 for the untagged identity transform.
 *
 * # Safety
 * `img` must be a live handle; `out` must be writable.
 */
enum AdrtStatus adrt_forward(const struct AdrtImage *img,
                             uint8_t quadrant,
                             struct AdrtTransform **out);

/**
 * Reconstructs the image, undoing the transform's quadrant symmetry.
 * `out_additions` and `out_subtractions` receive the operation counts and
 * may be null.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum AdrtStatus adrt_inverse(const struct AdrtTransform *t,
                             struct AdrtImage **out,
                             uint64_t *out_additions,
                             uint64_t *out_subtractions);

/**
 * # Safety
 * `t` must be null or a handle from this library not yet freed.
 */
void adrt_transform_free(struct AdrtTransform *t);

/**
 * Wraps a raw payload laid out as in the transform file format
 * (section, then slope, then offset `p = h + s`). Nonzero padding is
 * rejected.
 *
 * # Safety
 * `data` must point to `len` readable doubles; `out` must be writable.
 */
enum AdrtStatus adrt_transform_from_raw(uint32_t n,
                                        uint32_t m,
                                        uint8_t quadrant,
                                        const double *data,
                                        size_t len,
                                        struct AdrtTransform **out);

/**
 * Image level `n`, transform level `m`, quadrant byte (255 when untagged)
 * and raw payload length. Any output pointer may be null.
 *
 * # Safety
 * `t` must be a live handle.
 */
enum AdrtStatus adrt_transform_shape(const struct AdrtTransform *t,
                                     uint32_t *out_n,
                                     uint32_t *out_m,
                                     uint8_t *out_quadrant,
                                     size_t *out_len);

/**
 * Logical value `R(section, h, s)`; zero outside the support.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum AdrtStatus adrt_transform_get(const struct AdrtTransform *t,
                                   size_t section,
                                   int64_t h,
                                   size_t s,
                                   double *out);

/**
 * Copies the raw payload, padding included.
 *
 * # Safety
 * `t` must be a live handle; `out` must point to `len` writable doubles.
 */
enum AdrtStatus adrt_transform_copy_raw(const struct AdrtTransform *t, double *out, size_t len);

/**
 * Reads a transform file. With `strict`, nonzero padding is an error;
 * otherwise it is cleared.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum AdrtStatus adrt_transform_read(const char *path, bool strict, struct AdrtTransform **out);

/**
 * # Safety
 * `t` must be a live handle and `path` a NUL-terminated string.
 */
enum AdrtStatus adrt_transform_write(const struct AdrtTransform *t, const char *path);

/**
 * Additions plus subtractions of a full inversion at level `n`.
 */
uint64_t adrt_inverse_total(uint32_t n);

/**
 * Additions of the fast forward transform at level `n`.
 */
uint64_t adrt_forward_additions(uint32_t n);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ADRT_H */
