#ifndef SEPFLUX_H
#define SEPFLUX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Values 2 through 6 match the CLI exit codes.
 */
typedef enum SfStatus {
  SF_STATUS_OK = 0,
  /**
   * Malformed surface document or word.
   */
  SF_STATUS_PARSE = 2,
  /**
   * A surface, curve or generator invariant does not hold.
   */
  SF_STATUS_INVARIANT = 3,
  /**
   * The surface is outside the supported hypothesis (finite type, too few genus ends).
   */
  SF_STATUS_HYPOTHESIS = 4,
  /**
   * The class is unknown, zero, not simple, or has the wrong dimension.
   */
  SF_STATUS_BAD_CLASS = 5,
  /**
   * An internal consistency check failed.
   */
  SF_STATUS_INTERNAL = 6,
  SF_STATUS_NULL_POINTER = 7,
  SF_STATUS_BUFFER_TOO_SMALL = 8,
  SF_STATUS_INVALID_UTF8 = 9,
  SF_STATUS_PANIC = 10,
} SfStatus;

/**
 * Opaque surface handle.
 */
typedef struct SfSurface SfSurface;

/**
 * Opaque mapping-class word handle.
 */
typedef struct SfWord SfWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread, or null if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *sf_last_error_message(void);

/**
 * Parse a JSON surface document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum SfStatus sf_surface_from_json(const char *json, struct SfSurface **out_surface);

/**
 * # Safety
 * `surface` must be null or a handle from `sf_surface_from_json` not yet freed.
 */
void sf_surface_free(struct SfSurface *surface);

/**
 * Number of arms (ends accumulated by genus) of the surface.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SfStatus sf_surface_arm_count(const struct SfSurface *surface, size_t *out_count);

/**
 * Parse a word such as `S(1,2)^-1*T(P={e1}; l=2; h=0)` on `surface`.
 *
 * # Safety
 * `surface` must be a live handle, `src` NUL-terminated, `out_word` writable.
 */
enum SfStatus sf_word_parse(const struct SfSurface *surface,
                            const char *src,
                            struct SfWord **out_word);

/**
 * # Safety
 * `word` must be null or a live word handle.
 */
void sf_word_free(struct SfWord *word);

/**
 * Render a word in the parser's syntax. Release the result with `sf_string_free`.
 *
 * # Safety
 * Handles must be live; `out_str` writable.
 */
enum SfStatus sf_word_to_string(const struct SfSurface *surface,
                                const struct SfWord *word,
                                char **out_str);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void sf_string_free(char *s);

/**
 * Rank of the first homology of the mapping class group (needs infinite
 * genus or finite genus at least 2).
 *
 * # Safety
 * Pointers must be valid.
 */
enum SfStatus sf_h1_rank(const struct SfSurface *surface, size_t *out_rank);

/**
 * Rank of the separating homology of the filled surface.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SfStatus sf_sep_rank(const struct SfSurface *surface, size_t *out_rank);

/**
 * Flux of `word` through the class with coordinates `coords[0..len]` in the
 * standard basis (`len` must be the arm count minus one).
 *
 * # Safety
 * `coords` must point to `len` readable values (may be null when `len` is 0).
 */
enum SfStatus sf_phi(const struct SfSurface *surface,
                     const int64_t *coords,
                     size_t len,
                     const struct SfWord *word,
                     int64_t *out_value);

/**
 * Flux vector of `word` against the standard basis. `*out_len` receives the
 * vector length; if `cap` is smaller, nothing is written to `buf` and
 * `SF_STATUS_BUFFER_TOO_SMALL` is returned.
 *
 * # Safety
 * `buf` must have room for `cap` values (may be null when `cap` is 0).
 */
enum SfStatus sf_project_to_a(const struct SfSurface *surface,
                              const struct SfWord *word,
                              int64_t *buf,
                              size_t cap,
                              size_t *out_len);

/**
 * Split `word = residual * kappa` where `kappa` is a product of dual-basis
 * shifts carrying all of the flux. Both outputs are new handles.
 *
 * # Safety
 * Handles must be live; both out pointers writable.
 */
enum SfStatus sf_factor(const struct SfSurface *surface,
                        const struct SfWord *word,
                        struct SfWord **out_kappa,
                        struct SfWord **out_residual);

/**
 * Whether `word` has vanishing flux, i.e. passes the closure test.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SfStatus sf_in_closure(const struct SfSurface *surface,
                            const struct SfWord *word,
                            bool *out_flag);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEPFLUX_H */
