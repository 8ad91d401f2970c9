#ifndef SUPERLLT_H
#define SUPERLLT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Computation route for [`sllt_compute`].
 */
typedef enum SlltRoute {
  SLLT_ROUTE_TABLEAUX = 0,
  SLLT_ROUTE_LATTICE = 1,
  SLLT_ROUTE_LATTICE_ALTERNATE = 2,
  SLLT_ROUTE_OPERATORS = 3,
} SlltRoute;

/**
 * Result code of every fallible call.
 */
typedef enum SlltStatus {
  SLLT_STATUS_OK = 0,
  SLLT_STATUS_NULL_POINTER = 1,
  SLLT_STATUS_INVALID_UTF8 = 2,
  SLLT_STATUS_INVALID_INPUT = 3,
  SLLT_STATUS_BUDGET_EXCEEDED = 4,
  SLLT_STATUS_INTERNAL = 5,
  SLLT_STATUS_PANIC = 6,
} SlltStatus;

/**
 * Opaque polynomial handle.
 */
typedef struct SlltPoly SlltPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the library as a static nul-terminated string.
 */
const char *sllt_version(void);

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *sllt_last_error(void);

/**
 * Computes the super LLT polynomial of `outer/inner` for ribbon length `n`
 * and the letter order `order` (for example `"1,1',2"`).
 *
 * # Safety
 * `outer` and `inner` point to `outer_len` and `inner_len` parts (either may
 * be null when its length is zero); `order` is a nul-terminated string;
 * `out` is writable. On success `*out` receives a handle to free with
 * [`sllt_poly_free`].
 */
enum SlltStatus sllt_compute(uint32_t n,
                             const uint32_t *outer,
                             uintptr_t outer_len,
                             const uint32_t *inner,
                             uintptr_t inner_len,
                             const char *order,
                             enum SlltRoute route,
                             struct SlltPoly **out);

/**
 * Parses a polynomial from its JSON form.
 *
 * # Safety
 * `json` is a nul-terminated string and `out` is writable.
 */
enum SlltStatus sllt_poly_from_json(const char *json, struct SlltPoly **out);

/**
 * Releases a polynomial. Null is ignored.
 *
 * # Safety
 * `p` is null or a handle from this library not yet freed.
 */
void sllt_poly_free(struct SlltPoly *p);

/**
 * # Safety
 * `p` is a live handle and `out` is writable. `*out` is freed with
 * [`sllt_string_free`].
 */
enum SlltStatus sllt_poly_to_json(const struct SlltPoly *p, char **out);

/**
 * Human-readable form, highest terms first.
 *
 * # Safety
 * As for [`sllt_poly_to_json`].
 */
enum SlltStatus sllt_poly_to_string(const struct SlltPoly *p, char **out);

/**
 * # Safety
 * `a` and `b` are live handles and `out` is writable.
 */
enum SlltStatus sllt_poly_equal(const struct SlltPoly *a, const struct SlltPoly *b, bool *out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` is null or a string from this library not yet freed.
 */
void sllt_string_free(char *s);

/**
 * Checks the star-triangle relation for one R-vertex kind (such as `"HH"`
 * or `"V~H"`) on all boundaries with `n` strands per side, writing the
 * number of checked boundaries and of failing ones. `printed` selects the
 * uncorrected mixed weights. `max_boundaries` of zero means no cap.
 *
 * # Safety
 * `kind` is a nul-terminated string; `checked` and `failures` are writable.
 */
enum SlltStatus sllt_verify_ybe(const char *kind,
                                uint32_t n,
                                bool printed,
                                uint64_t max_boundaries,
                                uint64_t *checked,
                                uint64_t *failures);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SUPERLLT_H */
