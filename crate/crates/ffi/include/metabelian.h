#ifndef METABELIAN_H
#define METABELIAN_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MbStatus {
  MB_STATUS_OK = 0,
  MB_STATUS_NULL_POINTER = 1,
  MB_STATUS_INVALID_UTF8 = 2,
  MB_STATUS_PARSE = 3,
  MB_STATUS_INVALID_ARGUMENT = 4,
  MB_STATUS_NOT_AUTOMORPHISM = 5,
  MB_STATUS_PANIC = 6,
} MbStatus;

/**
 * Opaque element of `M_n`.
 */
typedef struct MbElement MbElement;

/**
 * Opaque endomorphism of `M_n`.
 */
typedef struct MbEndo MbEndo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer is owned by the library.
 */
const char *mb_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void mb_string_free(char *s);

/**
 * Parses a bracket expression such as `[x1,x2] + 2*x3` in rank `rank`.
 *
 * # Safety
 * `expr` must be a NUL-terminated string; `out` must be writable.
 */
enum MbStatus mb_element_parse(const char *expr, size_t rank, struct MbElement **out);

/**
 * # Safety
 * `e` must be null or a live handle from this library.
 */
void mb_element_free(struct MbElement *e);

/**
 * Normal form as text (linear part and Fox row).
 *
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
enum MbStatus mb_element_to_string(const struct MbElement *e, char **out);

/**
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
enum MbStatus mb_element_is_derived(const struct MbElement *e, bool *out);

/**
 * # Safety
 * `a`, `b` must be live handles of equal rank; `out` must be writable.
 */
enum MbStatus mb_element_bracket(const struct MbElement *a,
                                 const struct MbElement *b,
                                 struct MbElement **out);

/**
 * Parses semicolon-separated images, e.g. `x1 + [x2,x3]; x2; x3`.
 *
 * # Safety
 * `images` must be a NUL-terminated string; `out` must be writable.
 */
enum MbStatus mb_endo_parse(const char *images, size_t rank, struct MbEndo **out);

/**
 * Reads the JSON document `{"rank": n, "images": [...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum MbStatus mb_endo_from_json(const char *json, struct MbEndo **out);

/**
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
enum MbStatus mb_endo_to_json(const struct MbEndo *e, char **out);

/**
 * # Safety
 * `e` must be null or a live handle from this library.
 */
void mb_endo_free(struct MbEndo *e);

/**
 * `phi o psi`: `x_i -> psi_i(phi_1, ..., phi_n)`.
 *
 * # Safety
 * `phi`, `psi` must be live handles; `out` must be writable.
 */
enum MbStatus mb_endo_compose(const struct MbEndo *phi,
                              const struct MbEndo *psi,
                              struct MbEndo **out);

/**
 * Verified inverse. Returns `NotAutomorphism` (with the reason in
 * [`mb_last_error`]) when there is none.
 *
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
enum MbStatus mb_endo_inverse(const struct MbEndo *e, struct MbEndo **out);

/**
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
enum MbStatus mb_endo_is_identity(const struct MbEndo *e, bool *out);

/**
 * Jacobian as `{"rank": n, "rows": [[...], ...]}`.
 *
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
enum MbStatus mb_endo_jacobian_json(const struct MbEndo *e, char **out);

/**
 * Filtration level; `-1` stands for the identity (every level).
 *
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
enum MbStatus mb_endo_iaut_level(const struct MbEndo *e, int64_t *out);

/**
 * Dyadic elimination report for `factors` factors, as JSON.
 *
 * # Safety
 * `out` must be writable.
 */
enum MbStatus mb_replay_bn(size_t factors, char **out);

/**
 * Fox-derivative report for rank `rank`, as JSON; `witness` also runs the
 * correction search.
 *
 * # Safety
 * `out` must be writable.
 */
enum MbStatus mb_replay_oe(size_t rank, bool witness, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* METABELIAN_H */
