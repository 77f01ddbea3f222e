#ifndef TUNNELKIT_H
#define TUNNELKIT_H

/* Generated by cbindgen from tunnelkit-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum TkStatus {
  /**
   * Success.
   */
  TK_OK = 0,
  /**
   * A word or permutation failed to parse or validate.
   */
  TK_ERR_PARSE = 1,
  /**
   * The offset parameter lies outside `0..=n`.
   */
  TK_ERR_RANGE = 2,
  /**
   * The permutation contains the pattern required to be avoided.
   */
  TK_ERR_PATTERN = 3,
  /**
   * A required pointer argument was null.
   */
  TK_ERR_NULL = 4,
  /**
   * A string argument was not valid UTF-8.
   */
  TK_ERR_UTF8 = 5,
} TkStatus;

/**
 * Opaque Dyck path handle.
 */
typedef struct TkDyckPath TkDyckPath;

/**
 * Opaque permutation handle.
 */
typedef struct TkPermutation TkPermutation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Human-readable description of a status code. Static storage; do not
 * free.
 */
const char *tk_status_message(enum TkStatus status);

/**
 * Frees a string returned by any `tk_*` call.
 *
 * # Safety
 * `s` must be a pointer previously returned by this library and not
 * yet freed.
 */
void tk_string_free(char *s);

/**
 * Parses a Dyck word (`u`/`d`, `U`/`D`, or `1`/`0`) into a new handle.
 *
 * # Safety
 * `word` must be a valid NUL-terminated string and `out` a valid
 * pointer.
 */
enum TkStatus tk_dyck_parse(const char *word, struct TkDyckPath **out);

/**
 * Frees a Dyck path handle.
 *
 * # Safety
 * `path` must come from this library and not be freed twice.
 */
void tk_dyck_free(struct TkDyckPath *path);

/**
 * Semilength of the path; 0 for a null handle.
 *
 * # Safety
 * `path` must be a live handle or null.
 */
uintptr_t tk_dyck_semilength(const struct TkDyckPath *path);

/**
 * Renders the canonical `u`/`d` word into a fresh string.
 *
 * # Safety
 * `path` must be a live handle; `out` must be valid. Free the result
 * with [`tk_string_free`].
 */
enum TkStatus tk_dyck_render(const struct TkDyckPath *path, char **out);

/**
 * Serializes the full statistic profile of the path as JSON.
 *
 * # Safety
 * `path` must be a live handle; `out` must be valid. Free the result
 * with [`tk_string_free`].
 */
enum TkStatus tk_dyck_stats_json(const struct TkDyckPath *path, char **out);

/**
 * Applies the zigzag map with offset `r` to the path.
 *
 * # Safety
 * `path` must be a live handle; `out` must be valid.
 */
enum TkStatus tk_zigzag_map(const struct TkDyckPath *path, uintptr_t r, struct TkDyckPath **out);

/**
 * Applies the inverse zigzag map with offset `r` to the path.
 *
 * # Safety
 * `path` must be a live handle; `out` must be valid.
 */
enum TkStatus tk_zigzag_unmap(const struct TkDyckPath *path, uintptr_t r, struct TkDyckPath **out);

/**
 * Parses a permutation in one-line notation (digits for sizes up to 9,
 * comma-separated beyond).
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be valid.
 */
enum TkStatus tk_perm_parse(const char *text, struct TkPermutation **out);

/**
 * Frees a permutation handle.
 *
 * # Safety
 * `pi` must come from this library and not be freed twice.
 */
void tk_perm_free(struct TkPermutation *pi);

/**
 * Renders one-line notation into a fresh string.
 *
 * # Safety
 * `pi` must be a live handle; `out` must be valid. Free the result
 * with [`tk_string_free`].
 */
enum TkStatus tk_perm_render(const struct TkPermutation *pi, char **out);

/**
 * Serializes fixed points, excedances, and descents as JSON.
 *
 * # Safety
 * `pi` must be a live handle; `out` must be valid. Free the result
 * with [`tk_string_free`].
 */
enum TkStatus tk_perm_stats_json(const struct TkPermutation *pi, char **out);

/**
 * Staircase walk: 321-avoiding permutation to Dyck path.
 *
 * # Safety
 * `pi` must be a live handle; `out` must be valid.
 */
enum TkStatus tk_rs_path(const struct TkPermutation *pi, struct TkDyckPath **out);

/**
 * Inverse staircase walk: Dyck path to 321-avoiding permutation.
 *
 * # Safety
 * `path` must be a live handle; `out` must be valid.
 */
enum TkStatus tk_rs_perm(const struct TkDyckPath *path, struct TkPermutation **out);

/**
 * Array walk: 132-avoiding permutation to Dyck path.
 *
 * # Safety
 * `pi` must be a live handle; `out` must be valid.
 */
enum TkStatus tk_kra_path(const struct TkPermutation *pi, struct TkDyckPath **out);

/**
 * Inverse array walk: Dyck path to 132-avoiding permutation.
 *
 * # Safety
 * `path` must be a live handle; `out` must be valid.
 */
enum TkStatus tk_kra_perm(const struct TkDyckPath *path, struct TkPermutation **out);

/**
 * The composite bijection from 132-avoiders to 321-avoiders with
 * offset `r`.
 *
 * # Safety
 * `pi` must be a live handle; `out` must be valid.
 */
enum TkStatus tk_composite(const struct TkPermutation *pi, uintptr_t r, struct TkPermutation **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TUNNELKIT_H */
