#ifndef GBSCERT_H
#define GBSCERT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result of every fallible call. The first values coincide with the exit
 * codes of the command-line tool.
 */
typedef enum GbsStatus {
  GBS_STATUS_OK = 0,
  GBS_STATUS_INVALID_INPUT = 2,
  GBS_STATUS_VERIFICATION_FAILED = 3,
  GBS_STATUS_SEARCH_EXHAUSTED = 4,
  GBS_STATUS_NULL_POINTER = 10,
  GBS_STATUS_UTF8 = 11,
  GBS_STATUS_INTERNAL = 12,
} GbsStatus;

/**
 * A homogeneous polynomial with exact rational coefficients.
 */
typedef struct GbsPoly GbsPoly;

/**
 * A parsed problem file.
 */
typedef struct GbsProblem GbsProblem;

/**
 * Optional overrides for `gbs_run`; fields are read only when the matching
 * `has_*` flag is set.
 */
typedef struct GbsRunFlags {
  bool has_seed;
  uint64_t seed;
  bool has_m_max;
  size_t m_max;
  bool has_n_max;
  size_t n_max;
  /**
   * Worker threads; 0 means one.
   */
  size_t jobs;
} GbsRunFlags;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *gbs_version(void);

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on this thread.
 */
const char *gbs_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void gbs_string_free(char *s);

/**
 * Parses a JSON problem file.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum GbsStatus gbs_problem_parse(const char *json, struct GbsProblem **out);

/**
 * # Safety
 * `problem` must be null or a handle from `gbs_problem_parse`, not yet freed.
 */
void gbs_problem_free(struct GbsProblem *problem);

/**
 * Canonical JSON form of a parsed problem.
 *
 * # Safety
 * `problem` must be a live handle; `out` must be writable.
 */
enum GbsStatus gbs_problem_to_json(const struct GbsProblem *problem, char **out);

/**
 * Runs a subcommand (`"trace-verify"`, `"nu"`, `"macaulay"`,
 * `"certificate"`, `"gbs"`, `"graph-eval"`) and returns its JSON report.
 * A report is produced even when the computation fails; `exit_code`
 * receives the command-line exit code and the return value mirrors it.
 *
 * # Safety
 * `problem` must be a live handle, `command` a NUL-terminated string,
 * `flags` null or valid, and `report` and `exit_code` writable.
 */
enum GbsStatus gbs_run(const struct GbsProblem *problem,
                       const char *command,
                       const struct GbsRunFlags *flags,
                       char **report,
                       int32_t *exit_code);

/**
 * `ν(r, d)` in decimal and as a prime factorisation such as `2^3 * 3^2 * 5 * 7`.
 * Either output pointer may be null to skip it.
 *
 * # Safety
 * Non-null output pointers must be writable.
 */
enum GbsStatus gbs_nu(size_t r, size_t d, char **decimal, char **factorization);

/**
 * `dim S^n` of a `d`-dimensional space.
 */
size_t gbs_sym_dim(size_t d, size_t n);

/**
 * Parses a form of the given degree from a JSON object such as
 * `{"2,0": "1", "1,1": "-1/2"}`.
 *
 * # Safety
 * `terms_json` must be a NUL-terminated string; `out` must be writable.
 */
enum GbsStatus gbs_poly_parse(size_t dim,
                              size_t degree,
                              const char *terms_json,
                              struct GbsPoly **out);

/**
 * # Safety
 * `poly` must be null or a handle from this library, not yet freed.
 */
void gbs_poly_free(struct GbsPoly *poly);

/**
 * # Safety
 * `poly` must be a live handle; `out` must be writable.
 */
enum GbsStatus gbs_poly_to_json(const struct GbsPoly *poly, char **out);

/**
 * # Safety
 * `poly` must be a live handle.
 */
size_t gbs_poly_degree(const struct GbsPoly *poly);

/**
 * Product `a * b`: the multiplication operator `m(a)` applied to `b`.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum GbsStatus gbs_poly_mul(const struct GbsPoly *a, const struct GbsPoly *b, struct GbsPoly **out);

/**
 * Contraction `i(w) p` through the pairing given as a JSON matrix of
 * `d x e` rationals, with `p` on `d` variables and `w` on `e`.
 *
 * # Safety
 * `w` and `p` must be live handles, `pairing_json` a NUL-terminated
 * string and `out` writable.
 */
enum GbsStatus gbs_poly_contract(const struct GbsPoly *w,
                                 const struct GbsPoly *p,
                                 const char *pairing_json,
                                 struct GbsPoly **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GBSCERT_H */
