#ifndef LRMC_H
#define LRMC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum LrmcStatus {
  LRMC_STATUS_OK = 0,
  LRMC_STATUS_NULL_POINTER = 1,
  LRMC_STATUS_INVALID_UTF8 = 2,
  LRMC_STATUS_PARSE_ERROR = 3,
  LRMC_STATUS_INVALID_ARGUMENT = 4,
  // Degenerate projection, inconsistent data or a rank-deficient basis.
  LRMC_STATUS_NUMERICAL_ERROR = 5,
  LRMC_STATUS_TOO_LARGE = 6,
  LRMC_STATUS_PANIC = 7,
} LrmcStatus;

// Opaque observation pattern.
typedef struct LrmcPattern LrmcPattern;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parse a 0/1 grid or a JSON pattern.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum LrmcStatus lrmc_pattern_parse(const char *text, struct LrmcPattern **out);

// Release a pattern. Null is ignored.
//
// # Safety
// `pattern` must come from [`lrmc_pattern_parse`] and not be freed twice.
void lrmc_pattern_free(struct LrmcPattern *pattern);

// # Safety
// `pattern` must be a live handle; the outputs must be valid pointers.
enum LrmcStatus lrmc_pattern_dims(const struct LrmcPattern *pattern,
                                  size_t *m,
                                  size_t *n,
                                  size_t *entries);

// Writes whether the pattern has at least `r(m + n - r)` entries.
//
// # Safety
// `pattern` must be a live handle and `pass` a valid pointer.
enum LrmcStatus lrmc_minimum_size_check(const struct LrmcPattern *pattern, size_t r, bool *pass);

// Full analysis as a JSON report, plus the exit code the command line tool
// would return (0, 2 or 3). Free the string with [`lrmc_string_free`].
//
// # Safety
// `pattern` must be a live handle; the outputs must be valid pointers.
enum LrmcStatus lrmc_analyze_json(const struct LrmcPattern *pattern,
                                  size_t r,
                                  uint64_t seed,
                                  uint64_t budget,
                                  char **json_out,
                                  int32_t *exit_code);

// Release a string returned by the library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void lrmc_string_free(char *s);

// Treat an `m × (m - r)` pattern as an SLMF and decide the union condition.
// `witness` (may be null) receives a bitmask of a violating column set,
// bit `k` for column `k`; zero when the condition holds.
//
// # Safety
// `phi` must be a live handle; `is_slmf` must be valid; `witness` may be null.
enum LrmcStatus lrmc_slmf_check(const struct LrmcPattern *phi,
                                size_t r,
                                bool *is_slmf,
                                uint64_t *witness);

// Generic rank of the observation map at random factors, and its maximum
// `r(m + n - r)`.
//
// # Safety
// `pattern` must be a live handle; the outputs must be valid pointers.
enum LrmcStatus lrmc_jacobian_rank(const struct LrmcPattern *pattern,
                                   size_t r,
                                   size_t trials,
                                   uint64_t seed,
                                   size_t *rank,
                                   size_t *target);

// Complete an `m × n` matrix from the column space of an `m × r` basis.
// NaN entries of `values` are unobserved. `out` receives `m * n` values.
//
// # Safety
// `values` and `out` must hold `m * n` doubles and `basis` `m * r` doubles.
enum LrmcStatus lrmc_complete_matrix(size_t m,
                                     size_t n,
                                     const double *values,
                                     size_t r,
                                     const double *basis,
                                     double *out);

// Message of the last failed call on this thread, or an empty string. Valid
// until the next call into the library from the same thread.
const char *lrmc_last_error(void);

// Library version as a static string.
const char *lrmc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LRMC_H */
