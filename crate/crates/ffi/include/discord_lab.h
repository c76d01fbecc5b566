#ifndef DISCORD_LAB_H
#define DISCORD_LAB_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * The maximally correlated families indexed by their purity.
 */
typedef enum DlFamily {
  DL_FAMILY_B = 0,
  DL_FAMILY_C = 1,
  DL_FAMILY_D = 2,
} DlFamily;

typedef enum DlMetric {
  DL_METRIC_TRACE = 0,
  DL_METRIC_HELLINGER = 1,
  DL_METRIC_BURES = 2,
} DlMetric;

typedef enum DlStatus {
  DL_STATUS_OK = 0,
  DL_STATUS_NULL_POINTER = 1,
  DL_STATUS_INVALID_UTF8 = 2,
  DL_STATUS_INVALID_ARGUMENT = 3,
  DL_STATUS_NON_SQUARE = 4,
  DL_STATUS_NON_HERMITIAN = 5,
  DL_STATUS_NOT_PSD = 6,
  DL_STATUS_NOT_UNIT_TRACE = 7,
  DL_STATUS_NOT_UNITARY = 8,
  DL_STATUS_DIMENSION_MISMATCH = 9,
  DL_STATUS_NON_FINITE = 10,
  DL_STATUS_INVALID_SPECTRUM = 11,
  DL_STATUS_INVALID_PROBABILITIES = 12,
  DL_STATUS_OUT_OF_RANGE = 13,
  DL_STATUS_OUT_OF_REGION = 14,
  DL_STATUS_NOT_PURE = 15,
  DL_STATUS_UNSUPPORTED_DIMENSION = 16,
  DL_STATUS_CONVERGENCE_FAILURE = 17,
  DL_STATUS_OPTIMIZER_FAILURE = 18,
  DL_STATUS_PANIC = 19,
} DlStatus;

/**
 * Opaque handle to a validated density matrix.
 */
typedef struct DlState DlState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or null. The pointer
 * stays valid until the next call into this library from the same thread.
 */
const char *dl_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *dl_version(void);

/**
 * Builds a state from `2 n^2` doubles holding the row-major entries as
 * interleaved `(re, im)` pairs, with `n = dim_a * dim_b`.
 *
 * # Safety
 * `entries` must point to `2 * n * n` readable doubles and `out` must be writable.
 */
enum DlStatus dl_state_from_dense(const double *entries,
                                  size_t dim_a,
                                  size_t dim_b,
                                  struct DlState **out);

/**
 * Werner state with singlet weight `f`.
 *
 * # Safety
 * `out` must be writable.
 */
enum DlStatus dl_state_werner(double f, struct DlState **out);

/**
 * Bell-diagonal state with weights on `(Theta+, Theta-, Psi+, Psi-)`.
 *
 * # Safety
 * `gamma` must point to four readable doubles and `out` must be writable.
 */
enum DlStatus dl_state_bell_diagonal(const double *gamma, struct DlState **out);

/**
 * Member of a maximally correlated family at the given purity.
 *
 * # Safety
 * `out` must be writable.
 */
enum DlStatus dl_state_family(enum DlFamily family, double purity, struct DlState **out);

/**
 * State from a JSON description, in the format read by the command-line tool.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` must be writable.
 */
enum DlStatus dl_state_from_json(const char *json, struct DlState **out);

/**
 * Releases a state. Null is ignored.
 *
 * # Safety
 * `state` must come from a `dl_state_*` constructor and not have been freed.
 */
void dl_state_free(struct DlState *state);

/**
 * # Safety
 * `state` must be a live handle; the out-pointers must be writable.
 */
enum DlStatus dl_state_dims(const struct DlState *state, size_t *dim_a, size_t *dim_b);

/**
 * # Safety
 * `state` must be a live handle and `out` writable.
 */
enum DlStatus dl_state_purity(const struct DlState *state, double *out);

/**
 * Discord of response for `metric`, with the minimizing axis angles.
 * `theta` and `phi` may be null.
 *
 * # Safety
 * `state` must be a live handle and `value` writable; `theta` and `phi`
 * must be writable when non-null.
 */
enum DlStatus dl_discord_of_response(const struct DlState *state,
                                     enum DlMetric metric,
                                     double *value,
                                     double *theta,
                                     double *phi);

/**
 * Closed-form Bures discord of response of a Bell-diagonal spectrum.
 *
 * # Safety
 * `gamma` must point to four readable doubles and `out` must be writable.
 */
enum DlStatus dl_bell_diagonal_discord(const double *gamma, double *out);

/**
 * Closed-form Bures discord of response of a Werner state.
 *
 * # Safety
 * `out` must be writable.
 */
enum DlStatus dl_werner_discord(double f, double *out);

/**
 * Normalized Bures distance to the nearest classical-quantum state.
 *
 * # Safety
 * `state` must be a live handle and `out` writable.
 */
enum DlStatus dl_geometric_discord(const struct DlState *state, double *out);

/**
 * Uhlmann fidelity `(tr |sqrt(a) sqrt(b)|)^2`.
 *
 * # Safety
 * Both states must be live handles and `out` writable.
 */
enum DlStatus dl_fidelity(const struct DlState *a, const struct DlState *b, double *out);

/**
 * Trace, Hellinger or Bures distance between two states.
 *
 * # Safety
 * Both states must be live handles and `out` writable.
 */
enum DlStatus dl_distance(enum DlMetric metric,
                          const struct DlState *a,
                          const struct DlState *b,
                          double *out);

/**
 * Trace discord of response and the matching worst-case reading error.
 * `worst_case_error` may be null.
 *
 * # Safety
 * `state` must be a live handle and `value` writable; `worst_case_error`
 * must be writable when non-null.
 */
enum DlStatus dl_trace_discord(const struct DlState *state,
                               double *value,
                               double *worst_case_error);

/**
 * # Safety
 * `state` must be a live handle and `out` writable.
 */
enum DlStatus dl_interferometric_power(const struct DlState *state, double *out);

/**
 * Largest known Bures discord of response of a two-qubit state with the given purity.
 *
 * # Safety
 * `out` must be writable.
 */
enum DlStatus dl_composite_boundary(double purity, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DISCORD_LAB_H */
