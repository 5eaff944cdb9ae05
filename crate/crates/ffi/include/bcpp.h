#ifndef BCPP_H
#define BCPP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible call.
 */
typedef enum BcppStatus {
  BCPP_STATUS_OK = 0,
  BCPP_STATUS_NULL_POINTER = 1,
  /**
   * Malformed JSON, heights outside `(0, 1]`, empty instance, bad UTF-8.
   */
  BCPP_STATUS_INVALID_INPUT = 2,
  /**
   * The algorithm needs two-bar charts.
   */
  BCPP_STATUS_SHAPE_MISMATCH = 3,
  /**
   * A packing overloads some cell or does not match the instance.
   */
  BCPP_STATUS_INFEASIBLE = 4,
  /**
   * A panic was caught at the boundary.
   */
  BCPP_STATUS_INTERNAL = 5,
} BcppStatus;

typedef enum BcppAlgorithm {
  BCPP_ALGORITHM_A = 0,
  BCPP_ALGORITHM_A_LO = 1,
  BCPP_ALGORITHM_A1 = 2,
  BCPP_ALGORITHM_A1_LO = 3,
  BCPP_ALGORITHM_GA = 4,
  BCPP_ALGORITHM_GA_LO = 5,
  BCPP_ALGORITHM_G = 6,
  BCPP_ALGORITHM_FFD = 7,
} BcppAlgorithm;

/**
 * Opaque instance handle.
 */
typedef struct BcppInstance BcppInstance;

/**
 * Opaque packing handle.
 */
typedef struct BcppPacking BcppPacking;

/**
 * Quality figures of a packing.
 */
typedef struct BcppReport {
  uint32_t length;
  double density;
  bool feasible;
} BcppReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *bcpp_last_error(void);

/**
 * Parses instance JSON `{"d": .., "charts": [{"heights": [..]}, ..]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum BcppStatus bcpp_instance_from_json(const char *json, struct BcppInstance **out);

/**
 * Builds `n` two-bar charts `(first[i], second[i])` with heights in `(0, 1]`.
 *
 * # Safety
 * `first` and `second` must point to `n` doubles each; `out` must be writable.
 */
enum BcppStatus bcpp_instance_new_two_bar(const double *first,
                                          const double *second,
                                          size_t n,
                                          struct BcppInstance **out);

/**
 * Random instance of `n` two-bar charts, identical to `bcpp generate`.
 *
 * # Safety
 * `out` must be writable.
 */
enum BcppStatus bcpp_generate(size_t n, uint64_t seed, struct BcppInstance **out);

/**
 * Number of charts; 0 for a null handle.
 *
 * # Safety
 * `instance` must be null or a live handle.
 */
size_t bcpp_instance_len(const struct BcppInstance *instance);

/**
 * # Safety
 * `instance` must be null or a handle not yet freed.
 */
void bcpp_instance_free(struct BcppInstance *instance);

/**
 * Packs with one heuristic; the packing is left-justified.
 *
 * # Safety
 * `instance` must be a live handle; `out` must be writable.
 */
enum BcppStatus bcpp_solve(const struct BcppInstance *instance,
                           enum BcppAlgorithm algorithm,
                           struct BcppPacking **out);

/**
 * Branch-and-bound. `proven_optimal` (may be null) is false when the time
 * limit cut the search short; the packing is then the best found.
 *
 * # Safety
 * `instance` must be a live handle; `out` must be writable.
 */
enum BcppStatus bcpp_solve_exact(const struct BcppInstance *instance,
                                 double time_limit_seconds,
                                 struct BcppPacking **out,
                                 bool *proven_optimal);

/**
 * Builds a packing from 1-based start cells, one per chart.
 *
 * # Safety
 * `starts` must point to `n` values; `out` must be writable.
 */
enum BcppStatus bcpp_packing_new(const uint32_t *starts, size_t n, struct BcppPacking **out);

/**
 * Number of charts in the packing; 0 for a null handle.
 *
 * # Safety
 * `packing` must be null or a live handle.
 */
size_t bcpp_packing_len(const struct BcppPacking *packing);

/**
 * Start cell of `chart`, or 0 when the handle is null or `chart` is out of
 * range.
 *
 * # Safety
 * `packing` must be null or a live handle.
 */
uint32_t bcpp_packing_start(const struct BcppPacking *packing, size_t chart);

/**
 * Evaluates `packing` against `instance`. Infeasible packings are reported
 * with `feasible = false`, not as an error.
 *
 * # Safety
 * Both handles must be live; `report` must be writable.
 */
enum BcppStatus bcpp_evaluate(const struct BcppInstance *instance,
                              const struct BcppPacking *packing,
                              struct BcppReport *report);

/**
 * Packing JSON `{"start_cell": {"<id>": <cell>, ..}}`.
 *
 * # Safety
 * `packing` must be a live handle; `out` must be writable.
 */
enum BcppStatus bcpp_packing_to_json(const struct BcppPacking *packing, char **out);

/**
 * # Safety
 * `packing` must be null or a handle not yet freed.
 */
void bcpp_packing_free(struct BcppPacking *packing);

/**
 * Boolean linear program of a two-bar instance in LP text format.
 *
 * # Safety
 * `instance` must be a live handle; `out` must be writable.
 */
enum BcppStatus bcpp_export_lp(const struct BcppInstance *instance, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void bcpp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BCPP_H */
