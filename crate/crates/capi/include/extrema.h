/* C interface to the extrema stationary-point toolkit. */

#ifndef EXTREMA_H
#define EXTREMA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call in this interface.
 */
typedef enum ExtremaStatus {
  EXTREMA_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  EXTREMA_STATUS_NULL_ARGUMENT,
  /**
   * The formula was not valid UTF-8.
   */
  EXTREMA_STATUS_INVALID_UTF8,
  /**
   * The formula did not parse; see `extrema_status_message`.
   */
  EXTREMA_STATUS_PARSE_ERROR,
  /**
   * Domain bounds were not finite ordered pairs, or the length was wrong.
   */
  EXTREMA_STATUS_INVALID_DOMAIN,
  /**
   * The search failed to evaluate the gradient over the domain.
   */
  EXTREMA_STATUS_SOLVE_ERROR,
  /**
   * The classification for this candidate failed (for example, probes
   * could not be placed inside the domain).
   */
  EXTREMA_STATUS_CLASSIFY_ERROR,
  /**
   * A candidate index was out of range.
   */
  EXTREMA_STATUS_INDEX_OUT_OF_RANGE,
  /**
   * A panic was caught at the boundary; the handle may be poisoned.
   */
  EXTREMA_STATUS_PANIC,
} ExtremaStatus;

/**
 * Kind of stationary point, mirroring the library verdict.
 */
typedef enum ExtremaVerdict {
  EXTREMA_VERDICT_MINIMUM = 0,
  EXTREMA_VERDICT_MAXIMUM,
  EXTREMA_VERDICT_SADDLE,
  EXTREMA_VERDICT_INFLECTION,
  EXTREMA_VERDICT_UNDECIDED,
} ExtremaVerdict;

/**
 * Outcome of one solve-and-classify run over a domain box.
 */
typedef struct ExtremaAnalysis ExtremaAnalysis;

/**
 * A parsed objective with its symbolic gradient and Hessian.
 */
typedef struct ExtremaSystem ExtremaSystem;

/**
 * Tuning knobs for `extrema_analyze`. Obtain defaults from
 * `extrema_options_default` and override selectively.
 */
typedef struct ExtremaOptions {
  /**
   * Target enclosure width per axis for the search.
   */
  double tol_x;
  /**
   * Box budget before the search reports itself truncated.
   */
  uintptr_t max_boxes;
  /**
   * Probe rounds allowed after an undecided first attempt.
   */
  uintptr_t retry_limit;
  /**
   * Probe half-width. Any non-finite or non-positive value selects the
   * automatic per-candidate width.
   */
  double epsilon;
} ExtremaOptions;

/**
 * Face counts and probe bookkeeping backing one verdict.
 */
typedef struct ExtremaEvidence {
  /**
   * Faces whose range lies strictly above the candidate's value range.
   */
  uintptr_t faces_above;
  /**
   * Faces whose range lies strictly below.
   */
  uintptr_t faces_below;
  /**
   * Faces whose range overlaps the candidate's value range.
   */
  uintptr_t faces_overlapping;
  /**
   * Probe half-width of the deciding (or final) attempt.
   */
  double epsilon;
  /**
   * Retries consumed after the first attempt.
   */
  uintptr_t retries;
  /**
   * Interval evaluations of the objective, 2n+1 per attempt.
   */
  uintptr_t evaluations;
} ExtremaEvidence;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `formula` over variables `x1..x<dimension>` and writes a new
 * system handle to `out`.
 *
 * # Safety
 * `formula` must point to a NUL-terminated string and `out` to a writable
 * pointer slot. The handle must be released with `extrema_system_free`.
 */
enum ExtremaStatus extrema_system_new(const char *formula,
                                      uintptr_t dimension,
                                      struct ExtremaSystem **out);

/**
 * Releases a system handle. A null handle is ignored.
 *
 * # Safety
 * `system` must be a pointer returned by `extrema_system_new` that has not
 * been freed already.
 */
void extrema_system_free(struct ExtremaSystem *system);

/**
 * Writes the number of variables of the system to `out`.
 *
 * # Safety
 * `system` must be a live system handle and `out` writable.
 */
enum ExtremaStatus extrema_system_dim(const struct ExtremaSystem *system, uintptr_t *out);

/**
 * Writes the default analysis options to `out`.
 *
 * # Safety
 * `out` must be writable.
 */
enum ExtremaStatus extrema_options_default(struct ExtremaOptions *out);

/**
 * Encloses every stationary point of the system inside the box
 * `[lower[i], upper[i]]` for `i < len`, classifies each one, and writes an
 * analysis handle to `out`. `options` may be null for defaults.
 *
 * # Safety
 * `system` must be a live system handle; `lower` and `upper` must point to
 * `len` readable doubles; `options`, when non-null, must point to a valid
 * `ExtremaOptions`; `out` must be writable. The handle must be released
 * with `extrema_analysis_free`.
 */
enum ExtremaStatus extrema_analyze(const struct ExtremaSystem *system,
                                   const double *lower,
                                   const double *upper,
                                   uintptr_t len,
                                   const struct ExtremaOptions *options,
                                   struct ExtremaAnalysis **out);

/**
 * Releases an analysis handle. A null handle is ignored.
 *
 * # Safety
 * `analysis` must be a pointer returned by `extrema_analyze` that has not
 * been freed already.
 */
void extrema_analysis_free(struct ExtremaAnalysis *analysis);

/**
 * Writes the number of candidates to `out`.
 *
 * # Safety
 * `analysis` must be a live analysis handle and `out` writable.
 */
enum ExtremaStatus extrema_analysis_count(const struct ExtremaAnalysis *analysis, uintptr_t *out);

/**
 * Writes true to `out` when the search exhausted the domain, so the
 * candidate list provably contains every stationary point in the box.
 *
 * # Safety
 * `analysis` must be a live analysis handle and `out` writable.
 */
enum ExtremaStatus extrema_analysis_complete(const struct ExtremaAnalysis *analysis, bool *out);

/**
 * Writes the enclosure of candidate `index` into `lower` and `upper`, one
 * double per axis.
 *
 * # Safety
 * `analysis` must be a live analysis handle; `lower` and `upper` must point
 * to as many writable doubles as the system has variables.
 */
enum ExtremaStatus extrema_candidate_enclosure(const struct ExtremaAnalysis *analysis,
                                               uintptr_t index,
                                               double *lower,
                                               double *upper);

/**
 * Writes the rigorous range of the objective over candidate `index` to
 * `lower` and `upper`.
 *
 * # Safety
 * `analysis` must be a live analysis handle; `lower` and `upper` must each
 * point to one writable double.
 */
enum ExtremaStatus extrema_candidate_value(const struct ExtremaAnalysis *analysis,
                                           uintptr_t index,
                                           double *lower,
                                           double *upper);

/**
 * Writes true to `out` when candidate `index` provably contains exactly one
 * stationary point.
 *
 * # Safety
 * `analysis` must be a live analysis handle and `out` writable.
 */
enum ExtremaStatus extrema_candidate_verified(const struct ExtremaAnalysis *analysis,
                                              uintptr_t index,
                                              bool *out);

/**
 * Writes the verdict for candidate `index` to `out`. Returns
 * `EXTREMA_STATUS_CLASSIFY_ERROR` when classification failed for this
 * candidate (the other accessors still work).
 *
 * # Safety
 * `analysis` must be a live analysis handle and `out` writable.
 */
enum ExtremaStatus extrema_candidate_verdict(const struct ExtremaAnalysis *analysis,
                                             uintptr_t index,
                                             enum ExtremaVerdict *out);

/**
 * Writes the probe evidence for candidate `index` to `out`. Returns
 * `EXTREMA_STATUS_CLASSIFY_ERROR` when classification failed for this
 * candidate.
 *
 * # Safety
 * `analysis` must be a live analysis handle and `out` writable.
 */
enum ExtremaStatus extrema_candidate_evidence(const struct ExtremaAnalysis *analysis,
                                              uintptr_t index,
                                              struct ExtremaEvidence *out);

/**
 * Returns a static, NUL-terminated description of a status code.
 *
 * # Safety
 * Always safe; the returned pointer must not be freed.
 */
const char *extrema_status_message(enum ExtremaStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXTREMA_H */
