#ifndef QNWV_H
#define QNWV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum QnwvBackend {
  QNWV_BACKEND_DIAGONAL = 0,
  QNWV_BACKEND_GATE = 1,
} QnwvBackend;

typedef enum QnwvMode {
  QNWV_MODE_DATAPLANE = 0,
  QNWV_MODE_CONTROLPLANE = 1,
} QnwvMode;

typedef enum QnwvStatus {
  QNWV_STATUS_OK = 0,
  QNWV_STATUS_NULL_POINTER = 1,
  /**
   * Malformed or inconsistent network/property documents.
   */
  QNWV_STATUS_INVALID_INPUT = 2,
  QNWV_STATUS_INVALID_ARGUMENT = 3,
  QNWV_STATUS_RESOURCE_LIMIT = 4,
  QNWV_STATUS_UNSUPPORTED = 5,
  /**
   * The output buffer was too small; the required length was still written.
   */
  QNWV_STATUS_BUFFER_TOO_SMALL = 6,
  QNWV_STATUS_INTERNAL = 7,
  QNWV_STATUS_PANIC = 8,
} QnwvStatus;

/**
 * Opaque parsed problem.
 */
typedef struct QnwvProblem QnwvProblem;

/**
 * Opaque search outcome.
 */
typedef struct QnwvResult QnwvResult;

typedef struct QnwvSearchOptions {
  /**
   * A `QnwvBackend` value.
   */
  uint32_t backend;
  bool midcircuit_reset;
  /**
   * Probability that each qubit starts as 0 (biased start); 0 selects the
   * uniform start.
   */
  double bias;
  /**
   * Grover iterates; negative picks the default for the true solution count.
   */
  int64_t iterates;
  uint64_t shots;
  uint64_t seed;
  bool bbht;
} QnwvSearchOptions;

typedef struct QnwvDataPlaneParams {
  uint64_t headers;
  uint64_t routers;
  uint64_t rules_per_router;
  uint64_t wildcards;
  uint64_t ports;
  uint64_t max_hops;
  uint64_t iterates;
} QnwvDataPlaneParams;

typedef struct QnwvControlPlaneParams {
  uint64_t routers;
  uint64_t edges;
  uint64_t diameter;
  uint64_t iterates;
} QnwvControlPlaneParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or an empty string.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *qnwv_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *qnwv_version(void);

/**
 * Parses a network and a property document. `mode` is a `QnwvMode` value.
 *
 * # Safety
 * `network` and `property` must be NUL-terminated strings; `out_problem` must be
 * writable.
 */
enum QnwvStatus qnwv_problem_from_json(uint32_t mode,
                                       const char *network,
                                       const char *property,
                                       struct QnwvProblem **out_problem);

/**
 * # Safety
 * `p` must come from [`qnwv_problem_from_json`] and not be freed twice.
 */
void qnwv_problem_free(struct QnwvProblem *p);

/**
 * Number of input bits: header bits for the data plane, edges for the
 * control plane.
 *
 * # Safety
 * `p` must be a live problem handle and `width` writable.
 */
enum QnwvStatus qnwv_problem_width(const struct QnwvProblem *p, size_t *width);

/**
 * Classical check of one input.
 *
 * # Safety
 * `p` must be a live problem handle and `holds` writable.
 */
enum QnwvStatus qnwv_problem_evaluate(const struct QnwvProblem *p, uint64_t input, bool *holds);

/**
 * Every input that satisfies the property, in increasing order. On
 * `QNWV_STATUS_BUFFER_TOO_SMALL` the required length is still stored in `len`.
 *
 * # Safety
 * `p` must be a live problem handle, `len` writable and `buf` valid for
 * `capacity` writes.
 */
enum QnwvStatus qnwv_bruteforce(const struct QnwvProblem *p,
                                uint64_t *buf,
                                size_t capacity,
                                size_t *len);

/**
 * Defaults: diagonal backend, reset mode, uniform start, default iterates,
 * 10000 shots, seed 0.
 */
struct QnwvSearchOptions qnwv_search_options_default(void);

/**
 * One Grover search.
 *
 * # Safety
 * `p` must be a live problem handle, `options` readable and `out_result`
 * writable.
 */
enum QnwvStatus qnwv_search(const struct QnwvProblem *p,
                            const struct QnwvSearchOptions *options,
                            struct QnwvResult **out_result);

/**
 * Repeated searches with found solutions excluded, for at most `budget`
 * rounds. Round `i` uses seed `seed + i`.
 *
 * # Safety
 * `p` must be a live problem handle and `out_result` writable.
 */
enum QnwvStatus qnwv_find_all(const struct QnwvProblem *p,
                              uint32_t backend,
                              uint32_t budget,
                              uint64_t shots,
                              uint64_t seed,
                              struct QnwvResult **out_result);

/**
 * # Safety
 * `r` must come from a search function and not be freed twice.
 */
void qnwv_result_free(struct QnwvResult *r);

/**
 * Confirmed solutions in increasing order; same buffer contract as
 * [`qnwv_bruteforce`].
 *
 * # Safety
 * `r` must be a live result handle, `len` writable and `buf` valid for
 * `capacity` writes.
 */
enum QnwvStatus qnwv_result_confirmed(const struct QnwvResult *r,
                                      uint64_t *buf,
                                      size_t capacity,
                                      size_t *len);

/**
 * Marked probability of the final state (first round for `find_all`).
 *
 * # Safety
 * `r` must be a live result handle or null (which yields NaN).
 */
double qnwv_result_exact_success(const struct QnwvResult *r);

/**
 * Fraction of shots that landed on a confirmed solution.
 *
 * # Safety
 * `r` must be a live result handle or null (which yields NaN).
 */
double qnwv_result_success_fraction(const struct QnwvResult *r);

/**
 * # Safety
 * `r` must be a live result handle or null (which yields 0).
 */
uint64_t qnwv_result_iterates(const struct QnwvResult *r);

/**
 * # Safety
 * `r` must be a live result handle or null (which yields 0).
 */
uint32_t qnwv_result_rounds(const struct QnwvResult *r);

/**
 * Full result as JSON, owned by the handle.
 *
 * # Safety
 * `r` must be a live result handle or null (which yields null).
 */
const char *qnwv_result_json(const struct QnwvResult *r);

/**
 * Closed-form data-plane qubit count.
 *
 * # Safety
 * `params` must be readable and `qubits` writable.
 */
enum QnwvStatus qnwv_estimate_dataplane(const struct QnwvDataPlaneParams *params,
                                        bool midcircuit_reset,
                                        uint64_t *qubits);

/**
 * Closed-form control-plane qubit count.
 *
 * # Safety
 * `params` must be readable and `qubits` writable.
 */
enum QnwvStatus qnwv_estimate_controlplane(const struct QnwvControlPlaneParams *params,
                                           bool midcircuit_reset,
                                           uint64_t *qubits);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QNWV_H */
