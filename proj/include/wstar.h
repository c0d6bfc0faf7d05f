/* C API of the wstar metric library.
 *
 * All functions return WSTAR_OK (0) on success or a nonzero error code;
 * wstar_strerror names the code and wstar_last_error returns the detail
 * message of the most recent failure on the calling thread. Strings handed
 * out through char** parameters are heap-allocated; release them with
 * wstar_string_free. Handles are opaque; release them with the matching
 * _free function.
 */
#ifndef WSTAR_H
#define WSTAR_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  WSTAR_OK = 0,
  WSTAR_ERR_INVALID_ARGUMENT = 1,
  WSTAR_ERR_PARSE = 2,
  WSTAR_ERR_SIGNATURE_MISMATCH = 3,
  WSTAR_ERR_SHAPE_MISMATCH = 4,
  WSTAR_ERR_NOT_HERMITIAN = 5,
  WSTAR_ERR_NOT_FAITHFUL = 6,
  WSTAR_ERR_NOT_NORMALIZED = 7,
  WSTAR_ERR_NOT_TANGENT = 8,
  WSTAR_ERR_NOT_TANGENT_COORDINATE = 9,
  WSTAR_ERR_NOT_TRACE_PRESERVING = 10,
  WSTAR_ERR_NOT_STOCHASTIC = 11,
  WSTAR_ERR_NOT_UNITARY = 12,
  WSTAR_ERR_NOT_COMPLETELY_POSITIVE = 13,
  WSTAR_ERR_INVALID_PARTITION = 14,
  WSTAR_ERR_INVALID_WEIGHTS = 15,
  WSTAR_ERR_UNKNOWN_FUNCTION = 16,
  WSTAR_ERR_UNVALIDATED_FUNCTION = 17,
  WSTAR_ERR_SINGULAR_FUNCTION = 18,
  WSTAR_ERR_NOT_FAITHFUL_IMAGE = 19,
  WSTAR_ERR_DEGENERATE_DRAW = 20,
  WSTAR_ERR_INTERNAL = 99
};

typedef struct wstar_state wstar_state;
typedef struct wstar_channel wstar_channel;

const char* wstar_version(void);

/* Static name of an error code ("NotFaithful", ...). */
const char* wstar_strerror(int code);

/* Detail message of the last failure on this thread; empty if none. */
const char* wstar_last_error(void);

void wstar_string_free(char* s);

/* --- states --- */

/* sig is a comma-separated block list, e.g. "2" or "1,2". */
int wstar_state_random(const char* sig, uint64_t seed, wstar_state** out);
int wstar_state_from_json(const char* json, wstar_state** out);
int wstar_state_to_json(const wstar_state* state, char** json_out);
void wstar_state_free(wstar_state* state);

/* --- channels --- */

int wstar_channel_random(const char* source_sig, const char* target_sig,
                         int kraus_count, uint64_t seed, wstar_channel** out);
int wstar_channel_from_json(const char* json, wstar_channel** out);
int wstar_channel_to_json(const wstar_channel* channel, char** json_out);
/* *faithful is set to 1 or 0. */
int wstar_channel_is_faithful(const wstar_channel* channel, int* faithful);
void wstar_channel_free(wstar_channel* channel);

/* --- metric evaluation --- */

/* Lists the operator monotone function catalog as JSON. */
int wstar_catalog_json(char** json_out);

/* Gram matrix of the metric for catalog function f over the canonical
 * tangent basis at the given state; emits a GramReport JSON document. */
int wstar_gram_json(const wstar_state* state, const char* f, char** json_out);

/* --- verification suites ---
 * Each emits a report JSON document and sets *violations to the number of
 * tolerance failures. f may be a catalog name or "all". Pass tol <= 0 for
 * the suite default. */

int wstar_verify_two_form(const char* sig, const char* f, int trials,
                          uint64_t seed, double tol, char** json_out,
                          int* violations);
int wstar_verify_cencov(int n, const char* f, int trials, uint64_t seed,
                        double tol, char** json_out, int* violations);
int wstar_verify_monotonicity(const char* sig, const char* f, int trials,
                              uint64_t seed, double tol, int kraus_min,
                              int kraus_max, char** json_out, int* violations);
/* kind: "classical", "quantum" or "both". */
int wstar_verify_invariance(const char* kind, const char* f, int trials,
                            uint64_t seed, double tol, char** json_out,
                            int* violations);

/* --- counterexample search ---
 * config_json keys (all optional): trials, seed, tolerance, workers,
 * kraus_min, kraus_max, signatures (array of block arrays), functions.
 * summary_out receives the summary JSON; csv_out (optional, may be NULL)
 * receives the per-trial CSV. */
int wstar_search(const char* config_json, char** summary_out, char** csv_out,
                 int* violations);

#ifdef __cplusplus
}
#endif

#endif /* WSTAR_H */
