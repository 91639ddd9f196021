/* collusionlab — manipulability of positional scoring voting rules.
 *
 * C interface over the C++ core. All entry points are thread-safe and
 * reentrant; results are opaque handles owned by the caller and released
 * with clab_result_free().
 *
 * Structured requests are JSON strings (documented in the README); every
 * operation returns a JSON document and, for tabular operations, a CSV
 * body alongside it.
 */
#ifndef COLLUSIONLAB_H
#define COLLUSIONLAB_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum clab_status {
  CLAB_OK = 0,
  CLAB_ERR_INVALID_ARGUMENT = 1,
  CLAB_ERR_UNSUPPORTED = 2,
  CLAB_ERR_BUDGET_EXCEEDED = 3,
  CLAB_ERR_TOO_LARGE = 4,
  CLAB_ERR_OUT_OF_REGIME = 5,
  CLAB_ERR_INTERNAL = 6
} clab_status;

typedef struct clab_result clab_result;

const char* clab_version(void);

/* Runs one operation. `op` is one of: "classify", "oracle", "count",
 * "sample", "estimate", "sweep", "verify_bounds", "harness".
 * On any return value, *out (when non-NULL) carries either the payload
 * or an error message. */
clab_status clab_run_json(const char* op, const char* request_json, clab_result** out);

/* Convenience wrapper for the most common call. `rule` is one of
 * "plurality", "veto", "kapproval", "borda"; `tiebreak` is "for",
 * "against" or "fixed"; `scores` has m entries. When use_oracle is
 * non-zero the brute-force oracle verdict is included. */
clab_status clab_classify_scores(const char* rule, int k, int m, long long n,
                                 const long long* scores, int c, const char* tiebreak,
                                 int use_oracle, unsigned long long oracle_budget,
                                 clab_result** out);

/* JSON payload of a successful result; NULL if the handle is an error. */
const char* clab_result_json(const clab_result* r);

/* CSV payload for tabular operations; empty string when not applicable. */
const char* clab_result_csv(const clab_result* r);

/* Human-readable error message; NULL for successful results. */
const char* clab_result_error(const clab_result* r);

void clab_result_free(clab_result* r);

#ifdef __cplusplus
}
#endif

#endif /* COLLUSIONLAB_H */
