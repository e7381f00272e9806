#ifndef CEPPA_H
#define CEPPA_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Opaque workbench session. Holds the last error message; not thread-safe,
 * use one session per thread. */
typedef struct ceppa_session ceppa_session;

typedef enum {
  CEPPA_OK = 0,
  CEPPA_ERR_BAD_ARGUMENT = 1,
  CEPPA_ERR_UNSUPPORTED_TYPE = 2,
  CEPPA_ERR_PARSE = 3,
  CEPPA_ERR_IRREGULAR_WEIGHT = 4,
  CEPPA_ERR_BUDGET_EXCEEDED = 5,
  CEPPA_ERR_DEGREE_OVERFLOW = 6,
  CEPPA_ERR_MATH = 7,
  CEPPA_ERR_INTERNAL = 8,
  CEPPA_ERR_NOMEM = 9
} ceppa_status;

ceppa_session* ceppa_session_new(void);
void ceppa_session_free(ceppa_session* s);

/* Message for the most recent failed call on this session, "" if none.
 * Owned by the session; valid until the next call on it. */
const char* ceppa_last_error(const ceppa_session* s);

/* Every *_json call stores a NUL-terminated JSON document into *out on
 * success; release it with ceppa_string_free. On failure *out is NULL. */
void ceppa_string_free(char* s);

/* family: "A", "D" or "E". */
ceppa_status ceppa_roots_json(ceppa_session* s, const char* family, int rank, char** out);

/* mu: "rho", "random" (seeded draw, retried until regular), or
 * comma-separated rationals like "1,3/2,2". budget < 0 uses the default
 * monomial budget. */
ceppa_status ceppa_trace_json(ceppa_session* s, const char* family, int rank,
                              const char* mu, uint64_t seed, int64_t budget, char** out);

/* Tests z^s_power sum_i eps_i phi_i e_i for membership in the commutator
 * subspace three independent ways; the report carries an "agree" flag.
 * phi: comma-separated rationals, one per vertex. */
ceppa_status ceppa_membership_json(ceppa_session* s, const char* family, int rank,
                                   const char* mu, const char* phi, int s_power,
                                   uint64_t seed, int64_t budget, char** out);

/* suite: "algebra", "b-algebra", "lie" or "all". with_timings = 0 zeroes
 * runtimes and the timestamp so reports are byte-stable. */
ceppa_status ceppa_verify_json(ceppa_session* s, const char* family, int rank,
                               const char* mu, const char* suite, uint64_t seed,
                               int64_t budget, int with_timings, char** out);

/* variant: "mu", "a0", "b" or "b-elim". max_degree < 0 picks the variant
 * default. mu is ignored for the variants that do not use a weight. */
ceppa_status ceppa_build_json(ceppa_session* s, const char* variant, const char* family,
                              int rank, const char* mu, int max_degree, uint64_t seed,
                              int64_t budget, char** out);

/* Builds a graded quotient from presentation text in the format the CLI
 * documents. max_degree must be given. */
ceppa_status ceppa_build_text_json(ceppa_session* s, const char* text, int max_degree,
                                   int64_t budget, char** out);

#ifdef __cplusplus
}
#endif

#endif /* CEPPA_H */
