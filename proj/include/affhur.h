#ifndef AFFHUR_H
#define AFFHUR_H

/* C interface to the affine Weyl group / Hurwitz action library.
 *
 * Every query returns a status and, through `out_json`, a JSON report that the
 * caller releases with affhur_string_free. Reports are produced for failures
 * too where a partial result exists (limit hits); otherwise *out_json is an
 * object with an "error" member. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(AFFHUR_BUILDING_LIBRARY)
#define AFFHUR_API __attribute__((visibility("default")))
#else
#define AFFHUR_API
#endif

typedef struct affhur_system affhur_system;

/* Values double as CLI exit codes. */
typedef enum affhur_status {
  AFFHUR_OK = 0,
  AFFHUR_CHECK_FAILED = 1,
  AFFHUR_INVALID_INPUT = 2,
  AFFHUR_LIMIT_EXCEEDED = 3,
  AFFHUR_INTERNAL_ERROR = 4
} affhur_status;

typedef struct affhur_limits {
  int64_t level_bound;     /* K: bound on |k_i| in enumerations, shift bound for fibers */
  uint64_t depth;          /* BFS depth */
  uint64_t nodes;          /* BFS node cap */
  uint64_t seed;           /* randomized verification suites */
  uint32_t threads;        /* worker cap, 1 = deterministic single thread */
  uint32_t length_ceiling; /* absolute length search ceiling, 0 = twice the finite rank */
} affhur_limits;

/* How affhur_check_qc interprets its input. */
typedef enum affhur_input_kind { AFFHUR_INPUT_ELEMENT = 0, AFFHUR_INPUT_TUPLE = 1 } affhur_input_kind;

AFFHUR_API const char* affhur_version(void);
AFFHUR_API affhur_limits affhur_limits_default(void);

/* Message of the last failure on the calling thread; never NULL. */
AFFHUR_API const char* affhur_last_error(void);

AFFHUR_API void affhur_string_free(char* s);

/* group: "B2" (finite) or "affine:B2". */
AFFHUR_API affhur_status affhur_system_create(const char* group, affhur_system** out);
AFFHUR_API void affhur_system_destroy(affhur_system* sys);

/* Literal syntax: root "1,1"; affine reflection "1,1:1"; tuple = JSON list of
 * literals; element = tuple (taken as its product) or
 * {"finite_matrix": [[..]], "translation": [..]}. */

AFFHUR_API affhur_status affhur_roots(const affhur_system* sys, char** out_json);
AFFHUR_API affhur_status affhur_check_qc(const affhur_system* sys, const char* input_json, affhur_input_kind kind,
                                         const affhur_limits* limits, char** out_json);
/* length 0 means the absolute length of the element. */
AFFHUR_API affhur_status affhur_factorize(const affhur_system* sys, const char* element_json, uint32_t length,
                                          const affhur_limits* limits, char** out_json);
AFFHUR_API affhur_status affhur_length(const affhur_system* sys, const char* element_json,
                                       const affhur_limits* limits, char** out_json);
AFFHUR_API affhur_status affhur_orbit(const affhur_system* sys, const char* tuple_json, const affhur_limits* limits,
                                      char** out_json);
AFFHUR_API affhur_status affhur_connect(const affhur_system* sys, const char* tuple1_json, const char* tuple2_json,
                                        const affhur_limits* limits, char** out_json);
AFFHUR_API affhur_status affhur_apply_braid(const affhur_system* sys, const char* tuple_json, const char* word_json,
                                            char** out_json);
AFFHUR_API affhur_status affhur_fiber(const affhur_system* sys, const char* tuple_json, const affhur_limits* limits,
                                      char** out_json);

/* suite: "lemmas", "example-a2", "generation", "main-theorem".
 * groups: comma-separated type strings; may be empty (vacuous pass). */
AFFHUR_API affhur_status affhur_verify(const char* suite, const char* groups, const affhur_limits* limits,
                                       char** out_json);

#ifdef __cplusplus
}
#endif

#endif
