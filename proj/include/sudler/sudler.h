/* C interface to the sudler library.
 *
 * Every entry point returns a sudler_status. Objects are opaque handles that
 * the caller releases with the matching *_destroy function. A context is not
 * thread-safe; use one per thread. Strings returned by accessors stay valid
 * until the owning handle is destroyed (or, for sudler_last_error, until the
 * next call on the same context).
 */
#ifndef SUDLER_SUDLER_H
#define SUDLER_SUDLER_H

#include <stddef.h>
#include <stdint.h>

#if defined(SUDLER_BUILDING_LIBRARY)
#define SUDLER_API __attribute__((visibility("default")))
#else
#define SUDLER_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sudler_status {
  SUDLER_OK = 0,
  SUDLER_INVALID_ARGUMENT = 1,
  SUDLER_INTEGER_ARGUMENT = 2,
  SUDLER_ZERO_FACTOR = 3,
  SUDLER_NON_POSITIVE_FACTOR = 4,
  SUDLER_NOT_COPRIME = 5,
  SUDLER_PRECISION_EXHAUSTED = 6,
  SUDLER_TAIL_TOO_LARGE = 7,
  SUDLER_SUM_EXCEEDS_ONE = 8,
  SUDLER_OUT_OF_RANGE = 9,
  SUDLER_IO = 10,
  SUDLER_BUFFER_TOO_SMALL = 11,
  SUDLER_NULL_POINTER = 12,
  SUDLER_OUT_OF_MEMORY = 13,
  SUDLER_INTERNAL = 14
} sudler_status;

typedef struct sudler_context sudler_context;
typedef struct sudler_value sudler_value;
typedef struct sudler_decomposition sudler_decomposition;
typedef struct sudler_report sudler_report;

SUDLER_API const char* sudler_status_name(sudler_status status);
SUDLER_API const char* sudler_version(void);

/* --- context ------------------------------------------------------------- */

/* bits >= 53; 53 selects the double-precision fast path. alpha defaults to
 * "golden" and the seed to 12345. */
SUDLER_API sudler_status sudler_context_create(unsigned bits, sudler_context** out);
SUDLER_API void sudler_context_destroy(sudler_context* ctx);
/* "golden", "dec:<decimal>" or "cf:<a1,a2,...>" (prefix + all-ones tail). */
SUDLER_API sudler_status sudler_set_alpha(sudler_context* ctx, const char* spec);
SUDLER_API sudler_status sudler_set_seed(sudler_context* ctx, uint64_t seed);
SUDLER_API unsigned sudler_precision(const sudler_context* ctx);
/* Message of the last failed call on ctx ("" if none). */
SUDLER_API const char* sudler_last_error(const sudler_context* ctx);

/* --- evaluation ---------------------------------------------------------- */

/* P_N(alpha, eps); eps is a decimal string or NULL for 0. */
SUDLER_API sudler_status sudler_eval(sudler_context* ctx, uint64_t n, const char* eps, sudler_value** out);
/* P_N(phi) through the Zeckendorf blocks of N; alpha must be "golden". */
SUDLER_API sudler_status sudler_eval_blockwise(sudler_context* ctx, uint64_t n, sudler_value** out);

SUDLER_API uint64_t sudler_value_terms(const sudler_value* v);
SUDLER_API double sudler_value_p(const sudler_value* v);
SUDLER_API double sudler_value_log(const sudler_value* v);
/* Decimal strings at the context precision. */
SUDLER_API const char* sudler_value_p_str(const sudler_value* v);
SUDLER_API const char* sudler_value_log_str(const sudler_value* v);
SUDLER_API const char* sudler_value_err_str(const sudler_value* v);
SUDLER_API void sudler_value_destroy(sudler_value* v);

/* --- Zeckendorf ---------------------------------------------------------- */

/* Indices n_1 < ... < n_m of the decimal integer n >= 1. *len receives m;
 * SUDLER_BUFFER_TOO_SMALL when cap < m (indices untouched). */
SUDLER_API sudler_status sudler_zeckendorf(const char* n, unsigned* indices, size_t cap, size_t* len);

/* --- block decomposition ------------------------------------------------- */

typedef enum sudler_decomp_field {
  SUDLER_DECOMP_EPS = 0,
  SUDLER_DECOMP_A,
  SUDLER_DECOMP_B,
  SUDLER_DECOMP_C,
  SUDLER_DECOMP_RECOMBINED,
  SUDLER_DECOMP_DIRECT,
  SUDLER_DECOMP_RESIDUAL
} sudler_decomp_field;

/* P_{F_n}(phi, eps) = Abar_n(eps) B_n Cbar_n(eps); eps decimal or NULL. */
SUDLER_API sudler_status sudler_decompose(sudler_context* ctx, unsigned n, const char* eps,
                                          sudler_decomposition** out);
SUDLER_API const char* sudler_decomposition_str(const sudler_decomposition* d, sudler_decomp_field field);
SUDLER_API double sudler_decomposition_residual(const sudler_decomposition* d);
SUDLER_API void sudler_decomposition_destroy(sudler_decomposition* d);

/* --- scans --------------------------------------------------------------- */

enum {
  SUDLER_SCAN_FAST = 1u << 0,       /* 53-bit fast path */
  SUDLER_SCAN_NO_RECHECK = 1u << 1  /* skip precise rechecks of running minima */
};

typedef struct sudler_record {
  uint64_t n;
  double log_p;
  double p;
  unsigned m_zeck;
  int is_min;
  int is_max;
} sudler_record;

typedef void (*sudler_record_fn)(const sudler_record* rec, void* user);

typedef struct sudler_scan_summary {
  uint64_t from, to;
  int fast;
  uint64_t min_n;
  double min_p, min_log;
  uint64_t max_n;
  double max_p, max_log;
  uint64_t rechecks;
  double max_recheck_diff;
  int min_confirmed;
  int has_growth;
  double c1_hat, c2_hat;
  char min_p_str[80];
} sudler_scan_summary;

/* Scans N = from .. to. csv_path (nullable) receives the full record table;
 * fn (nullable) is called for each record in increasing N. */
SUDLER_API sudler_status sudler_scan(sudler_context* ctx, uint64_t from, uint64_t to, unsigned flags,
                                     const char* csv_path, sudler_record_fn fn, void* user,
                                     sudler_scan_summary* out);

/* --- reports ------------------------------------------------------------- */

typedef struct sudler_verify_options {
  unsigned max_index;  /* 0: suite default */
  uint64_t samples;    /* 0: suite default */
  uint64_t scan_to;    /* 0: 10^6 */
} sudler_verify_options;

/* P_{F_n}(phi) for n = 2 .. n_max (<= 32). */
SUDLER_API sudler_status sudler_limit(sudler_context* ctx, unsigned n_max, sudler_report** out);
/* suite: decomposition | asymptotics | conjectures | thresholds | all.
 * opts may be NULL. */
SUDLER_API sudler_status sudler_verify(sudler_context* ctx, const char* suite, const sudler_verify_options* opts,
                                       sudler_report** out);
SUDLER_API const char* sudler_report_text(const sudler_report* r);
SUDLER_API const char* sudler_report_csv(const sudler_report* r);
SUDLER_API int sudler_report_passed(const sudler_report* r);
SUDLER_API void sudler_report_destroy(sudler_report* r);

#ifdef __cplusplus
}
#endif

#endif /* SUDLER_SUDLER_H */
