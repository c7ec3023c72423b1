/* Exercises the shared library through its C header only. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "sudler/sudler.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static void count_records(const sudler_record* rec, void* user) {
  size_t* n = (size_t*)user;
  if (rec->n == *n + 1) ++*n;
}

int main(void) {
  sudler_context* ctx = NULL;
  sudler_value* v = NULL;

  EXPECT(sudler_context_create(52, &ctx) == SUDLER_INVALID_ARGUMENT);
  EXPECT(sudler_context_create(128, NULL) == SUDLER_NULL_POINTER);
  EXPECT(sudler_context_create(128, &ctx) == SUDLER_OK);
  EXPECT(sudler_precision(ctx) == 128);
  EXPECT(strcmp(sudler_status_name(SUDLER_ZERO_FACTOR), "ZeroFactor") == 0);
  EXPECT(strlen(sudler_version()) > 0);

  /* P_1(phi) and P_5(phi) */
  EXPECT(sudler_eval(ctx, 1, NULL, &v) == SUDLER_OK);
  EXPECT(sudler_value_terms(v) == 1);
  EXPECT(fabs(sudler_value_p(v) - 1.8640648476264552) < 1e-15);
  EXPECT(strncmp(sudler_value_p_str(v), "1.86406484762645524306806333738220938", 37) == 0);
  sudler_value_destroy(v);
  EXPECT(sudler_eval(ctx, 5, NULL, &v) == SUDLER_OK);
  EXPECT(fabs(sudler_value_p(v) - 2.4820268506084593) < 1e-15);
  EXPECT(fabs(sudler_value_log(v) - log(2.4820268506084593)) < 1e-15);
  EXPECT(atof(sudler_value_err_str(v)) >= 0.0);
  sudler_value_destroy(v);

  /* shifted block of N = F_6 + F_9 */
  EXPECT(sudler_eval(ctx, 3, "0.25", &v) == SUDLER_OK);
  EXPECT(fabs(sudler_value_p(v) - 1.0342172335010928) < 1e-15);
  sudler_value_destroy(v);
  EXPECT(sudler_eval(ctx, 3, "nope", &v) == SUDLER_INVALID_ARGUMENT);
  EXPECT(strlen(sudler_last_error(ctx)) > 0);

  EXPECT(sudler_eval_blockwise(ctx, 100, &v) == SUDLER_OK);
  EXPECT(fabs(sudler_value_p(v) - 13.215768038521032) < 1e-13);
  sudler_value_destroy(v);

  /* Zeckendorf */
  unsigned idx[8];
  size_t len = 0;
  EXPECT(sudler_zeckendorf("100", idx, 8, &len) == SUDLER_OK);
  EXPECT(len == 3 && idx[0] == 4 && idx[1] == 6 && idx[2] == 11);
  EXPECT(sudler_zeckendorf("100", idx, 2, &len) == SUDLER_BUFFER_TOO_SMALL);
  EXPECT(len == 3);
  EXPECT(sudler_zeckendorf("0", idx, 8, &len) == SUDLER_INVALID_ARGUMENT);
  EXPECT(sudler_zeckendorf("123456789012345678901234567890", idx, 8, &len) == SUDLER_BUFFER_TOO_SMALL);

  /* decomposition */
  sudler_decomposition* d = NULL;
  EXPECT(sudler_decompose(ctx, 12, NULL, &d) == SUDLER_OK);
  EXPECT(sudler_decomposition_residual(d) <= 1e-20);
  EXPECT(atof(sudler_decomposition_str(d, SUDLER_DECOMP_B)) > 0.0);
  sudler_decomposition_destroy(d);
  EXPECT(sudler_decompose(ctx, 5, "0.5", &d) == SUDLER_OUT_OF_RANGE);

  /* scans */
  size_t seen = 0;
  sudler_scan_summary s;
  EXPECT(sudler_scan(ctx, 1, 500, 0, NULL, count_records, &seen, &s) == SUDLER_OK);
  EXPECT(seen == 500);
  EXPECT(s.min_n == 1);
  EXPECT(s.has_growth);
  EXPECT(strncmp(s.min_p_str, "1.864064847626", 14) == 0);
  EXPECT(sudler_scan(ctx, 1, 20000, SUDLER_SCAN_FAST, NULL, NULL, NULL, &s) == SUDLER_OK);
  EXPECT(s.fast && s.min_n == 1 && s.rechecks == 1 && s.min_confirmed);
  EXPECT(sudler_scan(ctx, 5, 1, 0, NULL, NULL, NULL, &s) == SUDLER_INVALID_ARGUMENT);

  /* reports */
  sudler_report* r = NULL;
  EXPECT(sudler_limit(ctx, 12, &r) == SUDLER_OK);
  EXPECT(strncmp(sudler_report_csv(r), "n,F_n,P,abs_diff", 16) == 0);
  sudler_report_destroy(r);
  sudler_verify_options opts = {12, 5, 0};
  EXPECT(sudler_verify(ctx, "decomposition", &opts, &r) == SUDLER_OK);
  EXPECT(sudler_report_passed(r) == 1);
  EXPECT(strstr(sudler_report_text(r), "PASS") != NULL);
  sudler_report_destroy(r);
  EXPECT(sudler_verify(ctx, "bogus", NULL, &r) == SUDLER_INVALID_ARGUMENT);

  /* rational alpha hits an exact zero */
  EXPECT(sudler_set_alpha(ctx, "dec:0.5") == SUDLER_OK);
  EXPECT(sudler_eval(ctx, 2, NULL, &v) == SUDLER_ZERO_FACTOR);
  EXPECT(sudler_eval_blockwise(ctx, 2, &v) == SUDLER_INVALID_ARGUMENT);
  EXPECT(sudler_set_alpha(ctx, "dec:2") == SUDLER_INVALID_ARGUMENT);
  EXPECT(sudler_set_alpha(ctx, "cf:1,500") == SUDLER_OK);
  EXPECT(sudler_eval(ctx, 83, NULL, &v) == SUDLER_OK);
  EXPECT(sudler_value_p(v) < 0.2);
  sudler_value_destroy(v);

  sudler_context_destroy(ctx);
  sudler_context_destroy(NULL);

  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("capi: all checks passed\n");
  return 0;
}
