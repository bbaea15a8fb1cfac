/* exercises the shared library through the C header only */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "trispec/trispec.h"

static int failures = 0;

#define EXPECT(cond)                                          \
  do {                                                        \
    if (!(cond)) {                                            \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                             \
    }                                                         \
  } while (0)

int main(void) {
  ts_substitution* s = NULL;
  EXPECT(ts_substitution_parse("0->01;1->0", &s) == TS_OK);

  char* text = NULL;
  EXPECT(ts_substitution_word(s, 4, &text) == TS_OK);
  EXPECT(text && strcmp(text, "01001010") == 0);
  ts_string_free(text);

  int prim = 0, inv = 0;
  EXPECT(ts_substitution_flags(s, &prim, &inv) == TS_OK);
  EXPECT(prim && inv);

  double alpha = 0;
  EXPECT(ts_rotation_number(s, &alpha) == TS_OK);
  EXPECT(fabs(alpha - (3 - sqrt(5)) / 2) < 1e-12 || fabs(alpha - (sqrt(5) - 1) / 2) < 1e-12);

  double a = 0, b = 0;
  EXPECT(ts_half_trace(s, 1.0, 2.0, 6, 0.37, &a) == TS_OK);
  EXPECT(ts_half_trace_direct(s, 1.0, 2.0, 6, 0.37, &b) == TS_OK);
  EXPECT(fabs(a - b) <= 1e-9 * (1 + fabs(b)));

  ts_config c;
  ts_config_default(&c);
  c.p = 1;
  c.q = 0;
  c.k = 5;
  ts_bandset* free_bands = NULL;
  EXPECT(ts_bands_compute(s, &c, &free_bands) == TS_OK);
  EXPECT(ts_bandset_size(free_bands) == 1);
  double lo = 0, hi = 0, m = 0;
  EXPECT(ts_bandset_band(free_bands, 0, &lo, &hi) == TS_OK);
  EXPECT(fabs(lo + 2) < 1e-10 && fabs(hi - 2) < 1e-10);
  EXPECT(ts_bandset_measure(free_bands, &m) == TS_OK);
  EXPECT(fabs(m - 4) < 1e-9);
  EXPECT(ts_bandset_band(free_bands, 5, &lo, &hi) == TS_INVALID_ARGUMENT);
  EXPECT(strlen(ts_last_error()) > 0);

  c.q = 2;
  c.k = 12;
  ts_bandset* fib = NULL;
  EXPECT(ts_bands_compute(s, &c, &fib) == TS_OK);
  EXPECT(ts_bandset_size(fib) > 1);
  double d = 0, err = 0, th = 0, h = 0;
  EXPECT(ts_box_dimension(fib, &d, &err) == TS_OK);
  EXPECT(d > 0 && d < 1);
  EXPECT(ts_thickness(fib, &th) == TS_OK);
  EXPECT(ts_hausdorff_distance(fib, free_bands, &h) == TS_OK);
  EXPECT(h > 0);
  ts_bandset_free(fib);
  ts_bandset_free(free_bands);

  c.p = 0;
  EXPECT(ts_bands_compute(s, &c, &fib) == TS_INVALID_ARGUMENT);

  ts_ids* ids = NULL;
  double n = 0;
  EXPECT(ts_ids_create(s, 1.0, 0.0, 200, &ids) == TS_OK);
  EXPECT(ts_ids_value(ids, 0.0, &n) == TS_OK);
  EXPECT(fabs(n - 0.5) <= 1.0 / 200);
  ts_ids_free(ids);

  ts_report* r = NULL;
  EXPECT(ts_report_subst(s, 16, &r) == TS_OK);
  EXPECT(strstr(ts_report_json(r), "rotation_number") != NULL);
  ts_report_free(r);

  ts_config_default(&c);
  c.k = 4;
  EXPECT(ts_report_spectrum(s, &c, &r) == TS_OK);
  EXPECT(ts_report_file_count(r) == 1);
  EXPECT(strcmp(ts_report_file_name(r, 0), "bands.csv") == 0);
  const char* data = NULL;
  size_t size = 0;
  EXPECT(ts_report_file_data(r, 0, &data, &size) == TS_OK);
  EXPECT(size > 0 && strncmp(data, "level,a,b\r\n", 11) == 0);
  ts_report_free(r);

  ts_substitution_free(s);

  EXPECT(ts_substitution_parse("0->01;1->10", &s) == TS_OK);
  EXPECT(ts_substitution_flags(s, &prim, &inv) == TS_OK);
  EXPECT(prim && !inv);
  EXPECT(ts_bands_compute(s, &c, &fib) != TS_OK);
  ts_substitution_free(s);
  EXPECT(ts_substitution_parse("0->2;1->0", &s) == TS_INVALID_SUBSTITUTION);
  EXPECT(ts_set_threads(-1) == TS_INVALID_ARGUMENT);
  EXPECT(ts_set_threads(2) == TS_OK && ts_threads() == 2);
  EXPECT(strcmp(ts_status_string(TS_OK), "ok") == 0);

  if (failures) fprintf(stderr, "%d failures\n", failures);
  else printf("capi: all checks passed\n");
  return failures ? 1 : 0;
}
