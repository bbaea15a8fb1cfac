/* C interface to the trispec library. All handles are opaque; every call that
 * can fail returns a ts_status and leaves a message for ts_last_error(). */
#ifndef TRISPEC_H
#define TRISPEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TS_API __declspec(dllexport)
#else
#define TS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ts_status {
  TS_OK = 0,
  TS_INVALID_SUBSTITUTION = 1,
  TS_UNSUPPORTED = 2,
  TS_RESOURCE = 3,
  TS_INVALID_ARGUMENT = 4,
  TS_OVERFLOW = 5,
  TS_INCONSISTENCY = 6,
  TS_INSUFFICIENT_RESOLUTION = 7,
  TS_IO = 8,
  TS_INTERNAL = 99
} ts_status;

typedef struct ts_substitution ts_substitution;
typedef struct ts_bandset ts_bandset;
typedef struct ts_ids ts_ids;
typedef struct ts_report ts_report;

typedef enum ts_scan_variable { TS_SCAN_P = 0, TS_SCAN_Q = 1 } ts_scan_variable;

/* Run configuration. Zero in L, label_tol means "derive a default";
 * has_* flags mark optional fields. */
typedef struct ts_config {
  double p, q;
  int k;
  int has_range;
  double emin, emax;
  double tol;
  uint64_t seed;
  size_t L;
  size_t samples;
  size_t grid;
  int windows;
  size_t prefix;
  long long m_max;
  double label_tol;
  int has_V;
  double V;
  int resolution;
  int max_steps;
  double surface_lo, surface_hi;
} ts_config;

/* Message for the last failure on the calling thread; never NULL. */
TS_API const char* ts_last_error(void);
TS_API const char* ts_status_string(ts_status s);
TS_API void ts_string_free(char* s);

/* 0 selects hardware concurrency. */
TS_API ts_status ts_set_threads(int n);
TS_API int ts_threads(void);

TS_API void ts_config_default(ts_config* c);

/* substitutions, text form "0->01;1->0" */
TS_API ts_status ts_substitution_parse(const char* text, ts_substitution** out);
TS_API void ts_substitution_free(ts_substitution* s);
TS_API ts_status ts_substitution_string(const ts_substitution* s, char** out);
TS_API ts_status ts_substitution_flags(const ts_substitution* s, int* primitive, int* invertible);
/* s^k(star) as '0'/'1' text */
TS_API ts_status ts_substitution_word(const ts_substitution* s, int k, char** out);
TS_API ts_status ts_rotation_number(const ts_substitution* s, double* alpha);

/* half-trace of s^k(star) at E via the trace map */
TS_API ts_status ts_half_trace(const ts_substitution* s, double p, double q, int k, double E, double* out);
/* same quantity from the product of transfer matrices */
TS_API ts_status ts_half_trace_direct(const ts_substitution* s, double p, double q, int k, double E,
                                      double* out);

/* band sets */
TS_API ts_status ts_bands_compute(const ts_substitution* s, const ts_config* c, ts_bandset** out);
TS_API void ts_bandset_free(ts_bandset* b);
TS_API size_t ts_bandset_size(const ts_bandset* b);
TS_API ts_status ts_bandset_band(const ts_bandset* b, size_t i, double* lo, double* hi);
TS_API ts_status ts_bandset_measure(const ts_bandset* b, double* out);
TS_API ts_status ts_hausdorff_distance(const ts_bandset* a, const ts_bandset* b, double* out);
TS_API ts_status ts_box_dimension(const ts_bandset* b, double* value, double* stderr_out);
TS_API ts_status ts_thickness(const ts_bandset* b, double* out);

/* integrated density of states on the first L letters of the fixed point */
TS_API ts_status ts_ids_create(const ts_substitution* s, double p, double q, size_t L, ts_ids** out);
TS_API void ts_ids_free(ts_ids* ids);
TS_API ts_status ts_ids_value(const ts_ids* ids, double E, double* out);
TS_API ts_status ts_ids_exponent(const ts_ids* ids, double E, double* d, double* stderr_out);

/* command reports: a JSON summary plus named files */
TS_API ts_status ts_report_subst(const ts_substitution* s, size_t prefix, ts_report** out);
TS_API ts_status ts_report_spectrum(const ts_substitution* s, const ts_config* c, ts_report** out);
TS_API ts_status ts_report_gaps(const ts_substitution* s, const ts_config* c, ts_report** out);
TS_API ts_status ts_report_dims(const ts_substitution* s, const ts_config* c, ts_report** out);
TS_API ts_status ts_report_dos(const ts_substitution* s, const ts_config* c, ts_report** out);
TS_API ts_status ts_report_surface(const ts_substitution* s, const ts_config* c, ts_report** out);
/* has_label = 0 skips the gap-width column */
TS_API ts_status ts_report_scan(const ts_substitution* s, const ts_config* c, ts_scan_variable var,
                                const double* values, size_t count, int has_label, long long label,
                                ts_report** out);
TS_API void ts_report_free(ts_report* r);
TS_API const char* ts_report_json(const ts_report* r);
TS_API size_t ts_report_file_count(const ts_report* r);
TS_API const char* ts_report_file_name(const ts_report* r, size_t i);
TS_API ts_status ts_report_file_data(const ts_report* r, size_t i, const char** data, size_t* size);

#ifdef __cplusplus
}
#endif

#endif
