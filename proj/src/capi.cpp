#include "trispec/trispec.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "trispec/dos.hpp"
#include "trispec/error.hpp"
#include "trispec/fractal.hpp"
#include "trispec/parallel.hpp"
#include "trispec/report.hpp"
#include "trispec/spectrum.hpp"

struct ts_substitution {
  trispec::Substitution value;
};
struct ts_bandset {
  trispec::BandSet value;
};
struct ts_ids {
  trispec::IdsCounter value;
};
struct ts_report {
  trispec::Report value;
};

namespace {

thread_local std::string last_error;

ts_status from_code(trispec::ErrorCode c) {
  using trispec::ErrorCode;
  switch (c) {
    case ErrorCode::invalid_substitution: return TS_INVALID_SUBSTITUTION;
    case ErrorCode::unsupported: return TS_UNSUPPORTED;
    case ErrorCode::resource: return TS_RESOURCE;
    case ErrorCode::invalid_argument: return TS_INVALID_ARGUMENT;
    case ErrorCode::overflow: return TS_OVERFLOW;
    case ErrorCode::inconsistency: return TS_INCONSISTENCY;
    case ErrorCode::insufficient_resolution: return TS_INSUFFICIENT_RESOLUTION;
    case ErrorCode::io: return TS_IO;
  }
  return TS_INTERNAL;
}

// runs f, translating exceptions into status codes
template <class F>
ts_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return TS_OK;
  } catch (const trispec::Error& e) {
    last_error = e.what();
    return from_code(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TS_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TS_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return TS_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) trispec::fail(trispec::ErrorCode::invalid_argument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

trispec::RunConfig to_config(const ts_config* c) {
  require(c != nullptr, "null config");
  trispec::RunConfig r;
  r.params = {c->p, c->q};
  r.k = c->k;
  if (c->has_range) r.range = std::make_pair(c->emin, c->emax);
  r.tol_rel = c->tol;
  r.seed = c->seed;
  r.L = c->L;
  r.samples = c->samples;
  r.grid = c->grid;
  r.windows = c->windows;
  r.prefix = c->prefix;
  r.m_max = c->m_max;
  r.label_tol = c->label_tol;
  if (c->has_V) r.V = c->V;
  r.resolution = c->resolution;
  r.max_steps = c->max_steps;
  r.surface_lo = c->surface_lo;
  r.surface_hi = c->surface_hi;
  return r;
}

template <class F>
ts_status make_report(const ts_substitution* s, ts_report** out, F&& build) {
  return guard([&] {
    require(s && out, "null argument");
    *out = new ts_report{build(s->value)};
  });
}

}  // namespace

extern "C" {

const char* ts_last_error(void) { return last_error.c_str(); }

const char* ts_status_string(ts_status s) {
  switch (s) {
    case TS_OK: return "ok";
    case TS_INVALID_SUBSTITUTION: return "invalid substitution";
    case TS_UNSUPPORTED: return "unsupported";
    case TS_RESOURCE: return "resource limit";
    case TS_INVALID_ARGUMENT: return "invalid argument";
    case TS_OVERFLOW: return "overflow";
    case TS_INCONSISTENCY: return "inconsistency";
    case TS_INSUFFICIENT_RESOLUTION: return "insufficient resolution";
    case TS_IO: return "i/o error";
    case TS_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void ts_string_free(char* s) { std::free(s); }

ts_status ts_set_threads(int n) {
  return guard([&] {
    require(n >= 0, "thread count must be >= 0");
    trispec::set_threads(n);
  });
}

int ts_threads(void) { return trispec::threads(); }

void ts_config_default(ts_config* c) {
  if (!c) return;
  const trispec::RunConfig r;
  *c = ts_config{};
  c->p = r.params.p;
  c->q = r.params.q;
  c->k = r.k;
  c->tol = r.tol_rel;
  c->seed = r.seed;
  c->L = r.L;
  c->samples = r.samples;
  c->grid = r.grid;
  c->windows = r.windows;
  c->prefix = r.prefix;
  c->m_max = r.m_max;
  c->label_tol = r.label_tol;
  c->resolution = r.resolution;
  c->max_steps = r.max_steps;
  c->surface_lo = r.surface_lo;
  c->surface_hi = r.surface_hi;
}

ts_status ts_substitution_parse(const char* text, ts_substitution** out) {
  return guard([&] {
    require(text && out, "null argument");
    *out = new ts_substitution{trispec::Substitution::parse(text)};
  });
}

void ts_substitution_free(ts_substitution* s) { delete s; }

ts_status ts_substitution_string(const ts_substitution* s, char** out) {
  return guard([&] {
    require(s && out, "null argument");
    *out = dup_string(s->value.to_string());
  });
}

ts_status ts_substitution_flags(const ts_substitution* s, int* primitive, int* invertible) {
  return guard([&] {
    require(s != nullptr, "null argument");
    if (primitive) *primitive = s->value.primitive();
    if (invertible) *invertible = s->value.invertible();
  });
}

ts_status ts_substitution_word(const ts_substitution* s, int k, char** out) {
  return guard([&] {
    require(s && out, "null argument");
    *out = dup_string(trispec::periodic_word(s->value, k).to_string());
  });
}

ts_status ts_rotation_number(const ts_substitution* s, double* alpha) {
  return guard([&] {
    require(s && alpha, "null argument");
    *alpha = trispec::rotation_number(s->value).alpha_value();
  });
}

ts_status ts_half_trace(const ts_substitution* s, double p, double q, int k, double E, double* out) {
  return guard([&] {
    require(s && out, "null argument");
    *out = static_cast<double>(trispec::floquet_half_trace(s->value, {p, q}, k, E));
  });
}

ts_status ts_half_trace_direct(const ts_substitution* s, double p, double q, int k, double E,
                               double* out) {
  return guard([&] {
    require(s && out, "null argument");
    const trispec::JacobiParams params{p, q};
    trispec::validate(params);
    *out = 0.5 * trispec::word_transfer(params, trispec::periodic_word(s->value, k), E).trace();
  });
}

ts_status ts_bands_compute(const ts_substitution* s, const ts_config* c, ts_bandset** out) {
  return guard([&] {
    require(s && out, "null argument");
    const trispec::RunConfig r = to_config(c);
    trispec::BandOptions opt;
    opt.tol_rel = r.tol_rel;
    opt.range = r.range;
    *out = new ts_bandset{trispec::floquet_bands(s->value, r.params, r.k, opt)};
  });
}

void ts_bandset_free(ts_bandset* b) { delete b; }

size_t ts_bandset_size(const ts_bandset* b) { return b ? b->value.size() : 0; }

ts_status ts_bandset_band(const ts_bandset* b, size_t i, double* lo, double* hi) {
  return guard([&] {
    require(b && lo && hi, "null argument");
    require(i < b->value.size(), "band index out of range");
    *lo = b->value.bands[i].a;
    *hi = b->value.bands[i].b;
  });
}

ts_status ts_bandset_measure(const ts_bandset* b, double* out) {
  return guard([&] {
    require(b && out, "null argument");
    *out = trispec::band_measure(b->value);
  });
}

ts_status ts_hausdorff_distance(const ts_bandset* a, const ts_bandset* b, double* out) {
  return guard([&] {
    require(a && b && out, "null argument");
    *out = trispec::hausdorff_distance(a->value, b->value);
  });
}

ts_status ts_box_dimension(const ts_bandset* b, double* value, double* stderr_out) {
  return guard([&] {
    require(b && value, "null argument");
    const trispec::DimensionEstimate e = trispec::box_dimension(b->value);
    *value = e.value;
    if (stderr_out) *stderr_out = e.stderr_;
  });
}

ts_status ts_thickness(const ts_bandset* b, double* out) {
  return guard([&] {
    require(b && out, "null argument");
    *out = trispec::thickness(b->value).value;
  });
}

ts_status ts_ids_create(const ts_substitution* s, double p, double q, size_t L, ts_ids** out) {
  return guard([&] {
    require(s && out, "null argument");
    *out = new ts_ids{trispec::IdsCounter(s->value, {p, q}, L)};
  });
}

void ts_ids_free(ts_ids* ids) { delete ids; }

ts_status ts_ids_value(const ts_ids* ids, double E, double* out) {
  return guard([&] {
    require(ids && out, "null argument");
    *out = ids->value(E);
  });
}

ts_status ts_ids_exponent(const ts_ids* ids, double E, double* d, double* stderr_out) {
  return guard([&] {
    require(ids && d, "null argument");
    const trispec::ScalingExponent e = trispec::ids_scaling_exponent(ids->value, E);
    *d = e.d;
    if (stderr_out) *stderr_out = e.stderr_;
  });
}

ts_status ts_report_subst(const ts_substitution* s, size_t prefix, ts_report** out) {
  return make_report(s, out, [&](const trispec::Substitution& v) { return trispec::subst_report(v, prefix); });
}

ts_status ts_report_spectrum(const ts_substitution* s, const ts_config* c, ts_report** out) {
  return make_report(s, out, [&](const trispec::Substitution& v) {
    return trispec::spectrum_report(v, to_config(c));
  });
}

ts_status ts_report_gaps(const ts_substitution* s, const ts_config* c, ts_report** out) {
  return make_report(s, out, [&](const trispec::Substitution& v) { return trispec::gaps_report(v, to_config(c)); });
}

ts_status ts_report_dims(const ts_substitution* s, const ts_config* c, ts_report** out) {
  return make_report(s, out, [&](const trispec::Substitution& v) { return trispec::dims_report(v, to_config(c)); });
}

ts_status ts_report_dos(const ts_substitution* s, const ts_config* c, ts_report** out) {
  return make_report(s, out, [&](const trispec::Substitution& v) { return trispec::dos_report(v, to_config(c)); });
}

ts_status ts_report_surface(const ts_substitution* s, const ts_config* c, ts_report** out) {
  return make_report(s, out, [&](const trispec::Substitution& v) {
    return trispec::surface_report(v, to_config(c));
  });
}

ts_status ts_report_scan(const ts_substitution* s, const ts_config* c, ts_scan_variable var,
                         const double* values, size_t count, int has_label, long long label,
                         ts_report** out) {
  return make_report(s, out, [&](const trispec::Substitution& v) {
    require(values != nullptr || count == 0, "null value list");
    require(var == TS_SCAN_P || var == TS_SCAN_Q, "unknown scan variable");
    std::optional<long long> l;
    if (has_label) l = label;
    return trispec::scan_report(v, to_config(c), var == TS_SCAN_P ? trispec::ScanVariable::p : trispec::ScanVariable::q,
                                std::vector<double>(values, values + count), l);
  });
}

void ts_report_free(ts_report* r) { delete r; }

const char* ts_report_json(const ts_report* r) { return r ? r->value.json.c_str() : ""; }

size_t ts_report_file_count(const ts_report* r) { return r ? r->value.files.size() : 0; }

const char* ts_report_file_name(const ts_report* r, size_t i) {
  if (!r || i >= r->value.files.size()) return nullptr;
  return r->value.files[i].first.c_str();
}

ts_status ts_report_file_data(const ts_report* r, size_t i, const char** data, size_t* size) {
  return guard([&] {
    require(r && data && size, "null argument");
    require(i < r->value.files.size(), "file index out of range");
    *data = r->value.files[i].second.data();
    *size = r->value.files[i].second.size();
  });
}

}  // extern "C"
